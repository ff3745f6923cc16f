"""Logarithmic-coefficient Toeplitz determinants over Ma-Minda classes."""

__version__ = "0.1.0"

from .series import TruncatedSeries, compose, derivative, div, exps, integrate_over_t, log1, mul
from .classes import (
    CONVEX,
    STARLIKE,
    ClassMember,
    MindaPhi,
    SchwarzSample,
    convex_from_schwarz,
    extremal,
    extremal_convex,
    extremal_starlike,
    koebe,
    log_coefficients,
    phi_series,
    sample_schwarz,
    starlike_from_schwarz,
)
from .functionals import (
    RegionPoint,
    cubic_functional,
    efraimidis_bound,
    efraimidis_value,
    fekete_szego,
    prokhorov_szynal_value,
    region_member,
    t32_factored,
    toeplitz_det,
    toeplitz_det_log,
)
from .bounds import BoundReport, bound_corollary, bound_janowski, bound_theorem
from .verify import SearchResult, check_attainment, scan_gate_window, search_supremum

__all__ = [
    "__version__",
    "CONVEX",
    "STARLIKE",
    "ClassMember",
    "MindaPhi",
    "SchwarzSample",
    "convex_from_schwarz",
    "extremal",
    "extremal_convex",
    "extremal_starlike",
    "koebe",
    "log_coefficients",
    "phi_series",
    "sample_schwarz",
    "starlike_from_schwarz",
    "RegionPoint",
    "cubic_functional",
    "efraimidis_bound",
    "efraimidis_value",
    "fekete_szego",
    "prokhorov_szynal_value",
    "region_member",
    "t32_factored",
    "toeplitz_det",
    "toeplitz_det_log",
    "TruncatedSeries",
    "compose",
    "derivative",
    "div",
    "exps",
    "integrate_over_t",
    "log1",
    "mul",
    "BoundReport",
    "bound_corollary",
    "bound_janowski",
    "bound_theorem",
    "SearchResult",
    "check_attainment",
    "scan_gate_window",
    "search_supremum",
]
