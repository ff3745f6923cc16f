"""Coefficient functionals and the two coefficient lemmas.

All functionals return the complex value; callers take moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .classes import ClassMember, SchwarzSample, log_coefficients
from .series import TruncatedSeries

D1, D2, D3, OUTSIDE = "D1", "D2", "D3", "outside"


class OrderTooLow(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


MemberLike = Union[ClassMember, TruncatedSeries]


def _coeffs(f: MemberLike) -> np.ndarray:
    return (f.f if isinstance(f, ClassMember) else f).coeffs


def _small_det(M) -> complex:
    """Cofactor expansion; used for m <= 4."""
    m = len(M)
    if m == 1:
        return M[0][0]
    if m == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = 0
    for j in range(m):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        sign = -1 if j % 2 else 1
        total += sign * M[0][j] * _small_det(minor)
    return total


def symmetric_toeplitz_det(entries: Sequence[complex]) -> complex:
    """Determinant of the symmetric Toeplitz matrix with first row `entries`."""
    m = len(entries)
    M = [[entries[abs(i - j)] for j in range(m)] for i in range(m)]
    if m <= 4:
        return complex(_small_det(M))
    return complex(np.linalg.det(np.array(M, dtype=complex)))


def toeplitz_det(f: MemberLike, m: int, n: int) -> complex:
    """``T_{m,n}(f)``: entries ``a_{n+|i-j|}``."""
    c = _coeffs(f)
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if n + m - 1 > len(c) - 1:
        raise OrderTooLow(f"T_{{{m},{n}}} needs a_{n + m - 1}, series has order {len(c) - 1}")
    return symmetric_toeplitz_det([c[n + k] for k in range(m)])


def toeplitz_det_log(f: MemberLike, m: int, n: int) -> complex:
    """``T_{m,n}(gamma_f)``: the same determinant over logarithmic coefficients."""
    order = len(_coeffs(f)) - 1
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if n + m - 1 > order - 1:
        raise OrderTooLow(f"gamma_{n + m - 1} needs order {n + m}, series has order {order}")
    g = log_coefficients(f, n + m - 1)
    return symmetric_toeplitz_det([g[n - 1 + k] for k in range(m)])


def fekete_szego(f: MemberLike, lam: float) -> complex:
    c = _coeffs(f)
    if len(c) < 4:
        raise OrderTooLow("needs a_3")
    return complex(c[3] - lam * c[2] ** 2)


def cubic_functional(f: MemberLike) -> complex:
    """``a_2^3/3 - a_2 a_3 + a_4`` (twice ``gamma_3``)."""
    c = _coeffs(f)
    if len(c) < 5:
        raise OrderTooLow("needs a_4")
    a2, a3, a4 = c[2], c[3], c[4]
    return complex(a2 ** 3 / 3 - a2 * a3 + a4)


def t32_factored(f: MemberLike) -> complex:
    """``(a_2 - a_4)(a_2^2 - 2 a_3^2 + a_2 a_4)``."""
    c = _coeffs(f)
    a2, a3, a4 = c[2], c[3], c[4]
    return complex((a2 - a4) * (a2 ** 2 - 2 * a3 ** 2 + a2 * a4))


# ---------------------------------------------------------------------------
# Prokhorov-Szynal regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionPoint:
    mu: float
    nu: float

    def __post_init__(self):
        if not (np.isfinite(float(self.mu)) and np.isfinite(float(self.nu))):
            raise ValueError("region points must be finite")


def _ge(lhs, rhs, tol):
    return lhs >= rhs - tol if tol else lhs >= rhs


def _le(lhs, rhs, tol):
    return lhs <= rhs + tol if tol else lhs <= rhs


def region_member(pt: RegionPoint, tol: float = 0.0) -> str:
    """First of D1, D2, D3 containing `pt` (boundaries inclusive), else ``outside``.

    ``tol`` widens every inequality; gates pass ``1e-12``.  Exact inputs
    (ints, Fractions) are compared exactly when ``tol`` is 0.
    """
    mu, nu = pt.mu, pt.nu
    amu = abs(mu)
    if _le(amu, 2, tol) and _ge(nu, 1, tol):
        return D1
    if _ge(amu, 2, tol) and _le(amu, 4, tol) and _ge(nu, (mu * mu + 8) / 12, tol):
        return D2
    if _ge(amu, 4, tol) and _ge(nu, 2 * (amu - 1) / 3, tol):
        return D3
    return OUTSIDE


def region_floor(mu: float) -> float:
    """Smallest nu with (mu, nu) in the union of D1..D3."""
    amu = abs(mu)
    if amu <= 2:
        return 1.0
    if amu <= 4:
        return (mu * mu + 8) / 12
    return 2 * (amu - 1) / 3


def schwarz_coefficients(w: Union[SchwarzSample, TruncatedSeries]) -> tuple:
    s = w.schwarz if isinstance(w, SchwarzSample) else w
    if s.order < 3:
        raise OrderTooLow("needs c_3")
    return complex(s[1]), complex(s[2]), complex(s[3])


def prokhorov_szynal_value(w: Union[SchwarzSample, TruncatedSeries], pt: RegionPoint) -> float:
    """``|c_3 + mu c_1 c_2 + nu c_1^3|``; at most ``|nu|`` inside the regions."""
    c1, c2, c3 = schwarz_coefficients(w)
    return abs(c3 + pt.mu * c1 * c2 + pt.nu * c1 ** 3)


def efraimidis_value(p_coeffs, n: int, k: int, mu: complex) -> float:
    """``|p_n - mu p_k p_{n-k}|`` for Caratheodory coefficients.

    `p_coeffs` is a series, a :class:`SchwarzSample` or a plain sequence
    starting at ``p_0``.
    """
    if isinstance(p_coeffs, SchwarzSample):
        p = p_coeffs.caratheodory.coeffs
    elif isinstance(p_coeffs, TruncatedSeries):
        p = p_coeffs.coeffs
    else:
        p = np.asarray(p_coeffs, dtype=complex)
    if not (1 <= k <= n - 1) or n > len(p) - 1:
        raise IndexOutOfRange(f"need 1 <= k <= n-1 and n <= {len(p) - 1}, got n={n}, k={k}")
    return abs(p[n] - mu * p[k] * p[n - k])


def efraimidis_bound(mu: complex) -> float:
    return 2 * max(1.0, abs(2 * mu - 1))
