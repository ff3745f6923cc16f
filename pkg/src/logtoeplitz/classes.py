"""Ma-Minda targets, Schwarz samples and members of S*(phi) / C(phi).

Class members are produced from a Schwarz function ``w`` by solving the
subordination identities coefficient by coefficient:

* starlike: ``z f' = f * phi(w)``, i.e. ``(n-1) a_n = sum_{j<n} a_j Phi_{n-j}``
* convex:   ``(z f')' = f' * phi(w)``, the same recurrence on ``b_m = (m+1) a_{m+1}``

where ``Phi = phi o w``.  The extremal functions use ``w(z) = i z``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Sequence, Union

import numpy as np

from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    compose,
    exps,
    integrate_over_t,
    log1,
)

PHI_COEFF_LIMIT = 2.0
_RANGE_SLACK = 1e-12

STARLIKE = "starlike"
CONVEX = "convex"


class InvalidPhi(ValueError):
    pass


class InvalidJanowskiParameters(InvalidPhi):
    pass


def _frac_or_float(x):
    """Keep ints/Fractions exact, everything else becomes float."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a parameter")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, Real):
        return float(x)
    if isinstance(x, complex):
        if x.imag != 0:
            raise InvalidPhi(f"phi coefficients must be real, got {x}")
        return float(x.real)
    raise TypeError(f"unsupported parameter type {type(x).__name__}")


@dataclass(frozen=True)
class MindaPhi:
    """A Ma-Minda target ``phi(z) = 1 + B1 z + B2 z^2 + ...``.

    ``kind`` is one of ``janowski`` (params ``(A, B)``), ``power``
    (``(beta,)``), ``robertson`` (``(lam,)``) or ``custom`` (the raw
    ``B1, B2, ...``; higher coefficients are taken to be zero).  Integer and
    :class:`~fractions.Fraction` parameters stay exact so the bound formulas
    can be evaluated in rational arithmetic.
    """

    kind: str
    params: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        params = tuple(_frac_or_float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if not self.label:
            object.__setattr__(self, "label", f"{self.kind}:{','.join(str(p) for p in params)}")
        self._validate()

    # -- constructors -----------------------------------------------------
    @classmethod
    def janowski(cls, A, B) -> "MindaPhi":
        return cls("janowski", (A, B))

    @classmethod
    def order_alpha(cls, alpha) -> "MindaPhi":
        """Starlike/convex of order alpha: Janowski with ``A = 1 - 2 alpha, B = -1``."""
        a = _frac_or_float(alpha)
        if not 0 <= a < 1:
            raise InvalidPhi(f"order alpha must lie in [0, 1), got {alpha}")
        return cls("janowski", (1 - 2 * a, -1), label=f"alpha:{a}")

    @classmethod
    def power(cls, beta) -> "MindaPhi":
        return cls("power", (beta,))

    @classmethod
    def robertson(cls, lam) -> "MindaPhi":
        return cls("robertson", (lam,))

    @classmethod
    def custom(cls, coeffs: Sequence) -> "MindaPhi":
        return cls("custom", tuple(coeffs))

    # -- coefficients -----------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.params)

    def b123(self) -> tuple:
        """``(B1, B2, B3)`` in the arithmetic of the parameters."""
        k, p = self.kind, self.params
        if k == "janowski":
            A, B = p
            return (A - B, B * B - A * B, A * B * B - B ** 3)
        if k == "power":
            (b,) = p
            return (2 * b, 2 * b * b, (2 * b + 4 * b ** 3) / 3)
        if k == "robertson":
            (lam,) = p
            v = 1 + 2 * lam
            return (v, v, v)
        padded = tuple(p) + (p[0] * 0,) * 3
        return padded[:3]

    def coefficients(self, n: int) -> np.ndarray:
        """Float ``B_1 .. B_n``."""
        return phi_series(self, n).coeffs[1:].real.copy()

    def _validate(self):
        k, p = self.kind, self.params
        if k == "janowski":
            if len(p) != 2:
                raise InvalidJanowskiParameters("janowski needs (A, B)")
            A, B = p
            if not (-1 <= B < A <= 1):
                raise InvalidJanowskiParameters(f"need -1 <= B < A <= 1, got A={A}, B={B}")
        elif k == "power":
            if len(p) != 1 or not (0 < p[0] <= 1):
                raise InvalidPhi(f"power needs 0 < beta <= 1, got {p}")
        elif k == "robertson":
            if len(p) != 1 or not (-0.5 < p[0] <= 1):
                raise InvalidPhi(f"robertson needs -1/2 < lambda <= 1, got {p}")
        elif k == "custom":
            if not p:
                raise InvalidPhi("custom phi needs at least B1")
        else:
            raise InvalidPhi(f"unknown phi kind {k!r}")
        bs = self.coefficients(DEFAULT_ORDER) if k != "custom" else np.array([float(x) for x in p])
        if not bs[0] > 0:
            raise InvalidPhi(f"B1 must be positive, got {bs[0]}")
        if np.any(np.abs(bs) > PHI_COEFF_LIMIT + _RANGE_SLACK):
            raise InvalidPhi(f"|B_n| <= 2 violated for {self.label}: max {np.abs(bs).max():.6g}")


def phi_series(phi: MindaPhi, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Taylor series of ``phi`` to `order`."""
    k, p = phi.kind, [float(x) for x in phi.params]
    n = np.arange(order + 1)
    if k == "janowski":
        A, B = p
        c = np.empty(order + 1)
        c[0] = 1.0
        c[1:] = (A - B) * (-B) ** (n[1:] - 1)
        return TruncatedSeries(c)
    if k == "robertson":
        c = np.full(order + 1, 1 + 2 * p[0])
        c[0] = 1.0
        return TruncatedSeries(c)
    if k == "power":
        z = TruncatedSeries.variable(order)
        half_plane = (1 + z) / (1 - z)
        s = exps(p[0] * log1(half_plane))
        return TruncatedSeries(s.coeffs.real)
    return TruncatedSeries.from_coeffs([1.0] + p, order)


# ---------------------------------------------------------------------------
# Schwarz / Caratheodory samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchwarzSample:
    """Finite Herglotz measure ``sum_k w_k delta(theta_k)``.

    ``p(z) = sum_k w_k (1 + e^{i theta_k} z) / (1 - e^{i theta_k} z)`` is a
    Caratheodory function and ``w = (p - 1) / (p + 1)`` the matching
    Schwarz function.  No atoms means the uniform measure, ``p = 1``.
    """

    weights: tuple
    angles: tuple
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        t = np.asarray(self.angles, dtype=float)
        if w.shape != t.shape or w.ndim != 1:
            raise ValueError("weights and angles must be 1-d and of equal length")
        if w.size:
            if np.any(w < 0) or w.sum() <= 0:
                raise ValueError("weights must be nonnegative with positive sum")
            w = w / w.sum()
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        object.__setattr__(self, "angles", tuple(float(x) % (2 * math.pi) for x in t))

    @classmethod
    def rotation(cls, theta: float, order: int = DEFAULT_ORDER) -> "SchwarzSample":
        """Single atom: ``w(z) = e^{i theta} z``."""
        return cls((1.0,), (theta,), order)

    @classmethod
    def identity_measure(cls, order: int = DEFAULT_ORDER) -> "SchwarzSample":
        return cls((), (), order)

    @cached_property
    def caratheodory(self) -> TruncatedSeries:
        c = np.zeros(self.order + 1, dtype=complex)
        c[0] = 1.0
        if self.weights:
            n = np.arange(1, self.order + 1)
            rot = np.exp(1j * np.outer(n, self.angles))
            c[1:] = 2 * rot @ np.asarray(self.weights)
        return TruncatedSeries(c)

    @cached_property
    def schwarz(self) -> TruncatedSeries:
        p = self.caratheodory
        w = (p - 1) / (p + 1)
        coeffs = np.array(w.coeffs)
        coeffs[0] = 0.0
        return TruncatedSeries(coeffs)

    def caratheodory_value(self, z) -> complex:
        """Exact ``p(z)`` from the closed form (not the truncation)."""
        if not self.weights:
            return np.ones_like(np.asarray(z), dtype=complex)
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for wk, tk in zip(self.weights, self.angles):
            e = cmath.exp(1j * tk) * z
            out = out + wk * (1 + e) / (1 - e)
        return out


def sample_schwarz(num_atoms: int, rng_seed: Union[int, np.random.Generator, None] = None,
                   order: int = DEFAULT_ORDER) -> SchwarzSample:
    """Random sample: Dirichlet(1,..,1) weights and uniform angles."""
    if num_atoms < 1:
        raise ValueError("num_atoms must be >= 1")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    weights = rng.dirichlet(np.ones(num_atoms))
    angles = rng.uniform(0.0, 2 * math.pi, num_atoms)
    return SchwarzSample(tuple(weights), tuple(angles), order)


# ---------------------------------------------------------------------------
# Class members
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClassMember:
    """Normalized ``f = z + a_2 z^2 + ...`` with how it was produced."""

    f: TruncatedSeries
    class_tag: str | None = None
    phi: MindaPhi | None = None
    schwarz: TruncatedSeries | None = None
    provenance: object = None

    def __post_init__(self):
        c = self.f.coeffs
        if self.f.order < 1 or c[0] != 0 or c[1] != 1:
            raise ValueError("class members need a_0 = 0 and a_1 = 1")

    @property
    def order(self) -> int:
        return self.f.order

    def a(self, n: int) -> complex:
        return complex(self.f.coeffs[n])

    def subordination_residual(self) -> float:
        """Max coefficient of ``zf'/f - phi(w)`` (or ``1 + zf''/f' - phi(w)``)."""
        if self.phi is None or self.schwarz is None:
            raise ValueError("member was not built from a Schwarz function")
        N = self.order
        k = np.arange(N + 1)
        target = compose(phi_series(self.phi, N), self.schwarz)
        if self.class_tag == STARLIKE:
            f_over_z = TruncatedSeries(self.f.coeffs[1:])
            zfp_over_z = TruncatedSeries((k * self.f.coeffs)[1:])
            lhs = zfp_over_z / f_over_z
        else:
            fp = TruncatedSeries((k * self.f.coeffs)[1:])
            m = np.arange(N)
            lhs = TruncatedSeries((m + 1) * fp.coeffs) / fp
        n = min(lhs.order, target.order) + 1
        return float(np.max(np.abs(lhs.coeffs[:n] - target.coeffs[:n])))


SchwarzLike = Union[SchwarzSample, TruncatedSeries]


def _schwarz_series(w: SchwarzLike, order: int) -> TruncatedSeries:
    s = w.schwarz if isinstance(w, SchwarzSample) else w
    if abs(s.coeffs[0]) > 0:
        raise ValueError("a Schwarz function vanishes at 0")
    if s.order < order:
        raise ValueError(f"Schwarz series of order {s.order} cannot give order {order}")
    return s.truncate(order)


def _subordinate_recurrence(Phi: np.ndarray, order: int) -> np.ndarray:
    """Solve ``(n-1) a_n = sum_{j=1}^{n-1} a_j Phi_{n-j}`` with ``a_1 = 1``."""
    a = np.zeros(order + 1, dtype=complex)
    a[1] = 1.0
    for n in range(2, order + 1):
        a[n] = np.dot(a[1:n], Phi[n - 1 : 0 : -1]) / (n - 1)
    return a


def _min_order(order: int):
    if order < 4:
        raise ValueError("class members need order >= 4")


def starlike_from_schwarz(phi: MindaPhi, w: SchwarzLike, order: int = DEFAULT_ORDER) -> ClassMember:
    _min_order(order)
    s = _schwarz_series(w, order)
    Phi = compose(phi_series(phi, order), s).coeffs
    a = _subordinate_recurrence(Phi, order)
    return ClassMember(TruncatedSeries(a), STARLIKE, phi, s, w)


def convex_from_schwarz(phi: MindaPhi, w: SchwarzLike, order: int = DEFAULT_ORDER) -> ClassMember:
    _min_order(order)
    s = _schwarz_series(w, order)
    Phi = compose(phi_series(phi, order), s).coeffs
    # b_m = (m+1) a_{m+1} obeys the starlike recurrence shifted by one
    b = _subordinate_recurrence(Phi, order)
    a = np.zeros(order + 1, dtype=complex)
    a[1:] = b[1:] / np.arange(1, order + 1)
    return ClassMember(TruncatedSeries(a), CONVEX, phi, s, w)


def from_schwarz(class_tag: str, phi: MindaPhi, w: SchwarzLike, order: int = DEFAULT_ORDER) -> ClassMember:
    if class_tag == STARLIKE:
        return starlike_from_schwarz(phi, w, order)
    if class_tag == CONVEX:
        return convex_from_schwarz(phi, w, order)
    raise ValueError(f"unknown class tag {class_tag!r}")


EXTREMAL_ROTATION = math.pi / 2  # w(z) = i z


def extremal_starlike(phi: MindaPhi, order: int = DEFAULT_ORDER) -> ClassMember:
    """``k_phi(z) = z exp int_0^z (phi(it) - 1)/t dt``."""
    rotated = phi_series(phi, order).coeffs * (1j ** np.arange(order + 1))
    log_k_over_z = integrate_over_t(TruncatedSeries(rotated))
    k_over_z = exps(log_k_over_z)
    f = np.zeros(order + 1, dtype=complex)
    f[1:] = k_over_z.coeffs[:order]
    w = TruncatedSeries.from_coeffs([0, 1j], order)
    return ClassMember(TruncatedSeries(f), STARLIKE, phi, w, "k_phi")


def extremal_convex(phi: MindaPhi, order: int = DEFAULT_ORDER) -> ClassMember:
    """``h_phi`` solving ``1 + z h''/h' = phi(iz)``."""
    _min_order(order)
    w = TruncatedSeries.from_coeffs([0, 1j], order)
    m = convex_from_schwarz(phi, w, order)
    return ClassMember(m.f, CONVEX, phi, w, "h_phi")


def extremal(class_tag: str, phi: MindaPhi, order: int = DEFAULT_ORDER) -> ClassMember:
    return extremal_starlike(phi, order) if class_tag == STARLIKE else extremal_convex(phi, order)


def koebe(order: int = DEFAULT_ORDER) -> ClassMember:
    """``z / (1 - z)^2``, i.e. ``a_n = n``."""
    return ClassMember(TruncatedSeries(np.arange(order + 1, dtype=complex)), STARLIKE,
                       MindaPhi.janowski(1, -1), None, "koebe")


def identity_member(order: int = DEFAULT_ORDER) -> ClassMember:
    return ClassMember(TruncatedSeries.variable(order), None, None, None, "identity")


def log_coefficients(f: ClassMember | TruncatedSeries, count: int) -> np.ndarray:
    """``gamma_1 .. gamma_count`` with ``log(f/z) = 2 sum gamma_n z^n``."""
    s = f.f if isinstance(f, ClassMember) else f
    if count > s.order - 1:
        raise ValueError(f"count {count} exceeds order - 1 = {s.order - 1}")
    L = log1(TruncatedSeries(s.coeffs[1:]))
    return L.coeffs[1 : count + 1] / 2
