"""Truncated power series with complex coefficients.

A :class:`TruncatedSeries` holds ``c_0 .. c_N`` where ``N`` is the truncation
order.  Coefficients above ``N`` are *unknown*, not zero, so every binary
operation returns a series of the smaller input order.  Everything in the
package (``f``, ``phi``, Schwarz functions, Caratheodory functions and
``log(f(z)/z)``) goes through this engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Union

import numpy as np

DEFAULT_ORDER = 10
DIVISION_GUARD = 1e-6
UNIT_CONSTANT_TOL = 1e-9


class DivisionByNearZeroConstantTerm(ZeroDivisionError):
    """Divisor has ``|b_0|`` below :data:`DIVISION_GUARD`."""


class InnerConstantTermNonzero(ValueError):
    """Composition requires the inner series to vanish at 0."""


class ConstantTermNotOne(ValueError):
    """``log1`` needs a series with constant term 1."""


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a truncated series needs at least the constant term")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], order: int | None = None) -> "TruncatedSeries":
        """Build a series; pads with zeros or truncates when `order` is given."""
        c = np.asarray(list(coeffs), dtype=complex)
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            out = np.zeros(order + 1, dtype=complex)
            k = min(order + 1, c.size)
            out[:k] = c[:k]
            c = out
        return cls(c)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """The series ``z``."""
        return cls.from_coeffs([0, 1], order)

    # -- basic protocol ---------------------------------------------------
    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({np.array2string(self.coeffs, precision=6)}, order={self.order})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __call__(self, z):
        """Evaluate the truncated polynomial at `z` (Horner)."""
        acc = 0j
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.all(np.abs(self.coeffs[: n + 1] - other.coeffs[: n + 1]) <= atol))

    # -- operators --------------------------------------------------------
    def __add__(self, other):
        return add(self, _lift(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return add(self, -_lift(other, self.order))

    def __rsub__(self, other):
        return add(_lift(other, self.order), -self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self.coeffs * other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return TruncatedSeries(self.coeffs / other)
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_lift(other, self.order), self)


SeriesLike = Union[TruncatedSeries, Number]


def _lift(x: SeriesLike, order: int) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.constant(x, order)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order) + 1
    return TruncatedSeries(a.coeffs[:n] + b.coeffs[:n])


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller order."""
    n = min(a.order, b.order) + 1
    return TruncatedSeries(np.convolve(a.coeffs[:n], b.coeffs[:n])[:n])


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Return ``q`` with ``q * b == a`` to the common order."""
    b0 = b.coeffs[0]
    if abs(b0) < DIVISION_GUARD:
        raise DivisionByNearZeroConstantTerm(f"|b_0| = {abs(b0):.3e} < {DIVISION_GUARD}")
    n = min(a.order, b.order) + 1
    ac, bc = a.coeffs, b.coeffs
    q = np.zeros(n, dtype=complex)
    for k in range(n):
        s = ac[k]
        if k:
            s = s - np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k])
        q[k] = s / b0
    return TruncatedSeries(q)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """Taylor coefficients of ``outer(inner(z))``; inner must vanish at 0."""
    if abs(inner.coeffs[0]) > 0:
        raise InnerConstantTermNonzero(f"inner constant term is {inner.coeffs[0]}")
    n = min(outer.order, inner.order)
    w = inner.coeffs[: n + 1]
    acc = np.zeros(n + 1, dtype=complex)
    acc[0] = outer.coeffs[n]
    for c in outer.coeffs[n - 1 :: -1]:
        acc = np.convolve(acc, w)[: n + 1]
        acc[0] += c
    return TruncatedSeries(acc)


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    """Formal derivative; the result is known to one order less."""
    if s.order == 0:
        return TruncatedSeries([0])
    return TruncatedSeries(s.coeffs[1:] * np.arange(1, s.order + 1))


def integrate_over_t(s: TruncatedSeries) -> TruncatedSeries:
    """``int_0^z (s(t) - s(0)) / t dt``: maps ``c_k t^k`` to ``c_k z^k / k``."""
    out = np.zeros(s.order + 1, dtype=complex)
    out[1:] = s.coeffs[1:] / np.arange(1, s.order + 1)
    return TruncatedSeries(out)


def log1(s: TruncatedSeries) -> TruncatedSeries:
    """Principal logarithm of a series with ``s_0 = 1`` (so ``log 1 = 0``)."""
    if abs(s.coeffs[0] - 1) > UNIT_CONSTANT_TOL:
        raise ConstantTermNotOne(f"constant term {s.coeffs[0]} is not 1")
    if s.order == 0:
        return TruncatedSeries([0])
    # L' = s'/s, integrated termwise
    ratio = div(derivative(s), s.truncate(s.order - 1))
    out = np.zeros(s.order + 1, dtype=complex)
    out[1:] = ratio.coeffs / np.arange(1, s.order + 1)
    return TruncatedSeries(out)


def exps(s: TruncatedSeries) -> TruncatedSeries:
    c = s.coeffs
    n = s.order + 1
    e = np.zeros(n, dtype=complex)
    e[0] = np.exp(c[0])
    k = np.arange(n)
    # n e_n = sum_{k=1}^n k s_k e_{n-k}
    for m in range(1, n):
        e[m] = np.dot(k[1 : m + 1] * c[1 : m + 1], e[m - 1 :: -1][:m]) / m
    return TruncatedSeries(e)
