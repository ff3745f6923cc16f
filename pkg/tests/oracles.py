"""Independent reference computations used by the tests.

Everything here is symbolic (sympy) or exact (Fraction) and shares no code
with the package under test.
"""

from __future__ import annotations

import functools
from fractions import Fraction

import sympy as sp

z, t = sp.symbols("z t")
B1, B2, B3 = sp.symbols("B1 B2 B3")
c1, c2, c3 = sp.symbols("c1 c2 c3")

PHI = 1 + B1 * z + B2 * z**2 + B3 * z**3
OMEGA = c1 * z + c2 * z**2 + c3 * z**3


def _taylor(expr, order):
    return sp.expand(sp.series(expr, z, 0, order + 1).removeO())


def _phi_of(inner):
    return 1 + B1 * inner + B2 * inner**2 + B3 * inner**3


@functools.lru_cache(maxsize=None)
def starlike_coefficients():
    """a2, a3, a4 of f with z f'/f = phi(omega), via f = z exp(int (phi(omega)-1)/t)."""
    integrand = sp.expand((_taylor(_phi_of(OMEGA), 3) - 1) / z)
    log_part = sp.integrate(integrand, (z, 0, z))
    f = _taylor(z * sp.exp(log_part), 4)
    return tuple(sp.expand(f.coeff(z, n)) for n in (2, 3, 4))


@functools.lru_cache(maxsize=None)
def convex_coefficients():
    """a2, a3, a4 of f with 1 + z f''/f' = phi(omega), via f' = exp(int (phi(omega)-1)/t)."""
    integrand = sp.expand((_taylor(_phi_of(OMEGA), 3) - 1) / z)
    fprime = _taylor(sp.exp(sp.integrate(integrand, (z, 0, z))), 3)
    f = sp.integrate(fprime, (z, 0, z))
    return tuple(sp.expand(f.coeff(z, n)) for n in (2, 3, 4))


@functools.lru_cache(maxsize=None)
def _compiled(expr):
    return sp.lambdify((B1, B2, B3, c1, c2, c3), expr, "math")


def substitute(expr, b, c):
    return complex(_compiled(expr)(*b, *c))


A2, A3, A4 = sp.symbols("A2 A3 A4")


@functools.lru_cache(maxsize=None)
def _gamma_from_a():
    s = _taylor(sp.log(1 + A2 * z + A3 * z**2 + A4 * z**3) / 2, 3)
    return sp.lambdify((A2, A3, A4), [s.coeff(z, n) for n in (1, 2, 3)], "math")


def log_coefficients_from_a(a2, a3, a4):
    """gamma_1..gamma_3 from a2..a4 by symbolic expansion of log(f/z)/2."""
    return tuple(complex(g) for g in _gamma_from_a()(a2, a3, a4))


def det3(rows):
    return complex(sp.Matrix(rows).det())


def fraction_series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += Fraction(x) * Fraction(y)
    return out
