"""Sharp bounds for S*(phi) and C(phi) with their hypothesis gates.

The six theorem bounds are written in ``(B1, B2, B3)``.  Each corollary keeps
its own closed form (in ``A, B`` or in the family parameter) and is checked
against the theorem it specializes every time it is evaluated; a mismatch
raises :class:`CorollaryMismatch`.

Arithmetic follows the inputs: integer / Fraction parameters give exact
Fraction bounds and exact gate comparisons, floats get a ``1e-12`` slack so
boundary cases such as ``|B2| = B1`` do not flap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .classes import CONVEX, STARLIKE, InvalidJanowskiParameters, MindaPhi
from .functionals import OUTSIDE, RegionPoint, region_member

GATE_SLACK = 1e-12

LOG_T21 = "log_T21"  # |gamma_1^2 - gamma_2^2|
LOG_T22 = "log_T22"  # |gamma_2^2 - gamma_3^2|
T32 = "T32"          # |T_{3,2}(f)|

FUNCTIONAL_NAMES = {
    LOG_T21: "|gamma1^2 - gamma2^2|",
    LOG_T22: "|gamma2^2 - gamma3^2|",
    T32: "|T_{3,2}(f)|",
}

THEOREMS = {
    "T1": (STARLIKE, LOG_T21),
    "T2": (CONVEX, LOG_T21),
    "T3": (STARLIKE, LOG_T22),
    "T4": (CONVEX, LOG_T22),
    "T5": (STARLIKE, T32),
    "T6": (CONVEX, T32),
}

CLAIM_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "C1i", "C1ii", "C2i", "C2ii", "C6", "C7",
             "CS", "CC", "C4", "C5", "C4a", "C5a", "SSb", "CCb", "Crlr")


class CorollaryMismatch(AssertionError):
    """A corollary's displayed formula or gate disagrees with its theorem."""


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _ge(lhs, rhs, exact: bool) -> bool:
    return lhs >= rhs if exact else lhs >= rhs - GATE_SLACK


def _le(lhs, rhs, exact: bool) -> bool:
    return lhs <= rhs if exact else lhs <= rhs + GATE_SLACK


def _region(mu, nu, exact: bool) -> tuple[RegionPoint, str]:
    pt = RegionPoint(mu, nu)
    return pt, region_member(pt, tol=0.0 if exact else GATE_SLACK)


@dataclass
class BoundReport:
    claim_id: str
    theorem: str
    functional_id: str
    class_tag: str
    phi: str
    hypotheses_ok: bool
    gates: dict
    bound: Optional[float] = None
    bound_exact: Optional[Fraction] = None
    region_detail: Optional[tuple] = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        region = None
        if self.region_detail is not None:
            pt, label = self.region_detail
            region = {"mu": float(pt.mu), "nu": float(pt.nu), "region": label}
        return {
            "claim_id": self.claim_id,
            "theorem": self.theorem,
            "functional_id": self.functional_id,
            "functional": FUNCTIONAL_NAMES[self.functional_id],
            "class": self.class_tag,
            "phi": self.phi,
            "hypotheses_ok": self.hypotheses_ok,
            "gates": dict(self.gates),
            "bound": self.bound,
            "bound_exact": None if self.bound_exact is None else str(self.bound_exact),
            "region": region,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        region = None
        if d.get("region") is not None:
            r = d["region"]
            region = (RegionPoint(r["mu"], r["nu"]), r["region"])
        return cls(
            claim_id=d["claim_id"],
            theorem=d["theorem"],
            functional_id=d["functional_id"],
            class_tag=d["class"],
            phi=d["phi"],
            hypotheses_ok=d["hypotheses_ok"],
            gates=dict(d["gates"]),
            bound=d["bound"],
            bound_exact=None if d["bound_exact"] is None else Fraction(d["bound_exact"]),
            region_detail=region,
            notes=tuple(d.get("notes", ())),
        )


# ---------------------------------------------------------------------------
# T1..T6 as functions of (B1, B2, B3)
# ---------------------------------------------------------------------------


def _cubic_sum(b1, b2, b3):
    return b1 ** 3 + 3 * b1 * b2 + 2 * b3


def q_point(b1, b2, b3) -> tuple:
    """``(q1, q2)`` used by the |a_4| estimate."""
    return (3 * b1 ** 2 + 4 * b2) / (2 * b1), _cubic_sum(b1, b2, b3) / (2 * b1)


def theorem_formula(tid: str, b1, b2, b3):
    """Right-hand side of theorem `tid`, without any gating."""
    if tid == "T1":
        return b1 ** 2 / 4 + b2 ** 2 / 16
    if tid == "T2":
        return b1 ** 2 / 16 + (b2 + b1 ** 2 / 4) ** 2 / 144
    if tid == "T3":
        return (9 * b2 ** 2 + 4 * b3 ** 2) / 144
    if tid == "T4":
        return (b1 ** 4 + 8 * b1 ** 2 * b2 + 16 * b2 ** 2 + b1 ** 2 * b2 ** 2
                + 4 * b1 * b2 * b3 + 4 * b3 ** 2) / 2304
    if tid == "T5":
        return ((b1 + _cubic_sum(b1, b2, b3) / 6)
                * (b1 ** 2 + b1 ** 4 / 3 + b1 ** 2 * b2 / 2 + b2 ** 2 / 2 - b1 * b3 / 3))
    if tid == "T6":
        return ((b1 / 2 + _cubic_sum(b1, b2, b3) / 24)
                * (5 * b1 ** 4 + 36 * b1 ** 2 + 7 * b1 ** 2 * b2 + 8 * b2 ** 2 - 6 * b1 * b3) / 144)
    raise KeyError(tid)


def theorem_gates(tid: str, b1, b2, b3) -> tuple[dict, Optional[tuple]]:
    """Ordered gate results and the region point the theorem tests, if any."""
    exact = _is_exact(b1, b2, b3)
    gates: dict = {}
    region = None
    if tid in ("T1", "T3"):
        gates["|B2| >= B1"] = _ge(abs(b2), b1, exact)
    if tid in ("T2", "T4"):
        gates["|B2 + B1^2/4| >= B1"] = _ge(abs(b2 + b1 ** 2 / 4), b1, exact)
    if tid == "T3":
        region = _region(2 * b2 / b1, b3 / b1, exact)
        gates["(mu1, nu1) in D1 u D2 u D3"] = region[1] != OUTSIDE
    if tid == "T4":
        region = _region((b1 ** 2 + 4 * b2) / (2 * b1), (b1 * b2 + 2 * b3) / (2 * b1), exact)
        gates["(mu2, nu2) in D1 u D2 u D3"] = region[1] != OUTSIDE
    if tid == "T5":
        mid = b1 * (3 * b1 ** 2 + 2 * b2)
        gates["6B1^2 <= B1(3B1^2 + 2B2)"] = _le(6 * b1 ** 2, mid, exact)
        gates["B1(3B1^2 + 2B2) <= B1^2 + 2B1^4 + 3B1^2B2 + 3B2^2 - 2B1B3"] = _le(
            mid, b1 ** 2 + 2 * b1 ** 4 + 3 * b1 ** 2 * b2 + 3 * b2 ** 2 - 2 * b1 * b3, exact)
    if tid == "T6":
        mid = 7 * b1 ** 3
        gates["16B1^2 - 4B1B2 <= 7B1^3"] = _le(16 * b1 ** 2 - 4 * b1 * b2, mid, exact)
        gates["7B1^3 <= 5B1^4 + 2B1^2 - 4B1B2 + 7B1^2B2 + 8B2^2 - 6B1B3"] = _le(
            mid, 5 * b1 ** 4 + 2 * b1 ** 2 - 4 * b1 * b2 + 7 * b1 ** 2 * b2 + 8 * b2 ** 2 - 6 * b1 * b3, exact)
    if tid in ("T5", "T6"):
        region = _region(*q_point(b1, b2, b3), exact)
        gates["(q1, q2) in D1 u D2 u D3"] = region[1] != OUTSIDE
    if tid not in THEOREMS:
        raise KeyError(tid)
    return gates, region


def _report(claim_id, tid, phi_label, gates, region, value, notes=()) -> BoundReport:
    class_tag, functional = THEOREMS[tid]
    ok = all(gates.values())
    bound = bound_exact = None
    if ok:
        if isinstance(value, Fraction):
            bound_exact = value
        bound = float(value)
    return BoundReport(claim_id, tid, functional, class_tag, phi_label, ok, gates,
                       bound, bound_exact, region, tuple(notes))


def bound_theorem(tid: str, phi: MindaPhi) -> BoundReport:
    """Gate and evaluate theorem `tid` for ``phi``."""
    if tid not in THEOREMS:
        raise KeyError(f"unknown theorem {tid!r}")
    b = phi.b123()
    gates, region = theorem_gates(tid, *b)
    return _report(tid, tid, phi.label, gates, region, theorem_formula(tid, *b))


def bound_T1(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T1", phi)


def bound_T2(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T2", phi)


def bound_T3(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T3", phi)


def bound_T4(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T4", phi)


def bound_T5(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T5", phi)


def bound_T6(phi: MindaPhi) -> BoundReport:
    return bound_theorem("T6", phi)


# ---------------------------------------------------------------------------
# Corollaries
# ---------------------------------------------------------------------------


def _janowski_gates(cid: str, A, B) -> tuple[dict, Optional[tuple]]:
    """Gates exactly as the Janowski corollaries display them."""
    exact = _is_exact(A, B)
    d = A - B
    gates: dict = {}
    region = None
    if cid in ("C1i", "C1ii"):
        gates["|B^2 - AB| >= A - B"] = _ge(abs(B * B - A * B), d, exact)
    if cid == "C1ii":
        region = _region(-2 * B, B * B, exact)
        gates["(mu1, nu1) = (-2B, B^2) in D1 u D2 u D3"] = region[1] != OUTSIDE
    if cid in ("C2i", "C2ii"):
        gates["|A^2 - 6AB + 5B^2| >= 4(A - B)"] = _ge(abs(A * A - 6 * A * B + 5 * B * B), 4 * d, exact)
    if cid == "C2ii":
        region = _region((A - 5 * B) / 2, B * (3 * B - A) / 2, exact)
        gates["(mu2, nu2) = ((A-5B)/2, B(3B-A)/2) in D1 u D2 u D3"] = region[1] != OUTSIDE
    if cid == "C4":
        mid = (3 * A - 5 * B) * d ** 2
        gates["6(A-B)^2 <= (3A-5B)(A-B)^2"] = _le(6 * d ** 2, mid, exact)
        gates["(3A-5B)(A-B)^2 <= (A-B)^2(2A^2-7AB+6B^2+1)"] = _le(
            mid, d ** 2 * (2 * A * A - 7 * A * B + 6 * B * B + 1), exact)
    if cid == "C5":
        mid = 7 * d ** 3
        gates["4(A-B)^2(4+B) <= 7(A-B)^3"] = _le(4 * d ** 2 * (4 + B), mid, exact)
        gates["7(A-B)^3 <= (A-B)^2(2+5A^2+4B-17AB+14B^2)"] = _le(
            mid, d ** 2 * (2 + 5 * A * A + 4 * B - 17 * A * B + 14 * B * B), exact)
    if cid in ("C4", "C5"):
        region = _region((3 * A - 7 * B) / 2, (A * A - 5 * A * B + 6 * B * B) / 2, exact)
        gates["(q1, q2) = ((3A-7B)/2, (A^2-5AB+6B^2)/2) in D1 u D2 u D3"] = region[1] != OUTSIDE
    return gates, region


def _janowski_formula(cid: str, A, B):
    d2 = (A - B) ** 2
    if cid == "C1i":
        return d2 * (4 + B * B) / 16
    if cid == "C1ii":
        return d2 * B * B * (4 * B * B + 9) / 144
    if cid == "C2i":
        return d2 * (A * A + 25 * B * B - 10 * A * B + 144) / 2304
    if cid == "C2ii":
        return d2 * (A * A * (B * B + 1) + B * B * (9 * B * B + 25) - 2 * A * B * (3 * B * B + 5)) / 2304
    if cid == "C4":
        return (d2 * (2 * A * A - 7 * A * B + 6 * B * B + 6)
                * (A ** 3 + 6 * A - 6 * B - 6 * A * A * B + 11 * A * B * B - 6 * B ** 3) / 36)
    if cid == "C5":
        return (d2 * (5 * A * A - 17 * A * B + 14 * B * B + 36)
                * (A ** 3 + 12 * A - 12 * B - 6 * A * A * B + 11 * A * B * B - 6 * B ** 3) / 3456)
    raise KeyError(cid)


JANOWSKI_COROLLARIES = {"C1i": "T1", "C1ii": "T3", "C2i": "T2", "C2ii": "T4", "C4": "T5", "C5": "T6"}


def _close(x, y) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return math.isclose(float(x), float(y), rel_tol=1e-12, abs_tol=1e-12)


def _cross_check(cid: str, report: BoundReport, generic: BoundReport, value, b123):
    if report.hypotheses_ok != generic.hypotheses_ok:
        raise CorollaryMismatch(
            f"{cid}: corollary gates {report.gates} disagree with {generic.theorem} gates {generic.gates}")
    if not _close(value, theorem_formula(generic.theorem, *b123)):
        raise CorollaryMismatch(f"{cid}: closed form {value} != {generic.theorem} formula")


def bound_janowski(claim: str, A, B) -> BoundReport:
    """Janowski corollary `claim` at ``(A, B)``, cross-checked against its theorem."""
    if claim not in JANOWSKI_COROLLARIES:
        raise KeyError(f"{claim!r} is not a Janowski corollary")
    if not (-1 <= B < A <= 1):
        raise InvalidJanowskiParameters(f"need -1 <= B < A <= 1, got A={A}, B={B}")
    phi = MindaPhi.janowski(A, B)
    A, B = phi.params
    tid = JANOWSKI_COROLLARIES[claim]
    gates, region = _janowski_gates(claim, A, B)
    value = _janowski_formula(claim, A, B)
    report = _report(claim, tid, phi.label, gates, region, value)
    generic = bound_theorem(tid, phi)
    if [*gates.values()] != [*generic.gates.values()]:
        raise CorollaryMismatch(f"{claim}: gate vector {gates} != {generic.gates}")
    _cross_check(claim, report, generic, value, phi.b123())
    return report


@dataclass(frozen=True)
class FamilyCorollary:
    """A corollary over a one-parameter family (or a fixed phi)."""

    claim_id: str
    family: str  # alpha | beta | lambda | fixed
    formulas: dict  # theorem id -> closed form in the family parameter
    param_range: tuple  # (lo, hi, hi_inclusive) in exact arithmetic
    notes: tuple = ()
    range_text: str = field(default="")

    def phi(self, param) -> MindaPhi:
        if self.family == "alpha":
            return MindaPhi.order_alpha(param)
        if self.family == "beta":
            return MindaPhi.power(param)
        if self.family == "lambda":
            return MindaPhi.robertson(param)
        return MindaPhi.order_alpha(0)

    def in_range(self, param) -> bool:
        lo, hi, hi_incl = self.param_range
        if self.family == "fixed":
            return True
        exact = _is_exact(param)
        ok_lo = _ge(param, lo, exact)
        ok_hi = _le(param, hi, exact) if hi_incl else param < hi
        return ok_lo and ok_hi


F = Fraction

FAMILY_COROLLARIES = {
    c.claim_id: c
    for c in (
        FamilyCorollary("C6", "alpha", {
            "T1": lambda a: F(5, 16) * (2 - 2 * a) ** 2,
            "T3": lambda a: F(13, 144) * (2 - 2 * a) ** 2,
        }, (0, 1, False), range_text="0 <= alpha < 1"),
        FamilyCorollary("C7", "alpha", {
            "T2": lambda a: (a - 1) ** 2 * (a * a - 6 * a + 45) / 144,
            "T4": lambda a: (a - 1) ** 2 * (2 * a * a - 10 * a + 13) / 144,
        }, (0, 1, False), range_text="0 <= alpha < 1"),
        FamilyCorollary("C4a", "alpha", {
            "T5": lambda a: F(4, 9) * (1 - a) ** 3 * (16 * a ** 4 - 100 * a ** 3 + 268 * a ** 2 - 345 * a + 189),
        }, (0, F(1, 7), True), range_text="alpha in [0, 1/7]"),
        FamilyCorollary("C5a", "alpha", {
            "T6": lambda a: (1 - a) ** 3 * (20 * a ** 4 - 124 * a ** 3 + 381 * a ** 2 - 576 * a + 432) / 108,
        }, (0, F(1, 7), True), range_text="alpha in [0, 1/7]"),
        FamilyCorollary("CS", "fixed", {
            "T1": lambda _: F(5, 4), "T3": lambda _: F(13, 36), "T5": lambda _: F(84),
        }, (None, None, True), range_text="phi = (1+z)/(1-z)"),
        FamilyCorollary("CC", "fixed", {
            "T2": lambda _: F(5, 16), "T4": lambda _: F(13, 144), "T6": lambda _: F(4),
        }, (None, None, True), range_text="phi = (1+z)/(1-z)"),
        FamilyCorollary("SSb", "beta", {
            "T5": lambda b: F(4, 81) * b ** 3 * (160 + 742 * b ** 2 + 799 * b ** 4),
        }, (F(3, 4), 1, True), range_text="beta in [3/4, 1]"),
        FamilyCorollary("CCb", "beta", {
            "T6": lambda b: b ** 3 * (323 + 650 * b ** 2 + 323 * b ** 4) / 324,
        }, (F(8, 9), 1, True), range_text="beta in [8/9, 1]"),
        # displayed in alpha; the class parameter is lambda
        FamilyCorollary("Crlr", "lambda", {
            "T6": lambda l: (1 + 2 * l) ** 3 * (9 + 5 * l + 2 * l * l) * (25 + 17 * l + 10 * l * l) / 864,
        }, (F(5, 14), F(1, 2), True),
            notes=("polynomial displayed in alpha; evaluated with alpha := lambda",),
            range_text="lambda in [5/14, 1/2]"),
    )
}


def corollary_theorems(claim_id: str) -> tuple:
    if claim_id in JANOWSKI_COROLLARIES:
        return (JANOWSKI_COROLLARIES[claim_id],)
    return tuple(FAMILY_COROLLARIES[claim_id].formulas)


def bound_corollary(claim_id: str, param=None) -> list[BoundReport]:
    """All bounds of a corollary; one report per theorem it specializes.

    Janowski corollaries take ``param = (A, B)``; ``CS``/``CC`` take none.
    """
    if claim_id in JANOWSKI_COROLLARIES:
        A, B = param
        return [bound_janowski(claim_id, A, B)]
    cor = FAMILY_COROLLARIES[claim_id]
    if cor.family != "fixed" and param is None:
        raise ValueError(f"{claim_id} needs a {cor.family} value")
    in_range = cor.in_range(param)
    phi = cor.phi(param) if (in_range or cor.family == "fixed") else None
    if phi is not None:
        # family parameters stay exact when given exact
        param = phi.params[0] if cor.family in ("beta", "lambda") else param
    reports = []
    for tid, formula in cor.formulas.items():
        gates = {f"{cor.family} range: {cor.range_text}": in_range}
        if phi is None:
            class_tag, functional = THEOREMS[tid]
            reports.append(BoundReport(claim_id, tid, functional, class_tag,
                                       f"{cor.family}:{param}", False, gates, notes=cor.notes))
            continue
        generic = bound_theorem(tid, phi)
        gates.update(generic.gates)
        value = formula(param)
        report = _report(claim_id, tid, phi.label, gates, generic.region_detail, value, cor.notes)
        if not generic.hypotheses_ok:
            raise CorollaryMismatch(f"{claim_id}: stated range holds at {param} but {tid} gates fail: {generic.gates}")
        _cross_check(claim_id, report, generic, value, phi.b123())
        reports.append(report)
    return reports


def bound_any(claim_id: str, phi: Optional[MindaPhi] = None, param=None) -> list[BoundReport]:
    """Dispatch on a claim id: theorems need ``phi``, corollaries a parameter."""
    if claim_id in THEOREMS:
        if phi is None:
            raise ValueError(f"{claim_id} needs a phi")
        return [bound_theorem(claim_id, phi)]
    return bound_corollary(claim_id, param)
