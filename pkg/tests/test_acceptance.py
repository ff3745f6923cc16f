"""Acceptance criteria 1-8, each at its stated tolerance and time limit.

Every check prints one ``[PASS]``/``[FAIL]`` line.  Run with
``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grids import ALPHA_STEP_GRID, janowski_grid, uniform_grid  # noqa: E402
from logtoeplitz.bounds import (  # noqa: E402
    FAMILY_COROLLARIES,
    JANOWSKI_COROLLARIES,
    THEOREMS,
    bound_corollary,
    bound_janowski,
    bound_theorem,
)
from logtoeplitz.classes import (  # noqa: E402
    MindaPhi,
    SchwarzSample,
    convex_from_schwarz,
    koebe,
    log_coefficients,
    sample_schwarz,
    starlike_from_schwarz,
)
from logtoeplitz.cli import main  # noqa: E402
from logtoeplitz.functionals import cubic_functional, t32_factored, toeplitz_det  # noqa: E402
from logtoeplitz.verify import (  # noqa: E402
    TOL_VIOLATION,
    check_attainment,
    efraimidis_witness_slacks,
    gate_windows,
    lemma_fuzz,
    scan_gate_window,
    search_supremum,
)

F = Fraction
INSTANCES = [MindaPhi.janowski(1, -1), MindaPhi.order_alpha(0.1), MindaPhi.power(0.9), MindaPhi.robertson(0.4)]


def gated(phi):
    return [t for t in THEOREMS if bound_theorem(t, phi).hypotheses_ok]


# --- criteria ---------------------------------------------------------------------------


def c1_exact_constants():
    expected = {"T1": F(5, 4), "T2": F(5, 16), "T3": F(13, 36), "T4": F(13, 144), "T5": F(84), "T6": F(4)}
    phi = MindaPhi.custom([2, 2, 2])
    got = {t: bound_theorem(t, phi).bound_exact for t in THEOREMS}
    return got == expected, f"{', '.join(f'{t}={v}' for t, v in got.items())}", 1.0


def c2_specialization():
    checked, worst = 0, 0.0

    def cmp(value, generic):
        nonlocal checked, worst
        checked += 1
        worst = max(worst, abs(float(value) - float(generic)))

    for cid, tid in JANOWSKI_COROLLARIES.items():
        for exact in (False, True):
            for A, B in janowski_grid(50, exact=exact):
                r = bound_janowski(cid, A, B)  # raises on gate or formula disagreement
                g = bound_theorem(tid, MindaPhi.janowski(A, B))
                if r.hypotheses_ok != g.hypotheses_ok:
                    return False, f"{cid} gate mismatch at {(A, B)}", 5.0
                if r.hypotheses_ok:
                    cmp(r.bound, g.bound)
    grids = {"C6": ALPHA_STEP_GRID, "C7": ALPHA_STEP_GRID,
             "C4a": uniform_grid(0, F(1, 7)), "C5a": uniform_grid(0, F(1, 7)),
             "SSb": uniform_grid(F(3, 4), 1), "CCb": uniform_grid(F(8, 9), 1),
             "Crlr": uniform_grid(F(5, 14), F(1, 2))}
    for cid, grid in grids.items():
        cor = FAMILY_COROLLARIES[cid]
        for p in grid:
            for r in bound_corollary(cid, p):
                g = bound_theorem(r.theorem, cor.phi(p))
                if not (r.hypotheses_ok and g.hypotheses_ok):
                    return False, f"{cid} gate mismatch at {p}", 5.0
                cmp(r.bound, g.bound)
    return worst <= 1e-12, f"{checked} comparisons, max |diff| = {worst:.2e}", 5.0


def c3_attainment():
    worst, pairs = 0.0, 0
    for phi in INSTANCES:
        for t in gated(phi):
            worst = max(worst, abs(check_attainment(t, phi)))
            pairs += 1
    return worst <= 1e-9, f"{pairs} gated pairs, max |gap| = {worst:.2e}", 5.0


def c4_no_violation():
    worst_excess, worst_ratio_t12, pairs = -np.inf, np.inf, 0
    for phi in INSTANCES:
        for t in gated(phi):
            r = search_supremum(t, phi, samples=2000, seed=7)
            pairs += 1
            worst_excess = max(worst_excess, r.empirical_sup - r.theoretical_bound)
            if t in ("T1", "T2"):
                worst_ratio_t12 = min(worst_ratio_t12, r.empirical_sup / r.theoretical_bound)
    ok = worst_excess <= TOL_VIOLATION and worst_ratio_t12 >= 0.95
    return ok, f"{pairs} pairs, max excess = {worst_excess:.2e}, min T1/T2 ratio = {worst_ratio_t12:.6f}", 120.0


def c5_lemma_fuzz():
    ps = lemma_fuzz("prokhorov_szynal", 10_000, seed=0)
    ef = lemma_fuzz("efraimidis", 10_000, seed=0)
    wit = efraimidis_witness_slacks()
    ok = ps <= 1e-9 and ef <= 1e-9 and all(abs(s) <= 1e-9 for s in wit.values())
    return ok, (f"PS max slack {ps:.2e}, Efraimidis max slack {ef:.2e}, "
                f"witness |slack| {max(abs(s) for s in wit.values()):.1e}"), 60.0


def c6_identities():
    rng = np.random.default_rng(6)
    phis = [MindaPhi.janowski(1, -1), MindaPhi.order_alpha(0.3), MindaPhi.power(0.6), MindaPhi.robertson(0.1),
            MindaPhi.custom([1.3, -0.8, 1.9])]
    worst = 0.0
    for _ in range(1000):
        phi = phis[int(rng.integers(len(phis)))]
        w = sample_schwarz(int(rng.integers(1, 5)), rng)
        s, c = starlike_from_schwarz(phi, w), convex_from_schwarz(phi, w)
        for f in (s, c):
            worst = max(worst, abs(toeplitz_det(f, 3, 2) - t32_factored(f)),
                        abs(cubic_functional(f) - 2 * log_coefficients(f, 3)[2]))
        n = np.arange(1, s.order + 1)
        worst = max(worst, float(np.max(np.abs(c.f.coeffs[1:] - s.f.coeffs[1:] / n))))
    kg = log_coefficients(koebe(7), 6)
    worst = max(worst, float(np.max(np.abs(kg - 1 / np.arange(1, 7)))))
    rec = starlike_from_schwarz(MindaPhi.janowski(1, -1), SchwarzSample.rotation(0.0, 7), 7)
    worst = max(worst, float(np.max(np.abs(log_coefficients(rec, 6) - 1 / np.arange(1, 7)))))
    return worst <= 1e-10, f"1000 members, max residual = {worst:.2e}", None


def c7_gate_windows():
    res = 1e-3
    found = {}
    for key, claim, fam in [("alpha T5&T6", "T5+T6", "alpha"), ("alpha T6", "T6", "alpha"),
                            ("beta T5", "T5", "beta"), ("beta T6", "T6", "beta")]:
        found[key] = gate_windows(scan_gate_window(claim, fam, res))
    t5_alpha = gate_windows(scan_gate_window("T5", "alpha", res))
    ok = (len(found["alpha T5&T6"]) == 1 and found["alpha T5&T6"][0][0] == 0
          and abs(found["alpha T5&T6"][0][1] - 1 / 7) <= 2e-3
          and abs(found["alpha T6"][0][1] - 1 / 7) <= 2e-3
          and abs(found["beta T5"][0][0] - 3 / 4) <= 2e-3 and found["beta T5"][0][1] == 1
          and abs(found["beta T6"][0][0] - 8 / 9) <= 2e-3 and found["beta T6"][0][1] == 1)
    detail = ", ".join(f"{k}: [{w[0][0]:.3f}, {w[0][1]:.3f}]" for k, w in found.items())
    detail += f" (T5 alone, alpha: [{t5_alpha[0][0]:.3f}, {t5_alpha[0][1]:.3f}])"
    return ok, detail, None


def c8_determinism():
    with tempfile.TemporaryDirectory() as d:
        outs = []
        for i in range(2):
            j, c = Path(d) / f"v{i}.json", Path(d) / f"t{i}.csv"
            codes = (main(["verify", "--all", "--phi", "alpha:0.1", "--samples", "300", "--refine-steps", "50",
                           "--seed", "9", "--format", "json", "-o", str(j)]),
                     main(["verify", "--all", "--phi", "alpha:0.1", "--samples", "300", "--refine-steps", "50",
                           "--seed", "9", "--workers", "2", "--format", "csv", "-o", str(c) + ".v"]),
                     main(["table", "--samples", "30", "--refine-steps", "10", "--seed", "9", "-o", str(c)]))
            if any(codes):
                return False, f"nonzero exit codes {codes}", None
            outs.append((j.read_bytes(), Path(str(c) + ".v").read_bytes(), c.read_bytes()))
    same = outs[0] == outs[1]
    return same, f"verify JSON, verify CSV (2 workers), table CSV byte-identical: {same}", None


CRITERIA = [
    (1, "exact constant reproduction", c1_exact_constants),
    (2, "specialization consistency", c2_specialization),
    (3, "sharpness attainment", c3_attainment),
    (4, "no-violation campaign", c4_no_violation),
    (5, "lemma fuzzing", c5_lemma_fuzz),
    (6, "structural identities", c6_identities),
    (7, "gate-window location", c7_gate_windows),
    (8, "determinism", c8_determinism),
]


def run_criterion(fn):
    t0 = time.perf_counter()
    ok, detail, limit = fn()
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; runtime {elapsed:.2f}s exceeds {limit:.0f}s"
    return ok, f"{detail}; {elapsed:.2f}s"


def _line(num, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num} ({name}): {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = run_criterion(fn)
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, fn in CRITERIA:
        ok, detail = run_criterion(fn)
        print(_line(num, name, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
