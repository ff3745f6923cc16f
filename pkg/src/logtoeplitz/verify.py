"""Numerical corroboration of the bounds.

``search_supremum`` samples Schwarz functions, evaluates the exact claim
functional on the generated class member and polishes the best starts with
Nelder-Mead in an unconstrained chart (softmax weights, raw angles).  Every
sample index owns its own seeded generator, so serial and process-parallel
runs see the same samples and merge to the same result.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from .bounds import LOG_T21, LOG_T22, THEOREMS, bound_theorem
from .classes import (
    MindaPhi,
    SchwarzSample,
    extremal,
    from_schwarz,
    sample_schwarz,
)
from .functionals import (
    efraimidis_bound,
    efraimidis_value,
    region_floor,
    toeplitz_det,
    toeplitz_det_log,
)

TOL_VIOLATION = 1e-9
SEARCH_ORDER = 4
DEFAULT_SAMPLES = 2000
DEFAULT_REFINE_STEPS = 300
DEFAULT_STARTS = 5
MIN_ATOMS, MAX_ATOMS = 2, 4


class HypothesisGateFailed(ValueError):
    pass


def claim_functional(tid: str, f) -> complex:
    """The (complex) quantity theorem `tid` bounds, evaluated on ``f``."""
    functional = THEOREMS[tid][1]
    if functional == LOG_T21:
        return toeplitz_det_log(f, 2, 1)
    if functional == LOG_T22:
        return toeplitz_det_log(f, 2, 2)
    return toeplitz_det(f, 3, 2)


def claim_value(tid: str, phi: MindaPhi, w: SchwarzSample) -> float:
    member = from_schwarz(THEOREMS[tid][0], phi, w, SEARCH_ORDER)
    return abs(claim_functional(tid, member))


def _gated_bound(tid: str, phi: MindaPhi) -> float:
    if tid not in THEOREMS:
        raise KeyError(f"unknown theorem {tid!r}")
    report = bound_theorem(tid, phi)
    if not report.hypotheses_ok:
        failed = [k for k, v in report.gates.items() if not v]
        raise HypothesisGateFailed(f"{tid} gates fail for {phi.label}: {failed}")
    return report.bound


def _sample_at(seed: int, index: int) -> SchwarzSample:
    rng = np.random.default_rng([seed, index])
    k = int(rng.integers(MIN_ATOMS, MAX_ATOMS + 1))
    return sample_schwarz(k, rng, order=SEARCH_ORDER)


def _evaluate_range(args) -> np.ndarray:
    tid, phi, seed, lo, hi = args
    return np.array([claim_value(tid, phi, _sample_at(seed, i)) for i in range(lo, hi)])


def _to_chart(w: SchwarzSample) -> np.ndarray:
    logits = np.log(np.clip(np.asarray(w.weights), 1e-300, None))
    return np.concatenate([logits, np.asarray(w.angles)])


def _from_chart(x: np.ndarray) -> SchwarzSample:
    k = x.size // 2
    logits = x[:k] - x[:k].max()
    weights = np.exp(logits)
    return SchwarzSample(tuple(weights / weights.sum()), tuple(x[k:]), SEARCH_ORDER)


@dataclass
class SearchResult:
    claim_id: str
    phi: str
    empirical_sup: float
    theoretical_bound: float
    best_params: SchwarzSample | None
    num_samples: int
    refinement_iterations: int
    seed: int
    near_maximizers: list = field(default_factory=list)

    @property
    def violation(self) -> bool:
        return self.empirical_sup > self.theoretical_bound + TOL_VIOLATION

    @property
    def attainment_gap(self) -> float:
        return self.theoretical_bound - self.empirical_sup

    def to_dict(self) -> dict:
        best = None
        if self.best_params is not None:
            best = {"weights": list(self.best_params.weights), "angles": list(self.best_params.angles)}
        return {
            "claim_id": self.claim_id,
            "phi": self.phi,
            "empirical_sup": self.empirical_sup,
            "theoretical_bound": self.theoretical_bound,
            "attainment_gap": self.attainment_gap,
            "violation": self.violation,
            "num_samples": self.num_samples,
            "refinement_iterations": self.refinement_iterations,
            "seed": self.seed,
            "best_params": best,
            "near_maximizers": [list(m) for m in self.near_maximizers],
        }


def search_supremum(claim_id: str, phi: MindaPhi, samples: int = DEFAULT_SAMPLES,
                    refine_steps: int = DEFAULT_REFINE_STEPS, seed: int = 0,
                    starts: int = DEFAULT_STARTS, workers: int = 1) -> SearchResult:
    """Empirical supremum of theorem `claim_id`'s functional over the class.

    With ``samples == 0`` only the extremal function is evaluated.
    """
    bound = _gated_bound(claim_id, phi)
    if samples <= 0:
        f = extremal(THEOREMS[claim_id][0], phi)
        value = abs(claim_functional(claim_id, f))
        return SearchResult(claim_id, phi.label, value, bound, SchwarzSample.rotation(math.pi / 2, SEARCH_ORDER),
                            0, 0, seed)

    if workers > 1:
        edges = np.linspace(0, samples, workers + 1).astype(int)
        jobs = [(claim_id, phi, seed, int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(_evaluate_range, jobs)))
    else:
        values = _evaluate_range((claim_id, phi, seed, 0, samples))

    best_idx = int(np.argmax(values))
    best_value = float(values[best_idx])
    best_sample = _sample_at(seed, best_idx)
    iterations = 0
    refined = []
    if refine_steps > 0:
        # stable sort: ties resolved by sample index
        order = np.argsort(-values, kind="stable")[:starts]
        for idx in order:
            x0 = _to_chart(_sample_at(seed, int(idx)))
            res = minimize(lambda x: -claim_value(claim_id, phi, _from_chart(x)), x0,
                           method="Nelder-Mead",
                           options={"maxiter": refine_steps, "xatol": 1e-12, "fatol": 1e-14})
            iterations += int(res.nit)
            w = _from_chart(res.x)
            v = claim_value(claim_id, phi, w)
            refined.append((v, w))
            if v > best_value:
                best_value, best_sample = v, w

    near = []
    for v, w in refined:
        if v >= best_value - 1e-6:
            c = w.schwarz
            key = (round(v, 9), *np.round([c[1], c[2], c[3]], 6).tolist())
            if all(np.max(np.abs(np.array(key[1:]) - np.array(k[1:]))) > 1e-4 for k in near):
                near.append(key)
    near_out = [(k[0], *[(z.real + 0.0, z.imag + 0.0) for z in k[1:]]) for k in near]
    return SearchResult(claim_id, phi.label, best_value, bound, best_sample, samples, iterations, seed, near_out)


def check_attainment(claim_id: str, phi: MindaPhi) -> float:
    """``|functional(extremal)| - bound``; zero when the bound is attained."""
    bound = _gated_bound(claim_id, phi)
    f = extremal(THEOREMS[claim_id][0], phi)
    return abs(claim_functional(claim_id, f)) - bound


# ---------------------------------------------------------------------------
# gate windows
# ---------------------------------------------------------------------------

FAMILIES = ("alpha", "beta", "lambda")


def family_phi(family: str, param) -> MindaPhi:
    if family == "alpha":
        return MindaPhi.order_alpha(param)
    if family == "beta":
        return MindaPhi.power(param)
    if family == "lambda":
        return MindaPhi.robertson(param)
    raise ValueError(f"unknown family {family!r}")


def family_grid(family: str, resolution: float) -> list[Fraction]:
    """Exact grid over the admissible parameter range of `family`."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    n = max(1, round(1 / resolution))
    if family == "alpha":      # [0, 1)
        return [Fraction(k, n) for k in range(n)]
    if family == "beta":       # (0, 1]
        return [Fraction(k, n) for k in range(1, n + 1)]
    if family == "lambda":     # (-1/2, 1/2]
        return [Fraction(-1, 2) + Fraction(k, n) for k in range(1, n + 1)]
    raise ValueError(f"unknown family {family!r}")


def scan_gate_window(claim_id: Union[str, Sequence[str]], family: str,
                     resolution: float = 1e-3) -> list[tuple[float, bool]]:
    """Gate truth values over the family grid.

    `claim_id` may be a theorem id or several ids (joint gate), e.g.
    ``("T5", "T6")`` or ``"T5+T6"``.
    """
    ids = claim_id.split("+") if isinstance(claim_id, str) else list(claim_id)
    out = []
    for p in family_grid(family, resolution):
        phi = family_phi(family, p)
        ok = all(bound_theorem(t, phi).hypotheses_ok for t in ids)
        out.append((float(p), ok))
    return out


def gate_windows(scan: Iterable[tuple[float, bool]]) -> list[tuple[float, float]]:
    """Maximal runs of passing grid points as ``(first, last)``."""
    windows, start, prev = [], None, None
    for p, ok in scan:
        if ok and start is None:
            start = p
        if not ok and start is not None:
            windows.append((start, prev))
            start = None
        prev = p
    if start is not None:
        windows.append((start, prev))
    return windows


# ---------------------------------------------------------------------------
# lemma fuzzing
# ---------------------------------------------------------------------------


def region_grid(mu_max: float = 6.0, mu_points: int = 49,
                offsets: Sequence[float] = (0.0, 0.1, 0.5, 2.0)) -> np.ndarray:
    """(mu, nu) points on and above the lower boundary of D1 u D2 u D3."""
    pts = [(mu, region_floor(mu) + off) for mu in np.linspace(-mu_max, mu_max, mu_points) for off in offsets]
    return np.array(pts)


def mu_grid() -> np.ndarray:
    re = np.linspace(-2.0, 3.0, 11)
    im = np.linspace(-1.5, 1.5, 7)
    return (re[:, None] + 1j * im[None, :]).ravel()


def _fuzz_samples(trials: int, seed: int, order: int) -> list[SchwarzSample]:
    rng = np.random.default_rng(seed)
    return [sample_schwarz(int(rng.integers(1, MAX_ATOMS + 1)), rng, order=order) for _ in range(trials)]


def prokhorov_szynal_slack(trials: int, seed: int = 0) -> float:
    samples = _fuzz_samples(trials, seed, order=3)
    c = np.array([[s.schwarz[1], s.schwarz[2], s.schwarz[3]] for s in samples])
    grid = region_grid()
    mu, nu = grid[:, 0][None, :], grid[:, 1][None, :]
    c1, c2, c3 = c[:, 0:1], c[:, 1:2], c[:, 2:3]
    vals = np.abs(c3 + mu * c1 * c2 + nu * c1 ** 3)
    return float(np.max(vals - np.abs(nu)))


def efraimidis_slack(trials: int, seed: int = 0, max_n: int = 4) -> float:
    samples = _fuzz_samples(trials, seed, order=max_n)
    p = np.array([s.caratheodory.coeffs for s in samples])
    mus = mu_grid()[None, :]
    bound = 2 * np.maximum(1.0, np.abs(2 * mus - 1))
    worst = -np.inf
    for n in range(2, max_n + 1):
        for k in range(1, n):
            vals = np.abs(p[:, n:n + 1] - mus * p[:, k:k + 1] * p[:, n - k:n - k + 1])
            worst = max(worst, float(np.max(vals - bound)))
    return worst


def lemma_fuzz(lemma_id: str, trials: int, seed: int = 0) -> float:
    """Largest observed ``value - bound``; must stay <= 0 up to roundoff."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if lemma_id == "prokhorov_szynal":
        return prokhorov_szynal_slack(trials, seed)
    if lemma_id == "efraimidis":
        return efraimidis_slack(trials, seed)
    raise KeyError(f"unknown lemma {lemma_id!r}")


def efraimidis_witness_slacks() -> dict:
    """Slack at the two equality witnesses (both should be 0)."""
    half_plane = SchwarzSample.rotation(0.0, order=4)
    two_fold = SchwarzSample((0.5, 0.5), (0.0, math.pi), order=4)
    return {
        "mu=1, p=(1+z)/(1-z)": efraimidis_value(half_plane, 2, 1, 1.0) - efraimidis_bound(1.0),
        "mu=1/2, p=(1+z^2)/(1-z^2)": efraimidis_value(two_fold, 2, 1, 0.5) - efraimidis_bound(0.5),
    }
