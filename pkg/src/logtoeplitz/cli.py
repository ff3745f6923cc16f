"""Command line front end.

Exit codes: 0 success, 1 malformed input / IO error, 2 a requested claim's
hypothesis gate failed, 3 a verification run found a bound violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .bounds import (
    FAMILY_COROLLARIES,
    FUNCTIONAL_NAMES,
    JANOWSKI_COROLLARIES,
    THEOREMS,
    BoundReport,
    bound_corollary,
    bound_theorem,
    corollary_theorems,
)
from .classes import CONVEX, STARLIKE, InvalidPhi, MindaPhi, extremal, log_coefficients
from .verify import (
    DEFAULT_REFINE_STEPS,
    DEFAULT_SAMPLES,
    HypothesisGateFailed,
    claim_functional,
    search_supremum,
)

EXIT_OK, EXIT_INPUT, EXIT_GATE, EXIT_VIOLATION = 0, 1, 2, 3

TABLE_COLUMNS = ("claim_id", "family", "param", "gate_ok", "bound", "attainment", "empirical_sup", "gap", "seed")
TABLE_SAMPLES = 200
TABLE_REFINE_STEPS = 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# phi specs
# ---------------------------------------------------------------------------


def _number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def parse_phi(spec: str) -> tuple[MindaPhi, str, object]:
    """Parse ``kind:params`` into ``(phi, family, family_param)``."""
    kind, sep, rest = spec.partition(":")
    if not sep or not rest:
        raise UsageError(f"phi spec must look like kind:params, got {spec!r}")
    nums = [_number(t) for t in rest.split(",")]
    try:
        if kind == "janowski":
            if len(nums) != 2:
                raise UsageError("janowski takes A,B")
            return MindaPhi.janowski(*nums), "janowski", tuple(nums)
        if kind == "custom":
            return MindaPhi.custom(nums), "custom", tuple(nums)
        if len(nums) != 1:
            raise UsageError(f"{kind} takes a single parameter")
        if kind == "alpha":
            return MindaPhi.order_alpha(nums[0]), "alpha", nums[0]
        if kind == "beta":
            return MindaPhi.power(nums[0]), "beta", nums[0]
        if kind == "lambda":
            return MindaPhi.robertson(nums[0]), "lambda", nums[0]
    except InvalidPhi as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown phi kind {kind!r}")


def _janowski_params(family: str, param):
    if family == "janowski":
        return param
    if family == "alpha":
        return (1 - 2 * param, Fraction(-1))
    return None


def corollary_reports(claim: str, family: str, param) -> list[BoundReport]:
    """Evaluate corollary `claim` at the parameter carried by the phi spec."""
    if claim in JANOWSKI_COROLLARIES:
        ab = _janowski_params(family, param)
        if ab is None:
            raise UsageError(f"{claim} needs a janowski or alpha phi")
        return bound_corollary(claim, ab)
    cor = FAMILY_COROLLARIES[claim]
    if cor.family == "fixed":
        return bound_corollary(claim)
    if cor.family != family:
        raise UsageError(f"{claim} needs a {cor.family} phi, got {family}")
    return bound_corollary(claim, param)


def matching_corollaries(tid: str, family: str, param) -> list[BoundReport]:
    """Corollary reports for theorem `tid` that apply to this family point."""
    out = []
    if family in ("janowski", "alpha"):
        for cid, t in JANOWSKI_COROLLARIES.items():
            if t == tid:
                out.extend(corollary_reports(cid, family, param))
    for cid, cor in FAMILY_COROLLARIES.items():
        if cor.family == family and tid in cor.formulas:
            out.extend(r for r in bound_corollary(cid, param) if r.theorem == tid)
    return out


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(text: str, path: Optional[str]):
    if path:
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: "" if r.get(k) is None else r.get(k) for k in columns})
    return buf.getvalue()


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_bound(args) -> int:
    phi, family, param = parse_phi(args.phi)
    claims = list(THEOREMS) if args.all else args.claim
    if not claims:
        raise UsageError("give --claim or --all")
    reports = []
    for c in claims:
        if c in THEOREMS:
            reports.append(bound_theorem(c, phi))
        elif c in JANOWSKI_COROLLARIES or c in FAMILY_COROLLARIES:
            reports.extend(corollary_reports(c, family, param))
        else:
            raise UsageError(f"unknown claim {c!r}")
    dicts = [r.to_dict() for r in reports]
    if args.format == "json":
        _emit(_json(dicts), args.output)
    elif args.format == "csv":
        rows = [dict(d, gates=";".join(f"{k}={v}" for k, v in d["gates"].items())) for d in dicts]
        _emit(_csv(rows, ("claim_id", "theorem", "functional", "class", "phi", "hypotheses_ok",
                          "bound", "bound_exact", "gates")), args.output)
    else:
        lines = []
        for r in reports:
            if r.hypotheses_ok:
                exact = f" = {r.bound_exact}" if r.bound_exact is not None else ""
                lines.append(f"{r.claim_id} [{r.theorem}, {r.class_tag}] {FUNCTIONAL_NAMES[r.functional_id]} <= {r.bound!r}{exact}")
            else:
                failed = ", ".join(k for k, v in r.gates.items() if not v)
                lines.append(f"{r.claim_id} [{r.theorem}, {r.class_tag}] no claim: gate failed: {failed}")
        _emit("\n".join(lines) + "\n", args.output)
    if not all(r.hypotheses_ok for r in reports):
        for r in reports:
            for k, v in r.gates.items():
                if not v:
                    print(f"{r.claim_id}: gate failed: {k}", file=sys.stderr)
        return EXIT_GATE
    return EXIT_OK


def _verify_theorems(claims, all_flag) -> list[str]:
    if all_flag:
        return list(THEOREMS)
    out = []
    for c in claims or []:
        if c in THEOREMS:
            out.append(c)
        elif c in JANOWSKI_COROLLARIES or c in FAMILY_COROLLARIES:
            out.extend(t for t in corollary_theorems(c) if t not in out)
        else:
            raise UsageError(f"unknown claim {c!r}")
    if not out:
        raise UsageError("give --claim or --all")
    return out


def cmd_verify(args) -> int:
    phi, family, param = parse_phi(args.phi)
    records, gate_failed = [], False
    for tid in _verify_theorems(args.claim, args.all):
        report = bound_theorem(tid, phi)
        if not report.hypotheses_ok:
            if not args.all:
                gate_failed = True
                print(f"{tid}: gate failed for {phi.label}: "
                      f"{[k for k, v in report.gates.items() if not v]}", file=sys.stderr)
            records.append({"claim_id": tid, "phi": phi.label, "skipped": "hypothesis gate failed",
                            "gates": report.gates})
            continue
        res = search_supremum(tid, phi, samples=args.samples, refine_steps=args.refine_steps,
                              seed=args.seed, workers=args.workers)
        rec = res.to_dict()
        f = extremal(THEOREMS[tid][0], phi)
        rec["extremal_value"] = abs(claim_functional(tid, f))
        rec["corollaries"] = [{"claim_id": r.claim_id, "hypotheses_ok": r.hypotheses_ok, "bound": r.bound}
                              for r in matching_corollaries(tid, family, param)]
        records.append(rec)
    if args.format == "json":
        _emit(_json(records), args.output)
    elif args.format == "csv":
        cols = ("claim_id", "phi", "empirical_sup", "theoretical_bound", "attainment_gap", "violation",
                "num_samples", "refinement_iterations", "seed", "skipped")
        _emit(_csv(records, cols), args.output)
    else:
        lines = []
        for r in records:
            if "skipped" in r:
                lines.append(f"{r['claim_id']} {r['phi']}: skipped ({r['skipped']})")
            else:
                lines.append(f"{r['claim_id']} {r['phi']}: sup={r['empirical_sup']!r} bound={r['theoretical_bound']!r} "
                             f"gap={r['attainment_gap']:.3e} violation={r['violation']}")
        _emit("\n".join(lines) + "\n", args.output)
    if any(r.get("violation") for r in records):
        return EXIT_VIOLATION
    return EXIT_GATE if gate_failed else EXIT_OK


def cmd_extremal(args) -> int:
    phi, _, _ = parse_phi(args.phi)
    if args.order < 2:
        raise UsageError("order must be >= 2")
    tag = STARLIKE if args.kind == "starlike" else CONVEX
    f = extremal(tag, phi, max(args.order, 4))
    a = [(n, complex(f.a(n))) for n in range(2, args.order + 1)]
    g = list(enumerate(log_coefficients(f, args.order - 1), start=1)) if args.order > 1 else []
    if args.format == "json":
        payload = {
            "phi": phi.label, "kind": args.kind, "order": args.order,
            "a": [{"n": n, "re": z.real, "im": z.imag} for n, z in a],
            "gamma": [{"n": n, "re": complex(z).real, "im": complex(z).imag} for n, z in g],
        }
        _emit(_json(payload), args.output)
    else:
        rows = [{"coefficient": "a", "n": n, "re": _fmt(z.real), "im": _fmt(z.imag)} for n, z in a]
        rows += [{"coefficient": "gamma", "n": n, "re": _fmt(complex(z).real), "im": _fmt(complex(z).imag)} for n, z in g]
        if args.format == "csv":
            _emit(_csv(rows, ("coefficient", "n", "re", "im")), args.output)
        else:
            lines = []
            for r in rows:
                sign, im = ("-", r["im"][1:]) if r["im"].startswith("-") else ("+", r["im"])
                lines.append(f"{r['coefficient']}_{r['n']} = {r['re']} {sign} {im}i\n")
            _emit("".join(lines), args.output)
    return EXIT_OK


F = Fraction

TABLE_POINTS = [
    ("CS", None), ("CC", None),
    *[(c, a) for c in ("C6", "C7") for a in (F(0), F(1, 10), F(1, 4), F(1, 2))],
    *[(c, a) for c in ("C4a", "C5a") for a in (F(0), F(1, 14), F(1, 7))],
    *[("SSb", b) for b in (F(3, 4), F(9, 10), F(1))],
    *[("CCb", b) for b in (F(8, 9), F(19, 20), F(1))],
    *[("Crlr", l) for l in (F(5, 14), F(2, 5), F(1, 2))],
    *[(c, ab) for c in JANOWSKI_COROLLARIES for ab in ((F(1), F(-1)), (F(1, 2), F(-1)))],
]


def _param_text(p) -> str:
    if p is None:
        return ""
    if isinstance(p, tuple):
        return ";".join(str(x) for x in p)
    return str(p)


def build_table(samples: int, refine_steps: int, seed: int) -> list[dict]:
    rows = []
    for cid, p in TABLE_POINTS:
        family = "janowski" if cid in JANOWSKI_COROLLARIES else FAMILY_COROLLARIES[cid].family
        for r in bound_corollary(cid, p):
            row = {"claim_id": f"{cid}:{r.theorem}", "family": family, "param": _param_text(p),
                   "gate_ok": r.hypotheses_ok, "bound": None, "attainment": None,
                   "empirical_sup": None, "gap": None, "seed": seed}
            if r.hypotheses_ok:
                phi = _row_phi(cid, p)
                f = extremal(r.class_tag, phi)
                res = search_supremum(r.theorem, phi, samples=samples, refine_steps=refine_steps, seed=seed)
                row.update(bound=r.bound, attainment=abs(claim_functional(r.theorem, f)),
                           empirical_sup=res.empirical_sup, gap=r.bound - res.empirical_sup)
            rows.append(row)
    return rows


def _row_phi(cid, p) -> MindaPhi:
    if cid in JANOWSKI_COROLLARIES:
        return MindaPhi.janowski(*p)
    return FAMILY_COROLLARIES[cid].phi(p)


def cmd_table(args) -> int:
    rows = build_table(args.samples, args.refine_steps, args.seed)
    if args.format == "json":
        _emit(_json(rows), args.output)
    else:
        fmt_rows = [{**r, "bound": _fmt(r["bound"]), "attainment": _fmt(r["attainment"]),
                     "empirical_sup": _fmt(r["empirical_sup"]), "gap": _fmt(r["gap"])} for r in rows]
        _emit(_csv(fmt_rows, TABLE_COLUMNS), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("GFT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"GFT_SEED must be an integer, got {raw!r}")


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    p = _Parser(prog="logtoeplitz", description="Toeplitz determinants of logarithmic coefficients "
                                                "for Ma-Minda starlike and convex classes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("json", "csv", "text"), default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--output", "-o", help="write here instead of stdout")

    b = sub.add_parser("bound", help="evaluate theorem / corollary bounds")
    b.add_argument("--phi", required=True, help="janowski:A,B | alpha:a | beta:b | lambda:l | custom:B1,B2,B3[,...]")
    b.add_argument("--claim", action="append", help="T1..T6 or a corollary id; repeatable")
    b.add_argument("--all", action="store_true", help="all six theorems")
    common(b)
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="search for the supremum of each claim functional")
    v.add_argument("--phi", required=True)
    v.add_argument("--claim", action="append")
    v.add_argument("--all", action="store_true", help="every theorem whose gates pass")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--refine-steps", type=int, default=DEFAULT_REFINE_STEPS)
    v.add_argument("--seed", type=int, default=default_seed)
    v.add_argument("--workers", type=int, default=1)
    common(v, default="json")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extremal", help="coefficients of k_phi / h_phi")
    e.add_argument("--phi", required=True)
    e.add_argument("--kind", choices=("starlike", "convex"), default="starlike")
    e.add_argument("--order", type=int, default=10)
    common(e)
    e.set_defaults(func=cmd_extremal)

    t = sub.add_parser("table", help="corollary reproduction table")
    t.add_argument("--samples", type=int, default=TABLE_SAMPLES)
    t.add_argument("--refine-steps", type=int, default=TABLE_REFINE_STEPS)
    t.add_argument("--seed", type=int, default=default_seed)
    common(t, formats=("csv", "json"), default="csv")
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        parser = build_parser(_default_seed())
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"logtoeplitz: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisGateFailed as exc:
        print(f"logtoeplitz: {exc}", file=sys.stderr)
        return EXIT_GATE
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
