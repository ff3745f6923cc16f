import csv
import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from logtoeplitz.bounds import BoundReport
from logtoeplitz.cli import TABLE_COLUMNS, main, parse_phi, UsageError

GOLDEN = Path(__file__).parent / "golden" / "table_s40_r10_seed3.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_phi():
    phi, fam, p = parse_phi("alpha:1/7")
    assert fam == "alpha" and p == Fraction(1, 7) and phi.params == (Fraction(5, 7), -1)
    assert parse_phi("janowski:1,-1")[0].b123() == (2, 2, 2)
    assert parse_phi("custom:2,2,2")[0].params == (2, 2, 2)
    for bad in ["alpha", "alpha:", "alpha:x", "janowski:1", "beta:2", "beta:1,2", "foo:1", "janowski:-1,1"]:
        with pytest.raises(UsageError):
            parse_phi(bad)


def test_bound_examples(capsys):
    code, out, _ = run(capsys, "bound", "--phi", "janowski:1,-1", "--claim", "T5", "--format", "json")
    (rep,) = json.loads(out)
    assert code == 0 and rep["bound_exact"] == "84"
    code, out, _ = run(capsys, "bound", "--phi", "alpha:0", "--claim", "T4", "--format", "json")
    assert code == 0 and json.loads(out)[0]["bound_exact"] == "13/144"
    code, out, err = run(capsys, "bound", "--phi", "custom:2,1,0", "--claim", "T1")
    assert code == 2 and "|B2| >= B1" in err


def test_bound_json_round_trip(capsys):
    code, out, _ = run(capsys, "bound", "--phi", "alpha:1/10", "--all", "--format", "json")
    assert code == 0
    for d in json.loads(out):
        assert BoundReport.from_dict(d).to_dict() == d


def test_bound_corollaries(capsys):
    code, out, _ = run(capsys, "bound", "--phi", "alpha:0", "--claim", "C6", "--claim", "C4", "--format", "json")
    reps = json.loads(out)
    assert code == 0 and [r["claim_id"] for r in reps] == ["C6", "C6", "C4"]
    code, _, err = run(capsys, "bound", "--phi", "beta:1", "--claim", "C6")
    assert code == 1 and "alpha" in err
    code, out, _ = run(capsys, "bound", "--phi", "lambda:2/5", "--claim", "Crlr", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["bound_exact"] == "1276047/500000"


@pytest.mark.parametrize("argv", [
    ["bound", "--phi", "nope:1", "--claim", "T1"],
    ["bound", "--phi", "alpha:0.1"],
    ["bound", "--phi", "alpha:0.1", "--claim", "T9"],
    ["bound", "--claim", "T1"],
    ["verify", "--phi", "alpha:0.1", "--samples", "many"],
    ["extremal", "--phi", "alpha:0.1", "--order", "1"],
    ["frobnicate"],
])
def test_malformed_input_exits_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert run(capsys, "bound", "--phi", "alpha:0", "--claim", "T1", "-o", str(target))[0] == 1


def test_verify_t1(capsys):
    code, out, _ = run(capsys, "verify", "--phi", "janowski:1,-1", "--claim", "T1",
                       "--samples", "2000", "--seed", "7")
    (rec,) = json.loads(out)
    assert code == 0 and rec["violation"] is False
    assert rec["theoretical_bound"] == 1.25 and rec["empirical_sup"] >= 0.98 * 1.25


def test_verify_all_skips_ungated(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--phi", "beta:9/10", "--samples", "20", "--refine-steps", "5")
    recs = json.loads(out)
    assert code == 0
    assert [r["claim_id"] for r in recs if "skipped" in r] == ["T1", "T3"]
    assert all(not r["violation"] for r in recs if "skipped" not in r)


def test_verify_gate_failure_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--phi", "beta:9/10", "--claim", "T1", "--samples", "10")
    assert code == 2 and "gate" in err


def test_verify_lambda_against_corollary(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "T6", "--phi", "lambda:0.4", "--samples", "100",
                       "--refine-steps", "30", "--seed", "1")
    (rec,) = json.loads(out)
    (cor,) = rec["corollaries"]
    assert code == 0 and cor["claim_id"] == "Crlr"
    assert cor["bound"] == pytest.approx(rec["theoretical_bound"], rel=1e-12)
    assert rec["extremal_value"] == pytest.approx(rec["theoretical_bound"], abs=1e-9)


def test_verify_violation_exit_3(capsys, monkeypatch):
    from logtoeplitz import cli
    from logtoeplitz.verify import SearchResult

    monkeypatch.setattr(cli, "search_supremum",
                        lambda tid, phi, **kw: SearchResult(tid, phi.label, 2.0, 1.25, None, 1, 0, 0))
    assert run(capsys, "verify", "--phi", "janowski:1,-1", "--claim", "T1")[0] == 3


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GFT_SEED", "42")
    code, out, _ = run(capsys, "verify", "--phi", "alpha:0", "--claim", "T2", "--samples", "5", "--refine-steps", "0")
    assert code == 0 and json.loads(out)[0]["seed"] == 42
    monkeypatch.setenv("GFT_SEED", "x")
    assert run(capsys, "verify", "--phi", "alpha:0", "--claim", "T2")[0] == 1


def test_extremal_starlike(capsys):
    code, out, _ = run(capsys, "extremal", "--phi", "janowski:1,-1", "--kind", "starlike", "--order", "6",
                       "--format", "json")
    d = json.loads(out)
    a = {r["n"]: complex(r["re"], r["im"]) for r in d["a"]}
    assert code == 0 and sorted(a) == [2, 3, 4, 5, 6]
    # k_phi is the Koebe function rotated by w(z) = iz: a_n = n i^(n-1)
    for n, v in a.items():
        assert v == pytest.approx(n * 1j ** (n - 1), abs=1e-12)
    assert len(d["gamma"]) == 5


def test_extremal_convex_and_truncated(capsys):
    code, out, _ = run(capsys, "extremal", "--phi", "custom:1.5,0.5,0.25", "--kind", "convex", "--format", "json")
    g1 = json.loads(out)["gamma"][0]
    assert code == 0 and complex(g1["re"], g1["im"]) == pytest.approx(1.5j / 4, abs=1e-14)
    code, out, _ = run(capsys, "extremal", "--phi", "alpha:0", "--order", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [(r["coefficient"], r["n"]) for r in rows] == [("a", "2"), ("gamma", "1")]


def test_table_golden(capsys, tmp_path):
    out = tmp_path / "t.csv"
    assert run(capsys, "table", "--samples", "40", "--refine-steps", "10", "--seed", "3", "-o", str(out))[0] == 0
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_table_contents():
    rows = list(csv.DictReader(io.StringIO(GOLDEN.read_text())))
    assert tuple(rows[0]) == TABLE_COLUMNS
    by = {(r["claim_id"], r["param"]): r for r in rows}
    assert [float(by[(c, "")]["bound"]) for c in ("CS:T1", "CS:T3", "CS:T5")] == [1.25, 13 / 36, 84.0]
    assert [float(by[(c, "")]["bound"]) for c in ("CC:T2", "CC:T4", "CC:T6")] == [5 / 16, 13 / 144, 4.0]
    assert float(by[("SSb:T5", "1")]["bound"]) == 84.0
    for r in rows:
        if r["gate_ok"] == "True":
            assert float(r["attainment"]) == pytest.approx(float(r["bound"]), abs=1e-9)
            assert float(r["empirical_sup"]) <= float(r["bound"]) + 1e-9
        else:
            assert r["bound"] == r["attainment"] == ""
