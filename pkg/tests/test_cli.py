import argparse
import json

import numpy as np
import pytest

from gyblink.braidkit import BraidWord
from gyblink.cli import main, parse_int_range, parse_n_spec
from gyblink.gybcore import GybOperator, GybType, operator_to_json
from gyblink.skein_oracle import format_pd, pd_from_braid


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_parse_n_spec():
    assert parse_n_spec("5") == [5]
    assert parse_n_spec("7,3,5") == [3, 5, 7]
    assert parse_n_spec("3..13") == [3, 5, 7, 9, 11, 13]
    for bad in ("4", "3..8", "9..3", "x", "1"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_n_spec(bad)


def test_parse_int_range():
    assert parse_int_range("3..5") == [3, 4, 5]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_int_range("0..2")


def test_verify_single_n(capsys):
    code, out = run(capsys, "verify", "--N", "5", "--format", "structured")
    assert code == 0
    rows = records(out)
    assert {r["check"] for r in rows} == {
        "gYBE",
        "far-commutativity",
        "enhancement",
        "minimal polynomial",
        "spectrum",
        "category synthesis",
    }
    assert all(r["passed"] for r in rows)


def test_verify_range_table(capsys):
    code, out = run(capsys, "verify", "--N", "3..13")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 36 and all(line.startswith("PASS") for line in lines)


def test_verify_even_n_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--N", "4"])
    assert exc.value.code == 2


def test_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("GYBLINK_TOL", "1e-30")
    code, out = run(capsys, "verify", "--N", "5", "--format", "structured")
    assert code == 1
    assert all(r["tol"] == 1e-30 for r in records(out))


def test_invariant_trefoil_matches_oracle(capsys):
    code, out = run(capsys, "invariant", "--N", "5", "trefoil", "--format", "structured")
    (row,) = records(out)
    assert code == 0 and row["scheme"] == "unit-knot" and row["writhe"] == 3
    code, out = run(capsys, "compare", "--N", "5", "--links", "trefoil", "--format", "structured")
    (cmp_row,) = records(out)
    assert np.allclose(row["normalized"], cmp_row["oracle"], atol=1e-8)


def test_invariant_word_and_unknot(capsys):
    _, out = run(capsys, "invariant", "--N", "7", "--word", "1 -2 1 -2", "--format", "structured")
    (row,) = records(out)
    assert row["strands"] == 3 and row["components"] == 1
    _, out = run(capsys, "invariant", "--N", "5", "unknot", "--format", "structured")
    (row,) = records(out)
    assert np.allclose(row["normalized"], [1.0, 0.0], atol=1e-12)


def test_invariant_unknown_link(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "--N", "5", "nosuchknot"])
    assert exc.value.code == 2


def test_compare_all(capsys):
    code, out = run(capsys, "compare", "--N", "3,5,7", "--format", "structured")
    rows = records(out)
    assert code == 0 and len(rows) == 15
    assert all(r["deviation"] < 1e-8 for r in rows)
    assert [(r["N"], r["link"]) for r in rows] == sorted((r["N"], r["link"]) for r in rows)


def test_compare_selected_links(capsys):
    code, out = run(capsys, "compare", "--N", "5", "--links", "trefoil,hopf")
    assert code == 0 and len(out.splitlines()) == 2


def test_compare_wrong_sign_is_reported(capsys):
    code, out = run(capsys, "compare", "--N", "5", "--links", "trefoil,hopf", "--sign", "-1")
    assert code == 1 and "FAIL" in out


def test_compare_pd_file(capsys, tmp_path):
    path = tmp_path / "trefoil.pd"
    path.write_text(format_pd(pd_from_braid(BraidWord(2, (1, 1, 1)))))
    code, out = run(capsys, "compare", "--N", "5", "--pd", str(path), "--format", "structured")
    (row,) = records(out)
    assert code == 0 and np.allclose(row["oracle"], [1.0, 0.0], atol=1e-10)


def test_bench_small(capsys):
    code, out = run(capsys, "bench", "--n", "3", "--format", "structured")
    rows = records(out)
    assert code == 0 and rows[0]["agreement"] < 1e-12


def test_bench_refuses_unstructured_operator(capsys, tmp_path):
    rng = np.random.default_rng(0)
    op = GybOperator(GybType(2, 3, 1), rng.standard_normal((8, 8)) + 0j)
    path = tmp_path / "op.json"
    path.write_text(operator_to_json(op))
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--n", "3", "--operator", str(path)])
    assert exc.value.code == 2


def test_catalog_listing(capsys):
    code, out = run(capsys, "catalog", "--format", "structured")
    names = [r["link"] for r in records(out)]
    assert code == 0 and names == sorted(names) and "figure8" in names


def test_structured_output_is_reproducible(capsys):
    first = run(capsys, "compare", "--N", "3,5", "--format", "structured")
    second = run(capsys, "compare", "--N", "3,5", "--format", "structured")
    assert first == second
    first = run(capsys, "invariant", "--N", "7", "--format", "structured", "--seed", "3")
    assert first == run(capsys, "invariant", "--N", "7", "--format", "structured", "--seed", "3")
