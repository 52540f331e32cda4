import json
import subprocess
import sys
from pathlib import Path

import pytest

from motivic_yamamoto.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from motivic_yamamoto.coaction import dr_poset
from motivic_yamamoto.fixtures import example1, load_poset, poset_from_json, w5, wedge
from motivic_yamamoto.schur import tableau_from_json
from motivic_yamamoto.words import sum_from_json
from motivic_yamamoto.yamamoto import expand

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_tot_lists_nine_extensions(capsys):
    code, rep = report(capsys, "tot", FIX / "w5.json")
    assert code == EXIT_OK and rep["outputs"]["count"] == 9
    assert len({tuple(e["order"]) for e in rep["outputs"]["extensions"]}) == 9


def test_verify_thm1_verdict(capsys):
    code, rep = report(capsys, "verify-thm1", "--max-size", 5, "--labels", "0,1")
    assert code == EXIT_OK
    assert rep["verdict"].startswith("all instances verified")
    assert all(s["instances"] > 0 for s in rep["outputs"]["sweeps"])


def test_expand_wedge_numeric(capsys):
    code, rep = report(capsys, "expand", FIX / "wedge.json", "--numeric", "--trunc", 2000)
    assert code == EXIT_OK
    assert rep["outputs"]["summary"].startswith("2·I(0;1,1,0;1) ≈ 2.39494")
    num = rep["outputs"]["numeric"]
    assert abs(num["value"] - 2 * 1.2020569031595942) <= num["tail_bound"]


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "tot", tmp_path / "missing.json")[0] == EXIT_INPUT
    assert run(capsys, "nonsense")[0] == EXIT_INPUT
    assert run(capsys, "expand", "chain(0,1)")[0] == EXIT_INPUT
    code, rep = report(capsys, "validate", "chain(0,1)")
    assert code == EXIT_INPUT and rep["outputs"]["violations"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "tot", bad)
    assert code == EXIT_INPUT and err.startswith("error:")
    assert run(capsys, "numeric-eval", "zeta(2)", "--compare", "zeta(3)")[0] == EXIT_FAIL
    assert run(capsys, "numeric-eval", "zeta(1,2)", "--compare", "zeta(3)")[0] == EXIT_OK
    assert run(capsys, "dr", "I(0;1,0;1)@std", "--r", 3)[0] == EXIT_INPUT


def test_validate_tableau(capsys):
    code, rep = report(capsys, "validate", "--tableau", FIX / "square_2.json")
    assert code == EXIT_OK and rep["outputs"]["diagonal_constant"]
    assert tableau_from_json(rep["inputs"]["tableau"]).weight == 6


def test_outputs_round_trip(capsys):
    _, rep = report(capsys, "expand", FIX / "w5.json")
    assert poset_from_json(rep["inputs"]["poset"]).order == w5().order
    assert sum_from_json(rep["outputs"]["result"]) == expand(w5()).words
    _, rep = report(capsys, "dr", "example1(5)", "--r", 3, "--mode", "closed", "--bottom", "x0", "--top", "x6'")
    assert sum_from_json(rep["outputs"]["result"]) == dr_poset(example1(5), r=3, mode="closed").terms
    assert len(rep["outputs"]["closed_terms"]) == 9
    for row in rep["outputs"]["closed_terms"]:
        sum_from_json(row["left"]), sum_from_json(row["right"]), poset_from_json(row["contracted"])
    _, rep = report(capsys, "schur-to-poset", "[[2,1],[1,2]]")
    assert poset_from_json(rep["outputs"]["poset"]).order == example1(3).order


def test_reports_are_deterministic(capsys):
    argv = ["coproduct", "wedge", "--mode", "via_thm2"]
    a, b = report(capsys, *argv)[1], report(capsys, *argv)[1]
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_output_flag_and_latex_from_report(capsys, tmp_path):
    out = tmp_path / "d.json"
    assert run(capsys, "coproduct", "I(0;1,0;1)@std", "-o", out)[0] == EXIT_OK
    assert json.loads(out.read_text())["outputs"]["level"] == "a"
    code, text, _ = run(capsys, "latex", out)
    assert code == EXIT_OK
    assert text.strip() == r"I^{\mathfrak{a}}(0;1,0;1)\otimes 1 + 1\otimes I^{\mathfrak{m}}(0;1,0;1)"
    code, text, _ = run(capsys, "latex", "I(0;1,0;1)@std", "--zeta-notation")
    assert text.strip() == r"-\zeta^{\mathfrak{m}}(2)"


def test_schur_numeric_agreement(capsys):
    code, rep = report(capsys, "schur-to-poset", FIX / "square_2.json", "--numeric", "--trunc", 1000)
    assert code == EXIT_OK and rep["outputs"]["numeric"]["agree"]


def test_figures(capsys, tmp_path):
    fig = tmp_path / "conv.png"
    assert run(capsys, "numeric-eval", "zeta(2)", "--trunc", 256, "--figure", fig)[0] == EXIT_OK
    assert fig.stat().st_size > 0


@pytest.mark.parametrize("name", sorted(p.name for p in FIX.glob("*.json") if p.name != "square_2.json"))
def test_shipped_fixtures_load(name):
    assert len(load_poset(str(FIX / name))) > 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "motivic_yamamoto", "tot", "wedge"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["outputs"]["count"] == 2
