import importlib
import json
import re
from pathlib import Path

import pytest

from src.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--ambient", "toeplitz", "--n", "2", "1*{1} + 2*{1,2}")
    assert code == 0
    assert out == "2*{1,2}"


def test_reduce_json(capsys):
    code, out, _ = run(capsys, "reduce", "--ambient", "sphere", "--n", "2", "5*{}", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"ambient": "sphere", "n": 2, "tokens": []}


def test_equiv(capsys):
    assert run(capsys, "equiv", "--ambient", "cpn", "--n", "2", "{1}+{1,2}", "{1,2}")[1] == "false"
    assert run(capsys, "equiv", "--ambient", "toeplitz", "--n", "2", "{1}+{1,2}", "{1,2}")[1] == "true"


def test_rho_text(capsys):
    code, out, _ = run(capsys, "rho", "--ambient", "sphere", "--n", "2", "2*{1,2}")
    assert code == 0
    assert out.splitlines() == ["{1}: ∞", "{2}: ∞", "{1,2}: 2"]


def test_realize_json(capsys):
    code, out, _ = run(capsys, "realize", "--ambient", "toeplitz", "--n", "2", "2*{1,2}", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert (data["rows"], data["cols"], data["is_projection"]) == (2, 2, True)


@pytest.mark.parametrize("blocks, expected", [("P3", "(0,3)"), ("I", "(1,∞)"), ("P-2,P3,0", "(1,∞)")])
def test_classify_n1(capsys, blocks, expected):
    assert run(capsys, "classify-n1", "--diag", blocks) == (0, expected, "")


def test_classify_n1_bad_block(capsys):
    code, out, err = run(capsys, "classify-n1", "--diag", "Q2")
    assert code == 1 and out == ""
    assert "bad block" in err


def test_k0_class(capsys):
    assert run(capsys, "k0-class", "--n", "3", "--slot", "3", "--k", "2")[1] == "(-1,2,0)"
    assert run(capsys, "k0-class", "--n", "2", "--v", "3")[1] == "(-3,1)"
    assert run(capsys, "k0-class", "--n", "3", "--sum", "2*{1,2}")[1] == "(0,2,0)"
    code, _, err = run(capsys, "k0-class", "--n", "1", "--v", "2")
    assert code == 1 and "n >= 2" in err


def test_cone(capsys):
    code, out, _ = run(capsys, "cone", "--coords", "-4", "2", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["verdict"] == "in"
    assert sum(item["mult"] for item in data["witness"]) == 3
    assert run(capsys, "cone", "--coords", "0", "-1", "0")[1] == "unknown"


def test_stable_rank(capsys):
    assert run(capsys, "sr", "--n", "4")[1] == "3"
    code, out, _ = run(capsys, "sr", "--n", "2", "--format", "json")
    assert json.loads(out)["gl0_threshold"] == 4


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--n", "1")
    assert out.splitlines() == ["K(l2(Z>=))", "C(T)"]


def test_nu(capsys):
    assert run(capsys, "nu", "--m", "2", "--l", "3")[1] == "6"
    code, out, _ = run(capsys, "nu", "--table", "2", "2")
    assert out.splitlines() == ["1 1", "1 2", "1 3"]
    assert run(capsys, "nu", "--m", "2")[0] == 1


def test_linebundle_json(capsys):
    code, out, _ = run(capsys, "linebundle", "--n", "3", "--k", "-1", "--format", "json", "--realize")
    data = json.loads(out)
    assert code == 0
    assert data["k0"] == [1, 1, 1]
    assert data["realized"]["size"] == 3


def test_json_output_is_deterministic(capsys):
    argv = ("linebundle", "--n", "4", "--k", "-2", "--format", "json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_gadget_catalog(capsys):
    code, out, _ = run(capsys, "gadgets", "--n", "1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 10


def test_verify_selected_suites(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--bounds", "quick", "--suite", "nu",
                       "--suite", "structure", "--format", "json")
    assert code == 0
    assert json.loads(out)["summary"]["status"] == "pass"


def test_verify_unknown_profile(capsys):
    code, _, err = run(capsys, "verify", "--n", "1", "--bounds", "nope")
    assert code == 1
    assert "unknown bounds profile" in err


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "nested" / "nu.txt"
    code, out, _ = run(capsys, "nu", "--m", "1", "--l", "4", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "4\n"


def test_usage_error_exits_with_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reduce", "--n", "2", "{1}"])
    assert exc.value.code == 1


def test_console_entry_point_resolves_to_main():
    setup_text = (Path(__file__).resolve().parent.parent / "setup.py").read_text()
    target = re.search(r'"qps=([\w.]+):(\w+)"', setup_text)
    assert target is not None
    module, attr = target.groups()
    assert getattr(importlib.import_module(module), attr) is main
    assert build_parser().prog == "qps"
