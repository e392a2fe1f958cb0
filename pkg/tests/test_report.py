import json

from src.report import CheckResult, VerificationReport


def make_report():
    report = VerificationReport()
    report.check("gadgets.U_prop3.unitary", True, n=1, slot=1)
    report.check("gadgets.U_kN.unitary", False, "not unitary", n=2, k=3, N=1)
    report.add(CheckResult("nu.spot"))
    report.note("a note")
    report.note("a note")
    return report


def test_summary_groups_by_prefix():
    summary = make_report().get_summary()
    assert summary["total"] == 3
    assert summary["failed"] == 1
    assert summary["groups"] == {"gadgets": {"total": 2, "passed": 1}, "nu": {"total": 1, "passed": 1}}
    assert summary["status"] == "fail"


def test_labels_and_notes():
    report = make_report()
    assert report.failures[0].label() == "gadgets.U_kN.unitary(n=2, k=3, N=1)"
    assert report.results[2].label() == "nu.spot"
    assert report.notes == ["a note"]


def test_merge_keeps_order():
    left, right = VerificationReport(), make_report()
    left.check("first", True)
    left.merge(right)
    assert [r.name for r in left.results][:2] == ["first", "gadgets.U_prop3.unitary"]
    assert not left.passed


def test_save_and_markdown(tmp_path):
    report = make_report()
    path = tmp_path / "out" / "report.json"
    report.save(str(path))
    data = json.loads(path.read_text())
    assert data["summary"]["failed"] == 1
    assert data["checks"][1]["detail"] == "not unitary"
    markdown = report.to_markdown("Run")
    assert markdown.startswith("# Run")
    assert "| gadgets | 1 | 2 |" in markdown
    assert "`gadgets.U_kN.unitary(n=2, k=3, N=1)`: not unitary" in markdown


def test_print_summary(capsys):
    make_report().print_summary(verbose=True)
    out = capsys.readouterr().out
    assert "[GADGETS] ✗ 1/2" in out
    assert "1 CHECK(S) FAILED (2/3)" in out
