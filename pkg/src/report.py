# src/report.py
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional


@dataclass
class CheckResult:
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    detail: str = ""
    counterexample: Optional[dict] = None

    def label(self) -> str:
        if not self.params:
            return self.name
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({args})"


class VerificationReport:
    """
    Collects pass/fail records of identity checks.

    Records keep insertion order, so a suite that is run in a fixed order (or
    aggregated in a fixed order after a parallel run) always serializes to the same
    bytes.
    """

    def __init__(self, output_file="experiments/results/verification_report.json"):
        self.output_file = output_file
        self.results: List[CheckResult] = []
        self.notes: List[str] = []

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def check(self, name: str, passed: bool, detail: str = "", counterexample=None, **params) -> CheckResult:
        """Record one check"""
        return self.add(CheckResult(name, params, bool(passed), detail, counterexample))

    def extend(self, results: Iterable[CheckResult]):
        for r in results:
            self.add(r)

    def note(self, text: str):
        if text not in self.notes:
            self.notes.append(text)

    def merge(self, other: "VerificationReport"):
        self.extend(other.results)
        for text in other.notes:
            self.note(text)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def get_summary(self) -> dict:
        """Return summary statistics"""
        groups: Dict[str, List[int]] = {}
        for r in self.results:
            group = r.name.split(".")[0]
            counts = groups.setdefault(group, [0, 0])
            counts[0] += 1
            counts[1] += int(r.passed)
        return {
            "total": len(self.results),
            "passed": sum(1 for r in self.results if r.passed),
            "failed": len(self.failures),
            "groups": {g: {"total": t, "passed": p} for g, (t, p) in groups.items()},
            "status": "pass" if self.passed else "fail",
        }

    def to_dict(self) -> dict:
        return {
            "summary": self.get_summary(),
            "notes": list(self.notes),
            "checks": [asdict(r) for r in self.results],
        }

    def save(self, output_file: Optional[str] = None):
        """Save report to JSON file"""
        path = Path(output_file or self.output_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
        print(f"✅ Report saved to {path}")

    def print_summary(self, verbose: bool = False, stream=None):
        summary = self.get_summary()
        print("=" * 70, file=stream)
        print("VERIFICATION SUMMARY", file=stream)
        print("=" * 70, file=stream)
        for group, counts in summary["groups"].items():
            mark = "✓" if counts["passed"] == counts["total"] else "✗"
            print(f"  [{group.upper()}] {mark} {counts['passed']}/{counts['total']}", file=stream)
        if verbose:
            for r in self.results:
                print(f"    {'✓' if r.passed else '✗'} {r.label()}", file=stream)
        for r in self.failures:
            print(f"  ❌ {r.label()}: {r.detail}", file=stream)
        for text in self.notes:
            print(f"  📝 {text}", file=stream)
        status = "ALL CHECKS PASSED" if self.passed else f"{summary['failed']} CHECK(S) FAILED"
        print(f"\n{status} ({summary['passed']}/{summary['total']})", file=stream)

    def to_markdown(self, title: str = "Verification Report") -> str:
        summary = self.get_summary()
        lines = [f"# {title}", "", "## Summary", "", "| Group | Passed | Total |", "|-------|--------|-------|"]
        for group, counts in summary["groups"].items():
            lines.append(f"| {group} | {counts['passed']} | {counts['total']} |")
        lines += ["", f"**Status:** {summary['status']} ({summary['passed']}/{summary['total']})", ""]
        if self.notes:
            lines += ["## Notes", ""] + [f"- {text}" for text in self.notes] + [""]
        if self.failures:
            lines += ["## Failures", ""] + [f"- `{r.label()}`: {r.detail}" for r in self.failures] + [""]
        return "\n".join(lines)
