# experiments/run_verification.py
import sys
import time
from pathlib import Path

from src.config import load_bounds
from src.verification import run_suites

OUTPUT_DIR = Path("experiments/results")


def main(profile: str = "default"):
    bounds = load_bounds(profile)

    print("\n" + "╔" + "=" * 78 + "╗")
    print("║" + " " * 78 + "║")
    print("║" + "EXACT IDENTITY VERIFICATION".center(78) + "║")
    print("║" + f"profile: {bounds.name}   n ≤ {bounds.n_max}   workers: {bounds.workers}".center(78) + "║")
    print("║" + " " * 78 + "║")
    print("╚" + "=" * 78 + "╝")

    timings = {}

    def progress(task, part):
        name, n, _ = task
        mark = "✓" if part.passed else "✗"
        ok = len(part.results) - len(part.failures)
        print(f"  [{name.upper()}] {mark} n={n}  {ok}/{len(part.results)}")

    start = time.time()
    report = run_suites(bounds.n_max, bounds, on_task=progress)
    timings["total_seconds"] = round(time.time() - start, 2)

    print()
    report.print_summary()

    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    report.save(OUTPUT_DIR / "verification_report.json")

    markdown = OUTPUT_DIR / "VERIFICATION_REPORT.md"
    with open(markdown, "w") as f:
        f.write(report.to_markdown(f"Verification Report ({bounds.name})"))
    print(f"✅ Markdown saved to: {markdown}")
    print(f"\n⏱️  Total time: {timings['total_seconds']}s")
    print(f"📁 All results in: {OUTPUT_DIR}/")
    return 0 if report.passed else 2


if __name__ == "__main__":
    sys.exit(main(sys.argv[1] if len(sys.argv) > 1 else "default"))
