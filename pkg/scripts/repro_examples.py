"""Rerun both built-in examples and write their reports to a directory (default ./reports).

    python scripts/repro_examples.py [outdir]
"""

import sys
from pathlib import Path

from reeskit.scenario import BUILTIN, builtin, golden_report, run_scenario


def main(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name in BUILTIN:
        report = run_scenario(builtin(name))
        (outdir / f"{name}.report.txt").write_text(report.text, encoding="utf-8")
        same = report.text == golden_report(name)
        bad += not (same and report.ok)
        print(f"{name}: verdict {report.verdict}, {'matches' if same else 'differs from'} golden, "
              f"{len(report.lines)} lines")
        for f in report.failures:
            print(f"  {f}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("reports")))
