"""Run every supported scenario and write JSON and markdown reports."""

import argparse
from pathlib import Path

from ncgres.cli import RunConfig, run_verify

SCENARIOS = [("dirac", 4), ("signature", 4), ("dirac", 3)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("reports"))
    parser.add_argument("--oracle", choices=["off", "numeric"], default="off")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for operator, dim in SCENARIOS:
        report = run_verify(RunConfig(operator, dim, emit_cases=True, oracle=args.oracle, seed=args.seed))
        stem = args.out / f"{operator}{dim}"
        stem.with_suffix(".json").write_text(report.to_json())
        stem.with_suffix(".md").write_text(report.to_markdown())
        print(f"{operator:<9} n={dim}  {report.verdict:<40} -> {stem}.json")
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
