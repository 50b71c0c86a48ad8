"""Sweep the numeric oracle over seeds and values of H; print worst errors."""

import argparse

from ncgres.oracle import OracleConfig, case_records, random_records


def worst_error(records) -> float:
    out = 0.0
    for r in records:
        if r.note.startswith("relative error"):
            out = max(out, float(r.note.split()[2].rstrip(";")))
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=3)
    parser.add_argument("--h", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    parser.add_argument("--random", type=int, default=100, help="random rational functions per seed")
    args = parser.parse_args()

    failures = 0
    for h in args.h:
        for op, n in [("dirac", 4), ("signature", 4), ("dirac", 3)]:
            recs = case_records(op, n, OracleConfig(h=h))
            failures += sum(r.status != "MATCH" for r in recs)
            print(f"H={h:<4} {op:<9} n={n}  worst case error {worst_error(recs):.2e}")
    for seed in range(args.seeds):
        rec = random_records(args.random, seed=seed)[0]
        failures += rec.status != "MATCH"
        print(f"seed={seed}  {args.random} random rational functions: {rec.expected}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
