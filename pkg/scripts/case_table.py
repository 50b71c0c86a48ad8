"""Tabulate every case contribution, exactly and with Omega and H substituted."""

import argparse
import math

from ncgres.residue import assemble_phi, enumerate_cases, substitute_omega
from ncgres.scalars import sphere_area


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--operator", choices=["dirac", "signature"], default="dirac")
    parser.add_argument("--dim", type=int, choices=[3, 4], default=4)
    parser.add_argument("--h", type=float, default=1.0, help="value substituted for H")
    parser.add_argument("--enumerate-only", type=int, metavar="N", help="only list the index set for dimension N")
    args = parser.parse_args()

    if args.enumerate_only:
        for c in enumerate_cases(args.enumerate_only):
            print(f"{c.label:<20} r={c.r} l={c.l} k={c.k} j={c.j} |alpha|={c.alpha}")
        return

    report = assemble_phi(args.operator, args.dim)
    omega = sphere_area(args.dim - 1)
    print(f"{'case':<8} {'exact':<28} {'Omega substituted':<24} numeric")
    for c in report.cases:
        val = c.contribution.evaluate(math.pi, omega, args.h)
        print(f"{c.label:<8} {str(c.contribution):<28} {str(substitute_omega(c.contribution, args.dim)):<24} {val.real:+.12f}{val.imag:+.12f}i")
    print(f"{'total':<8} {str(report.total):<28} {str(substitute_omega(report.total, args.dim))}")


if __name__ == "__main__":
    main()
