"""Command-line front end: ``ncgres verify --operator dirac --dim 4``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import asdict, dataclass

from . import checks
from .report import EXIT_USAGE, Report, VerificationRecord
from .residue import SUPPORTED, assemble_phi, kkw_total

log = logging.getLogger("ncgres")

LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    operator: str = "dirac"
    dim: int = 4
    format: str = "text"
    emit_cases: bool = False
    oracle: str = "off"
    seed: int = 0

    def __post_init__(self):
        if self.operator not in ("dirac", "signature"):
            raise UsageError(f"unknown operator {self.operator!r}")
        if self.dim not in (3, 4):
            raise UsageError(f"unsupported dimension {self.dim}")
        if (self.operator, self.dim) not in SUPPORTED:
            raise UsageError(f"{self.operator} operator is not supported in dimension {self.dim}")
        if self.format not in ("text", "json", "markdown"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.oracle not in ("off", "numeric"):
            raise UsageError(f"unknown oracle mode {self.oracle!r}")


def configure_logging(env: dict | None = None) -> None:
    env = os.environ if env is None else env
    name = env.get("NCGRES_LOG", "error").lower()
    level = LOG_LEVELS.get(name, logging.ERROR)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger("ncgres").setLevel(level)


def run_verify(config: RunConfig) -> Report:
    log.info("verify %s n=%d", config.operator, config.dim)
    phi = assemble_phi(config.operator, config.dim)
    records: list[VerificationRecord] = checks.run_all(config.operator, config.dim, phi)
    if config.oracle == "numeric":
        from .oracle import run_oracle

        records += run_oracle(config.operator, config.dim, seed=config.seed)
    cases = []
    if config.emit_cases:
        cases = [
            {"label": c.label, "index": asdict(c.index), "value": str(c.contribution), "terms": c.contribution.to_terms()}
            for c in phi.cases
        ]
    return Report(
        config=asdict(config),
        records=records,
        phi_total=phi.total,
        cases=cases,
        statement=kkw_total(phi).statement(),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncgres", description="Exact verification of boundary residue terms.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run every check for one operator and dimension")
    v.add_argument("--operator", choices=["dirac", "signature"], required=True)
    v.add_argument("--dim", type=int, choices=[3, 4], required=True)
    v.add_argument("--format", choices=["text", "json", "markdown"], default="text")
    v.add_argument("--emit-cases", action="store_true", help="list every case contribution")
    v.add_argument("--oracle", choices=["off", "numeric"], default="off")
    v.add_argument("--seed", type=int, default=0, help="seed for oracle sampling")
    return parser


def main(argv: list[str] | None = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        config = RunConfig(args.operator, args.dim, args.format, args.emit_cases, args.oracle, args.seed)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ncgres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run_verify(config)
    except Exception:  # internal error: report and exit 2
        log.exception("internal error")
        return EXIT_USAGE
    print(report.render(config.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
