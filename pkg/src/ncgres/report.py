"""Verification records and their rendering; exit codes follow from record statuses."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

from .scalars import ScalarSum

MATCH = "MATCH"
MISMATCH = "MISMATCH"
DOCUMENTED = "DOCUMENTED-DISCREPANCY"
STATUSES = (MATCH, MISMATCH, DOCUMENTED)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class VerificationRecord:
    check_id: str
    anchor: str
    computed: Any
    expected: Any
    status: str
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if not self.anchor:
            raise ValueError("every record needs an anchor (or 'plumbing')")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        return cls(**d)


def serialize(value) -> Any:
    """Structured form for exact values; never a decimal rendering."""
    if isinstance(value, ScalarSum):
        return {"terms": value.to_terms()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    return {"expr": str(value)}


def record(check_id: str, anchor: str, computed, expected, ok: bool, *, documented: bool = False, note: str = "") -> VerificationRecord:
    if documented:
        status = DOCUMENTED
    else:
        status = MATCH if ok else MISMATCH
    return VerificationRecord(check_id, anchor, serialize(computed), serialize(expected), status, note)


def exit_code(records: Iterable[VerificationRecord]) -> int:
    """0 iff no record is a MISMATCH."""
    return EXIT_MISMATCH if any(r.status == MISMATCH for r in records) else EXIT_OK


def verdict(records: Iterable[VerificationRecord]) -> str:
    records = list(records)
    bad = sum(r.status == MISMATCH for r in records)
    doc = sum(r.status == DOCUMENTED for r in records)
    if bad:
        return f"FAIL ({bad} mismatch{'es' if bad != 1 else ''})"
    return "PASS" + (f" ({doc} documented discrepanc{'ies' if doc != 1 else 'y'})" if doc else "")


@dataclass
class Report:
    config: dict
    records: list[VerificationRecord]
    phi_total: ScalarSum
    cases: list[dict] = field(default_factory=list)
    statement: str = ""

    @property
    def verdict(self) -> str:
        return verdict(self.records)

    @property
    def exit_code(self) -> int:
        return exit_code(self.records)

    def to_json_dict(self) -> dict:
        out = {
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "phi_total": self.phi_total.to_terms(),
            "verdict": self.verdict,
        }
        if self.cases:
            out["cases"] = self.cases
        if self.statement:
            out["statement"] = self.statement
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(
            config=d["config"],
            records=[VerificationRecord.from_dict(r) for r in d["records"]],
            phi_total=ScalarSum.from_terms(d["phi_total"]),
            cases=d.get("cases", []),
            statement=d.get("statement", ""),
        )

    def to_text(self) -> str:
        lines = [f"ncgres verify: operator={self.config['operator']} dim={self.config['dim']}"]
        width = max((len(r.check_id) for r in self.records), default=10)
        for r in self.records:
            lines.append(f"  [{r.status:^22}] {r.check_id:<{width}}  {r.anchor}")
            if r.note:
                lines.append(f"  {'':24} {r.note}")
        if self.cases:
            lines.append("cases:")
            for c in self.cases:
                lines.append(f"  {c['label']:<8} {c['value']}")
        lines.append(f"Phi per unit boundary volume: {self.phi_total}")
        if self.statement:
            lines.append(self.statement)
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def to_markdown(self) -> str:
        lines = [
            f"# ncgres verify: `{self.config['operator']}`, n = {self.config['dim']}",
            "",
            "| check | anchor | status |",
            "|---|---|---|",
        ]
        for r in self.records:
            lines.append(f"| `{r.check_id}` | {r.anchor} | {r.status} |")
        if self.cases:
            lines += ["", "| case | contribution |", "|---|---|"]
            lines += [f"| {c['label']} | `{c['value']}` |" for c in self.cases]
        lines += ["", f"**Phi** = `{self.phi_total}`", ""]
        if self.statement:
            lines += [f"`{self.statement}`", ""]
        lines.append(f"**verdict:** {self.verdict}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return {"text": self.to_text, "json": self.to_json, "markdown": self.to_markdown}[fmt]()
