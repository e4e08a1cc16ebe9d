"""Verification reports and their text / JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .expr import parse_scalar
from .scalar import Scalar, format_scalar


# Argument names used when a witness is printed, by arity.
_ARGS = {1: ("x",), 2: ("x", "y"), 3: ("x", "y", "z")}


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: Optional[Tuple[int, ...]] = None  # 1-based basis indices
    residual: Optional[Tuple[Scalar, ...]] = None
    detail: Optional[str] = None
    informational: bool = False
    witness_kind: str = "basis"  # "basis" or "entry" (matrix row, column)
    oracle: List[dict] = field(default_factory=list)
    oracle_confirmed: Optional[bool] = None

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        if self.witness_kind == "entry":
            return "entry (" + ",".join(map(str, self.witness)) + ")"
        names = _ARGS.get(len(self.witness), tuple(f"x{i + 1}" for i in range(len(self.witness))))
        return "({})=({})".format(",".join(names), ",".join(f"e_{i}" for i in self.witness))

    def to_dict(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict, "informational": self.informational}
        if self.detail is not None:
            d["detail"] = self.detail
        if not self.passed:
            d["witness"] = list(self.witness) if self.witness is not None else None
            d["witness_kind"] = self.witness_kind
            d["residual"] = [format_scalar(s) for s in self.residual] if self.residual is not None else None
        if self.oracle:
            d["oracle"] = self.oracle
        if self.oracle_confirmed is not None:
            d["oracle_confirmed"] = self.oracle_confirmed
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        residual = d.get("residual")
        return cls(
            name=d["name"],
            passed=d["verdict"] == "PASS",
            witness=tuple(d["witness"]) if d.get("witness") is not None else None,
            residual=tuple(parse_scalar(t) for t in residual) if residual is not None else None,
            detail=d.get("detail"),
            informational=d.get("informational", False),
            witness_kind=d.get("witness_kind", "basis"),
            oracle=list(d.get("oracle", [])),
            oracle_confirmed=d.get("oracle_confirmed"),
        )


@dataclass
class Report:
    checks: List[CheckResult] = field(default_factory=list)
    subject: Optional[str] = None
    label: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed or c.informational for c in self.checks)

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def to_dict(self) -> dict:
        d = {"overall": self.verdict, "checks": [c.to_dict() for c in self.checks]}
        if self.subject is not None:
            d["subject"] = self.subject
        if self.label is not None:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            checks=[CheckResult.from_dict(c) for c in d["checks"]],
            subject=d.get("subject"),
            label=d.get("label"),
        )


def _text_lines(r: Report) -> List[str]:
    lines = []
    head = r.subject or "report"
    lines.append(f"== {head}: {r.verdict}" + (f" [{r.label}]" if r.label else ""))
    for c in r.checks:
        tag = c.verdict
        name = c.name + (f" [{c.detail}]" if c.detail else "")
        if c.informational and not c.passed:
            name += " (informational)"
        if c.passed:
            lines.append(f"{tag}  {name}")
            continue
        lines.append(f"{tag}  {name}  {c.witness_text()}")
        if c.residual is not None:
            lines.append("      residual: [" + ", ".join(format_scalar(s) for s in c.residual) + "]")
        if c.oracle_confirmed is not None:
            state = "confirmed" if c.oracle_confirmed else "NOT confirmed"
            lines.append(f"      numeric oracle: {state} at {len(c.oracle)} point(s)")
    return lines


def dump_report(r, format: str = "text") -> str:
    """Render one report, or a list of reports, as text or JSON."""
    reports = r if isinstance(r, list) else [r]
    if format == "json":
        payload = [x.to_dict() for x in reports] if isinstance(r, list) else r.to_dict()
        return json.dumps(payload, sort_keys=True, indent=2)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = []
    for x in reports:
        lines.extend(_text_lines(x))
    return "\n".join(lines) + "\n"


def load_report(text: str):
    payload = json.loads(text)
    if isinstance(payload, list):
        return [Report.from_dict(d) for d in payload]
    return Report.from_dict(payload)
