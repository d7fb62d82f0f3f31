"""Structured verification reports.

A report is an ordered list of named checks.  Each check carries the residual
(as an exact string in exact mode), a verdict, and an ``anchor``: the checked
identity written out as a plain formula, so reports are self-describing and
diffable.  Verdicts:

* ``pass`` / ``fail`` -- asserted checks (zero residual / expected value);
* ``info``            -- evaluated quantities and hypothesis flags, never
                         counted against the overall verdict;
* ``skip``            -- not applicable on this instance (reason in note).

Ordering is fixed by construction order, and serialization is deterministic:
identical inputs give byte-identical reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List

from .scalars import ScalarMode, scalar_str

PASS = "pass"
FAIL = "fail"
INFO = "info"
SKIP = "skip"


@dataclass
class Check:
    name: str
    verdict: str
    residual: str
    anchor: str
    note: str = ""

    def to_dict(self) -> Dict[str, str]:
        d = {
            "name": self.name,
            "verdict": self.verdict,
            "residual": self.residual,
            "anchor": self.anchor,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    """Named checks for one instance plus the conventions that were in force."""

    instance: str
    mode: ScalarMode
    checks: List[Check] = field(default_factory=list)
    conventions: Dict[str, str] = field(default_factory=dict)

    # -- recording ----------------------------------------------------------

    def residual(self, name: str, value, anchor: str, note: str = "") -> bool:
        """Assert a residual is zero (to tolerance in float mode)."""
        ok = self.mode.is_zero(value)
        self.checks.append(Check(name, PASS if ok else FAIL, scalar_str(value), anchor, note))
        return ok

    def expect(self, name: str, ok: bool, detail: str, anchor: str, note: str = "") -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, detail, anchor, note))
        return ok

    def flag(self, name: str, value: bool, anchor: str, note: str = "") -> bool:
        self.checks.append(Check(name, INFO, "true" if value else "false", anchor, note))
        return value

    def info(self, name: str, detail: str, anchor: str = "", note: str = ""):
        self.checks.append(Check(name, INFO, detail, anchor, note))

    def skip(self, name: str, anchor: str, note: str):
        self.checks.append(Check(name, SKIP, "-", anchor, note))

    def implication(self, name: str, hypothesis: bool, conclusion_residual,
                    anchor: str, note: str = "") -> bool:
        """Assert hypothesis => (residual == 0); vacuous hypotheses pass."""
        if not hypothesis:
            self.checks.append(Check(name, PASS, scalar_str(conclusion_residual), anchor,
                                     (note + "; " if note else "") + "vacuous (hypothesis false)"))
            return True
        return self.residual(name, conclusion_residual, anchor, note)

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        for key, val in other.conventions.items():
            self.conventions.setdefault(key, val)

    # -- verdicts & rendering ------------------------------------------------

    @property
    def ok(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    @property
    def overall(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, INFO: 0, SKIP: 0}
        for c in self.checks:
            out[c.verdict] = out.get(c.verdict, 0) + 1
        return out

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    def to_dict(self) -> Dict:
        return {
            "instance": self.instance,
            "scalar_mode": self.mode.name,
            "overall": self.overall,
            "conventions": dict(sorted(self.conventions.items())),
            "checks": [c.to_dict() for c in self.checks],
        }

    def render_text(self, color: bool = False) -> str:
        def paint(verdict: str) -> str:
            if not color:
                return verdict.upper()
            codes = {PASS: "32", FAIL: "31", INFO: "36", SKIP: "33"}
            return f"\x1b[{codes[verdict]}m{verdict.upper()}\x1b[0m"

        lines = [f"== {self.instance} [{self.mode.name}] =="]
        for key, val in sorted(self.conventions.items()):
            lines.append(f"   {key}: {val}")
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            extra = f"   # {c.note}" if c.note else ""
            lines.append(f"  {paint(c.verdict):>4}  {c.name:<{width}}  residual={c.residual}{extra}")
        counts = self.counts()
        lines.append(
            f"-- {self.overall}: {counts[PASS]} pass, {counts[FAIL]} fail, "
            f"{counts[INFO]} info, {counts[SKIP]} skip"
        )
        return "\n".join(lines)


def reports_to_json(reports: List[VerificationReport]) -> str:
    doc = {
        "schema": 1,
        "overall": "PASS" if all(r.ok for r in reports) else "FAIL",
        "instances": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
