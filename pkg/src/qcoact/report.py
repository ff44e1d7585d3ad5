"""Check reports shared by every verification suite and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

PASS, FAIL, UNRESOLVED, INFO = "pass", "fail", "unresolved", "info"


@dataclass
class CheckRecord:
    id: str
    status: str
    residual_terms: int = 0
    detail: str = ""

    def to_json(self) -> Dict:
        return {"id": self.id, "status": self.status, "residual_terms": self.residual_terms}


@dataclass
class Report:
    """Ordered collection of check records.

    ``info`` records are exploratory and never fail a suite.  ``timing``
    is kept for the text summary only; JSON output leaves it out so
    repeated runs serialize identically.
    """

    suite: str
    params: Dict[str, Optional[str]] = field(default_factory=lambda: {"t": None, "u": None, "omega": None})
    checks: List[CheckRecord] = field(default_factory=list)
    timing: float = 0.0
    limit_hit: bool = False
    _start: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, id: str, ok, residual_terms: int = 0, detail: str = "") -> CheckRecord:
        if isinstance(ok, str):
            status = ok
        else:
            status = PASS if ok else FAIL
        rec = CheckRecord(id, status, residual_terms, detail)
        self.checks.append(rec)
        return rec

    def extend(self, other: "Report", prefix: str = "") -> None:
        for rec in other.checks:
            self.checks.append(CheckRecord(prefix + rec.id, rec.status, rec.residual_terms, rec.detail))
        self.limit_hit = self.limit_hit or other.limit_hit

    def finish(self) -> "Report":
        self.timing = time.perf_counter() - self._start
        self.checks.sort(key=lambda r: r.id)
        return self

    @property
    def ok(self) -> bool:
        return all(r.status in (PASS, INFO) for r in self.checks)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.checks if r.status in (FAIL, UNRESOLVED)]

    def get(self, id: str) -> CheckRecord:
        for r in self.checks:
            if r.id == id:
                return r
        raise KeyError(id)

    def exit_code(self) -> int:
        if self.limit_hit:
            return 3
        return 0 if self.ok else 1

    def to_json(self) -> Dict:
        return {
            "suite": self.suite,
            "params": {k: self.params.get(k) for k in ("t", "u", "omega")},
            "checks": [r.to_json() for r in sorted(self.checks, key=lambda r: r.id)],
            "exit": self.exit_code(),
        }

    def dumps(self) -> str:
        return dump_json(self.to_json())

    def text(self) -> str:
        lines = [f"suite {self.suite}"]
        shown = {k: v for k, v in self.params.items() if v is not None}
        if shown:
            lines.append("params " + " ".join(f"{k}={v}" for k, v in shown.items()))
        for r in sorted(self.checks, key=lambda r: r.id):
            extra = f"  residual_terms={r.residual_terms}" if r.residual_terms else ""
            detail = f"  {r.detail}" if r.detail else ""
            lines.append(f"  {r.status.upper():10} {r.id}{extra}{detail}")
        n_pass = sum(r.status == PASS for r in self.checks)
        lines.append(f"{n_pass}/{len(self.checks)} passed, {len(self.failures())} failed"
                     f" ({self.timing:.2f}s)")
        return "\n".join(lines)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
