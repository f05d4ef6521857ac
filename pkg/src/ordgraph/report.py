from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, List


@dataclass(frozen=True)
class Check:
    relation: str
    subject: str
    ok: bool
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"check": self.relation, "subject": self.subject, "ok": self.ok}
        if self.detail:
            out["witness"] = self.detail
        return out


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def count(self, relation: str) -> int:
        return sum(1 for c in self.checks if c.relation == relation)

    def __bool__(self):
        return self.passed


def run_checks(thunks: Iterable[Callable[[], Check]], parallel: bool = False) -> Report:
    """Evaluate independent checks, keeping their order either way."""
    thunks = list(thunks)
    if parallel and len(thunks) > 1:
        with ThreadPoolExecutor() as pool:
            return Report(list(pool.map(lambda t: t(), thunks)))
    return Report([t() for t in thunks])
