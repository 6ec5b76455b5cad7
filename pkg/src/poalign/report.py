from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    """Outcome of one axiom or property check; truthy iff it passed."""

    name: str
    ok: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def format(self) -> list[str]:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.name}"
        return [head] + [f"  {w}" for w in self.witnesses]


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def add(self, name: str, witnesses=()) -> Check:
        witnesses = list(witnesses)
        check = Check(name, not witnesses, witnesses)
        self.checks.append(check)
        return check

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def format(self) -> str:
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            lines.extend(c.format())
        return "\n".join(lines)
