"""Named scenario lines: ``name | ring | command | params | expected``."""
from dataclasses import dataclass, field
from typing import Dict, Optional


@dataclass(frozen=True)
class Scenario:
    name: str
    ring: str
    command: str
    params: Dict[str, str] = field(default_factory=dict)
    expected: Optional[str] = None
    line_number: int = 0

    def int_param(self, key: str) -> Optional[int]:
        value = self.params.get(key)
        return int(value) if value is not None else None

    def matches(self, outcome: str) -> bool:
        """Exact match; a bare ``bounded-consistent`` accepts any bound."""
        if self.expected is None:
            return True
        if self.expected == "bounded-consistent":
            return outcome.startswith("bounded-consistent")
        return outcome == self.expected

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ring": self.ring,
            "command": self.command,
            "params": dict(self.params),
            "expected": self.expected,
            "line": self.line_number,
        }
