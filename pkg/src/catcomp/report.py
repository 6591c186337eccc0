from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    law: str
    message: str
    witness: Any = None

    def to_json(self):
        return {"law": self.law, "message": self.message, "witness": self.witness}


@dataclass
class ValidationReport:
    """Every law violation found by a checker; empty means the object is valid."""

    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, message, witness=None):
        self.violations.append(Violation(law, message, witness))

    def laws_violated(self):
        return sorted({v.law for v in self.violations})

    def to_json(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
        }
