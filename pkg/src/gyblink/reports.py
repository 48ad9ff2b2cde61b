from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a numerical identity check.

    ``residual`` is the largest deviation observed; ``passed`` compares it with
    the tolerance the check ran at. Failures are data, not exceptions.
    """

    name: str
    passed: bool
    residual: float
    tol: float
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.name}: residual={self.residual:.3e} (tol {self.tol:.1e})"
