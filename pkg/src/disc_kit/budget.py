"""Explicit work budgets with partial-result semantics."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

ENV_BUDGET_MS = "DISC_KIT_BUDGET_MS"


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration or search runs out of its budget."""


@dataclass
class Budget:
    """Wall-clock and iteration caps; ``None`` means unlimited."""

    max_ms: float | None = None
    max_steps: int | None = None
    steps: int = 0
    _start: float = field(default_factory=time.monotonic)

    @classmethod
    def from_env(cls, max_steps: int | None = None) -> Budget:
        raw = os.environ.get(ENV_BUDGET_MS)
        return cls(max_ms=float(raw) if raw else None, max_steps=max_steps)

    def tick(self, n: int = 1) -> None:
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceeded(f"step budget {self.max_steps} exhausted")
        if self.max_ms is not None and (time.monotonic() - self._start) * 1000 > self.max_ms:
            raise BudgetExceeded(f"time budget {self.max_ms} ms exhausted")
