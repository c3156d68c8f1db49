from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import QRadiusError


@dataclass(frozen=True)
class QParameter:
    """The constraint value q = <x, y> together with |q| and p = sqrt(1 - |q|^2)."""

    q: complex

    def __post_init__(self):
        q = complex(self.q)
        if not (math.isfinite(q.real) and math.isfinite(q.imag)):
            raise QRadiusError(f"q must be finite, got {self.q!r}")
        if abs(q) > 1.0 + 1e-15:
            raise QRadiusError(f"|q| must be at most 1, got {abs(q)!r}")
        object.__setattr__(self, "q", q)

    @property
    def modulus(self) -> float:
        return min(abs(self.q), 1.0)

    @property
    def p(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.modulus ** 2))

    def reduced(self) -> "QParameter":
        """The real representative |q|; w_q only depends on |q|."""
        return QParameter(complex(self.modulus, 0.0))


def as_q(q) -> QParameter:
    return q if isinstance(q, QParameter) else QParameter(q)
