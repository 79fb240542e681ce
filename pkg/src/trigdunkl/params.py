"""Parameter and evaluation-point types."""

import math
from dataclasses import dataclass

from .errors import DomainError


def _is_finite(v) -> bool:
    if isinstance(v, complex):
        return math.isfinite(v.real) and math.isfinite(v.imag)
    return math.isfinite(v)


@dataclass(frozen=True)
class Multiplicity:
    """Deformation parameter pair (k1, k2) with Re k1 > 0 and Re k2 > 0.

    ``rho`` is the derived constant k1/2 + k2 appearing in the differential-
    difference operator.  ``real_positive`` flags the real parameter range,
    which selects the Gauss-Jacobi kernel path and enables the positivity
    statements; complex parameters fall back to double-exponential rules.
    """

    k1: complex
    k2: complex

    def __post_init__(self):
        for name, v in (("k1", self.k1), ("k2", self.k2)):
            if not isinstance(v, (int, float, complex)) or not _is_finite(v):
                raise DomainError(f"{name} must be a finite number, got {v!r}")
        if complex(self.k1).real <= 0 or complex(self.k2).real <= 0:
            raise DomainError(
                f"require Re k1 > 0 and Re k2 > 0, got k1={self.k1}, k2={self.k2}"
            )

    @property
    def rho(self):
        return self.k1 / 2 + self.k2

    @property
    def real_positive(self) -> bool:
        c1, c2 = complex(self.k1), complex(self.k2)
        return c1.imag == 0.0 and c2.imag == 0.0 and c1.real > 0 and c2.real > 0


@dataclass(frozen=True)
class KernelPoint:
    """Kernel argument pair: x nonzero, |y| strictly inside (-|x|, |x|)."""

    x: float
    y: float

    def __post_init__(self):
        if not (_is_finite(self.x) and _is_finite(self.y)):
            raise DomainError(f"non-finite kernel point ({self.x}, {self.y})")
        if self.x == 0:
            raise DomainError("require x != 0")
        if abs(self.y) >= abs(self.x):
            raise DomainError(f"require |y| < |x|, got x={self.x}, y={self.y}")
