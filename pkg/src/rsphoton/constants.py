from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _si


@dataclass(frozen=True)
class PhysicalConstants:
    """Speed of light c (m/s), permittivity eps0 (F/m) and hbar (J s)."""

    c: float
    eps0: float
    hbar: float

    def __post_init__(self):
        if min(self.c, self.eps0, self.hbar) <= 0:
            raise ValueError("physical constants must be positive")

    @property
    def mu0(self) -> float:
        return 1.0 / (self.eps0 * self.c**2)

    @property
    def Z0(self) -> float:
        """Impedance of vacuum sqrt(mu0/eps0)."""
        return math.sqrt(self.mu0 / self.eps0)


SI = PhysicalConstants(c=_si.c, eps0=_si.epsilon_0, hbar=_si.hbar)
NATURAL = PhysicalConstants(c=1.0, eps0=1.0, hbar=1.0)

PRESETS = {"si": SI, "natural": NATURAL}


def preset(name: str) -> PhysicalConstants:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown unit preset {name!r}; choose from {sorted(PRESETS)}") from None
