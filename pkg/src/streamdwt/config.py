"""Configuration types and exceptions shared by every transform path."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional

DEFAULT_ALPHA = -0.5
DEFAULT_BETA = 0.25
DEFAULT_ZETA = math.sqrt(2.0)


class LengthError(ValueError):
    """Raised when a signal or image has a shape the transform cannot handle."""


class StreamError(RuntimeError):
    """Raised when a streaming core is driven outside its schedule."""


class BoundaryPolicy(enum.Enum):
    SYMMETRIC = "sym"
    ZERO = "zero"


class ArithmeticMode(enum.Enum):
    REAL = "real"
    INTEGER = "int"


@dataclass(frozen=True)
class CoreConfig:
    """Lifting constants and evaluation options for a CDF 5/3 core.

    ``alpha`` drives the predict step, ``beta`` the update step.  ``zeta`` is
    the optional scaling stage: when set, approximations are multiplied by it
    and details divided by it.  It is ignored in integer mode.
    """

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    zeta: Optional[float] = None
    boundary: BoundaryPolicy = BoundaryPolicy.SYMMETRIC
    mode: ArithmeticMode = ArithmeticMode.REAL

    def __post_init__(self):
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("lifting constants must be non-zero")
        if self.zeta is not None and self.zeta == 0:
            raise ValueError("scaling factor must be non-zero")

    @property
    def integer(self) -> bool:
        return self.mode is ArithmeticMode.INTEGER

    @property
    def scaling(self) -> Optional[float]:
        """The scaling factor actually applied, or None."""
        if self.integer:
            return None
        return self.zeta

    def dual(self) -> "CoreConfig":
        """Constants of the lifting scheme that undoes this one.

        Inverting update-then-predict means running a predict-shaped step
        with ``-beta`` followed by an update-shaped step with ``-alpha``.
        """
        return replace(self, alpha=-self.beta, beta=-self.alpha)


DEFAULT_CONFIG = CoreConfig()
