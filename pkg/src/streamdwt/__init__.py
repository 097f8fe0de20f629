"""Single-loop CDF 5/3 discrete wavelet transform with border handling
folded into position-dependent lifting stages."""

from .config import (
    DEFAULT_CONFIG,
    DEFAULT_ZETA,
    ArithmeticMode,
    BoundaryPolicy,
    CoreConfig,
    LengthError,
    StreamError,
)
from .core1d import CoreState, ForwardCore, InverseCore, OutputPair, core_step, forward_1d, inverse_1d
from .core2d import Core2d, SubbandQuad, forward_2d, inverse_2d, pyramid_forward_2d, pyramid_inverse_2d
from .multiscale import Cascade, SubbandPyramid, cascade_forward, cascade_inverse
from .stages import PositionVariant, StageKind, StageMatrix, make_stage_matrix, omega, select_variant, theta

__all__ = [
    "ArithmeticMode",
    "BoundaryPolicy",
    "Cascade",
    "Core2d",
    "CoreConfig",
    "CoreState",
    "DEFAULT_CONFIG",
    "DEFAULT_ZETA",
    "ForwardCore",
    "InverseCore",
    "LengthError",
    "OutputPair",
    "PositionVariant",
    "StageKind",
    "StageMatrix",
    "StreamError",
    "SubbandPyramid",
    "SubbandQuad",
    "cascade_forward",
    "cascade_inverse",
    "core_step",
    "forward_1d",
    "forward_2d",
    "inverse_1d",
    "inverse_2d",
    "make_stage_matrix",
    "omega",
    "pyramid_forward_2d",
    "pyramid_inverse_2d",
    "select_variant",
    "theta",
]
