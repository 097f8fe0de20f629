"""Position-dependent lifting stages of the mutable CDF 5/3 core.

A core invocation maps ``x = [B_a, B_d, x2, x3]`` to ``y = S @ T @ x``.  The
predict-shaped stage ``T`` rewrites ``x3`` from its neighbours ``x0`` (left)
and ``x2`` (right); the update-shaped stage ``S`` rewrites the value copied
into slot 2 from ``y3`` (left) and ``y1`` (right).  Away from the borders
both are fixed; near them one operand falls outside the signal, and the
matrix is adjusted in place of any explicit extension:

* the column of the missing operand is set to zero, and
* under symmetric extension the column of its mirror partner is doubled.

Two families exist, depending on which role the first streamed value plays.
In the *target-first* family (``PREDICT``/``UPDATE``) the first value is
rewritten by ``T``; in the *neighbour-first* family
(``INV_PREDICT``/``INV_UPDATE``) it is only read.  The forward transform of
an even-start signal (low-pass at even indices) streams neighbour-first,
its inverse streams target-first with the dual constants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .config import BoundaryPolicy, CoreConfig

LAG = 1
KAPPA = 2


class StageKind(enum.Enum):
    PREDICT = "T"
    UPDATE = "S"
    INV_PREDICT = "T^-1"
    INV_UPDATE = "S^-1"

    @property
    def is_predict(self) -> bool:
        return self in (StageKind.PREDICT, StageKind.INV_PREDICT)

    @property
    def target_first(self) -> bool:
        return self in (StageKind.PREDICT, StageKind.UPDATE)


class PositionVariant(enum.Enum):
    BEGIN0 = "begin0"
    BEGIN1 = "begin1"
    INTERIOR = "interior"
    END = "end"
    FLUSH = "flush"


# slot layout of the lifting row of each stage shape: (row, target, left, right)
_PREDICT_SLOTS = (1, 3, 0, 2)
_UPDATE_SLOTS = (2, 2, 3, 1)


def theta(n: int, lag: int = LAG) -> int:
    """Core output coordinate -> core input coordinate."""
    return n + lag


def omega(n: int) -> int:
    """Input-level coordinate -> subband coordinate, ``ceil(n / 2)``."""
    return -(-n // 2)


def interior_predict(alpha: float) -> np.ndarray:
    return np.array(
        [
            [0.0, 0.0, 1.0, 0.0],
            [alpha, 0.0, alpha, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ]
    )


def interior_update(beta: float) -> np.ndarray:
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, beta, 1.0, beta],
            [0.0, 1.0, 0.0, 0.0],
        ]
    )


@dataclass(frozen=True, eq=False)
class StageMatrix:
    entries: np.ndarray
    kind: StageKind
    variant: PositionVariant

    @property
    def lifting_row(self) -> int:
        return (_PREDICT_SLOTS if self.kind.is_predict else _UPDATE_SLOTS)[0]

    @property
    def target(self) -> int:
        return (_PREDICT_SLOTS if self.kind.is_predict else _UPDATE_SLOTS)[1]

    def __eq__(self, other):
        if not isinstance(other, StageMatrix):
            return NotImplemented
        return (
            self.kind is other.kind
            and self.variant is other.variant
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self):
        rows = "; ".join(" ".join(f"{v:g}" for v in row) for row in self.entries)
        return f"StageMatrix({self.kind.name}, {self.variant.name}, [{rows}])"


def select_variant(invocation: int, n_half: int) -> PositionVariant:
    """Stage variant used by invocation ``invocation`` of an ``n_half``-pair core.

    The first two and the last two invocations (the last one being the
    flush) get their own variants; all others run the interior stages.
    When ``n_half == 2`` the second invocation is both ``BEGIN1`` and
    ``END``; the end stages equal the interior ones, so ``BEGIN1`` wins.
    """
    if n_half < 2:
        raise ValueError(f"streaming core needs at least 2 input pairs, got {n_half}")
    if not 0 <= invocation <= n_half:
        raise ValueError(f"invocation {invocation} outside 0..{n_half}")
    if invocation == 0:
        return PositionVariant.BEGIN0
    if invocation == 1:
        return PositionVariant.BEGIN1
    if invocation == n_half:
        return PositionVariant.FLUSH
    if invocation == n_half - 1:
        return PositionVariant.END
    return PositionVariant.INTERIOR


def _stage_position(kind: StageKind, invocation: int) -> int:
    """Signal position rewritten by the lifting row of ``kind`` at ``invocation``."""
    p = 2 * invocation - (0 if kind.target_first else 1)
    return p if kind.is_predict else p - 1


def stage_at(
    kind: StageKind,
    invocation: int,
    n_half: int,
    config: CoreConfig,
    variant: PositionVariant | None = None,
) -> StageMatrix:
    """Build the stage matrix for a concrete invocation of a ``2*n_half`` signal.

    Rows whose output lies outside the signal are discarded by the core, so
    they keep the interior form.
    """
    n = 2 * n_half
    if kind.is_predict:
        entries = interior_predict(config.alpha)
        row, _, left, right = _PREDICT_SLOTS
    else:
        entries = interior_update(config.beta)
        row, _, left, right = _UPDATE_SLOTS
    pos = _stage_position(kind, invocation)
    if 0 <= pos < n:
        for missing, partner, outside in (
            (left, right, pos - 1 < 0),
            (right, left, pos + 1 >= n),
        ):
            if outside:
                entries[row, missing] = 0.0
                if config.boundary is BoundaryPolicy.SYMMETRIC:
                    entries[row, partner] *= 2.0
    entries.setflags(write=False)
    if variant is None:
        variant = select_variant(invocation, n_half)
    return StageMatrix(entries, kind, variant)


# any n_half >= 5 keeps the five variants at distinct invocations
_CANONICAL_HALF = 8
_CANONICAL_INVOCATION = {
    PositionVariant.BEGIN0: 0,
    PositionVariant.BEGIN1: 1,
    PositionVariant.INTERIOR: _CANONICAL_HALF // 2,
    PositionVariant.END: _CANONICAL_HALF - 1,
    PositionVariant.FLUSH: _CANONICAL_HALF,
}


def make_stage_matrix(
    kind: StageKind, variant: PositionVariant, config: CoreConfig
) -> StageMatrix:
    """Generate the ``kind`` stage for ``variant`` under ``config``."""
    return stage_at(
        kind, _CANONICAL_INVOCATION[variant], _CANONICAL_HALF, config, variant=variant
    )
