"""Multi-level decomposition by chaining 1-D forward cores.

Every approximation coefficient a level emits is pushed straight into the
next level's core, so the whole pyramid comes out of one pass over the
input.  Each level adds its own one-sample lag at half the previous rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, CoreConfig, LengthError, StreamError
from .core1d import ForwardCore, inverse_1d


class Coefficient(NamedTuple):
    level: int  # 1-based decomposition level
    band: str  # "a" or "d"
    index: int
    value: float


@dataclass
class SubbandPyramid:
    """``details[j - 1]`` holds level ``j``; 2-D pyramids store ``(h, v, d)`` triples."""

    approx: np.ndarray
    details: list = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.details)

    @property
    def ndim(self) -> int:
        return np.ndim(self.approx)

    def size(self) -> int:
        n = np.size(self.approx)
        for item in self.details:
            n += sum(np.size(b) for b in item) if self.ndim == 2 else np.size(item)
        return n

    def bands(self) -> list:
        """Subbands deepest-first: ``a^J, d^J, ..., d^1`` (triples flattened in 2-D)."""
        out = [self.approx]
        for item in reversed(self.details):
            out.extend(item if self.ndim == 2 else [item])
        return out

    def __eq__(self, other):
        if not isinstance(other, SubbandPyramid) or self.depth != other.depth:
            return NotImplemented
        return all(
            x.dtype == y.dtype and np.array_equal(x, y)
            for x, y in zip(self.bands(), other.bands())
        )


def check_depth(n: int, levels: int) -> None:
    if levels < 1:
        raise LengthError(f"need at least one level, got {levels}")
    if n % (1 << levels):
        raise LengthError(f"length {n} is not divisible by 2**{levels}")
    if n >> (levels - 1) < 4:
        raise LengthError(
            f"depth {levels} leaves {n >> (levels - 1)} samples at the last level; 4 needed"
        )


class Cascade:
    """``levels`` forward cores in series.

    Each core's one-sample pending slot doubles as the holding cell where an
    approximation waits for its pair partner before the next level runs.
    """

    def __init__(self, length: int, levels: int, config: CoreConfig = DEFAULT_CONFIG):
        check_depth(length, levels)
        self.config = config
        self.level_lengths = [length >> j for j in range(levels)]
        self.levels = [ForwardCore(n, config) for n in self.level_lengths]
        self.flushed = False

    @property
    def depth(self) -> int:
        return len(self.levels)

    def _emit(self, j: int, pair, out: list) -> None:
        if pair is None:
            return
        out.append(Coefficient(j + 1, "d", pair.index, pair.d))
        if j + 1 == self.depth:
            out.append(Coefficient(j + 1, "a", pair.index, pair.a))
        else:
            self._emit(j + 1, self.levels[j + 1].push(pair.a), out)

    def push(self, sample) -> list:
        """Feed one input sample; returns the coefficients finalised by it."""
        if self.flushed:
            raise StreamError("cascade already flushed")
        out: list = []
        self._emit(0, self.levels[0].push(sample), out)
        return out

    def flush(self) -> list:
        if self.flushed:
            raise StreamError("cascade already flushed")
        self.flushed = True
        out: list = []
        for j, core in enumerate(self.levels):
            self._emit(j, core.flush(), out)
        return out


def cascade_forward(
    signal: Sequence, levels: int, config: CoreConfig = DEFAULT_CONFIG
) -> SubbandPyramid:
    """``levels``-deep pyramid in one pass; ``signal`` is iterated once."""
    n = len(signal)
    cascade = Cascade(n, levels, config)
    dtype = np.int64 if config.integer else np.float64
    details = [np.zeros(n >> (j + 1), dtype=dtype) for j in range(levels)]
    approx = np.zeros(n >> levels, dtype=dtype)

    def store(coeffs):
        for c in coeffs:
            band = approx if c.band == "a" else details[c.level - 1]
            band[c.index] = c.value

    for sample in signal:
        store(cascade.push(sample))
    store(cascade.flush())
    return SubbandPyramid(approx, details)


def cascade_inverse(pyramid: SubbandPyramid, config: CoreConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Reconstruct the signal, deepest level first."""
    if pyramid.ndim != 1 or pyramid.depth < 1:
        raise LengthError("expected a 1-D pyramid with at least one level")
    a = np.asarray(pyramid.approx)
    for j in range(pyramid.depth, 0, -1):
        d = np.asarray(pyramid.details[j - 1])
        if d.shape != a.shape:
            raise LengthError(f"level {j}: detail length {d.shape} != approx length {a.shape}")
        a = inverse_1d(a, d, config)
    return a
