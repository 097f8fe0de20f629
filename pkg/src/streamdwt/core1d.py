"""Single-loop 1-D CDF 5/3 transform built on the mutable core.

The forward core consumes the signal one pair at a time, ``(s[2k-1], s[2k])``
at invocation ``k``, and emits ``(a[k-1], d[k-1])``: one sample of lag.  A
signal of ``N`` samples takes ``N/2 + 1`` invocations, the last one being
the flush.  Samples outside the signal enter as zeros and outputs outside
it are dropped; the border treatment lives entirely in the stage matrices.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .config import DEFAULT_CONFIG, CoreConfig, LengthError, StreamError
from .stages import (
    KAPPA,
    LAG,
    PositionVariant,
    StageKind,
    StageMatrix,
    make_stage_matrix,
    select_variant,
)

Rounding = Callable[[float], int]


def round_forward(v):
    if isinstance(v, np.ndarray):
        return np.floor(v + 0.5)
    return math.floor(v + 0.5)


def round_inverse(v):
    if isinstance(v, np.ndarray):
        return -np.floor(0.5 - v)
    return -math.floor(-v + 0.5)


class OutputPair(NamedTuple):
    a: float
    d: float
    index: int


@dataclass
class CoreState:
    """Auxiliary buffer and bookkeeping of one 1-D core."""

    n_half: int
    buffer_a: float = 0.0
    buffer_d: float = 0.0
    invocation: int = 0
    lag: int = LAG
    kappa: int = KAPPA

    @property
    def done(self) -> bool:
        return self.invocation > self.n_half


class CompiledStage(NamedTuple):
    """A stage matrix split into its lifting row and its plain copies."""

    row: int
    target: int
    terms: tuple  # ((coefficient, (column, ...)), ...)
    copies: tuple

    @classmethod
    def from_matrix(cls, stage: StageMatrix) -> "CompiledStage":
        m = stage.entries
        row, target = stage.lifting_row, stage.target
        if m[row, target] != 1.0:
            raise ValueError(f"{stage!r}: lifting row must keep its target")
        groups: dict = {}
        for j in range(4):
            if j != target and m[row, j] != 0:
                groups.setdefault(float(m[row, j]), []).append(j)
        terms = tuple((c, tuple(js)) for c, js in groups.items())
        copies = []
        for i in range(4):
            if i == row:
                copies.append(None)
                continue
            (nz,) = np.nonzero(m[i])
            if len(nz) != 1 or m[i, nz[0]] != 1.0:
                raise ValueError(f"{stage!r}: row {i} is not a plain copy")
            copies.append(int(nz[0]))
        return cls(row, target, terms, tuple(copies))

    def apply(self, x, rounding: Optional[Rounding] = None) -> list:
        y = [None if j is None else x[j] for j in self.copies]
        inc = None
        for c, js in self.terms:
            t = c * (x[js[0]] if len(js) == 1 else x[js[0]] + x[js[1]])
            inc = t if inc is None else inc + t
        if inc is None:
            inc = 0.0
        if rounding is not None:
            inc = rounding(inc)
        y[self.row] = x[self.target] + inc
        return y


@functools.lru_cache(maxsize=64)
def _compiled_stages(kinds: tuple, config: CoreConfig) -> dict:
    return {
        v: tuple(CompiledStage.from_matrix(make_stage_matrix(k, v, config)) for k in kinds)
        for v in PositionVariant
    }


def core_step(
    state: CoreState,
    pair: tuple,
    stages: tuple,
    rounding: Optional[Rounding] = None,
) -> tuple:
    """Run one invocation: ``y = S T [B_a, B_d, pair[1], pair[0]]``.

    ``stages`` is the ``(T, S)`` pair, as :class:`StageMatrix` or already
    compiled.  Writes ``y[0], y[1]`` back to the buffer, advances the
    invocation counter and returns the raw output slots ``(y[2], y[3])``.
    Deciding which of them lie inside the output signal is up to the caller.
    """
    if state.done:
        raise StreamError(f"core already completed {state.n_half + 1} invocations")
    t, s = (
        st if isinstance(st, CompiledStage) else CompiledStage.from_matrix(st)
        for st in stages
    )
    x = (state.buffer_a, state.buffer_d, pair[1], pair[0])
    y = s.apply(t.apply(x, rounding), rounding)
    state.buffer_a, state.buffer_d = y[0], y[1]
    state.invocation += 1
    return y[2], y[3]


def _coerce(value, integer: bool):
    if isinstance(value, np.ndarray):
        # a lane vector, already validated by the lane driver
        return value
    if integer:
        if value != int(value):
            raise ValueError(f"integer mode needs integral samples, got {value!r}")
        return int(value)
    return float(value)


def _check_length(n: int) -> int:
    if n % 2:
        raise LengthError(f"streaming core needs an even length, got {n}")
    if n < 4:
        raise LengthError(f"streaming core needs at least 4 samples, got {n}")
    return n // 2


class _Core:
    kinds: tuple
    rounding: Optional[Rounding]

    def __init__(self, n_half: int, config: CoreConfig):
        self.config = config
        self.state = CoreState(n_half)
        if config.integer:
            self.state.buffer_a = self.state.buffer_d = 0
        self._zero = 0 if config.integer else 0.0
        self._stages = _compiled_stages(self.kinds, self._stage_config(config))

    @staticmethod
    def _stage_config(config: CoreConfig) -> CoreConfig:
        return config

    def _invoke(self, pair) -> tuple:
        st = self.state
        if st.done:
            raise StreamError(f"core already completed {st.n_half + 1} invocations")
        variant = select_variant(st.invocation, st.n_half)
        return core_step(st, pair, self._stages[variant], self.rounding)


class ForwardCore(_Core):
    """Streaming forward transform of a signal of known even length."""

    kinds = (StageKind.INV_PREDICT, StageKind.INV_UPDATE)

    def __init__(self, length: int, config: CoreConfig = DEFAULT_CONFIG):
        super().__init__(_check_length(length), config)
        self.length = length
        self.rounding = round_forward if config.integer else None
        self._pending = None
        self._received = 0

    def invoke(self, pair: tuple) -> Optional[OutputPair]:
        """One core invocation on ``(s[2k-1], s[2k])``; zeros stand in for
        samples outside the signal."""
        k = self.state.invocation
        a, d = self._invoke(pair)
        if k == 0:
            return None
        zeta = self.config.scaling
        if zeta is not None:
            a, d = a * zeta, d / zeta
        return OutputPair(a, d, k - 1)

    def push(self, sample) -> Optional[OutputPair]:
        """Feed the next sample; returns a pair whenever an invocation ran."""
        if self._received >= self.length:
            raise StreamError(f"signal of length {self.length} already consumed")
        sample = _coerce(sample, self.config.integer)
        i = self._received
        self._received += 1
        if i % 2:
            self._pending = sample
            return None
        left = self._zero if i == 0 else self._pending
        return self.invoke((left, sample))

    def flush(self) -> Optional[OutputPair]:
        if self._received != self.length:
            raise StreamError(
                f"flush after {self._received} of {self.length} samples"
            )
        return self.invoke((self._pending, self._zero))


class InverseCore(_Core):
    """Streaming inverse: consumes ``(a[k], d[k])`` and emits signal samples.

    Invocation ``k`` produces ``s[2k-1]`` and ``s[2k]``; the first invocation
    only yields ``s[0]`` and the flush only ``s[N-1]``.
    """

    kinds = (StageKind.PREDICT, StageKind.UPDATE)

    @staticmethod
    def _stage_config(config: CoreConfig) -> CoreConfig:
        return config.dual()

    def __init__(self, n_half: int, config: CoreConfig = DEFAULT_CONFIG):
        if n_half < 2:
            raise LengthError(f"streaming inverse needs at least 2 pairs, got {n_half}")
        super().__init__(n_half, config)
        self.rounding = round_inverse if config.integer else None

    def invoke(self, pair: tuple) -> list:
        """One invocation on ``(a[k], d[k])``; returns ``[(index, sample), ...]``."""
        k = self.state.invocation
        odd, even = self._invoke(pair)
        n = 2 * self.state.n_half
        out = []
        if 2 * k - 1 >= 0:
            out.append((2 * k - 1, odd))
        if 2 * k < n:
            out.append((2 * k, even))
        return out

    def push(self, a, d) -> list:
        if self.state.invocation >= self.state.n_half:
            raise StreamError("all subband pairs already consumed")
        integer = self.config.integer
        a, d = _coerce(a, integer), _coerce(d, integer)
        zeta = self.config.scaling
        if zeta is not None:
            a, d = a / zeta, d * zeta
        return self.invoke((a, d))

    def flush(self) -> list:
        if self.state.invocation != self.state.n_half:
            raise StreamError("flush before all subband pairs were consumed")
        return self.invoke((self._zero, self._zero))


def _dtype(config: CoreConfig):
    return np.int64 if config.integer else np.float64


def forward_1d(
    signal: Sequence, config: CoreConfig = DEFAULT_CONFIG
) -> tuple[np.ndarray, np.ndarray]:
    """Forward transform in one pass; ``signal`` is iterated exactly once.

    Returns ``(a, d)``, each of length ``len(signal) // 2``.
    """
    n = len(signal)
    core = ForwardCore(n, config)
    a = np.zeros(n // 2, dtype=_dtype(config))
    d = np.zeros(n // 2, dtype=_dtype(config))

    def store(out):
        if out is not None:
            a[out.index] = out.a
            d[out.index] = out.d

    count = 0
    for sample in signal:
        store(core.push(sample))
        count += 1
    if count != n:
        raise LengthError(f"signal yielded {count} samples, expected {n}")
    store(core.flush())
    return a, d


def inverse_1d(
    a: Iterable, d: Iterable, config: CoreConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Inverse of :func:`forward_1d`."""
    a = np.asarray(a)
    d = np.asarray(d)
    if a.shape != d.shape or a.ndim != 1:
        raise LengthError(f"subband shapes differ: {a.shape} vs {d.shape}")
    core = InverseCore(len(a), config)
    out = np.zeros(2 * len(a), dtype=_dtype(config))
    for ak, dk in zip(a, d):
        for i, v in core.push(ak, dk):
            out[i] = v
    for i, v in core.flush():
        out[i] = v
    return out




def _lane_columns(x: np.ndarray, axis: int, integer: bool) -> np.ndarray:
    cols = np.moveaxis(x, axis, 0)
    cols = np.ascontiguousarray(cols, dtype=np.float64)
    if integer and x.dtype.kind == "f" and not np.array_equal(cols, np.floor(cols)):
        raise ValueError("integer mode needs integral samples")
    return cols


def forward_lanes(
    signals, config: CoreConfig = DEFAULT_CONFIG, axis: int = -1
) -> tuple[np.ndarray, np.ndarray]:
    """Run one forward core per signal of a 2-D array in lock-step.

    Samples run along ``axis``; every core state holds a vector with one
    entry per signal, so many independent signals share a single pass over
    the sample positions.  Subbands come back with the same layout.
    """
    x = np.asarray(signals)
    if x.ndim != 2:
        raise LengthError(f"expected a 2-D array of signals, got shape {x.shape}")
    columns = _lane_columns(x, axis, config.integer)
    n, lanes = columns.shape
    core = ForwardCore(n, config)
    zero = np.zeros(lanes)
    core._zero = zero
    core.state.buffer_a = core.state.buffer_d = zero
    a = np.zeros((n // 2, lanes))
    d = np.zeros((n // 2, lanes))

    def store(out):
        if out is not None:
            a[out.index] = out.a
            d[out.index] = out.d

    for i in range(n):
        store(core.push(columns[i]))
    store(core.flush())
    dtype = _dtype(config)
    return (
        np.moveaxis(a, 0, axis).astype(dtype, copy=False),
        np.moveaxis(d, 0, axis).astype(dtype, copy=False),
    )


def inverse_lanes(a, d, config: CoreConfig = DEFAULT_CONFIG, axis: int = -1) -> np.ndarray:
    """Lock-step counterpart of :func:`forward_lanes`."""
    a = np.asarray(a)
    d = np.asarray(d)
    if a.shape != d.shape or a.ndim != 2:
        raise LengthError(f"subband shapes differ: {a.shape} vs {d.shape}")
    a_cols = _lane_columns(a, axis, config.integer)
    d_cols = _lane_columns(d, axis, config.integer)
    n_half, lanes = a_cols.shape
    core = InverseCore(n_half, config)
    zero = np.zeros(lanes)
    core._zero = zero
    core.state.buffer_a = core.state.buffer_d = zero
    out = np.zeros((2 * n_half, lanes))
    for k in range(n_half):
        for i, v in core.push(a_cols[k], d_cols[k]):
            out[i] = v
    for i, v in core.flush():
        out[i] = v
    return np.moveaxis(out, 0, axis).astype(_dtype(config), copy=False)
