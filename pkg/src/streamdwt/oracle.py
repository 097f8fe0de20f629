"""Reference CDF 5/3 lifting on explicitly extended copies of the signal.

Nothing here is shared with the streaming cores.  Each lifting step first
materialises the border extension of the current array and then updates
every sample of one parity from the extended copy.  For whole-sample
symmetric extension that is the same as extending the input once.  For
zero padding it means every operand outside the signal is zero, whether it
is a sample or a predicted detail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, BoundaryPolicy, CoreConfig, LengthError

MARGIN = 2


@dataclass(frozen=True)
class ExtendedSignal:
    values: np.ndarray
    margin: int
    policy: BoundaryPolicy

    @property
    def interior(self) -> np.ndarray:
        return self.values[..., self.margin : self.values.shape[-1] - self.margin]


def mirror_index(p: np.ndarray, n: int) -> np.ndarray:
    """Whole-sample symmetric (2N-2 periodic) reflection of positions into [0, n)."""
    p = np.asarray(p)
    if n == 1:
        return np.zeros_like(p)
    period = 2 * (n - 1)
    q = np.mod(p, period)
    return np.where(q < n, q, period - q)


def extend(signal, margin: int = MARGIN, policy: BoundaryPolicy = BoundaryPolicy.SYMMETRIC) -> ExtendedSignal:
    """Extend along the last axis by ``margin`` samples on both sides."""
    x = np.asarray(signal)
    n = x.shape[-1]
    if n == 0:
        raise LengthError("cannot extend an empty signal")
    if margin < 1:
        raise ValueError(f"margin must be positive, got {margin}")
    positions = np.arange(-margin, n + margin)
    if policy is BoundaryPolicy.SYMMETRIC:
        values = x[..., mirror_index(positions, n)]
    else:
        shape = x.shape[:-1] + (n + 2 * margin,)
        values = np.zeros(shape, dtype=x.dtype)
        values[..., margin : margin + n] = x
    return ExtendedSignal(values, margin, policy)


def _lift(y: np.ndarray, parity: int, c: float, policy: BoundaryPolicy, integer: bool, sign: int):
    """``y[p] += sign * R(c * (y[p-1] + y[p+1]))`` for every p of ``parity``."""
    n = y.shape[-1]
    ext = extend(y, MARGIN, policy).values
    m = MARGIN
    targets = np.arange(parity, n, 2)
    if len(targets) == 0:
        return y
    inc = c * (ext[..., targets + m - 1] + ext[..., targets + m + 1])
    if integer:
        inc = np.floor(inc + 0.5).astype(np.int64)
    out = y.copy()
    out[..., targets] = y[..., targets] + sign * inc
    return out


def _as_array(signal, config: CoreConfig) -> np.ndarray:
    x = np.asarray(signal)
    if config.integer:
        if not np.array_equal(x, np.round(x)):
            raise ValueError("integer mode needs integral samples")
        return x.astype(np.int64)
    return x.astype(np.float64)


def oracle_forward(signal, config: CoreConfig = DEFAULT_CONFIG, axis: int = -1):
    """Reference forward transform along ``axis``; returns ``(a, d)``.

    Odd lengths are accepted: ``a`` then gets the extra sample.
    """
    x = np.moveaxis(_as_array(signal, config), axis, -1)
    if x.shape[-1] < 2:
        raise LengthError(f"need at least 2 samples, got {x.shape[-1]}")
    integer = config.integer
    y = _lift(x, 1, config.alpha, config.boundary, integer, +1)
    y = _lift(y, 0, config.beta, config.boundary, integer, +1)
    a, d = y[..., 0::2], y[..., 1::2]
    if config.scaling is not None:
        a, d = a * config.scaling, d / config.scaling
    return np.moveaxis(a, -1, axis), np.moveaxis(d, -1, axis)


def oracle_inverse(a, d, config: CoreConfig = DEFAULT_CONFIG, axis: int = -1):
    """Exact inverse of :func:`oracle_forward`."""
    a = np.moveaxis(_as_array(a, config), axis, -1)
    d = np.moveaxis(_as_array(d, config), axis, -1)
    na, nd = a.shape[-1], d.shape[-1]
    if a.shape[:-1] != d.shape[:-1] or na - nd not in (0, 1):
        raise LengthError(f"incompatible subbands: {a.shape} and {d.shape}")
    if config.scaling is not None:
        a, d = a / config.scaling, d * config.scaling
    shape = a.shape[:-1] + (na + nd,)
    y = np.zeros(shape, dtype=np.int64 if config.integer else np.float64)
    y[..., 0::2] = a
    y[..., 1::2] = d
    integer = config.integer
    y = _lift(y, 0, config.beta, config.boundary, integer, -1)
    y = _lift(y, 1, config.alpha, config.boundary, integer, -1)
    return np.moveaxis(y, -1, axis)


def oracle_pyramid(signal, levels: int, config: CoreConfig = DEFAULT_CONFIG):
    """Recursive single-level reference: ``(approx, [d1, ..., dJ])``."""
    a = np.asarray(signal)
    details = []
    for _ in range(levels):
        a, d = oracle_forward(a, config)
        details.append(d)
    return a, details


def oracle_pyramid_inverse(approx, details, config: CoreConfig = DEFAULT_CONFIG):
    a = approx
    for d in reversed(details):
        a = oracle_inverse(a, d, config)
    return a


def oracle_forward_2d(image, config: CoreConfig = DEFAULT_CONFIG, columns_first: bool = True):
    """Separable reference; returns ``(a, h, v, d)``.

    ``h`` is low-pass vertically and high-pass horizontally, ``v`` the
    opposite.  Column-first order matches the streaming 2-D core; in real
    mode the order does not matter, in integer mode it does.
    """
    x = np.asarray(image)
    if columns_first:
        lo, hi = oracle_forward(x, config, axis=0)
        a, h = oracle_forward(lo, config, axis=1)
        v, d = oracle_forward(hi, config, axis=1)
    else:
        lo, hi = oracle_forward(x, config, axis=1)
        a, v = oracle_forward(lo, config, axis=0)
        h, d = oracle_forward(hi, config, axis=0)
    return a, h, v, d


def oracle_inverse_2d(a, h, v, d, config: CoreConfig = DEFAULT_CONFIG):
    lo = oracle_inverse(a, h, config, axis=1)
    hi = oracle_inverse(v, d, config, axis=1)
    return oracle_inverse(lo, hi, config, axis=0)


def oracle_pyramid_2d(image, levels: int, config: CoreConfig = DEFAULT_CONFIG):
    a = np.asarray(image)
    details = []
    for _ in range(levels):
        a, h, v, d = oracle_forward_2d(a, config)
        details.append((h, v, d))
    return a, details


def oracle_pyramid_inverse_2d(approx, details, config: CoreConfig = DEFAULT_CONFIG):
    a = approx
    for h, v, d in reversed(details):
        a = oracle_inverse_2d(a, h, v, d, config)
    return a
