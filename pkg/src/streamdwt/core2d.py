"""Tensor-product 2-D core: 2x2 fragments in, (a, h, v, d) quadruples out.

One forward core runs down every image column.  For each fragment the two
column cores it touches turn its pixels into vertical low/high values, and
two row cores (one for the low row, one for the high row) turn those into
the four subbands.  Fragments are visited row-major, with one extra flush
column per fragment row and one extra flush row at the bottom, so an
``H x W`` image takes ``(H/2 + 1) * (W/2 + 1)`` pushes.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .config import DEFAULT_CONFIG, CoreConfig, LengthError, StreamError
from .core1d import ForwardCore, InverseCore
from .multiscale import SubbandPyramid, check_depth

FLUSH = None


class SubbandQuad(NamedTuple):
    a: float
    h: float
    v: float
    d: float
    row: int
    col: int


def _check_shape(height: int, width: int) -> None:
    for name, n in (("height", height), ("width", width)):
        if n % 2 or n < 4:
            raise LengthError(f"image {name} must be even and >= 4, got {n}")


class Core2d:
    def __init__(self, height: int, width: int, config: CoreConfig = DEFAULT_CONFIG):
        _check_shape(height, width)
        self.height, self.width = height, width
        self.config = config
        self.columns = [ForwardCore(height, config) for _ in range(width)]
        self.rows: Optional[tuple] = None
        self.cursor = (0, 0)

    @property
    def positions(self) -> int:
        return (self.height // 2 + 1) * (self.width // 2 + 1)

    def expects_fragment(self) -> bool:
        r, c = self.cursor
        return r < self.height // 2 and c < self.width // 2

    def _advance(self) -> None:
        r, c = self.cursor
        c += 1
        if c > self.width // 2:
            r, c = r + 1, 0
        self.cursor = (r, c)

    def push(self, fragment=FLUSH) -> Optional[SubbandQuad]:
        """Process the fragment at the cursor, or a flush position.

        ``fragment`` is ``[[top_left, top_right], [bottom_left, bottom_right]]``
        at data positions and :data:`FLUSH` at flush positions.
        """
        r, c = self.cursor
        hr, hc = self.height // 2, self.width // 2
        if r > hr:
            raise StreamError("all fragment positions already processed")
        data = self.expects_fragment()
        if data == (fragment is FLUSH):
            want = "a 2x2 fragment" if data else "FLUSH"
            raise StreamError(f"position {self.cursor} expects {want}")
        self._advance()

        if c == 0:
            # first output row appears one fragment row late
            self.rows = None if r == 0 else (
                ForwardCore(self.width, self.config),
                ForwardCore(self.width, self.config),
            )
        if c == hc:
            if self.rows is None:
                return None
            lo, hi = self.rows[0].flush(), self.rows[1].flush()
            return self._quad(lo, hi, r - 1)

        vertical = []
        for dx in (0, 1):
            core = self.columns[2 * c + dx]
            if r < hr:
                out = core.push(fragment[0][dx])
                core.push(fragment[1][dx])
            else:
                out = core.flush()
            vertical.append(out)
        if self.rows is None:
            return None
        lo_core, hi_core = self.rows
        lo = hi = None
        for out in vertical:
            lo = lo_core.push(out.a) or lo
            hi = hi_core.push(out.d) or hi
        if lo is None:
            return None
        return self._quad(lo, hi, r - 1)

    @staticmethod
    def _quad(lo, hi, row: int) -> SubbandQuad:
        return SubbandQuad(lo.a, lo.d, hi.a, hi.d, row, lo.index)


def forward_2d(image, config: CoreConfig = DEFAULT_CONFIG):
    """Single-pass 2-D transform; returns planes ``(a, h, v, d)``.

    ``image`` needs ``.shape`` and ``image[row, col]``; every pixel is read
    exactly once.
    """
    height, width = image.shape
    core = Core2d(height, width, config)
    dtype = np.int64 if config.integer else np.float64
    planes = [np.zeros((height // 2, width // 2), dtype=dtype) for _ in range(4)]
    for _ in range(core.positions):
        if core.expects_fragment():
            r, c = core.cursor
            y, x = 2 * r, 2 * c
            frag = (
                (image[y, x], image[y, x + 1]),
                (image[y + 1, x], image[y + 1, x + 1]),
            )
            quad = core.push(frag)
        else:
            quad = core.push(FLUSH)
        if quad is not None:
            for plane, value in zip(planes, quad[:4]):
                plane[quad.row, quad.col] = value
    return tuple(planes)


def inverse_2d(a, h, v, d, config: CoreConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Streaming inverse of :func:`forward_2d`, quad rows in order.

    Two row cores rebuild the vertical low and high rows of each quad row;
    their samples feed one inverse core per column.
    """
    planes = [np.asarray(p) for p in (a, h, v, d)]
    shape = planes[0].shape
    if len(shape) != 2 or any(p.shape != shape for p in planes):
        raise LengthError(f"subband planes differ in shape: {[p.shape for p in planes]}")
    hh, hw = shape
    _check_shape(2 * hh, 2 * hw)
    dtype = np.int64 if config.integer else np.float64
    image = np.zeros((2 * hh, 2 * hw), dtype=dtype)
    columns = [InverseCore(hh, config) for _ in range(2 * hw)]
    lo_row = np.zeros(2 * hw, dtype=dtype)
    hi_row = np.zeros(2 * hw, dtype=dtype)

    def emit(col, samples):
        for y, val in samples:
            image[y, col] = val

    pa, ph, pv, pd = planes
    for i in range(hh):
        lo_core, hi_core = InverseCore(hw, config), InverseCore(hw, config)
        for j in range(hw):
            for x, val in lo_core.push(pa[i, j], ph[i, j]):
                lo_row[x] = val
            for x, val in hi_core.push(pv[i, j], pd[i, j]):
                hi_row[x] = val
        for x, val in lo_core.flush():
            lo_row[x] = val
        for x, val in hi_core.flush():
            hi_row[x] = val
        for col, core in enumerate(columns):
            emit(col, core.push(lo_row[col], hi_row[col]))
    for col, core in enumerate(columns):
        emit(col, core.flush())
    return image


def pyramid_forward_2d(image, levels: int, config: CoreConfig = DEFAULT_CONFIG) -> SubbandPyramid:
    """``levels``-deep 2-D pyramid, re-running the 2-D core on each ``a`` plane."""
    height, width = image.shape
    check_depth(height, levels)
    check_depth(width, levels)
    a = image
    details = []
    for _ in range(levels):
        a, h, v, d = forward_2d(a, config)
        details.append((h, v, d))
    return SubbandPyramid(a, details)


def pyramid_inverse_2d(pyramid: SubbandPyramid, config: CoreConfig = DEFAULT_CONFIG) -> np.ndarray:
    if pyramid.ndim != 2 or pyramid.depth < 1:
        raise LengthError("expected a 2-D pyramid with at least one level")
    a = pyramid.approx
    for h, v, d in reversed(pyramid.details):
        a = inverse_2d(a, h, v, d, config)
    return a
