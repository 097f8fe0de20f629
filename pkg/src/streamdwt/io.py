"""File formats: binary PGM, one-value-per-line CSV, raw float64 and the
pyramid container.

Pyramid container, little-endian::

    magic     4s   b"DWTP"
    version   u1   1
    ndim      u1   1 or 2
    mode      u1   0 = real (float64 payload), 1 = integer (int32 payload)
    levels    u1   J
    dims      u4 * ndim   N, or H then W
    payload   subbands deepest-first: a^J, then for j = J..1 either d^j
              or h^j, v^j, d^j; 2-D planes row-major
"""

from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np

from .multiscale import SubbandPyramid

PYRAMID_MAGIC = b"DWTP"
PYRAMID_VERSION = 1
_HEADER = struct.Struct("<4sBBBB")


class FormatError(ValueError):
    """Malformed or truncated input file."""


_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*(\S+)")


def parse_pgm(data: bytes) -> tuple[np.ndarray, int]:
    """Parse a binary P5 image; returns ``(plane, maxval)``."""
    fields = []
    pos = 0
    for _ in range(4):
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise FormatError("truncated PGM header")
        fields.append(m.group(1))
        pos = m.end()
    if fields[0] != b"P5":
        raise FormatError(f"not a binary PGM (magic {fields[0]!r})")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise FormatError("non-numeric PGM header field") from None
    if width <= 0 or height <= 0 or not 0 < maxval <= 65535:
        raise FormatError(f"bad PGM header: {width}x{height}, maxval {maxval}")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FormatError("missing whitespace after PGM maxval")
    pos += 1
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    need = width * height * dtype.itemsize
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise FormatError(f"PGM payload truncated: {len(payload)} of {need} bytes")
    plane = np.frombuffer(payload, dtype=dtype).reshape(height, width)
    return plane.astype(np.int64), maxval


def read_pgm(path) -> tuple[np.ndarray, int]:
    return parse_pgm(Path(path).read_bytes())


def format_pgm(plane, maxval: int | None = None) -> bytes:
    plane = np.asarray(plane)
    if plane.ndim != 2:
        raise ValueError(f"PGM plane must be 2-D, got shape {plane.shape}")
    if maxval is None:
        maxval = 255 if plane.max(initial=0) <= 255 else 65535
    if plane.min(initial=0) < 0 or plane.max(initial=0) > maxval:
        raise ValueError(f"pixel values outside 0..{maxval}")
    height, width = plane.shape
    dtype = ">u2" if maxval > 255 else "u1"
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    return header + plane.astype(dtype).tobytes()


def write_pgm(path, plane, maxval: int | None = None) -> None:
    Path(path).write_bytes(format_pgm(plane, maxval))


def read_csv(path, integer: bool = False) -> np.ndarray:
    """One decimal value per line; blank lines are skipped."""
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            v = float(line)
        except ValueError:
            raise FormatError(f"{path}:{lineno}: not a number: {line!r}") from None
        if integer and v != int(v):
            raise FormatError(f"{path}:{lineno}: integer mode rejects {line!r}")
        values.append(v)
    if integer:
        return np.array(values, dtype=np.float64).astype(np.int64)
    return np.array(values, dtype=np.float64)


def write_csv(path, values) -> None:
    values = np.asarray(values)
    if values.dtype.kind in "iu":
        lines = [str(int(v)) for v in values]
    else:
        lines = [repr(float(v)) for v in values]
    Path(path).write_text("".join(line + "\n" for line in lines))


def read_raw(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if len(data) % 8:
        raise FormatError(f"raw float64 file size {len(data)} is not a multiple of 8")
    return np.frombuffer(data, dtype="<f8").astype(np.float64)


def write_raw(path, values) -> None:
    Path(path).write_bytes(np.asarray(values, dtype="<f8").tobytes())


def _band_shapes(ndim: int, dims: tuple, levels: int) -> list:
    def at(j):
        return tuple(n >> j for n in dims)

    shapes = [at(levels)]
    for j in range(levels, 0, -1):
        shapes.extend([at(j)] * (3 if ndim == 2 else 1))
    return shapes


def format_pyramid(pyramid: SubbandPyramid, dims: tuple) -> bytes:
    ndim = len(dims)
    integer = np.asarray(pyramid.approx).dtype.kind in "iu"
    bands = pyramid.bands()
    expected = _band_shapes(ndim, dims, pyramid.depth)
    got = [np.shape(b) for b in bands]
    if got != expected:
        raise ValueError(f"pyramid bands {got} do not match dims {dims}")
    out = [_HEADER.pack(PYRAMID_MAGIC, PYRAMID_VERSION, ndim, int(integer), pyramid.depth)]
    out.append(struct.pack(f"<{ndim}I", *dims))
    dtype = "<i4" if integer else "<f8"
    for b in bands:
        b = np.asarray(b)
        if integer and (b.min(initial=0) < -(2**31) or b.max(initial=0) >= 2**31):
            raise FormatError("integer coefficient does not fit in the 32-bit container")
        out.append(b.astype(dtype).tobytes())
    return b"".join(out)


def parse_pyramid(data: bytes) -> tuple[SubbandPyramid, tuple]:
    """Returns ``(pyramid, dims)``."""
    if len(data) < _HEADER.size:
        raise FormatError("truncated pyramid header")
    magic, version, ndim, mode, levels = _HEADER.unpack_from(data)
    if magic != PYRAMID_MAGIC:
        raise FormatError(f"bad pyramid magic {magic!r}")
    if version != PYRAMID_VERSION:
        raise FormatError(f"unsupported pyramid version {version}")
    if ndim not in (1, 2) or mode not in (0, 1) or levels < 1:
        raise FormatError(f"bad pyramid header: ndim={ndim} mode={mode} levels={levels}")
    pos = _HEADER.size
    if len(data) < pos + 4 * ndim:
        raise FormatError("truncated pyramid dims")
    dims = struct.unpack_from(f"<{ndim}I", data, pos)
    pos += 4 * ndim
    if any(n % (1 << levels) for n in dims):
        raise FormatError(f"dims {dims} not divisible by 2**{levels}")
    dtype = np.dtype("<i4") if mode else np.dtype("<f8")
    bands = []
    for shape in _band_shapes(ndim, dims, levels):
        size = int(np.prod(shape)) * dtype.itemsize
        chunk = data[pos : pos + size]
        if len(chunk) < size:
            raise FormatError("pyramid payload truncated")
        pos += size
        band = np.frombuffer(chunk, dtype=dtype).reshape(shape)
        bands.append(band.astype(np.int64 if mode else np.float64))
    if pos != len(data):
        raise FormatError(f"{len(data) - pos} trailing bytes after pyramid payload")
    approx, rest = bands[0], bands[1:]
    step = 3 if ndim == 2 else 1
    deepest_first = [
        tuple(rest[i : i + 3]) if ndim == 2 else rest[i] for i in range(0, len(rest), step)
    ]
    return SubbandPyramid(approx, deepest_first[::-1]), tuple(dims)


def read_pyramid(path) -> tuple[SubbandPyramid, tuple]:
    return parse_pyramid(Path(path).read_bytes())


def write_pyramid(path, pyramid: SubbandPyramid, dims: tuple) -> None:
    Path(path).write_bytes(format_pyramid(pyramid, dims))
