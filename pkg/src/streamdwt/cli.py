"""``dwt`` command line front end.

    dwt fwd|inv [--2d] [--levels J] [--mode real|int] [--boundary sym|zero]
                [--scale] [--verify] [--bench N] IN OUT

Forward jobs read a CSV (``.raw``: little-endian float64) signal or, with
``--2d``, a binary PGM image and write a pyramid container.  Inverse jobs
read a container and write the signal or image back.  ``--verify`` checks
the streaming result against the reference implementation, ``--bench``
times the streaming path against a two-pass extend-then-lift baseline.

Exit codes: 0 success, 1 verification failure, 2 usage or shape error,
3 I/O or format error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import io, oracle
from .config import ArithmeticMode, BoundaryPolicy, CoreConfig, DEFAULT_ZETA, LengthError
from .core2d import pyramid_forward_2d, pyramid_inverse_2d
from .multiscale import SubbandPyramid, cascade_forward, cascade_inverse, check_depth

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

TOLERANCE_1D = 1e-12
TOLERANCE_2D = 1e-10


class UsageError(ValueError):
    pass


@dataclass
class JobSpec:
    direction: str
    input: Path
    output: Path
    two_d: bool = False
    levels: int = 1
    mode: Optional[ArithmeticMode] = None
    boundary: BoundaryPolicy = BoundaryPolicy.SYMMETRIC
    scaling: bool = False
    verify: bool = False
    bench: int = 0

    def __post_init__(self):
        self.input, self.output = Path(self.input), Path(self.output)
        if self.direction not in ("fwd", "inv"):
            raise UsageError(f"direction must be fwd or inv, got {self.direction!r}")
        if self.levels < 1:
            raise UsageError(f"--levels must be >= 1, got {self.levels}")
        if self.bench < 0:
            raise UsageError("--bench repeat count must be positive")
        if self.scaling and self.mode is ArithmeticMode.INTEGER:
            raise UsageError("--scale cannot be combined with integer mode")

    def config(self, mode: Optional[ArithmeticMode] = None) -> CoreConfig:
        mode = mode or self.mode or ArithmeticMode.REAL
        return CoreConfig(
            zeta=DEFAULT_ZETA if self.scaling else None,
            boundary=self.boundary,
            mode=mode,
        )


@dataclass
class Report:
    exit_code: int = EXIT_OK
    lines: list = field(default_factory=list)
    max_abs_diff: Optional[float] = None

    def say(self, line: str) -> None:
        self.lines.append(line)


@dataclass
class BenchResult:
    strategy: str
    best: float
    mean: float
    samples: int

    @property
    def rate(self) -> float:
        return self.samples / self.best if self.best > 0 else float("inf")

    def line(self) -> str:
        return (
            f"bench {self.strategy:>9}: best {self.best * 1e3:.2f} ms, "
            f"mean {self.mean * 1e3:.2f} ms, {self.rate:.3e} samples/s"
        )


def max_abs_diff(xs: Sequence, ys: Sequence) -> float:
    worst = 0.0
    for x, y in zip(xs, ys):
        x, y = np.asarray(x), np.asarray(y)
        if x.shape != y.shape:
            return float("inf")
        if x.size:
            worst = max(worst, float(np.max(np.abs(x.astype(np.float64) - y.astype(np.float64)))))
    return worst


def _streamable(dims: tuple, levels: int) -> bool:
    try:
        for n in dims:
            check_depth(n, levels)
    except LengthError:
        return False
    return True


def _check_oracle_shape(dims: tuple, levels: int) -> None:
    for n in dims:
        if n % (1 << levels) or n >> levels < 1:
            raise LengthError(
                f"length {n} cannot be split {levels} times into even halves"
            )


def _as_pyramid(approx, details) -> SubbandPyramid:
    return SubbandPyramid(np.asarray(approx), list(details))


def _reference_forward(data, levels, config, two_d) -> SubbandPyramid:
    if two_d:
        return _as_pyramid(*oracle.oracle_pyramid_2d(data, levels, config))
    return _as_pyramid(*oracle.oracle_pyramid(data, levels, config))


def _reference_inverse(pyramid, config, two_d) -> np.ndarray:
    if two_d:
        return oracle.oracle_pyramid_inverse_2d(pyramid.approx, pyramid.details, config)
    return oracle.oracle_pyramid_inverse(pyramid.approx, pyramid.details, config)


def _streaming_forward(data, levels, config, two_d) -> SubbandPyramid:
    if two_d:
        return pyramid_forward_2d(data, levels, config)
    return cascade_forward(data, levels, config)


def _streaming_inverse(pyramid, config, two_d) -> np.ndarray:
    if two_d:
        return pyramid_inverse_2d(pyramid, config)
    return cascade_inverse(pyramid, config)


def _time(fn, repeat: int) -> tuple:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), sum(times) / len(times)


def benchmark(
    data,
    levels: int,
    config: CoreConfig,
    repeat: int = 1,
    two_d: bool = False,
    direction: str = "fwd",
) -> list:
    """Time the streaming path against the two-pass baseline.

    Both strategies are run once and compared before any timing; a mismatch
    raises ``AssertionError``.
    """
    tol = 0.0 if config.integer else (TOLERANCE_2D if two_d else TOLERANCE_1D)
    if direction == "fwd":
        stream = lambda: _streaming_forward(data, levels, config, two_d)  # noqa: E731
        baseline = lambda: _reference_forward(data, levels, config, two_d)  # noqa: E731
        samples = int(np.size(data))
        diff = max_abs_diff(stream().bands(), baseline().bands())
    else:
        stream = lambda: _streaming_inverse(data, config, two_d)  # noqa: E731
        baseline = lambda: _reference_inverse(data, config, two_d)  # noqa: E731
        samples = data.size()
        diff = max_abs_diff([stream()], [baseline()])
    if diff > tol:
        raise AssertionError(f"strategies disagree before timing: max_abs_diff {diff:.3e}")
    out = []
    for name, fn in (("streaming", stream), ("two-pass", baseline)):
        best, mean = _time(fn, repeat)
        out.append(BenchResult(name, best, mean, samples))
    return out


def _read_input(job: JobSpec, integer: bool):
    if job.two_d:
        plane, _ = io.read_pgm(job.input)
        return plane if integer else plane.astype(np.float64)
    if job.input.suffix.lower() == ".raw":
        data = io.read_raw(job.input)
        if integer:
            if not np.array_equal(data, np.round(data)):
                raise io.FormatError(f"{job.input}: integer mode rejects fractional samples")
            return data.astype(np.int64)
        return data
    return io.read_csv(job.input, integer=integer)


def _write_output(job: JobSpec, values) -> None:
    if job.two_d:
        plane = np.asarray(values)
        if plane.dtype.kind == "f":
            plane = np.clip(np.rint(plane), 0, 65535).astype(np.int64)
        io.write_pgm(job.output, plane)
    elif job.output.suffix.lower() == ".raw":
        io.write_raw(job.output, values)
    else:
        io.write_csv(job.output, values)


def _verdict(report: Report, diff: float, tol: float) -> None:
    report.max_abs_diff = diff
    ok = diff <= tol
    report.say(f"verify: max_abs_diff = {diff:.3e} (tolerance {tol:.0e}) {'ok' if ok else 'FAILED'}")
    if not ok:
        report.exit_code = EXIT_VERIFY


def _run_forward(job: JobSpec, report: Report) -> None:
    config = job.config()
    data = _read_input(job, config.integer)
    dims = tuple(np.shape(data))
    if job.two_d and len(dims) != 2 or not job.two_d and len(dims) != 1:
        raise LengthError(f"unexpected input shape {dims}")
    if _streamable(dims, job.levels):
        pyramid = _streaming_forward(data, job.levels, config, job.two_d)
        path = "streaming"
    else:
        # too short for the streaming core, but still a valid decomposition
        _check_oracle_shape(dims, job.levels)
        pyramid = _reference_forward(data, job.levels, config, job.two_d)
        path = "reference (input below streaming minimum)"
    io.write_pyramid(job.output, pyramid, dims)
    report.say(f"fwd {'2d' if job.two_d else '1d'} {dims} J={job.levels} via {path} -> {job.output}")
    if job.verify:
        expected = _reference_forward(data, job.levels, config, job.two_d)
        tol = 0.0 if config.integer else (TOLERANCE_2D if job.two_d else TOLERANCE_1D)
        _verdict(report, max_abs_diff(pyramid.bands(), expected.bands()), tol)
    if job.bench and path == "streaming":
        for r in benchmark(data, job.levels, config, job.bench, job.two_d):
            report.say(r.line())


def _run_inverse(job: JobSpec, report: Report) -> None:
    pyramid, dims = io.read_pyramid(job.input)
    if (pyramid.ndim == 2) != job.two_d:
        raise UsageError(f"container holds a {pyramid.ndim}-D pyramid; check --2d")
    stored = ArithmeticMode.INTEGER if pyramid.approx.dtype.kind in "iu" else ArithmeticMode.REAL
    if job.mode is not None and job.mode is not stored:
        raise UsageError(f"container is {stored.value} mode, --mode {job.mode.value} given")
    if job.scaling and stored is ArithmeticMode.INTEGER:
        raise UsageError("--scale cannot be combined with integer mode")
    config = job.config(stored)
    if _streamable(dims, pyramid.depth):
        values = _streaming_inverse(pyramid, config, job.two_d)
        path = "streaming"
    else:
        values = _reference_inverse(pyramid, config, job.two_d)
        path = "reference (input below streaming minimum)"
    _write_output(job, values)
    report.say(f"inv {'2d' if job.two_d else '1d'} {dims} J={pyramid.depth} via {path} -> {job.output}")
    if job.verify:
        expected = _reference_inverse(pyramid, config, job.two_d)
        tol = 0.0 if config.integer else (TOLERANCE_2D if job.two_d else TOLERANCE_1D)
        _verdict(report, max_abs_diff([values], [expected]), tol)
    if job.bench and path == "streaming":
        for r in benchmark(pyramid, pyramid.depth, config, job.bench, job.two_d, "inv"):
            report.say(r.line())


def run(job: JobSpec) -> Report:
    report = Report()
    try:
        if job.direction == "fwd":
            _run_forward(job, report)
        else:
            _run_inverse(job, report)
    except (UsageError, LengthError) as exc:
        report.exit_code = EXIT_USAGE
        report.say(f"error: {exc}")
    except (OSError, io.FormatError) as exc:
        report.exit_code = EXIT_IO
        report.say(f"error: {exc}")
    except AssertionError as exc:
        report.exit_code = EXIT_VERIFY
        report.say(f"error: {exc}")
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dwt", description="Streaming CDF 5/3 wavelet transform")
    p.add_argument("direction", choices=("fwd", "inv"))
    p.add_argument("input", type=Path, metavar="IN")
    p.add_argument("output", type=Path, metavar="OUT")
    p.add_argument("--2d", dest="two_d", action="store_true", help="PGM image instead of a 1-D signal")
    p.add_argument("--levels", type=int, default=1, metavar="J")
    p.add_argument("--mode", choices=("real", "int"), default=None)
    p.add_argument("--boundary", choices=("sym", "zero"), default="sym")
    p.add_argument("--scale", action="store_true", help="apply the sqrt(2) scaling stage")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--bench", type=int, default=0, metavar="N", help="time both strategies N times")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(
            direction=args.direction,
            input=args.input,
            output=args.output,
            two_d=args.two_d,
            levels=args.levels,
            mode=ArithmeticMode(args.mode) if args.mode else None,
            boundary=BoundaryPolicy(args.boundary),
            scaling=args.scale,
            verify=args.verify,
            bench=args.bench,
        )
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run(job)
    stream = sys.stdout if report.exit_code == EXIT_OK else sys.stderr
    for line in report.lines:
        print(line, file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
