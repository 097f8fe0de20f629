"""Acceptance criteria C1-C9, each reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as
they happen; they are also collected in the terminal summary.
"""

import time

import numpy as np
import pytest

import streamdwt.cli as cli
from streamdwt import (
    ForwardCore,
    PositionVariant,
    StageKind,
    cascade_forward,
    cascade_inverse,
    forward_1d,
    forward_2d,
    inverse_1d,
    make_stage_matrix,
)
from streamdwt.cli import benchmark
from streamdwt.core1d import forward_lanes, inverse_lanes
from streamdwt.oracle import oracle_forward, oracle_forward_2d, oracle_pyramid

from conftest import INT, REAL, ZERO, ZERO_INT, CountingImage, CountingSource
from table_fixtures import table

SWEEP = range(4, 129, 2)
PER_LENGTH = 100


def _diff(xs, ys):
    return max(float(np.max(np.abs(np.asarray(x, float) - np.asarray(y, float)))) for x, y in zip(xs, ys))


def test_c1_table_conformance(report_criterion):
    t0 = time.perf_counter()
    mismatches = []
    checked = 0
    for config, double in ((REAL, 2), (ZERO, 1)):
        expected = table(config.alpha, config.beta, double)
        for kind in StageKind:
            for variant in PositionVariant:
                got = make_stage_matrix(kind, variant, config).entries
                checked += 1
                if not np.array_equal(got, expected[kind, variant]):
                    mismatches.append((config.boundary.value, kind.name, variant.name))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 1.0
    report_criterion("C1", "stage matrices equal the hand-written table", ok,
                     f"{checked} matrices, {len(mismatches)} mismatches, {elapsed * 1e3:.1f} ms")
    assert not mismatches, mismatches
    assert elapsed < 1.0


def test_c2_oracle_equivalence_1d(report_criterion, rng):
    signals = {n: rng.normal(scale=100.0, size=(PER_LENGTH, n)) for n in SWEEP}
    t0 = time.perf_counter()
    worst = 0.0
    for n, block in signals.items():
        want_a, want_d = oracle_forward(block, REAL)
        for i, x in enumerate(block):
            worst = max(worst, _diff(forward_1d(x, REAL), (want_a[i], want_d[i])))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 10.0
    report_criterion("C2", "streaming 1-D forward equals the reference", ok,
                     f"{len(signals) * PER_LENGTH} signals, max_abs_diff {worst:.2e}, {elapsed:.2f} s")
    assert worst <= 1e-12
    assert elapsed < 10.0


def _exhaustive_round_trip(n, lo=-8, hi=8, lanes=2**13):
    """Stream every vector of ``[lo, hi)**n`` forward and back in integer mode.

    Lanes are laid out sample-major; vector ``i`` has digit ``k`` (base
    ``hi - lo``, most significant first) at sample ``k``.
    """
    base = hi - lo
    total = base**n
    lanes = min(lanes, total)
    weights = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    failures = 0
    for start in range(0, total, lanes):
        idx = np.arange(start, min(start + lanes, total), dtype=np.int64)
        block = ((idx[None, :] // weights[:, None]) % base + lo).astype(np.float64)
        a, d = forward_lanes(block, INT, axis=0)
        back = inverse_lanes(a, d, INT, axis=0)
        failures += int(np.count_nonzero(np.any(back != block, axis=0)))
    return total, failures


def test_c3_perfect_reconstruction(report_criterion, rng):
    worst_real = 0.0
    int_failures = 0
    for n in SWEEP:
        for x in rng.normal(scale=100.0, size=(PER_LENGTH, n)):
            worst_real = max(worst_real, float(np.max(np.abs(inverse_1d(*forward_1d(x, REAL), REAL) - x))))
        for x in rng.integers(-(2**15), 2**15, size=(PER_LENGTH, n)):
            int_failures += not np.array_equal(inverse_1d(*forward_1d(x, INT), INT), x)
    exhaustive = {n: _exhaustive_round_trip(n) for n in (4, 6, 8)}
    ex_failures = sum(f for _, f in exhaustive.values())
    ok = worst_real <= 1e-10 and int_failures == 0 and ex_failures == 0
    counts = ", ".join(f"N={n}: {t} vectors" for n, (t, _) in exhaustive.items())
    report_criterion("C3", "inverse undoes forward", ok,
                     f"real max_abs_diff {worst_real:.2e}, integer sweep mismatches {int_failures}, "
                     f"exhaustive [-8, 8) {counts}, mismatches {ex_failures}")
    assert worst_real <= 1e-10
    assert int_failures == 0
    assert ex_failures == 0


def test_c4_single_read(report_criterion, rng):
    src1 = CountingSource(rng.normal(size=96))
    forward_1d(src1)
    img = CountingImage(rng.normal(size=(12, 20)))
    forward_2d(img)
    src3 = CountingSource(rng.normal(size=128))
    cascade_forward(src3, 5)
    results = {
        "1-D N=96": (src1.total, 96, set(src1.fetches.values())),
        "2-D 12x20": (img.total, 240, set(img.fetches.values())),
        "cascade N=128 J=5": (src3.total, 128, set(src3.fetches.values())),
    }
    ok = all(got == want and per == {1} for got, want, per in results.values())
    report_criterion("C4", "every input sample is fetched exactly once", ok,
                     ", ".join(f"{k}: {got}/{want}" for k, (got, want, _) in results.items()))
    assert ok, results


def _lag_trace(n, rng):
    core = ForwardCore(n)
    x = rng.normal(size=n)
    trace = []
    for i in range(0, n, 2):
        before = core.state.invocation
        outs = [core.push(v) for v in x[i : i + 2]]
        trace.append((core.state.invocation - before, [o for o in outs if o is not None]))
    before = core.state.invocation
    last = core.flush()
    trace.append((core.state.invocation - before, [last] if last is not None else []))
    return trace


def test_c5_lag_contract(report_criterion, rng):
    problems = []
    for n in (4, 6, 8, 16, 34, 128):
        trace = _lag_trace(n, rng)
        ran = [r for r, _ in trace]
        emitted = [len(o) for _, o in trace]
        indices = [o.index for _, outs in trace for o in outs]
        if ran != [1] * (n // 2 + 1):
            problems.append((n, "invocations", ran))
        if emitted != [0] + [1] * (n // 2):
            problems.append((n, "emissions", emitted))
        if indices != list(range(n // 2)) or 2 * len(indices) != n:
            problems.append((n, "totals", indices))
    report_criterion("C5", "one invocation of lag, then one pair per invocation", not problems,
                     f"{len(problems)} violations over 6 lengths")
    assert not problems, problems


def test_c6_multiscale_equivalence(report_criterion, rng):
    worst = 0.0
    int_failures = 0
    cases = 0
    for n in (16, 32, 64):
        for levels in range(1, int(np.log2(n)) - 1):
            for _ in range(10):
                x = rng.normal(scale=10.0, size=n)
                pyr = cascade_forward(x, levels, REAL)
                a, details = oracle_pyramid(x, levels, REAL)
                worst = max(worst, _diff(pyr.bands(), [a] + details[::-1]))
                xi = rng.integers(-512, 512, size=n)
                pyr = cascade_forward(xi, levels, INT)
                a, details = oracle_pyramid(xi, levels, INT)
                same = all(np.array_equal(g, w) for g, w in zip(pyr.bands(), [a] + details[::-1]))
                int_failures += not same or not np.array_equal(cascade_inverse(pyr, INT), xi)
                cases += 1
    ok = worst <= 1e-12 and int_failures == 0
    report_criterion("C6", "streaming cascade equals the recursive reference", ok,
                     f"{cases} real + {cases} integer cases, max_abs_diff {worst:.2e}, "
                     f"integer mismatches {int_failures}")
    assert worst <= 1e-12
    assert int_failures == 0


def test_c7_separability_2d(report_criterion, rng):
    worst = 0.0
    shapes = [(4, 4), (4, 10), (12, 6), (16, 16), (30, 18), (64, 64), (64, 8)]
    for shape in shapes:
        img = rng.normal(scale=50.0, size=shape)
        worst = max(worst, _diff(forward_2d(img, REAL), oracle_forward_2d(img, REAL)))
    _, h, v, d = forward_2d(np.full((32, 24), 7.25), REAL)
    flat = max(float(np.max(np.abs(band))) for band in (h, v, d))
    ok = worst <= 1e-10 and flat <= 1e-12
    report_criterion("C7", "2-D core equals the row-column reference", ok,
                     f"{len(shapes)} shapes up to 64x64, max_abs_diff {worst:.2e}, "
                     f"constant image detail peak {flat:.2e}")
    assert worst <= 1e-10
    assert flat <= 1e-12


def test_c8_zero_padding(report_criterion, rng):
    worst = 0.0
    int_failures = 0
    for n in range(4, 65, 2):
        for x in rng.normal(scale=100.0, size=(20, n)):
            worst = max(worst, _diff(forward_1d(x, ZERO), oracle_forward(x, ZERO)))
        xi = rng.integers(-1000, 1000, size=n)
        int_failures += not all(
            np.array_equal(g, w) for g, w in zip(forward_1d(xi, ZERO_INT), oracle_forward(xi, ZERO_INT))
        )
    ok = worst <= 1e-12 and int_failures == 0
    report_criterion("C8", "zero-padding core equals the zero-extension reference", ok,
                     f"max_abs_diff {worst:.2e}, integer mismatches {int_failures}")
    assert worst <= 1e-12
    assert int_failures == 0


def test_c9_benchmark_smoke(report_criterion, rng, monkeypatch):
    x = rng.normal(size=2**20)
    t0 = time.perf_counter()
    results = benchmark(x, 1, REAL, repeat=1)
    elapsed = time.perf_counter() - t0
    strategies = [r.strategy for r in results]

    # a disagreement between the strategies must stop the run before timing
    real = cli._reference_forward

    def skewed(*args):
        pyr = real(*args)
        pyr.approx = pyr.approx + 1.0
        return pyr

    monkeypatch.setattr(cli, "_reference_forward", skewed)
    with pytest.raises(AssertionError, match="disagree"):
        benchmark(x[:64], 1, REAL)

    ok = strategies == ["streaming", "two-pass"] and elapsed < 30.0
    report_criterion("C9", "bench mode on a 1-megasample signal", ok,
                     f"{elapsed:.2f} s total; " + "; ".join(r.line() for r in results))
    assert strategies == ["streaming", "two-pass"]
    assert elapsed < 30.0
