import collections

import numpy as np
import pytest

from streamdwt import ArithmeticMode, BoundaryPolicy, CoreConfig, DEFAULT_ZETA

REAL = CoreConfig()
INT = CoreConfig(mode=ArithmeticMode.INTEGER)
ZERO = CoreConfig(boundary=BoundaryPolicy.ZERO)
ZERO_INT = CoreConfig(boundary=BoundaryPolicy.ZERO, mode=ArithmeticMode.INTEGER)
SCALED = CoreConfig(zeta=DEFAULT_ZETA)


class CountingSource:
    """A 1-D sample source that records every fetch."""

    def __init__(self, values):
        self._values = list(values)
        self.fetches = collections.Counter()

    def __len__(self):
        return len(self._values)

    def __iter__(self):
        for i, v in enumerate(self._values):
            self.fetches[i] += 1
            yield v

    def __getitem__(self, i):
        self.fetches[i] += 1
        return self._values[i]

    @property
    def total(self):
        return sum(self.fetches.values())


class CountingImage:
    """A 2-D pixel source that records every ``image[row, col]`` fetch."""

    def __init__(self, array):
        self._array = np.asarray(array)
        self.shape = self._array.shape
        self.fetches = collections.Counter()

    def __getitem__(self, key):
        row, col = key
        self.fetches[(row, col)] += 1
        return self._array[row, col]

    @property
    def total(self):
        return sum(self.fetches.values())


@pytest.fixture
def rng():
    return np.random.default_rng(20161005)


@pytest.fixture
def report_criterion(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def report(cid, title, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {cid:>3} {title}" + (f" -- {detail}" if detail else "")
        lines.append(line)
        print(line)
        return passed

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def integer_grid(n, lo=-8, hi=8, chunk_digits=4):
    """Every vector in ``[lo, hi)**n``, as ``(rows, n)`` blocks.

    The last ``chunk_digits`` positions vary inside a block, the leading
    ones are fixed per block, so memory stays bounded.
    """
    base = hi - lo
    inner = min(chunk_digits, n)
    idx = np.arange(base**inner)
    tail = np.stack([(idx // base ** (inner - 1 - k)) % base for k in range(inner)], 1) + lo
    for head in np.ndindex(*([base] * (n - inner))):
        block = np.empty((len(idx), n), dtype=np.int64)
        block[:, : n - inner] = np.array(head, dtype=np.int64) + lo
        block[:, n - inner :] = tail
        yield block
