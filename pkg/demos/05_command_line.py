"""
The dwt command
===============

``dwt fwd`` transforms a CSV, raw float64 or PGM file into a pyramid file;
``dwt inv`` goes back. ``--verify`` checks the streaming result against the
two-pass reference, and ``--bench R`` times both.
"""

import pathlib
import subprocess
import sys
import tempfile

import numpy as np

from streamdwt import io

work = pathlib.Path(tempfile.mkdtemp())
rng = np.random.default_rng(3)


def dwt(*args):
    cmd = [sys.executable, "-m", "streamdwt.cli", *map(str, args)]
    print("$ dwt", " ".join(map(str, args)))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    print(proc.stdout + proc.stderr, end="")
    print("exit", proc.returncode)


io.write_csv(work / "signal.csv", rng.integers(-100, 100, size=64))
dwt("fwd", "--mode", "int", "--levels", "3", "--verify", work / "signal.csv", work / "signal.dwt")
dwt("inv", "--verify", work / "signal.dwt", work / "back.csv")
print("identical bytes:", (work / "signal.csv").read_bytes() == (work / "back.csv").read_bytes())

io.write_pgm(work / "img.pgm", rng.integers(0, 256, size=(16, 16)), 255)
dwt("fwd", "--2d", "--levels", "2", "--mode", "int", "--verify", work / "img.pgm", work / "img.dwt")

# usage errors exit 2, unreadable input exits 3
(work / "odd.csv").write_text("1\n2\n3\n")
dwt("fwd", work / "odd.csv", work / "odd.dwt")
dwt("fwd", work / "missing.csv", work / "x.dwt")

io.write_raw(work / "long.raw", rng.normal(size=2**14))
dwt("fwd", "--bench", "3", "--levels", "4", work / "long.raw", work / "long.dwt")
