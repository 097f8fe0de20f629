"""
Several levels in one pass
==========================

A cascade chains one core per level: every approximation a level emits is
pushed straight into the next level's core. Coefficients come out as soon
as they are known, tagged with their level and band.
"""

import numpy as np

from streamdwt import Cascade, cascade_forward, cascade_inverse
from streamdwt.oracle import oracle_pyramid

rng = np.random.default_rng(1)
x = np.cumsum(rng.normal(size=64))

cascade = Cascade(len(x), levels=3)
for i, sample in enumerate(x[:12]):
    for c in cascade.push(sample):
        print(f"after s[{i:2d}]: level {c.level} {c.band}[{c.index}] = {c.value:+.3f}")

pyr = cascade_forward(x, levels=3)
print("band sizes (deepest first):", [len(b) for b in pyr.bands()])

# same numbers as transforming level by level
a, details = oracle_pyramid(x, 3)
print("matches level-by-level:", all(np.allclose(g, w) for g, w in zip(pyr.bands(), [a] + details[::-1])))

# a smooth signal leaves little energy in the detail bands
for level, d in enumerate(pyr.details, 1):
    print(f"level {level}: detail energy {np.sum(d**2):8.2f}")
print("approx energy", np.sum(pyr.approx**2))

print("reconstruction error:", np.abs(cascade_inverse(pyr) - x).max())
