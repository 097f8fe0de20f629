"""
Border handling as stage matrices
=================================

For the 5/3 wavelet, one lifting core runs over the whole signal. What it
does at the borders is set by a position-dependent pair of 4x4 stage
matrices, so it needs no separate border pass.
"""

import numpy as np

from streamdwt import CoreConfig, PositionVariant, StageKind, make_stage_matrix, select_variant

np.set_printoptions(precision=3, suppress=True)

# the interior predict stage: one lifting row, everything else a copy
config = CoreConfig()
print(make_stage_matrix(StageKind.INV_PREDICT, PositionVariant.INTERIOR, config).entries)

# at the flush the right neighbour falls off the end of the signal; under
# symmetric extension the left neighbour's weight doubles instead
print(make_stage_matrix(StageKind.INV_PREDICT, PositionVariant.FLUSH, config).entries)

# with zero padding the doubling goes away
zero = CoreConfig(boundary="zero")
print(make_stage_matrix(StageKind.INV_PREDICT, PositionVariant.FLUSH, zero).entries)

# which variant each invocation uses, for a 12-sample signal (6 pairs + flush)
n_half = 6
print([select_variant(k, n_half).name for k in range(n_half + 1)])
