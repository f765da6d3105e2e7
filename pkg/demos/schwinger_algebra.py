"""
The Schwinger pair on N states
==============================

Two unitaries U (clock) and V (shift) with mutually unbiased eigenbases.
"""

import numpy as np

from finite_kinematics import build_pair, dft_matrix, pair_power, verify_weyl, weyl_phase
from finite_kinematics.schwinger import mutual_unbiasedness_residual

N = 7
pair = build_pair(N)

# U is diagonal in the u basis; V moves every basis vector down one slot
print(np.round(pair.U.to_dense().diagonal(), 3))
print(pair.V.to_dense().real.astype(int))

# both close after N steps, as exact structured objects
print(pair_power(pair, "U", N).is_identity(), pair_power(pair, "V", N).is_identity())

# moving V past U costs a root of unity
j, l = 2, 3
lhs = (pair_power(pair, "V", l) @ pair_power(pair, "U", j)).to_dense()
rhs = weyl_phase(j, l, N) * (pair_power(pair, "U", j) @ pair_power(pair, "V", l)).to_dense()
print(np.abs(lhs - rhs).max())

# over the whole (j, l) grid
report = verify_weyl(pair, [(j, l) for j in range(N) for l in range(N)])
print(report.max_residual, report.n_pairs)

# the change of basis is the unitary DFT, and every overlap has modulus N**-1/2
F = dft_matrix(N).to_dense()
print(np.abs(F.conj().T @ F - np.eye(N)).max())
print(mutual_unbiasedness_residual(N))
