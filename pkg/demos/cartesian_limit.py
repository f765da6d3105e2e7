"""
Position and momentum at large N
================================

Scaled diagonals of the Schwinger bases give a Hermitian pair {P, Q}.
Their commutator is traceless for every N, yet its expectation in a smooth
localized state approaches i p0 q0.
"""

import numpy as np

from finite_kinematics import (
    KinematicsConfig,
    TestStateSpec,
    build_canonical_pair,
    commutator_expectation,
    commutator_sweep,
    make_state,
    shift_in_q,
    spacing_report,
)
from finite_kinematics.kinematics import commutator_trace

cfg = KinematicsConfig(N=101, delta=1.0)
pair = build_canonical_pair(cfg)

# grids: the product of the spacings is 2 pi p0 q0 / N whatever delta is
for delta in (0.5, 1.0, 1.5):
    dp, dq, cell = spacing_report(101, delta)
    print(f"delta={delta}: dp={dp:.4f} dq={dq:.4f} dp*dq={dp * dq:.6f} 2pi/N={cell:.6f}")

# translations along the grid are powers of V, so they permute labels exactly
psi = make_state(TestStateSpec(center=0, sigma=1.0), cfg)
moved = shift_in_q(pair, psi, -10)
q = pair.q_grid.by_slot()
print(np.vdot(psi, q * psi).real, np.vdot(moved, q * moved).real, 10 * pair.dq)

# the operator identity fails (trace zero) but the expectation is close to i
print(commutator_trace(build_canonical_pair(KinematicsConfig(33))))
print(commutator_expectation(pair, psi))

# convergence with N; extended precision resolves gaps below double roundoff
table = commutator_sweep([51, 101, 201, 401], [0.5, 1.0], precision="extended")
for row in table.rows:
    print(row.N, row.delta, f"{row.value:.3e}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    for d in (0.5, 1.0):
        Ns, gaps = table.column("commutator_gap", d)
        plt.semilogy(Ns, gaps, "o-", label=f"delta={d}")
    plt.xlabel("N")
    plt.ylabel("|<[Q,P]> - i|")
    plt.legend()
    plt.show()
