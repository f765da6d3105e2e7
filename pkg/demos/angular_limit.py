"""
Angle and angular momentum
==========================

At delta = 0 the momentum-like operator keeps unit spacing (angular
momentum m0 j) while the position-like operator becomes an angle confined
to one turn.
"""

import math

import numpy as np

from finite_kinematics import (
    AngularConfig,
    angle_shift,
    basis_state,
    build_angular_pair,
    kernel_error,
    theta_m_overlap,
    theta_wrap,
)

for N in (5, 51, 501):
    ap = build_angular_pair(AngularConfig(N))
    th = ap.theta_grid.values
    print(N, f"theta in [{th.min():.4f}, {th.max():.4f}]", "max m =", ap.m_grid.values.max())

# stepping past the last grid angle wraps to the first
ap = build_angular_pair(AngularConfig(9))
top = basis_state(9, 4)
print(np.allclose(angle_shift(ap, top, 1), basis_state(9, -4)))
print(theta_wrap(3 * math.pi), theta_wrap(-0.1))

# measure-normalized overlaps <theta|m> are exp(i theta m) / sqrt(2 pi) on the grid
z = theta_m_overlap(ap, 2, 3) / math.sqrt(2 * math.pi / 9)
print(z, np.exp(1j * ap.theta_grid.value(2) * 3) / math.sqrt(2 * math.pi))
print(max(kernel_error(AngularConfig(101), m) for m in range(-50, 51)))
