"""Angle and angular momentum as the delta = 0 end of the canonical family.

At ``delta = 0`` the v-diagonal operator is not scaled at all, giving an
angular momentum ``M`` with spectrum ``j m0``, while the u-diagonal operator
becomes an angle ``Theta`` with spectrum ``j' (2 pi / N) theta0``, confined
to ``[-pi theta0, pi theta0)`` for every N.  The reference angle is zero.

The pair is built through the same code path as
:func:`finite_kinematics.kinematics.build_canonical_pair` with
``(p0, q0) -> (m0, theta0)``, so the two agree entry for entry.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    LinearOperator,
    UDiagonal,
    VDiagonal,
    apply,
    check_odd_dim,
    dft_overlap,
    unit_phase,
)
from .kinematics import Grid, KinematicsConfig, _build, _positive
from .schwinger import v_power

__all__ = [
    "AngularConfig",
    "AngularPair",
    "build_angular_pair",
    "theta_wrap",
    "angle_shift",
    "angle_shift_operator",
    "exp_theta_operator",
    "theta_m_overlap",
]


@dataclass(frozen=True)
class AngularConfig:
    N: int
    m0: float = 1.0
    theta0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "N", check_odd_dim(self.N))
        object.__setattr__(self, "m0", _positive("m0", self.m0))
        object.__setattr__(self, "theta0", _positive("theta0", self.theta0))

    @property
    def hbar_eff(self) -> float:
        return self.m0 * self.theta0

    def as_kinematics(self) -> KinematicsConfig:
        return KinematicsConfig(self.N, 0.0, self.m0, self.theta0)


@dataclass(frozen=True, eq=False)
class AngularPair:
    config: AngularConfig
    M: VDiagonal
    Theta: UDiagonal
    m_grid: Grid
    theta_grid: Grid

    @property
    def N(self) -> int:
        return self.config.N


def build_angular_pair(config: AngularConfig) -> AngularPair:
    cp = _build(config.as_kinematics())
    return AngularPair(config, cp.P, cp.Q, cp.p_grid, cp.q_grid)


def theta_wrap(theta: float, theta0: float = 1.0) -> float:
    """Representative of ``theta`` in ``[-pi theta0, pi theta0)`` mod ``2 pi theta0``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    half = math.pi * theta0
    if -half <= theta < half:
        return theta
    period = 2.0 * half
    r = (theta + half) % period
    # float % can return the period itself for tiny negative arguments
    if r >= period:
        r -= period
    r -= half
    return -half if r >= half else r


def angle_shift_operator(pair: AngularPair, steps: int) -> LinearOperator:
    """Raise theta labels by ``steps`` grid units, wrapping mod 2 pi: ``V**-steps``."""
    return v_power(pair.N, -operator.index(steps))


def angle_shift(pair: AngularPair, psi, steps: int) -> np.ndarray:
    return apply(angle_shift_operator(pair, steps), psi)


def exp_theta_operator(pair: AngularPair) -> UDiagonal:
    """Unitary ``exp(i Theta / theta0)``.

    Since ``theta_j' / theta0 = 2 pi j' / N``, the phases are taken from the
    integer label directly; the result is ``U`` of the Schwinger pair.
    """
    N = pair.N
    return UDiagonal(unit_phase(np.arange(N), N))


def theta_m_overlap(pair: AngularPair, j_theta: int, j_m: int) -> complex:
    """Finite overlap ``<theta_{j_theta}|m_{j_m}> = N**-1/2 exp(2 pi i j_theta j_m / N)``."""
    N = pair.N
    h = (N - 1) // 2
    for name, j in (("j_theta", j_theta), ("j_m", j_m)):
        if not -h <= operator.index(j) <= h:
            raise IndexError(f"{name}={j} outside [-{h}, {h}]")
    return dft_overlap(j_m, j_theta, N).conjugate()
