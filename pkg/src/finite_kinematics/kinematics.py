"""The delta-scaled Hermitian pair {P, Q} built from the Schwinger bases.

With ``eps = sqrt(2 pi / N)``::

    Q = sum_j' j' eps**(2-delta) q0 |u_j'><u_j'|     (u-diagonal)
    P = sum_j  j  eps**delta     p0 |v_j><v_j|       (v-diagonal)

for symmetric labels ``j, j' in [-(N-1)/2, (N-1)/2]``.  In this scaling
``V = exp(i eps**(2-delta) P / p0)`` and ``U = exp(i eps**delta Q / q0)``, so
on-grid translations of the q and p labels are exact powers of ``V`` and
``U``.

The q spacing is stored as ``(2 pi p0 q0 / N) / dp`` rather than
``q0 * eps**(2-delta)``.  The two agree to a few ulp; the quotient form keeps
``dp * dq`` within one ulp of ``2 pi p0 q0 / N`` for every delta.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    TWO_PI,
    DENSE_LIMIT,
    DimensionError,
    LinearOperator,
    UDiagonal,
    VDiagonal,
    apply,
    check_dim,
    check_odd_dim,
    slot,
    symmetric_indices,
)
from .schwinger import u_power, v_power

__all__ = [
    "OffGridError",
    "KinematicsConfig",
    "Grid",
    "CanonicalPair",
    "epsilon",
    "spacings",
    "build_canonical_pair",
    "q_shift_operator",
    "p_shift_operator",
    "shift_in_q",
    "shift_in_p",
    "q_translation",
    "p_translation",
    "compose_shifts",
    "commutator_expectation",
    "commutator_trace",
    "rescale_delta",
]


class OffGridError(ValueError):
    """A displacement that is not an integer number of grid steps."""


def _positive(name, x) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"{name} must be finite and positive, got {x}")
    return x


@dataclass(frozen=True)
class KinematicsConfig:
    """Grid geometry for one (N, delta, p0, q0) choice.

    ``delta`` may be 0 here so the angular construction can share the code
    path; :func:`build_canonical_pair` itself enforces ``0 < delta < 2``.
    """

    N: int
    delta: float = 1.0
    p0: float = 1.0
    q0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "N", check_odd_dim(self.N))
        delta = float(self.delta)
        if not (0.0 <= delta < 2.0):
            raise ValueError(f"delta must lie in [0, 2), got {self.delta}")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "p0", _positive("p0", self.p0))
        object.__setattr__(self, "q0", _positive("q0", self.q0))

    @property
    def hbar_eff(self) -> float:
        return self.p0 * self.q0


@dataclass(frozen=True, eq=False)
class Grid:
    """Eigenvalue labels ``values[i] = indices[i] * spacing``, ascending."""

    indices: np.ndarray
    values: np.ndarray
    spacing: float

    @property
    def N(self) -> int:
        return len(self.indices)

    def value(self, j: int) -> float:
        h = (self.N - 1) // 2
        if not -h <= j <= h:
            raise IndexError(f"label {j} outside [-{h}, {h}]")
        return float(self.values[j + h])

    def by_slot(self) -> np.ndarray:
        """Values rearranged into storage order (slot ``j mod N``)."""
        out = np.empty(self.N)
        out[slot(self.indices, self.N)] = self.values
        return out


def _make_grid(N: int, spacing: float) -> Grid:
    j = symmetric_indices(N)
    values = j * spacing
    j.setflags(write=False)
    values.setflags(write=False)
    return Grid(j, values, spacing)


@dataclass(frozen=True, eq=False)
class CanonicalPair:
    config: KinematicsConfig
    P: VDiagonal
    Q: UDiagonal
    p_grid: Grid
    q_grid: Grid

    @property
    def N(self) -> int:
        return self.config.N

    @property
    def dp(self) -> float:
        return self.p_grid.spacing

    @property
    def dq(self) -> float:
        return self.q_grid.spacing


def epsilon(N: int) -> float:
    """Scaling factor ``sqrt(2 pi / N)``."""
    N = check_dim(N)
    return math.sqrt(TWO_PI / N)


def spacings(N: int, delta: float, p0: float = 1.0, q0: float = 1.0):
    """Return ``(dp, dq)`` with ``dp = p0 eps**delta`` and ``dp*dq = 2 pi p0 q0 / N``.

    At ``delta = 0`` this gives ``dp = p0`` exactly.
    """
    N = check_dim(N)
    cell = TWO_PI * p0 * q0 / N
    dp = p0 * (TWO_PI / N) ** (delta / 2.0)
    return dp, cell / dp


def _build(config: KinematicsConfig) -> CanonicalPair:
    N = config.N
    dp, dq = spacings(N, config.delta, config.p0, config.q0)
    p_grid = _make_grid(N, dp)
    q_grid = _make_grid(N, dq)
    P = VDiagonal(p_grid.by_slot().astype(complex))
    Q = UDiagonal(q_grid.by_slot().astype(complex))
    return CanonicalPair(config, P, Q, p_grid, q_grid)


def build_canonical_pair(config: KinematicsConfig, *, allow_endpoint: bool = False) -> CanonicalPair:
    """Build ``{P, Q}`` for ``0 < delta < 2``.

    ``delta = 0`` is the angular case and is rejected unless
    ``allow_endpoint`` is set; :func:`finite_kinematics.angular.build_angular_pair`
    is the usual entry point there.
    """
    if config.delta == 0.0 and not allow_endpoint:
        raise ValueError("delta = 0 is the angular case; use build_angular_pair")
    return _build(config)


def q_shift_operator(pair: CanonicalPair, q_steps: int) -> LinearOperator:
    """``exp(i q' P / (p0 q0))`` with ``q' = q_steps * dq``, i.e. ``V**q_steps``.

    Maps ``|q> -> |q - q'>``.
    """
    return v_power(pair.N, q_steps)


def p_shift_operator(pair: CanonicalPair, p_steps: int) -> LinearOperator:
    """``exp(i p' Q / (p0 q0))`` with ``p' = p_steps * dp``, i.e. ``U**p_steps``.

    Maps ``|p> -> |p + p'>``.
    """
    return u_power(pair.N, p_steps)


def shift_in_q(pair: CanonicalPair, psi, q_steps: int) -> np.ndarray:
    return apply(q_shift_operator(pair, q_steps), psi)


def shift_in_p(pair: CanonicalPair, psi, p_steps: int) -> np.ndarray:
    return apply(p_shift_operator(pair, p_steps), psi)


def _steps(displacement: float, spacing: float, rtol: float) -> int:
    ratio = float(displacement) / spacing
    steps = round(ratio)
    if abs(ratio - steps) > rtol * max(1.0, abs(ratio)):
        raise OffGridError(
            f"displacement {displacement} is {ratio} grid steps; only integer steps are defined"
        )
    return steps


def q_translation(pair: CanonicalPair, q_prime: float, rtol: float = 1e-9) -> LinearOperator:
    """Translation operator for a physical displacement ``q'`` on the q grid.

    Raises
    ------
    OffGridError
        If ``q_prime`` is not an integer multiple of ``dq`` (within ``rtol``).
    """
    return q_shift_operator(pair, _steps(q_prime, pair.dq, rtol))


def p_translation(pair: CanonicalPair, p_prime: float, rtol: float = 1e-9) -> LinearOperator:
    return p_shift_operator(pair, _steps(p_prime, pair.dp, rtol))


def compose_shifts(pair: CanonicalPair, steps, direction: str) -> LinearOperator:
    """Product of successive on-grid shifts in one direction.

    The steps are summed in integer arithmetic, so the result is the single
    shift by ``sum(steps)`` (mod N) exactly.
    """
    total = sum(operator.index(s) for s in steps)
    if direction == "q":
        return q_shift_operator(pair, total)
    if direction == "p":
        return p_shift_operator(pair, total)
    raise ValueError(f"direction must be 'p' or 'q', got {direction!r}")


def commutator_expectation(pair: CanonicalPair, psi) -> complex:
    """``<psi|[Q, P]|psi>`` from structured applications of Q and P.

    Tends to ``i p0 q0`` for smooth states localized away from the grid
    edges; at finite N the operator ``[Q, P]`` is traceless, so it is never
    ``i p0 q0`` times the identity.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (pair.N,):
        raise DimensionError(f"state of shape {psi.shape} for dimension {pair.N}")
    QPpsi = pair.Q.matvec(pair.P.matvec(psi))
    PQpsi = pair.P.matvec(pair.Q.matvec(psi))
    return complex(np.vdot(psi, QPpsi) - np.vdot(psi, PQpsi))


def commutator_trace(pair: CanonicalPair) -> complex:
    """Trace of ``[Q, P]`` from the dense expansion (exactly zero)."""
    if pair.N > DENSE_LIMIT:
        raise DimensionError(f"dense expansion limited to N <= {DENSE_LIMIT}")
    Qd, Pd = pair.Q.to_dense(), pair.P.to_dense()
    return complex(np.trace(Qd @ Pd - Pd @ Qd))


def rescale_delta(pair: CanonicalPair, delta_new: float) -> CanonicalPair:
    """Same N, p0, q0 at a new delta.

    The diagonals scale by constants: ``Q -> eps**(delta - delta_new) Q`` and
    ``P -> eps**(delta_new - delta) P``, leaving ``dp * dq`` unchanged.
    """
    delta_new = float(delta_new)
    if not (0.0 < delta_new < 2.0):
        raise ValueError(f"delta must lie in (0, 2), got {delta_new}")
    c = pair.config
    if delta_new == c.delta:
        return pair
    return build_canonical_pair(KinematicsConfig(c.N, delta_new, c.p0, c.q0))
