"""Schwinger's unitary pair {U, V} on N states.

``U`` is diagonal in the u basis with eigenvalues ``exp(2 pi i k / N)`` and
``V`` lowers u labels by one, ``V|u_n> = |u_{n-1}>`` with cyclic wrap.  Each
operator cyclically shifts the other's eigenbasis, and both have the N-th
roots of unity as spectrum.

Integer powers are built directly from the exponent reduced mod N, never by
repeated multiplication, so ``U**N`` and ``V**N`` come out as the exact
identity representation.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    LinearOperator,
    PhasedShift,
    UDiagonal,
    check_dim,
    check_odd_dim,
    identity,
    unit_phase,
)

__all__ = [
    "SchwingerPair",
    "WeylReport",
    "build_pair",
    "u_power",
    "v_power",
    "pair_power",
    "weyl_phase",
    "verify_weyl",
    "v_eigenvector",
    "mutual_unbiasedness_residual",
]


@dataclass(frozen=True, eq=False)
class SchwingerPair:
    dim: int
    U: UDiagonal
    V: PhasedShift


def u_power(N: int, s: int) -> LinearOperator:
    """``U**s`` for any integer s: diagonal phases ``exp(2 pi i k s / N)``."""
    N = check_dim(N)
    s = operator.index(s) % N
    if s == 0:
        return identity(N)
    return UDiagonal(unit_phase(np.arange(N) * s, N))


def v_power(N: int, s: int) -> LinearOperator:
    """``V**s``: the permutation ``|u_n> -> |u_{n-s}>``."""
    N = check_dim(N)
    s = operator.index(s) % N
    if s == 0:
        return identity(N)
    return PhasedShift(s, dim=N)


def build_pair(N: int) -> SchwingerPair:
    """Construct ``{U, V}`` for odd ``N``.

    Raises
    ------
    DimensionError
        If ``N`` is even or not positive.
    """
    N = check_odd_dim(N)
    U = UDiagonal(unit_phase(np.arange(N), N))
    V = PhasedShift(1, dim=N)
    return SchwingerPair(N, U, V)


def pair_power(pair: SchwingerPair, which: str, s: int) -> LinearOperator:
    """Integer power of ``U`` or ``V``; negative ``s`` gives inverses."""
    if which == "U":
        return u_power(pair.dim, s)
    if which == "V":
        return v_power(pair.dim, s)
    raise ValueError(f"which must be 'U' or 'V', got {which!r}")


def weyl_phase(j: int, l: int, N: int) -> complex:
    """``exp(2 pi i j l / N)`` with ``j*l`` reduced mod N in integers."""
    N = check_dim(N)
    return unit_phase(operator.index(j) * operator.index(l), N)


@dataclass(frozen=True)
class WeylReport:
    max_residual: float
    worst: tuple[int, int] | None
    n_pairs: int


def verify_weyl(pair: SchwingerPair, sample) -> WeylReport:
    """Largest residual of the Weyl relation over ``sample`` of ``(j, l)``.

    The relation checked is

        V**l U**j = weyl_phase(j, l, N) * U**j V**l

    which is the ordering implied by ``V|u_n> = |u_{n-1}>`` and
    ``U|u_k> = exp(2 pi i k/N)|u_k>``; equivalently
    ``U**j V**l = conj(weyl_phase) * V**l U**j``.  Both sides are applied to
    every basis vector through the structured operators.
    """
    N = pair.dim
    cols = np.eye(N, dtype=complex)
    worst, worst_pair, count = 0.0, None, 0
    for j, l in sample:
        Uj, Vl = u_power(N, j), v_power(N, l)
        lhs = Vl.matvec(Uj.matvec(cols))
        rhs = weyl_phase(j, l, N) * Uj.matvec(Vl.matvec(cols))
        r = float(np.max(np.abs(lhs - rhs)))
        count += 1
        if worst_pair is None or r > worst:
            worst, worst_pair = r, (int(j), int(l))
    return WeylReport(worst, worst_pair, count)


def v_eigenvector(N: int, k: int) -> np.ndarray:
    """``|v_k>`` in the u basis: amplitudes ``N**-1/2 exp(+2 pi i k n / N)``."""
    N = check_dim(N)
    k = operator.index(k) % N
    return unit_phase(np.arange(N) * k, N) / math.sqrt(N)


def mutual_unbiasedness_residual(N: int) -> float:
    """``max |N |<v_k|u_n>|^2 - 1| / N`` over all k, n."""
    N = check_dim(N)
    k = np.arange(N)
    overlaps = unit_phase(-np.outer(k, k), N) / math.sqrt(N)
    return float(np.max(np.abs(np.abs(overlaps) ** 2 - 1.0 / N)))
