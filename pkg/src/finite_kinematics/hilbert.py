"""Complex vectors and structured operators on an N-state space.

States are plain 1-D complex numpy arrays holding amplitudes in the
computational basis, which is identified with the eigenbasis of ``U``:
``|u_n>`` is the unit vector in storage slot ``n mod N``.  The companion
basis is

    |v_k> = N**-1/2 * sum_n exp(+2 pi i k n / N) |u_n>

so that ``<v_k|u_n> = N**-1/2 exp(-2 pi i k n / N)``.

Operators come in four representations that all expand to a dense matrix:

=================  ==========================================  ===========
class              action                                      matvec cost
=================  ==========================================  ===========
``DenseOperator``  explicit N x N matrix                       O(N^2)
``UDiagonal``      diagonal in the u basis                     O(N)
``VDiagonal``      diagonal in the v basis, ``F^H diag F``     O(N log N)
``PhasedShift``    ``diag(phases) @ S**step``, S e_n = e_{n-1} O(N)
=================  ==========================================  ===========

All phases are evaluated from an exact integer exponent reduced mod N before
a single trigonometric call, so large exponents lose no precision.
"""

from __future__ import annotations

import functools
import math
import operator

import numpy as np

__all__ = [
    "TWO_PI",
    "DimensionError",
    "check_dim",
    "check_odd_dim",
    "slot",
    "symmetric_indices",
    "unit_phase",
    "dft_overlap",
    "dft_matrix",
    "basis_state",
    "normalize",
    "LinearOperator",
    "DenseOperator",
    "UDiagonal",
    "VDiagonal",
    "PhasedShift",
    "ProductOperator",
    "identity",
    "apply",
    "expectation",
    "brute_force_apply",
    "unitarity_residual",
    "hermiticity_residual",
]

TWO_PI = 2.0 * math.pi

# Dense expansion is only offered up to this size by default.
DENSE_LIMIT = 1025


class DimensionError(ValueError):
    """Raised for an invalid or mismatched Hilbert-space dimension."""


def check_dim(N) -> int:
    try:
        N = operator.index(N)
    except TypeError:
        raise DimensionError(f"dimension must be an integer, got {N!r}") from None
    if N < 1:
        raise DimensionError(f"dimension must be positive, got {N}")
    return N


def check_odd_dim(N) -> int:
    N = check_dim(N)
    if N % 2 == 0:
        raise DimensionError(f"only odd dimensions are supported, got N={N}")
    return N


def slot(j, N):
    """Storage slot of the symmetric label ``j``."""
    return np.mod(j, N)


def symmetric_indices(N: int) -> np.ndarray:
    """Labels ``-(N-1)/2, ..., (N-1)/2`` for odd N, in ascending order."""
    N = check_odd_dim(N)
    h = (N - 1) // 2
    return np.arange(-h, h + 1)


@functools.lru_cache(maxsize=64)
def _roots_of_unity(N: int) -> np.ndarray:
    table = np.array(
        [complex(math.cos(TWO_PI * r / N), math.sin(TWO_PI * r / N)) for r in range(N)]
    )
    table.setflags(write=False)
    return table


def unit_phase(m, N):
    """``exp(2 pi i m / N)`` with the integer ``m`` reduced mod N first.

    ``m`` may be a Python int (arbitrary size) or an integer array.  Every
    phase is read from one table per N, so equal reduced exponents give
    bitwise equal results on every code path.
    """
    N = check_dim(N)
    table = _roots_of_unity(N)
    if isinstance(m, np.ndarray):
        return table[np.mod(m.astype(np.int64, copy=False), N)]
    return complex(table[operator.index(m) % N])


def dft_overlap(k: int, n: int, N: int) -> complex:
    """Overlap ``<v_k|u_n> = N**-1/2 exp(-2 pi i k n / N)``.

    The product ``k*n`` is reduced mod N in integer arithmetic, so
    ``dft_overlap(k, n, N) == dft_overlap(k % N, n % N, N)`` bit for bit.
    """
    N = check_dim(N)
    m = (-(operator.index(k) % N) * (operator.index(n) % N)) % N
    z = unit_phase(m, N)
    s = math.sqrt(N)
    return complex(z.real / s, z.imag / s)


def dft_matrix(N: int) -> "DenseOperator":
    """Dense unitary ``F`` with ``F[k, n] = <v_k|u_n>``.

    Row ``k`` is ``<v_k|`` written in the u basis, so ``F @ psi`` gives the
    v-basis amplitudes of ``psi``.
    """
    N = check_dim(N)
    k = np.arange(N)
    z = unit_phase(-np.outer(k, k), N)
    s = math.sqrt(N)
    F = np.empty_like(z)
    # componentwise so entries equal dft_overlap bitwise
    F.real = z.real / s
    F.imag = z.imag / s
    return DenseOperator(F)


def basis_state(N: int, j: int) -> np.ndarray:
    """The u-basis vector carrying label ``j`` (any integer, wrapped mod N)."""
    N = check_dim(N)
    psi = np.zeros(N, dtype=complex)
    psi[operator.index(j) % N] = 1.0
    return psi


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if nrm == 0 or not np.isfinite(nrm):
        raise ValueError("cannot normalize a zero or non-finite vector")
    return psi / nrm


def _frozen(a, dtype=complex) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


class LinearOperator:
    """Base class for operators on ``C^N``.

    Subclasses implement ``_matvec`` for arrays whose first axis has length
    ``dim`` (a single state or a stack of columns) and ``to_dense``.
    """

    dim: int

    def _matvec(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dense(self) -> np.ndarray:
        raise NotImplementedError

    def adjoint(self) -> "LinearOperator":
        return DenseOperator(self.to_dense().conj().T)

    def matvec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.ndim not in (1, 2) or x.shape[0] != self.dim:
            raise DimensionError(
                f"operator of dimension {self.dim} cannot act on shape {x.shape}"
            )
        return self._matvec(x)

    def __matmul__(self, other):
        if isinstance(other, LinearOperator):
            if other.dim != self.dim:
                raise DimensionError(f"cannot compose dims {self.dim} and {other.dim}")
            return self._compose(other)
        return self.matvec(other)

    def _compose(self, other: "LinearOperator") -> "LinearOperator":
        return ProductOperator((self, other))

    def is_identity(self) -> bool:
        """Exact test against the identity, no tolerance."""
        return False


class DenseOperator(LinearOperator):
    def __init__(self, matrix):
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"dense operator must be square, got {matrix.shape}")
        self.dim = check_dim(matrix.shape[0])
        self.matrix = _frozen(matrix)

    def _matvec(self, x):
        return self.matrix @ x

    def to_dense(self):
        return np.array(self.matrix)

    def adjoint(self):
        return DenseOperator(self.matrix.conj().T)

    def _compose(self, other):
        return DenseOperator(self.matrix @ other.to_dense())

    def is_identity(self):
        return bool(np.array_equal(self.matrix, np.eye(self.dim)))

    def __eq__(self, other):
        return isinstance(other, DenseOperator) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def __repr__(self):
        return f"DenseOperator(dim={self.dim})"


class UDiagonal(LinearOperator):
    """Operator diagonal in the u basis; ``values[n]`` is the eigenvalue on slot n."""

    def __init__(self, values):
        values = np.asarray(values)
        if values.ndim != 1:
            raise DimensionError("diagonal values must be one-dimensional")
        self.dim = check_dim(values.shape[0])
        self.values = _frozen(values)

    def _matvec(self, x):
        if x.ndim == 1:
            return self.values * x
        return self.values[:, None] * x

    def to_dense(self):
        return np.diag(self.values)

    def adjoint(self):
        return UDiagonal(self.values.conj())

    def _compose(self, other):
        if isinstance(other, UDiagonal):
            return UDiagonal(self.values * other.values)
        return super()._compose(other)

    def is_identity(self):
        return bool(np.all(self.values == 1))

    def __eq__(self, other):
        return type(other) is UDiagonal and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"UDiagonal(dim={self.dim})"


class VDiagonal(LinearOperator):
    """Operator diagonal in the v basis: ``sum_k values[k] |v_k><v_k|``.

    Applied as ``F^H diag(values) F`` using unitary-normalized FFTs; with the
    basis convention above, ``F psi`` is exactly ``numpy.fft.fft(psi,
    norm="ortho")``.
    """

    def __init__(self, values):
        values = np.asarray(values)
        if values.ndim != 1:
            raise DimensionError("diagonal values must be one-dimensional")
        self.dim = check_dim(values.shape[0])
        self.values = _frozen(values)

    def _matvec(self, x):
        coeffs = np.fft.fft(x, axis=0, norm="ortho")
        if x.ndim == 1:
            coeffs = self.values * coeffs
        else:
            coeffs = self.values[:, None] * coeffs
        return np.fft.ifft(coeffs, axis=0, norm="ortho")

    def to_dense(self):
        F = dft_matrix(self.dim).matrix
        return F.conj().T @ (self.values[:, None] * F)

    def adjoint(self):
        return VDiagonal(self.values.conj())

    def _compose(self, other):
        if isinstance(other, VDiagonal):
            return VDiagonal(self.values * other.values)
        return super()._compose(other)

    def is_identity(self):
        return bool(np.all(self.values == 1))

    def __eq__(self, other):
        return type(other) is VDiagonal and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"VDiagonal(dim={self.dim})"


class PhasedShift(LinearOperator):
    """``diag(phases) @ S**step`` where ``S e_n = e_{n-1}`` cyclically.

    On components: ``(A x)[m] = phases[m] * x[(m + step) mod N]``.
    """

    def __init__(self, step: int, phases=None, dim: int | None = None):
        if phases is None:
            if dim is None:
                raise DimensionError("PhasedShift needs phases or dim")
            phases = np.ones(check_dim(dim), dtype=complex)
        phases = np.asarray(phases)
        if phases.ndim != 1:
            raise DimensionError("phases must be one-dimensional")
        self.dim = check_dim(phases.shape[0])
        self.step = operator.index(step) % self.dim
        self.phases = _frozen(phases)

    def _matvec(self, x):
        shifted = np.roll(x, -self.step, axis=0)
        if x.ndim == 1:
            return self.phases * shifted
        return self.phases[:, None] * shifted

    def to_dense(self):
        N = self.dim
        rows = np.arange(N)
        M = np.zeros((N, N), dtype=complex)
        M[rows, (rows + self.step) % N] = self.phases
        return M

    def adjoint(self):
        # (D S^s)^H = S^-s D^*; moving the diagonal through gives
        # diag(conj(phases[m - s])) S^-s.
        return PhasedShift(-self.step, np.roll(self.phases.conj(), self.step))

    def _compose(self, other):
        if isinstance(other, PhasedShift):
            phases = self.phases * np.roll(other.phases, -self.step)
            return PhasedShift(self.step + other.step, phases)
        return super()._compose(other)

    def is_identity(self):
        return self.step == 0 and bool(np.all(self.phases == 1))

    def __eq__(self, other):
        return (
            type(other) is PhasedShift
            and self.step == other.step
            and np.array_equal(self.phases, other.phases)
        )

    __hash__ = None

    def __repr__(self):
        return f"PhasedShift(dim={self.dim}, step={self.step})"


class ProductOperator(LinearOperator):
    """Lazy product ``factors[0] @ factors[1] @ ...`` applied right to left."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("empty product")
        self.dim = factors[0].dim
        if any(f.dim != self.dim for f in factors):
            raise DimensionError("factors have mismatched dimensions")
        self.factors = factors

    def _matvec(self, x):
        for f in reversed(self.factors):
            x = f._matvec(x)
        return x

    def to_dense(self):
        out = np.eye(self.dim, dtype=complex)
        for f in self.factors:
            out = out @ f.to_dense()
        return out

    def adjoint(self):
        return ProductOperator(f.adjoint() for f in reversed(self.factors))

    def _compose(self, other):
        return ProductOperator(self.factors + (other,))

    def __repr__(self):
        return f"ProductOperator({', '.join(map(repr, self.factors))})"


def identity(N: int) -> UDiagonal:
    """Canonical identity representation (u-diagonal of exact ones)."""
    return UDiagonal(np.ones(check_dim(N), dtype=complex))


def apply(op: LinearOperator, psi) -> np.ndarray:
    """Return ``op @ psi`` through the operator's structured path."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise DimensionError(f"state must be one-dimensional, got shape {psi.shape}")
    return op.matvec(psi)


def expectation(op: LinearOperator, psi) -> complex:
    """``<psi|op|psi>``; ``psi`` is assumed normalized."""
    psi = np.asarray(psi, dtype=complex)
    return complex(np.vdot(psi, apply(op, psi)))


def brute_force_apply(op: LinearOperator, psi) -> np.ndarray:
    """Dense oracle: explicit double loop over ``op.to_dense()``.

    Deliberately slow; used by the tests to check the structured paths.
    """
    A = op.to_dense()
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (A.shape[1],):
        raise DimensionError("dimension mismatch")
    out = np.zeros(A.shape[0], dtype=complex)
    for i in range(A.shape[0]):
        acc = 0j
        for j in range(A.shape[1]):
            acc += A[i, j] * psi[j]
        out[i] = acc
    return out


def unitarity_residual(op: LinearOperator) -> float:
    """``max |A^H A - I|`` from the dense expansion."""
    A = op.to_dense()
    return float(np.max(np.abs(A.conj().T @ A - np.eye(op.dim))))


def hermiticity_residual(op: LinearOperator) -> float:
    A = op.to_dense()
    return float(np.max(np.abs(A - A.conj().T)))
