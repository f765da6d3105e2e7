"""Convergence diagnostics for the large-N limit.

None of these quantities is exactly zero at finite N except the kernel
errors; the rest are trends measured over a ladder of N values.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .angular import AngularConfig, build_angular_pair
from .hilbert import TWO_PI, basis_state, normalize, unit_phase
from .kinematics import KinematicsConfig, build_canonical_pair, commutator_expectation, spacings
from .schwinger import v_eigenvector

__all__ = [
    "TestStateSpec",
    "Row",
    "ConvergenceTable",
    "make_state",
    "boundary_ratio",
    "commutator_gap",
    "commutator_sweep",
    "continuum_kernel",
    "kernel_error",
    "cartesian_kernel_error",
    "angular_kernel_rows",
    "cartesian_kernel_rows",
    "spacing_report",
    "loglog_slope",
]

STATE_KINDS = ("gaussian", "basis", "plane-wave", "uniform")


@dataclass(frozen=True)
class TestStateSpec:
    """Recipe for a test state on the q grid.

    ``center`` is the q label of the Gaussian peak, ``sigma`` its width in
    units of q0, and ``index`` the label used by ``basis`` and
    ``plane-wave`` states.
    """

    __test__ = False  # keep pytest from collecting this

    kind: str = "gaussian"
    center: int = 0
    sigma: float = 1.0
    index: int = 0

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise ValueError(f"unknown state kind {self.kind!r}; expected one of {STATE_KINDS}")
        if self.kind == "gaussian" and not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive, got {self.sigma}")


def _check_label(j, N, name="index"):
    h = (N - 1) // 2
    j = operator.index(j)
    if not -h <= j <= h:
        raise IndexError(f"{name}={j} outside [-{h}, {h}]")
    return j


def make_state(spec: TestStateSpec, config: KinematicsConfig) -> np.ndarray:
    """Normalized state in the u basis for ``spec`` on the grid of ``config``.

    A Gaussian has amplitudes ``exp(-(q - q_c)**2 / (4 sigma**2))`` with
    ``q_c = center * dq`` and sigma measured in units of q0.
    """
    N = config.N
    if spec.kind == "uniform":
        return np.full(N, 1.0 / math.sqrt(N), dtype=complex)
    if spec.kind == "basis":
        return basis_state(N, _check_label(spec.index, N))
    if spec.kind == "plane-wave":
        return v_eigenvector(N, _check_label(spec.index, N))
    center = _check_label(spec.center, N, "center")
    _, dq = spacings(N, config.delta, config.p0, config.q0)
    h = (N - 1) // 2
    q = np.arange(-h, h + 1) * dq
    sigma = spec.sigma * config.q0
    amps = np.exp(-((q - center * dq) ** 2) / (4.0 * sigma**2))
    psi = np.empty(N, dtype=complex)
    psi[np.mod(np.arange(-h, h + 1), N)] = amps
    return normalize(psi)


def boundary_ratio(psi) -> float:
    """Probability at the two outermost q labels relative to the peak."""
    p = np.abs(np.asarray(psi)) ** 2
    N = len(p)
    h = (N - 1) // 2
    edge = max(p[h], p[(-h) % N])
    return float(edge / p.max())


class Row(NamedTuple):
    N: int
    delta: float
    metric: str
    value: float
    aux: float | None = None


@dataclass
class ConvergenceTable:
    """Rows kept sorted by ``(metric, delta, N)``."""

    rows: list[Row] = field(default_factory=list)

    def __post_init__(self):
        self.rows = sorted((Row(*r) for r in self.rows), key=lambda r: (r.metric, r.delta, r.N))

    def column(self, metric: str, delta: float) -> tuple[list[int], list[float]]:
        sel = [r for r in self.rows if r.metric == metric and r.delta == delta]
        return [r.N for r in sel], [r.value for r in sel]

    def __len__(self):
        return len(self.rows)


PRECISIONS = ("double", "extended")
_MAX_DPS = 4000


def _mp_state(spec: TestStateSpec, config: KinematicsConfig, mp):
    """``make_state`` evaluated in the working precision of ``mp``."""
    N = config.N
    h = (N - 1) // 2
    if spec.kind == "basis":
        psi = [mp.mpc(0)] * N
        psi[_check_label(spec.index, N) % N] = mp.mpc(1)
        return psi
    if spec.kind == "uniform":
        return [mp.mpc(1) / mp.sqrt(N)] * N
    if spec.kind == "plane-wave":
        k = _check_label(spec.index, N)
        return [mp.expjpi(mp.mpf(2 * k * n) / N) / mp.sqrt(N) for n in range(N)]
    center = _check_label(spec.center, N, "center")
    cell = 2 * mp.pi * mp.mpf(config.p0) * mp.mpf(config.q0) / N
    dq = cell / (mp.mpf(config.p0) * (2 * mp.pi / N) ** (mp.mpf(config.delta) / 2))
    sigma = mp.mpf(spec.sigma) * mp.mpf(config.q0)
    psi = [mp.mpc(0)] * N
    for j in range(-h, h + 1):
        psi[j % N] = mp.exp(-(((j - center) * dq) ** 2) / (4 * sigma**2))
    norm = mp.sqrt(mp.fsum(abs(a) ** 2 for a in psi))
    return [a / norm for a in psi]


def _commutator_gap_mp(config: KinematicsConfig, spec: TestStateSpec, dps: int):
    import mpmath

    N = config.N
    h = (N - 1) // 2
    with mpmath.workdps(dps):
        mp = mpmath.mp
        cell = 2 * mp.pi * mp.mpf(config.p0) * mp.mpf(config.q0) / N
        dp = mp.mpf(config.p0) * (2 * mp.pi / N) ** (mp.mpf(config.delta) / 2)
        dq = cell / dp
        label = [n if n <= h else n - N for n in range(N)]
        roots = [mp.expjpi(mp.mpf(2 * m) / N) for m in range(N)]
        psi = _mp_state(spec, config, mp)
        # P psi = F^H diag(p) F psi with F[k, n] = N**-1/2 exp(-2 pi i k n / N)
        Fpsi = [mp.fsum(roots[(-k * n) % N] * psi[n] for n in range(N)) for k in range(N)]
        pF = [label[k] * dp * Fpsi[k] / N for k in range(N)]
        Ppsi = [mp.fsum(roots[(k * n) % N] * pF[k] for k in range(N)) for n in range(N)]
        # <[Q, P]> = 2i Im <Q psi|P psi> for Hermitian Q, P
        s = mp.fsum(mp.conj(label[n] * dq * psi[n]) * Ppsi[n] for n in range(N))
        gap = abs(2 * s.imag - mp.mpf(config.p0) * mp.mpf(config.q0))
        probs = [abs(a) ** 2 for a in psi]
        ratio = max(probs[h], probs[(-h) % N]) / max(probs)
        return gap, float(ratio)


def commutator_gap(
    config: KinematicsConfig, spec: TestStateSpec, precision: str = "double"
) -> tuple[float, float]:
    """``|<[Q,P]> - i p0 q0|`` and the state's boundary ratio.

    With ``precision="double"`` the gap cannot resolve values below the
    roundoff floor of about ``1e-16``.  ``precision="extended"`` builds the
    state and applies ``P`` in arbitrary precision (mpmath), raising the
    working precision until the gap is resolved, and returns the result
    rounded to double.  It costs ``O(N**2)`` multiprecision operations.
    """
    if precision == "double":
        pair = build_canonical_pair(config)
        psi = make_state(spec, config)
        c = commutator_expectation(pair, psi)
        return abs(c - 1j * config.hbar_eff), boundary_ratio(psi)
    if precision != "extended":
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision!r}")
    if config.delta == 0.0:
        raise ValueError("delta = 0 is the angular case; use build_angular_pair")
    guard = 20 + len(str(config.N))
    dps = 40
    while True:
        gap, ratio = _commutator_gap_mp(config, spec, dps)
        # resolved once the gap sits well above the working-precision noise
        if gap > 10.0 ** -(dps - guard) or dps >= _MAX_DPS:
            return float(gap), ratio
        dps *= 2


def commutator_sweep(
    Ns: Sequence[int],
    deltas: Sequence[float],
    spec: TestStateSpec | None = None,
    p0: float = 1.0,
    q0: float = 1.0,
    map_fn=map,
    precision: str = "double",
) -> ConvergenceTable:
    """Commutator gap over the ``Ns x deltas`` grid.

    Each row has metric ``commutator_gap`` and, as ``aux``, the boundary
    probability ratio of the test state.  ``map_fn`` may be an executor's
    ``map`` to evaluate grid points concurrently; the table is sorted
    afterwards, so the output does not depend on evaluation order.
    ``precision`` is passed to :func:`commutator_gap`.
    """
    if not Ns:
        raise ValueError("Ns must not be empty")
    if not deltas:
        raise ValueError("deltas must not be empty")
    spec = spec or TestStateSpec()
    configs = [KinematicsConfig(N, d, p0, q0) for N in Ns for d in deltas]
    for c in configs:
        if c.delta == 0.0:
            raise ValueError("commutator sweep needs 0 < delta < 2")
    if precision not in PRECISIONS:
        raise ValueError(f"precision must be one of {PRECISIONS}, got {precision!r}")
    n = len(configs)
    results = map_fn(commutator_gap, configs, [spec] * n, [precision] * n)
    rows = [Row(c.N, c.delta, "commutator_gap", g, b) for c, (g, b) in zip(configs, results)]
    return ConvergenceTable(rows)


def continuum_kernel(x, y, hbar: float = 1.0, sign: int = 1):
    """``exp(sign * i x y / hbar) / sqrt(2 pi)``: a plane-wave kernel in units of hbar."""
    return np.exp(sign * 1j * np.asarray(x) * np.asarray(y) / hbar) / math.sqrt(TWO_PI)


def angular_kernel_rows(config: AngularConfig, j_m: int | None = None):
    """Measure-normalized ``<theta|m>`` against the continuum kernel.

    Yields ``(j_theta, j_m, normalized_overlap, error)`` for every theta label
    (and every m label if ``j_m`` is None).
    """
    pair = build_angular_pair(config)
    N = config.N
    cell = math.sqrt(pair.theta_grid.spacing / config.theta0)
    jms = pair.m_grid.indices if j_m is None else [_check_label(j_m, N, "j_m")]
    jt = pair.theta_grid.indices
    theta = pair.theta_grid.values
    for jm in jms:
        m = pair.m_grid.value(int(jm))
        finite = unit_phase(jt * int(jm), N) / math.sqrt(N) / cell
        target = continuum_kernel(theta, m, config.hbar_eff, +1)
        err = np.abs(finite - target)
        for a, f, e in zip(jt, finite, err):
            yield int(a), int(jm), complex(f), float(e)


def kernel_error(config: AngularConfig, j_m: int) -> float:
    """Largest gap between the normalized finite ``<theta|m>`` and its continuum form.

    The finite overlap is divided by ``sqrt(d_theta / theta0) = sqrt(2 pi / N)``
    and compared with ``exp(i theta m / (m0 theta0)) / sqrt(2 pi)`` at every
    theta grid point.
    """
    return max(e for *_, e in angular_kernel_rows(config, j_m))


def cartesian_kernel_rows(config: KinematicsConfig, j_p: int | None = None):
    """Measure-normalized ``<p|q>`` against ``exp(-i p q / (p0 q0)) / sqrt(2 pi)``.

    ``<p|q> = <v_j|u_j'>`` carries the minus sign of the DFT overlap.
    Yields ``(j_p, j_q, normalized_overlap, error)``.
    """
    pair = build_canonical_pair(config, allow_endpoint=True)
    N = config.N
    cell = math.sqrt(pair.dp * pair.dq / config.hbar_eff)
    jps = pair.p_grid.indices if j_p is None else [_check_label(j_p, N, "j_p")]
    jq = pair.q_grid.indices
    q = pair.q_grid.values
    for jp in jps:
        p = pair.p_grid.value(int(jp))
        finite = unit_phase(-jq * int(jp), N) / math.sqrt(N) / cell
        target = continuum_kernel(p, q, config.hbar_eff, -1)
        err = np.abs(finite - target)
        for b, f, e in zip(jq, finite, err):
            yield int(jp), int(b), complex(f), float(e)


def cartesian_kernel_error(config: KinematicsConfig, j_p: int) -> float:
    return max(e for *_, e in cartesian_kernel_rows(config, j_p))


def spacing_report(N: int, delta: float, p0: float = 1.0, q0: float = 1.0):
    """``(dp, dq, product)`` with ``product = 2 pi p0 q0 / N``.

    ``delta = 0`` gives the angular spacings (``dp = p0`` exactly).
    """
    cfg = KinematicsConfig(N, delta, p0, q0)
    dp, dq = spacings(cfg.N, cfg.delta, cfg.p0, cfg.q0)
    return dp, dq, TWO_PI * cfg.p0 * cfg.q0 / cfg.N


def loglog_slope(Ns, values, window: int = 4) -> float:
    """Least-squares slope of ``log(value)`` against ``log(N)`` over the last ``window`` points."""
    x = np.log(np.asarray(Ns, dtype=float)[-window:])
    y = np.log(np.asarray(values, dtype=float)[-window:])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
