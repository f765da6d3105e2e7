"""End-to-end acceptance checks, one PASS/FAIL summary line per criterion.

Each test records its line in ``conftest.ACCEPTANCE_LINES`` before asserting,
so the terminal summary lists every criterion whether it passed or not.
"""

import hashlib
import math
import random
import time

import numpy as np
import pytest
from scipy.linalg import expm

from finite_kinematics import cli
from finite_kinematics.angular import AngularConfig, build_angular_pair
from finite_kinematics.hilbert import basis_state, dft_matrix, unitarity_residual
from finite_kinematics.kinematics import (
    KinematicsConfig,
    build_canonical_pair,
    compose_shifts,
    p_shift_operator,
    q_shift_operator,
)
from finite_kinematics.limits import (
    angular_kernel_rows,
    cartesian_kernel_rows,
    commutator_sweep,
    loglog_slope,
    spacing_report,
)
from finite_kinematics.schwinger import (
    build_pair,
    mutual_unbiasedness_residual,
    pair_power,
    verify_weyl,
)

from conftest import ACCEPTANCE_LINES

LADDER = (51, 101, 201, 401)
DELTAS = (0.25, 0.5, 1.0, 1.5, 1.75)


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


def test_c1_algebra():
    t0 = time.perf_counter()
    rng = random.Random(1)
    worst = {"weyl": 0.0, "unitary": 0.0, "mub": 0.0}
    powers_exact = True
    for N in (1, 3, 9, 33, 101, 1025):
        pair = build_pair(N)
        if N <= 33:
            sample = [(j, l) for j in range(N) for l in range(N)]
        else:
            sample = [(rng.randrange(N), rng.randrange(N)) for _ in range(100)]
        worst["weyl"] = max(worst["weyl"], verify_weyl(pair, sample).max_residual)
        powers_exact &= pair_power(pair, "U", N).is_identity() and pair_power(pair, "V", N).is_identity()
        worst["unitary"] = max(worst["unitary"], unitarity_residual(dft_matrix(N)))
        worst["mub"] = max(worst["mub"], mutual_unbiasedness_residual(N))
    elapsed = time.perf_counter() - t0
    ok = (
        worst["weyl"] <= 1e-12
        and powers_exact
        and worst["unitary"] <= 1e-12
        and worst["mub"] <= 1e-13
        and elapsed <= 60
    )
    record(
        1,
        "algebra suite",
        ok,
        f"weyl {worst['weyl']:.2e}, U^N=V^N=1 {powers_exact}, dft unitarity {worst['unitary']:.2e}, "
        f"mub {worst['mub']:.2e}, {elapsed:.1f}s",
    )


def test_c2_shifts():
    worst = 0.0
    for N in (1, 3, 5, 9, 17, 33):
        for delta in (0.5, 1.0, 1.5):
            cp = build_canonical_pair(KinematicsConfig(N, delta, 1.3, 0.7))
            Pd, Qd = cp.P.to_dense(), cp.Q.to_dense()
            hbar = cp.config.hbar_eff
            for s in range(-N, N + 1):
                Eq = expm(1j * (s * cp.dq) * Pd / hbar)
                Ep = expm(1j * (s * cp.dp) * Qd / hbar)
                worst = max(
                    worst,
                    np.max(np.abs(q_shift_operator(cp, s).to_dense() - Eq)),
                    np.max(np.abs(p_shift_operator(cp, s).to_dense() - Ep)),
                )
    rng = np.random.default_rng(2)
    failures = 0
    for N in (3, 7, 101):
        cp = build_canonical_pair(KinematicsConfig(N))
        for _ in range(1000):
            steps = [int(s) for s in rng.integers(-10 * N, 10 * N, size=rng.integers(0, 12))]
            total = sum(steps) % N
            failures += compose_shifts(cp, steps, "q") != q_shift_operator(cp, total)
            failures += compose_shifts(cp, steps, "p") != p_shift_operator(cp, total)
            # index level: successive q shifts move a basis label by the summed steps
            j = int(rng.integers(-(N // 2), N // 2 + 1))
            psi = basis_state(N, j)
            for s in steps:
                psi = q_shift_operator(cp, s) @ psi
            failures += not np.array_equal(psi, basis_state(N, j - sum(steps)))
    record(
        2,
        "shift suite",
        worst <= 1e-10 and failures == 0,
        f"max |shift - expm| {worst:.2e} (N <= 33), homomorphism failures {failures}/3000",
    )


def test_c3_spacings():
    rng = np.random.default_rng(3)
    worst_ulps = 0.0
    for _ in range(50):
        N = 2 * int(rng.integers(0, 5000)) + 1
        delta = float(rng.uniform(0.0, 2.0))
        p0, q0 = (float(x) for x in rng.uniform(0.1, 10.0, size=2))
        dp, dq, cell = spacing_report(N, delta, p0, q0)
        worst_ulps = max(worst_ulps, abs(dp * dq - cell) / math.ulp(cell))
    Ns = list(range(51, 402, 50))
    reports = [spacing_report(N, 0.0) for N in Ns]
    dp_constant = all(r[0] == 1.0 for r in reports)
    slope = loglog_slope(Ns, [r[1] for r in reports], window=len(Ns))
    ok = worst_ulps <= 1 and dp_constant and abs(slope + 1) <= 0.01
    record(
        3,
        "spacing laws",
        ok,
        f"max |dp*dq - 2pi p0 q0/N| {worst_ulps:g} ulp over 50 draws, "
        f"delta=0 dp constant {dp_constant}, dq slope {slope:.4f}",
    )


def test_c4_commutator_convergence():
    t0 = time.perf_counter()
    table = commutator_sweep(LADDER, DELTAS, precision="extended")
    elapsed = time.perf_counter() - t0
    broken = []
    for d in DELTAS:
        _, gaps = table.column("commutator_gap", d)
        if any(b > a for a, b in zip(gaps, gaps[1:])):
            broken.append(f"delta={d:g} " + "/".join(f"{g:.1e}" for g in gaps))
    _, gaps1 = table.column("commutator_gap", 1.0)
    ok = not broken and gaps1[-1] <= 1e-6 and elapsed <= 300
    detail = (
        "delta=1 gaps " + "/".join(f"{g:.1e}" for g in gaps1)
        + f", non-increasing for {len(DELTAS) - len(broken)}/{len(DELTAS)} deltas, {elapsed:.1f}s"
    )
    if broken:
        detail += "; increases: " + "; ".join(broken)
    record(4, "commutator convergence", ok, detail)


def test_c5_kernels():
    worst = 0.0
    count = 0
    for N in (5, 33, 101):
        rows = list(angular_kernel_rows(AngularConfig(N, 1.7, 0.6)))
        for delta in (0.5, 1.0, 1.5):
            rows += cartesian_kernel_rows(KinematicsConfig(N, delta, 0.8, 1.9))
        worst = max(worst, max(r[3] for r in rows))
        count += len(rows)
    record(5, "kernel identities", worst <= 1e-12, f"max error {worst:.2e} over {count} grid points")


def test_c6_angular_coincidence():
    mismatches = 0
    confined = True
    mmax_ok = True
    for N in (1, 3, 5, 33, 101, 1025):
        for m0, th0 in ((1.0, 1.0), (0.5, 2.0)):
            ap = build_angular_pair(AngularConfig(N, m0, th0))
            cp = build_canonical_pair(KinematicsConfig(N, 0.0, m0, th0), allow_endpoint=True)
            mismatches += not (
                ap.M == cp.P
                and ap.Theta == cp.Q
                and np.array_equal(ap.m_grid.values, cp.p_grid.values)
                and np.array_equal(ap.theta_grid.values, cp.q_grid.values)
            )
            th = ap.theta_grid.values
            confined &= bool(th.min() >= -math.pi * th0 and th.max() < math.pi * th0)
            mmax_ok &= float(np.abs(ap.m_grid.values).max()) == m0 * (N - 1) / 2
    ok = mismatches == 0 and confined and mmax_ok
    record(
        6,
        "angular / delta=0 coincidence",
        ok,
        f"entrywise mismatches {mismatches}, theta in [-pi theta0, pi theta0) {confined}, "
        f"max|m| = m0 (N-1)/2 {mmax_ok}",
    )


def test_c7_cli(tmp_path, capsys):
    digests = set()
    for i in range(3):
        out = tmp_path / f"sweep{i}.csv"
        cli.main(["sweep", "--n", "51,101", "--delta", "0.5,1.0", "--out", str(out)])
        digests.add(hashlib.sha256(out.read_bytes()).hexdigest())
    for i in range(2):
        out = tmp_path / f"kernel{i}.csv"
        cli.main(["kernel", "--n", "5,33", "--angular", "--out", str(out)])
        digests.add(hashlib.sha256(out.read_bytes()).hexdigest())
    deterministic = len(digests) == 2
    codes = {
        "verify": cli.main(["verify", "--n", "3,9,33,101"]),
        "even N": cli.main(["sweep", "--n", "8"]),
        "unknown flag": cli.main(["sweep", "--nope"]),
        "missing config": cli.main(["verify", "--config", str(tmp_path / "absent.conf")]),
        "bad out": cli.main(["sweep", "--n", "51", "--out", str(tmp_path / "x" / "y.csv")]),
    }
    capsys.readouterr()
    expected = {"verify": 0, "even N": 2, "unknown flag": 2, "missing config": 3, "bad out": 3}
    ok = deterministic and codes == expected
    record(
        7,
        "CLI contract",
        ok,
        f"deterministic bytes {deterministic}, exit codes "
        + ", ".join(f"{k}={v}" for k, v in codes.items()),
    )
