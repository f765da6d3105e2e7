import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finite_kinematics.hilbert import (
    DimensionError,
    apply,
    basis_state,
    identity,
    unitarity_residual,
)
from finite_kinematics.schwinger import (
    build_pair,
    mutual_unbiasedness_residual,
    pair_power,
    u_power,
    v_eigenvector,
    v_power,
    verify_weyl,
    weyl_phase,
)

# mpmath, 30 digits
W_1_1_3 = -0.5 + 0.866025403784438647j
W_2_3_5 = 0.309016994374947424 + 0.951056516295153572j


def dense_powers(N, j, l):
    pair = build_pair(N)
    U, V = pair.U.to_dense(), pair.V.to_dense()
    return np.linalg.matrix_power(U, j), np.linalg.matrix_power(V, l)


class TestBuildPair:
    def test_trivial(self):
        pair = build_pair(1)
        assert np.array_equal(pair.U.to_dense(), [[1]])
        assert np.array_equal(pair.V.to_dense(), [[1]])

    def test_v_lowers_label(self):
        assert np.array_equal(apply(build_pair(3).V, basis_state(3, 0)), basis_state(3, 2))

    def test_u_raises_v_label(self):
        pair = build_pair(5)
        out = pair.U.to_dense() @ v_eigenvector(5, 2)
        assert np.max(np.abs(out - v_eigenvector(5, 3))) <= 1e-12

    @pytest.mark.parametrize("N", [2, 0, -1])
    def test_rejects(self, N):
        with pytest.raises(DimensionError):
            build_pair(N)

    @pytest.mark.parametrize("N", [1, 3, 9, 101])
    def test_unitary(self, N):
        pair = build_pair(N)
        assert unitarity_residual(pair.U) <= 1e-12
        assert unitarity_residual(pair.V) <= 1e-12

    @pytest.mark.parametrize("N", [3, 7, 33])
    def test_spectra_are_roots_of_unity(self, N):
        pair = build_pair(N)
        roots = np.exp(2j * np.pi * np.arange(N) / N)
        np.testing.assert_allclose(pair.U.values, roots, atol=1e-15)
        # V is the cyclic shift, whose eigenvectors are the |v_k>
        for k in range(N):
            v = v_eigenvector(N, k)
            assert np.max(np.abs(apply(pair.V, v) - roots[k] * v)) <= 1e-13


class TestPowers:
    @pytest.mark.parametrize("which", ["U", "V"])
    def test_zero_and_full_cycle(self, which):
        pair = build_pair(7)
        assert pair_power(pair, which, 0) == identity(7)
        assert pair_power(pair, which, 7) == identity(7)
        assert pair_power(pair, which, -21).is_identity()

    def test_inverse_of_u(self):
        pair = build_pair(5)
        inv = np.linalg.inv(pair.U.to_dense())
        assert np.max(np.abs(pair_power(pair, "U", -1).to_dense() - inv)) <= 1e-13

    def test_inverse_of_v(self):
        pair = build_pair(5)
        inv = np.linalg.inv(pair.V.to_dense())
        assert np.max(np.abs(pair_power(pair, "V", -1).to_dense() - inv)) <= 1e-13

    @pytest.mark.parametrize("s", [-9, -1, 2, 4, 13])
    def test_against_matrix_power(self, s):
        N = 5
        pair = build_pair(N)
        for which, A in (("U", pair.U.to_dense()), ("V", pair.V.to_dense())):
            expected = np.linalg.matrix_power(A, s % N)
            assert np.max(np.abs(pair_power(pair, which, s).to_dense() - expected)) <= 1e-13

    @given(st.integers(1, 40).map(lambda h: 2 * h + 1), st.integers(-500, 500), st.integers(-40, 40))
    def test_v_power_on_basis_is_exact(self, N, s, n):
        out = apply(v_power(N, s), basis_state(N, n))
        assert np.array_equal(out, basis_state(N, n - s))

    def test_bad_which(self):
        with pytest.raises(ValueError):
            pair_power(build_pair(3), "W", 1)


class TestWeylPhase:
    def test_trivial(self):
        assert weyl_phase(0, 7, 9) == 1

    def test_values(self):
        assert abs(weyl_phase(1, 1, 3) - W_1_1_3) <= 1e-15
        assert abs(weyl_phase(2, 3, 5) - W_2_3_5) <= 1e-15

    def test_invalid(self):
        with pytest.raises(DimensionError):
            weyl_phase(1, 1, 0)


class TestVerifyWeyl:
    def test_full_grid_n3_against_dense(self):
        N = 3
        grid = [(j, l) for j in range(N) for l in range(N)]
        assert verify_weyl(build_pair(N), grid).max_residual <= 1e-13
        for j, l in grid:
            Uj, Vl = dense_powers(N, j, l)
            w = np.exp(2j * np.pi * j * l / N)
            assert np.max(np.abs(Vl @ Uj - w * Uj @ Vl)) <= 1e-13

    def test_scalars_commute(self):
        rep = verify_weyl(build_pair(1), [(3, 5), (0, 0)])
        assert rep.max_residual == 0

    def test_random_pairs_n101(self):
        rng = random.Random(5)
        sample = [(rng.randrange(-300, 300), rng.randrange(-300, 300)) for _ in range(50)]
        rep = verify_weyl(build_pair(101), sample)
        assert rep.n_pairs == 50
        assert rep.max_residual <= 1e-12

    def test_opposite_ordering_carries_conjugate_phase(self):
        # U^j V^l = conj(w) V^l U^j; the other ordering is off by |w - conj(w)|
        N = 5
        for j, l in [(1, 1), (2, 3), (4, 2)]:
            Uj, Vl = dense_powers(N, j, l)
            w = weyl_phase(j, l, N)
            assert np.max(np.abs(Uj @ Vl - w.conjugate() * Vl @ Uj)) <= 1e-13
            mismatch = np.max(np.abs(Uj @ Vl - w * Vl @ Uj))
            assert mismatch == pytest.approx(2 * abs(math.sin(2 * math.pi * j * l / N)), abs=1e-12)


class TestVEigenvector:
    def test_trivial(self):
        assert np.array_equal(v_eigenvector(1, 0), [1])

    def test_uniform(self):
        np.testing.assert_allclose(v_eigenvector(5, 0), 1 / math.sqrt(5), atol=1e-16)

    def test_eigen_relation(self):
        V = build_pair(5).V.to_dense()
        v = v_eigenvector(5, 2)
        assert np.linalg.norm(V @ v - np.exp(4j * np.pi / 5) * v) <= 1e-12

    @pytest.mark.parametrize("N", [1, 3, 9, 33, 101])
    def test_mutually_unbiased(self, N):
        assert mutual_unbiasedness_residual(N) <= 1e-13
        k = N // 2
        assert np.max(np.abs(np.abs(v_eigenvector(N, k)) ** 2 - 1 / N)) <= 1e-13

    def test_orthonormal(self):
        B = np.column_stack([v_eigenvector(9, k) for k in range(9)])
        np.testing.assert_allclose(B.conj().T @ B, np.eye(9), atol=1e-14)

    def test_u_power_shifts_v_labels(self):
        for s in range(-3, 8):
            out = apply(u_power(7, s), v_eigenvector(7, 2))
            assert np.max(np.abs(out - v_eigenvector(7, 2 + s))) <= 1e-13
