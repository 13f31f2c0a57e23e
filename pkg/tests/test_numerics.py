import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepdetect import kron, ky_fan_norm, partial_transpose, realign, singular_values

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _complex_gaussian(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def _random_unitary(rng, d):
    q, r = np.linalg.qr(_complex_gaussian(rng, (d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestKyFanNorm:
    def test_identity(self):
        for n in (1, 2, 5, 8):
            assert ky_fan_norm(np.eye(n)) == pytest.approx(n, abs=1e-12)

    def test_diagonal_with_signs(self):
        assert ky_fan_norm(np.diag([3.0, -4.0])) == pytest.approx(7.0, abs=1e-12)

    def test_zero_matrix(self):
        assert ky_fan_norm(np.zeros((3, 5))) == 0.0

    def test_bell_correlation_matrix(self):
        # correlation entries computed by direct trace, independent of the
        # bloch module: t_ij = Tr(rho sigma_i x sigma_j)
        psi = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
        rho = np.outer(psi, psi.conj())
        paulis = [SIGMA_Z, SIGMA_X, SIGMA_Y]
        t = np.array([
            [np.trace(rho @ np.kron(si, sj)).real for sj in paulis] for si in paulis
        ])
        assert np.allclose(t, np.diag([-1.0, 1.0, 1.0]), atol=1e-12)
        assert ky_fan_norm(t) == pytest.approx(3.0, abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            ky_fan_norm(np.array([[np.nan, 0], [0, 1]]))
        with pytest.raises(ValueError, match="finite"):
            ky_fan_norm(np.array([[np.inf, 0], [0, 1]]))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.integers(2, 6), st.integers(2, 6))
    def test_unitary_invariance(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        a = _complex_gaussian(rng, (rows, cols))
        u = _random_unitary(rng, rows)
        v = _random_unitary(rng, cols)
        assert ky_fan_norm(u @ a @ v) == pytest.approx(ky_fan_norm(a), abs=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1))
    def test_block_diagonal_additivity(self, seed):
        rng = np.random.default_rng(seed)
        a = _complex_gaussian(rng, (3, 4))
        b = _complex_gaussian(rng, (2, 5))
        block = np.zeros((5, 9), dtype=complex)
        block[:3, :4] = a
        block[3:, 4:] = b
        assert ky_fan_norm(block) == pytest.approx(
            ky_fan_norm(a) + ky_fan_norm(b), abs=1e-10
        )

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.integers(2, 8))
    def test_hermitian_equals_abs_eigenvalue_sum(self, seed, dim):
        rng = np.random.default_rng(seed)
        g = _complex_gaussian(rng, (dim, dim))
        h = g + g.conj().T
        assert ky_fan_norm(h) == pytest.approx(
            np.abs(np.linalg.eigvalsh(h)).sum(), abs=1e-10
        )

    def test_singular_values_descending(self):
        sv = singular_values(np.diag([1.0, 5.0, 3.0]))
        assert np.all(np.diff(sv) <= 0)


class TestKron:
    def test_identities(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_sigma_z_with_identity(self):
        assert np.allclose(kron(SIGMA_Z, np.eye(2)), np.diag([1, 1, -1, -1]))

    def test_index_arithmetic_2x3(self):
        rng = np.random.default_rng(7)
        a = _complex_gaussian(rng, (2, 2))
        b = _complex_gaussian(rng, (3, 3))
        k = kron(a, b)
        for i1 in range(2):
            for i2 in range(3):
                for j1 in range(2):
                    for j2 in range(3):
                        assert k[i1 * 3 + i2, j1 * 3 + j2] == pytest.approx(
                            a[i1, j1] * b[i2, j2], abs=1e-15
                        )


class TestPartialTranspose:
    def test_product_state(self):
        rng = np.random.default_rng(1)
        ga = _complex_gaussian(rng, (2, 2))
        gb = _complex_gaussian(rng, (3, 3))
        rho_a = ga @ ga.conj().T
        rho_b = gb @ gb.conj().T
        rho_a /= rho_a.trace().real
        rho_b /= rho_b.trace().real
        pt = partial_transpose(kron(rho_a, rho_b), 2, 3)
        assert np.allclose(pt, kron(rho_a, rho_b.T), atol=1e-14)
        assert np.linalg.eigvalsh(pt).min() > -1e-12

    def test_bell_minimum_eigenvalue(self):
        phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        pt = partial_transpose(np.outer(phi, phi.conj()), 2, 2)
        assert np.linalg.eigvalsh(pt).min() == pytest.approx(-0.5, abs=1e-12)

    def test_maximally_mixed_fixed_point(self):
        mm = np.eye(6) / 6.0
        assert np.allclose(partial_transpose(mm, 2, 3), mm)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.sampled_from([(2, 2), (2, 3), (3, 3), (2, 4)]))
    def test_involution_and_trace(self, seed, dims):
        m, n = dims
        rng = np.random.default_rng(seed)
        g = _complex_gaussian(rng, (m * n, m * n))
        rho = g + g.conj().T
        pt = partial_transpose(rho, m, n)
        assert np.allclose(partial_transpose(pt, m, n), rho, atol=1e-14)
        assert pt.trace() == pytest.approx(rho.trace(), abs=1e-12)
        assert np.abs(pt - pt.conj().T).max() < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="bipartition"):
            partial_transpose(np.eye(5), 2, 3)


class TestRealign:
    def test_shape(self):
        assert realign(np.eye(6) / 6, 2, 3).shape == (4, 9)

    def test_index_definition(self):
        rng = np.random.default_rng(3)
        rho = _complex_gaussian(rng, (6, 6))
        r = realign(rho, 2, 3)
        for i in range(2):
            for j in range(2):
                for k in range(3):
                    for l in range(3):
                        assert r[i * 2 + j, k * 3 + l] == rho[i * 3 + k, j * 3 + l]

    def test_product_state_outer_product(self):
        rng = np.random.default_rng(5)
        ga = _complex_gaussian(rng, (2, 2))
        gb = _complex_gaussian(rng, (4, 4))
        rho_a = ga @ ga.conj().T
        rho_b = gb @ gb.conj().T
        rho_a /= rho_a.trace().real
        rho_b /= rho_b.trace().real
        r = realign(kron(rho_a, rho_b), 2, 4)
        assert np.allclose(r, np.outer(rho_a.reshape(-1), rho_b.reshape(-1)), atol=1e-14)
        expected_norm = np.sqrt(
            np.trace(rho_a @ rho_a).real * np.trace(rho_b @ rho_b).real
        )
        assert ky_fan_norm(r) == pytest.approx(expected_norm, abs=1e-12)
        assert ky_fan_norm(r) <= 1.0 + 1e-12

    def test_maximally_mixed_2x2(self):
        assert ky_fan_norm(realign(np.eye(4) / 4, 2, 2)) == pytest.approx(0.5, abs=1e-12)

    def test_bell_state(self):
        phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        r = realign(np.outer(phi, phi.conj()), 2, 2)
        assert ky_fan_norm(r) == pytest.approx(2.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="bipartition"):
            realign(np.eye(7), 2, 3)
