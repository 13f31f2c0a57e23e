import numpy as np
import pytest

from sepdetect import (
    DensityMatrix,
    bound_2x4,
    bound_2x4_mixture,
    decompose,
    family,
    horodecki_3x3,
    horodecki_mixture,
    isotropic,
    parse_state,
    partial_transpose,
    random_density,
    random_separable,
    two_qubit_ex2,
    two_qubit_ex4,
)


def _min_eig(state):
    return float(np.linalg.eigvalsh(state.mat).min())


def _assert_valid(state):
    assert np.abs(state.mat - state.mat.conj().T).max() < 1e-8
    assert abs(state.mat.trace() - 1.0) < 1e-8
    assert _min_eig(state) > -1e-8


class TestIsotropic:
    def test_noise_limit(self):
        assert np.allclose(isotropic(2, 3, 0.0).mat, np.eye(6) / 6.0)

    def test_pure_limit_is_bell_state(self):
        phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        assert np.allclose(isotropic(2, 2, 1.0).mat, np.outer(phi, phi.conj()))

    def test_domain_sweep_valid(self):
        for p in np.linspace(0.0, 1.0, 50):
            _assert_valid(isotropic(2, 3, p))

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError, match="d1 <= d2"):
            isotropic(3, 2, 0.5)
        with pytest.raises(ValueError, match="d1 <= d2"):
            isotropic(1, 2, 0.5)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            isotropic(2, 2, 1.2)


class TestBound2x4:
    def test_matrix_entries(self):
        state = bound_2x4(0.9)
        assert state.mat.trace().real == pytest.approx(1.0, abs=1e-14)
        assert state.mat[0, 5].real == pytest.approx(0.9 / 7.3, abs=1e-14)
        assert state.mat[4, 7].real == pytest.approx(np.sqrt(1 - 0.81) / 2 / 7.3, abs=1e-14)

    def test_base_state_is_ppt(self):
        state = bound_2x4(0.9)
        pt = partial_transpose(state.mat, 2, 4)
        assert np.linalg.eigvalsh(pt).min() > -1e-12

    def test_mixture_endpoints(self):
        pure = bound_2x4_mixture(0.9, 1.0)
        xi = np.zeros(8, dtype=complex)
        xi[0] = xi[5] = 1 / np.sqrt(2)
        assert np.allclose(pure.mat, np.outer(xi, xi.conj()))
        assert np.allclose(bound_2x4_mixture(0.9, 0.0).mat, bound_2x4(0.9).mat)

    def test_domain_sweep_valid(self):
        for x in np.linspace(0.0, 1.0, 50):
            _assert_valid(bound_2x4_mixture(0.9, x))
        for d in np.linspace(0.02, 0.98, 25):
            _assert_valid(bound_2x4(d))

    def test_rejects_bad_parameters(self):
        for d in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(ValueError, match=r"\(0, 1\)"):
                bound_2x4(d)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            bound_2x4_mixture(0.9, 1.01)


class TestHorodecki3x3:
    def test_matrix_entries(self):
        state = horodecki_3x3(0.9)
        assert state.mat.trace().real == pytest.approx(1.0, abs=1e-14)
        assert state.mat[6, 6].real == pytest.approx((1.9 / 2) / 8.2, abs=1e-14)
        assert state.mat[8, 6].real == pytest.approx(np.sqrt(1 - 0.81) / 2 / 8.2, abs=1e-14)

    def test_base_state_is_ppt(self):
        state = horodecki_3x3(0.9)
        pt = partial_transpose(state.mat, 3, 3)
        assert np.linalg.eigvalsh(pt).min() > -1e-12

    def test_zero_weight_mixture_is_white_noise(self):
        assert np.allclose(horodecki_mixture(0.9, 0.0).mat, np.eye(9) / 9.0)

    def test_domain_sweep_valid(self):
        for q in np.linspace(0.0, 1.0, 50):
            _assert_valid(horodecki_mixture(0.9, q))
        for x in np.linspace(0.02, 0.98, 25):
            _assert_valid(horodecki_3x3(x))

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError, match=r"\(0, 1\)"):
            horodecki_3x3(0.0)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            horodecki_mixture(0.5, -0.2)


class TestTwoQubitFamilies:
    def test_ex2_endpoints(self):
        zero = two_qubit_ex2(0.0)
        assert np.allclose(zero.mat, np.diag([1.0, 0, 0, 0]))
        psi = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
        assert np.allclose(two_qubit_ex2(1.0).mat, np.outer(psi, psi.conj()))

    @pytest.mark.parametrize("p", [0.05, 0.3, 0.7, 1.0])
    def test_ex2_entangled_by_exact_ppt(self, p):
        # for two qubits a negative partial transpose is exact
        state = two_qubit_ex2(p)
        assert np.linalg.eigvalsh(partial_transpose(state.mat, 2, 2)).min() < -1e-12

    def test_ex2_domain_sweep_valid(self):
        for p in np.linspace(0.0, 1.0, 50):
            _assert_valid(two_qubit_ex2(p))

    def test_ex4_zero_parameters(self):
        assert np.allclose(two_qubit_ex4(0, 0, 0).mat, np.diag([0.5, 0, 0, 0.5]))

    def test_ex4_corner_entries_match(self):
        state = two_qubit_ex4(0.1, 0.3, 0.2)
        assert state.mat[0, 3] == pytest.approx(0.1, abs=1e-15)
        assert state.mat[3, 0] == pytest.approx(0.1, abs=1e-15)

    def test_ex4_positivity_conditions(self):
        # a2 < a1 makes the third diagonal entry negative
        with pytest.raises(ValueError, match="non-positive"):
            two_qubit_ex4(0.5, 0.0, 0.0)
        # a3^2 above (1+a1)(1-a2) breaks the corner 2x2 block
        with pytest.raises(ValueError, match="non-positive"):
            two_qubit_ex4(0.0, 0.5, 0.8)
        rng = np.random.default_rng(11)
        for _ in range(25):
            a1 = rng.uniform(-0.9, 0.9)
            a2 = rng.uniform(a1, 0.9)
            a3 = np.sqrt((1 + a1) * (1 - a2)) * rng.uniform(-0.99, 0.99)
            _assert_valid(two_qubit_ex4(a1, a2, a3))


class TestRandomStates:
    def test_seed_reproducibility(self):
        a = random_density(3, 3, 4, seed=42)
        b = random_density(3, 3, 4, seed=42)
        assert np.array_equal(a.mat, b.mat)
        c = random_separable(2, 3, 5, seed=42)
        d = random_separable(2, 3, 5, seed=42)
        assert np.array_equal(c.mat, d.mat)
        assert not np.allclose(a.mat, random_density(3, 3, 4, seed=43).mat)

    def test_random_density_trace_and_rank(self):
        state = random_density(2, 2, 1, seed=0)
        assert state.mat.trace().real == pytest.approx(1.0, abs=1e-14)
        eigs = np.sort(np.linalg.eigvalsh(state.mat))
        assert eigs[-1] == pytest.approx(1.0, abs=1e-12)  # rank 1 means pure

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_random_separable_is_ppt(self, dims):
        m, n = dims
        for seed in range(10):
            state = random_separable(m, n, terms=4, seed=seed)
            _assert_valid(state)
            pt = partial_transpose(state.mat, m, n)
            assert np.linalg.eigvalsh(pt).min() > -1e-10

    def test_rejects_bad_rank_and_terms(self):
        with pytest.raises(ValueError, match="rank"):
            random_density(2, 2, 0, seed=1)
        with pytest.raises(ValueError, match="terms"):
            random_separable(2, 2, 0, seed=1)


class TestMixtureAffinity:
    @pytest.mark.parametrize(
        "lo,hi,mid,weight",
        [
            (isotropic(2, 3, 0.0), isotropic(2, 3, 1.0), isotropic(2, 3, 0.3), 0.3),
            (horodecki_mixture(0.9, 0.0), horodecki_mixture(0.9, 1.0),
             horodecki_mixture(0.9, 0.8), 0.8),
            (bound_2x4_mixture(0.9, 0.0), bound_2x4_mixture(0.9, 1.0),
             bound_2x4_mixture(0.9, 0.25), 0.25),
            (two_qubit_ex2(0.0), two_qubit_ex2(1.0), two_qubit_ex2(0.6), 0.6),
        ],
    )
    def test_decomposition_is_affine_in_weight(self, lo, hi, mid, weight):
        d_lo, d_hi, d_mid = decompose(lo), decompose(hi), decompose(mid)
        expected = weight * d_hi.t + (1 - weight) * d_lo.t
        assert np.abs(d_mid.t - expected).max() < 1e-12


class TestStateMiniLanguage:
    @pytest.mark.parametrize(
        "spec",
        [
            "isotropic:d1=2,d2=3,p=0.4",
            "horodecki:x=0.9,q=0.99",
            "bound2x4:d=0.9,x=0.3",
            "ex2:p=0.7",
            "ex4:a1=0.1,a2=0.3,a3=0.2",
            "random:M=3,N=3,rank=9,seed=42",
        ],
    )
    def test_documented_specs_round_trip(self, spec):
        state = parse_state(spec)
        _assert_valid(state)

    def test_random_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("SEPDETECT_SEED", "7")
        via_env = parse_state("random:M=2,N=2,rank=4")
        explicit = parse_state("random:M=2,N=2,rank=4,seed=7")
        assert np.array_equal(via_env.mat, explicit.mat)

    def test_unknown_family_and_keys(self):
        with pytest.raises(ValueError, match="unknown state family"):
            parse_state("werner:p=0.5")
        with pytest.raises(ValueError, match="allowed"):
            parse_state("isotropic:d1=2,d2=3,p=0.4,zz=1")
        with pytest.raises(ValueError, match="missing"):
            parse_state("isotropic:d1=2,d2=3")

    def test_malformed_fields(self):
        with pytest.raises(ValueError, match="key=value"):
            parse_state("isotropic:d1=2,d2=3,p")
        with pytest.raises(ValueError, match="duplicate"):
            parse_state("ex2:p=0.1,p=0.2")

    def test_file_state(self, tmp_path):
        path = tmp_path / "state.txt"
        path.write_text(
            "0.5      0.5i  0  0\n"
            "-0.5i    0.5   0  0\n"
            "0 0 0 0\n"
            "0 0 0 0\n"
        )
        state = parse_state(f"file:{path}", dims=(2, 2))
        assert state.mat[0, 1] == pytest.approx(0.5j)
        assert state.mat.trace().real == pytest.approx(1.0)
        with pytest.raises(ValueError, match="dims"):
            parse_state(f"file:{path}")

    def test_file_state_bad_entry(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0.5 huh\n0 0.5\n")
        with pytest.raises(ValueError, match="unparseable"):
            parse_state(f"file:{path}", dims=(2, 2))


class TestStateFamily:
    def test_family_evaluates(self):
        fam = family("bound2x4:d=0.9", "x")
        assert fam.param == "x"
        assert fam.label == "bound2x4:d=0.9"
        assert fam.domain == (0.0, 1.0)
        _assert_valid(fam.at(0.5))

    def test_family_errors(self):
        with pytest.raises(ValueError, match="no parameter"):
            family("bound2x4:d=0.9", "q")
        with pytest.raises(ValueError, match="already fixed"):
            family("bound2x4:d=0.9,x=0.5", "x")
        with pytest.raises(ValueError, match="not a real scan parameter"):
            family("isotropic:d2=3,p=0.5", "d1")
        with pytest.raises(ValueError, match="unknown state family"):
            family("werner:", "p")

    def test_evaluation_failure_names_parameter_value(self):
        fam = family("isotropic:d1=2,d2=3", "p")
        with pytest.raises(ValueError, match=r"p=1\.5"):
            fam.at(1.5)

    def test_missing_fixed_key_surfaces_at_evaluation(self):
        fam = family("bound2x4:", "x")
        with pytest.raises(ValueError, match="missing"):
            fam.at(0.5)
