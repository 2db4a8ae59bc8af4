import math

import numpy as np
import pytest

from locclab import (
    DensityOperator,
    HidingPairSpec,
    PsiSpec,
    SchmidtSpectrum,
    SpecError,
    TensorLayout,
    check_psi_conditions,
    helstrom,
    make_hiding_pair,
    make_max_entangled,
    make_psi,
    make_rho_pair,
    operator_to_json,
    partial_trace,
    partial_transpose,
    psi_marginal_entropy,
    psi_product_distance,
    psi_spectrum,
    sample_separable,
    trace_norm,
    von_neumann_entropy,
)


def closed_form_entropy(lam: float, d2: int) -> float:
    return -lam * math.log2(lam) - (1 - lam) * math.log2((1 - lam) / (d2 - 1))


class TestHidingPair:
    def test_d2_singlet(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        singlet = np.zeros(4, dtype=np.complex128)
        singlet[1], singlet[2] = 1 / math.sqrt(2), -1 / math.sqrt(2)
        np.testing.assert_allclose(s1.entries, np.outer(singlet, singlet.conj()),
                                   atol=1e-14)
        assert abs(np.trace(s0.entries @ s1.entries)) < 1e-14

    def test_d2_orthogonal_hence_perfect(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        assert trace_norm(s0.entries - s1.entries) == pytest.approx(2.0, abs=1e-12)
        assert helstrom(s0, s1) == pytest.approx(1.0, abs=1e-12)

    def test_d3_ranks(self):
        # symmetric/antisymmetric subspace dimensions d(d+1)/2 and d(d-1)/2
        s0, s1 = make_hiding_pair(HidingPairSpec(d=3))
        assert np.linalg.matrix_rank(s0.entries, tol=1e-10) == 6
        assert np.linalg.matrix_rank(s1.entries, tol=1e-10) == 3

    def test_perfectly_distinguishable_up_to_d6(self):
        for d in range(2, 7):
            s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
            assert helstrom(s0, s1) == pytest.approx(1.0, abs=1e-10)

    def test_valid_density_operators(self):
        for d in (2, 3, 4):
            s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
            for s in (s0, s1):
                assert abs(s.trace() - 1.0) < 1e-12
                assert np.linalg.eigvalsh(s.entries).min() > -1e-12

    def test_bad_specs(self):
        with pytest.raises(SpecError):
            HidingPairSpec(d=1)
        with pytest.raises(SpecError):
            HidingPairSpec(d=3, family="random-subspace")


class TestMakePsi:
    def test_bell_case(self):
        psi = make_psi(PsiSpec(lam=0.5, d2=2))
        rho = psi.to_density()
        marg = partial_trace(rho, {"B2"})
        assert von_neumann_entropy(marg) == pytest.approx(1.0, abs=1e-12)

    def test_uniform_spectrum_case(self):
        for d2 in (2, 4, 5):
            psi = make_psi(PsiSpec(lam=1.0 / d2, d2=d2))
            marg = partial_trace(psi.to_density(), {"B2"})
            assert von_neumann_entropy(marg) == pytest.approx(
                math.log2(d2), abs=1e-10)

    def test_overlap_with_00(self):
        psi = make_psi(PsiSpec(lam=0.9, d2=5))
        assert abs(psi.amplitudes[0]) ** 2 == pytest.approx(0.9, abs=1e-12)

    def test_point_nine_example(self):
        spec = PsiSpec(lam=0.9, d2=5)
        psi = make_psi(spec)
        marg = partial_trace(psi.to_density(), {"B2"})
        assert von_neumann_entropy(marg) == pytest.approx(0.669, abs=1e-3)
        # trace distance to |00><00| for pure states: 2 sqrt(1 - lambda)
        product = np.zeros((25, 25), dtype=np.complex128)
        product[0, 0] = 1.0
        dist = trace_norm(psi.to_density().entries - product)
        assert dist == pytest.approx(2 * math.sqrt(0.1), abs=1e-10)
        assert psi_product_distance(spec) == pytest.approx(dist, abs=1e-10)

    def test_entropy_closed_form_random_specs(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            lam = float(rng.uniform(0.05, 0.95))
            d2 = int(rng.integers(2, 7))
            spec = PsiSpec(lam=lam, d2=d2)
            marg = partial_trace(make_psi(spec).to_density(), {"B2"})
            assert von_neumann_entropy(marg) == pytest.approx(
                closed_form_entropy(lam, d2), abs=1e-10)
            assert psi_marginal_entropy(spec) == pytest.approx(
                closed_form_entropy(lam, d2), abs=1e-12)

    def test_product_distance_identity_random_specs(self):
        rng = np.random.default_rng(18)
        for _ in range(20):
            lam = float(rng.uniform(0.05, 0.95))
            spec = PsiSpec(lam=lam, d2=int(rng.integers(2, 6)))
            assert psi_product_distance(spec) == pytest.approx(
                2 * math.sqrt(1 - lam), abs=1e-12)

    def test_lambda_bounds(self):
        with pytest.raises(SpecError):
            PsiSpec(lam=0.0, d2=2)
        with pytest.raises(SpecError):
            PsiSpec(lam=1.0, d2=2)
        with pytest.raises(SpecError):
            PsiSpec(lam=0.5, d2=1)


class TestPsiConditions:
    def test_near_product_true(self):
        # sufficient condition lambda > 1 - eps'^2/4 = 0.9975
        cond = check_psi_conditions(PsiSpec(lam=0.999, d2=4), 2, 0.1)
        assert cond.near_product

    def test_near_product_false(self):
        # 2 sqrt(0.5) = 1.414 > 0.1
        cond = check_psi_conditions(PsiSpec(lam=0.5, d2=4), 2, 0.1)
        assert not cond.near_product

    def test_entropy_excess_value(self):
        cond = check_psi_conditions(PsiSpec(lam=0.5, d2=8), 2, 1.0)
        expect = 0.5 + 0.5 * math.log2(14) - 1.0
        assert cond.entropy_excess == pytest.approx(expect, abs=1e-12)
        assert cond.entropy_excess == pytest.approx(1.403, abs=1e-3)

    def test_report_fields_consistent(self):
        spec = PsiSpec(lam=0.7, d2=3)
        cond = check_psi_conditions(spec, 2, 0.5)
        assert cond.entropy_bits == pytest.approx(psi_marginal_entropy(spec))
        assert cond.trace_distance == pytest.approx(psi_product_distance(spec))
        assert cond.near_product == (cond.trace_distance < 0.5)


class TestRhoPair:
    def test_orthogonality_inherited(self):
        pair = make_hiding_pair(HidingPairSpec(d=2))
        psi = make_psi(PsiSpec(lam=0.9, d2=2))
        r0, r1 = make_rho_pair(pair, psi)
        assert abs(np.trace(r0.entries @ r1.entries)) < 1e-14

    def test_marginal_is_psi(self):
        pair = make_hiding_pair(HidingPairSpec(d=2))
        psi = make_psi(PsiSpec(lam=0.7, d2=3))
        for rho in make_rho_pair(pair, psi):
            marg = partial_trace(rho, {"A1", "B1"})
            np.testing.assert_allclose(marg.entries, psi.to_density().entries,
                                       atol=1e-12)

    def test_dimensions_and_validity(self):
        pair = make_hiding_pair(HidingPairSpec(d=2))
        psi = make_psi(PsiSpec(lam=0.5, d2=2))
        r0, r1 = make_rho_pair(pair, psi)
        assert r0.layout.dim == 16
        assert set(r0.layout.labels) == {"A1", "B1", "A2", "B2"}
        for r in (r0, r1):
            assert abs(r.trace() - 1.0) < 1e-12
            assert np.linalg.eigvalsh(r.entries).min() > -1e-12


class TestMaxEntangled:
    def test_dim_one(self):
        phi = make_max_entangled(1)
        assert phi.amplitudes.shape == (1,)
        assert abs(abs(phi.amplitudes[0]) - 1.0) < 1e-12

    def test_entropies(self):
        for dim, bits in ((2, 1.0), (4, 2.0)):
            phi = make_max_entangled(dim)
            marg = partial_trace(phi.to_density(), {phi.layout.labels[1]})
            assert von_neumann_entropy(marg) == pytest.approx(bits, abs=1e-12)
            np.testing.assert_allclose(marg.entries, np.eye(dim) / dim,
                                       atol=1e-12)

    def test_invalid_dim(self):
        with pytest.raises(SpecError):
            make_max_entangled(0)


class TestSampleSeparable:
    LAYOUT = TensorLayout((("A1", 2), ("B1", 2)))

    def test_single_term_is_pure_product(self):
        rho = sample_separable(self.LAYOUT, 1, seed=5)
        w = np.linalg.eigvalsh(rho.entries)
        assert w[-1] == pytest.approx(1.0, abs=1e-10)  # rank one
        marg = partial_trace(rho, {"B1"})
        assert np.linalg.eigvalsh(marg.entries)[-1] == pytest.approx(
            1.0, abs=1e-10)  # marginal pure too

    def test_ppt_necessary_condition(self):
        # separable by construction, so the partial transpose stays PSD
        for seed in range(100):
            rho = sample_separable(self.LAYOUT, 3, seed=seed)
            pt = partial_transpose(rho, {"B1"})
            assert np.linalg.eigvalsh(pt.entries).min() >= -1e-10

    def test_seed_determinism(self):
        a = sample_separable(self.LAYOUT, 4, seed=123)
        b = sample_separable(self.LAYOUT, 4, seed=123)
        assert operator_to_json(a) == operator_to_json(b)
        c = sample_separable(self.LAYOUT, 4, seed=124)
        assert operator_to_json(a) != operator_to_json(c)

    def test_valid_density(self):
        rho = sample_separable(TensorLayout((("A1", 3), ("B1", 2))), 5, seed=9)
        assert abs(rho.trace() - 1.0) < 1e-12
        assert np.linalg.eigvalsh(rho.entries).min() > -1e-12


class TestSchmidtSpectrum:
    def test_psi_spectrum_layout(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=8))
        assert spec.values[0] == (0.5, 1)
        assert spec.values[1][1] == 7
        assert spec.num_labels == 8
        assert spec.entropy_bits == pytest.approx(
            closed_form_entropy(0.5, 8), abs=1e-12)

    def test_mass_must_be_one(self):
        with pytest.raises(SpecError):
            SchmidtSpectrum(values=((0.5, 1), (0.25, 1)))

    def test_label_probabilities(self):
        spec = SchmidtSpectrum(values=((0.4, 1), (0.2, 3)))
        np.testing.assert_allclose(spec.label_probabilities(),
                                   [0.4, 0.2, 0.2, 0.2], atol=0)
