import itertools
import math

import numpy as np
import pytest
from scipy.stats import chi2

from locclab import (
    ConcentrationOutcome,
    DensityOperator,
    DomainError,
    HidingPairSpec,
    LayoutError,
    ModeError,
    PsiSpec,
    ResourceError,
    SchmidtSpectrum,
    SchmidtTypeState,
    SpecError,
    TensorLayout,
    concentration_distribution,
    concentration_success_prob,
    failure_exponent_fit,
    fidelity,
    helstrom,
    log2_multinomial,
    make_hiding_pair,
    make_max_entangled,
    make_psi,
    permute,
    psi_spectrum,
    sample_type,
    teleport,
    type_log2_dim,
)


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_spectrum(rng: np.random.Generator) -> SchmidtSpectrum:
    parts = int(rng.integers(2, 5))
    raw = rng.dirichlet(np.ones(parts))
    return SchmidtSpectrum(values=tuple((float(p), 1) for p in raw))


class TestTeleport:
    def test_plus_state_through_bell(self):
        plus = np.full((2, 2), 0.5, dtype=np.complex128)
        state = DensityOperator(TensorLayout((("X", 2),)), plus)
        res = teleport(state, "X", make_max_entangled(2))
        assert res.resource_consumed
        assert res.branches == 4
        np.testing.assert_allclose(res.state.entries, plus, atol=1e-12)

    def test_hiding_half_relocates_to_b_side(self):
        # after teleporting A1, both halves sit with the receiver and the
        # orthogonal pair becomes perfectly distinguishable there
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        resource = make_max_entangled(2)
        out0 = teleport(s0, "A1", resource).state
        out1 = teleport(s1, "A1", resource).state
        for lab in out0.layout.labels:
            assert not lab.startswith("A")
        assert helstrom(out0, out1) == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvalsh(out1.entries)),
            np.sort(np.linalg.eigvalsh(s1.entries)), atol=1e-12)

    def test_dimension_mismatch(self):
        state = DensityOperator(TensorLayout((("X", 2),)), np.eye(2) / 2)
        with pytest.raises(LayoutError):
            teleport(state, "X", make_max_entangled(3))

    def test_non_maximally_entangled_resource(self):
        state = DensityOperator(TensorLayout((("X", 2),)), np.eye(2) / 2)
        skew = make_psi(PsiSpec(lam=0.8, d2=2), labels=("Ap", "Bp"))
        with pytest.raises(ResourceError):
            teleport(state, "X", skew)

    def test_random_states_exact(self):
        rng = np.random.default_rng(42)
        for dim in (2, 3):
            resource = make_max_entangled(dim)
            for _ in range(20):
                m = random_density(rng, dim)
                state = DensityOperator(TensorLayout((("X", dim),)), m)
                out = teleport(state, "X", resource).state
                assert fidelity(out, DensityOperator(out.layout, m)) >= 1 - 1e-10
                assert abs(out.trace() - 1.0) < 1e-12

    def test_entangled_spectator_preserved(self):
        # teleporting one half of an entangled state must carry the
        # correlations along, not just the marginal
        phi = make_max_entangled(2, labels=("X", "K"))
        out = teleport(phi.to_density(), "X", make_max_entangled(2)).state
        assert set(out.layout.labels) == {"K", "Bp"}
        aligned = permute(out, ("K", "Bp")) if out.layout.labels != ("K", "Bp") else out
        np.testing.assert_allclose(aligned.entries, phi.to_density().entries,
                                   atol=1e-12)


class TestTypeAccounting:
    def test_log2_multinomial_exact(self):
        assert log2_multinomial([2, 0]) == pytest.approx(0.0, abs=1e-12)
        assert log2_multinomial([1, 1]) == pytest.approx(1.0, abs=1e-12)
        assert log2_multinomial([2, 1, 1]) == pytest.approx(
            math.log2(12), abs=1e-12)
        assert log2_multinomial([3, 3]) == pytest.approx(
            math.log2(math.comb(6, 3)), abs=1e-12)

    def test_type_log2_dim_validation(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        assert type_log2_dim(spec, [1, 1]) == pytest.approx(1.0, abs=1e-12)
        with pytest.raises(SpecError):
            type_log2_dim(spec, [1, 1, 0])
        with pytest.raises(SpecError):
            type_log2_dim(spec, [3, -1])

    def test_outcome_validation(self):
        with pytest.raises(SpecError):
            ConcentrationOutcome(counts=(1, 1), log2_dim=-0.5, probability=0.5)
        with pytest.raises(SpecError):
            ConcentrationOutcome(counts=(1, 1), log2_dim=1.0, probability=1.5)


class TestSchmidtTypeState:
    def test_measure_once(self):
        state = SchmidtTypeState(psi_spectrum(PsiSpec(lam=0.5, d2=2)), n=10)
        assert not state.collapsed
        out = state.measure(np.random.default_rng(0))
        assert state.collapsed
        assert sum(out.counts) == 10
        with pytest.raises(SpecError):
            state.measure(np.random.default_rng(1))

    def test_construction_invariants(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        with pytest.raises(SpecError):
            SchmidtTypeState(spec, n=3, counts=(1, 1), collapsed=True)
        with pytest.raises(SpecError):
            SchmidtTypeState(spec, n=3, counts=(2, 1), collapsed=False)


class TestSampleType:
    def test_seed_determinism(self):
        spec = psi_spectrum(PsiSpec(lam=0.3, d2=4))
        a = sample_type(spec, 50, 7)
        b = sample_type(spec, 50, 7)
        np.testing.assert_array_equal(a, b)

    def test_counts_sum(self):
        spec = psi_spectrum(PsiSpec(lam=0.3, d2=4))
        rng = np.random.default_rng(1)
        for _ in range(20):
            assert sample_type(spec, 17, rng).sum() == 17

    def test_chi_square_goodness_of_fit(self):
        # n=4, d2=2: five binomial categories, 1e5 draws
        lam = 0.5
        spec = psi_spectrum(PsiSpec(lam=lam, d2=2))
        rng = np.random.default_rng(123)
        draws = np.array([sample_type(spec, 4, rng)[0] for _ in range(100_000)])
        observed = np.bincount(draws, minlength=5)
        expected = np.array([math.comb(4, k) * lam ** k * (1 - lam) ** (4 - k)
                             for k in range(5)]) * 100_000
        stat = ((observed - expected) ** 2 / expected).sum()
        assert chi2.sf(stat, df=4) > 0.001

    def test_invalid_copy_count(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        with pytest.raises(SpecError):
            sample_type(spec, 0, 0)


class TestConcentrationDistribution:
    def test_single_copy_concentrates_nothing(self):
        spec = psi_spectrum(PsiSpec(lam=0.4, d2=3))
        for out in concentration_distribution(spec, 1):
            assert out.log2_dim == 0.0

    def test_two_copy_worked_example(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        dist = {out.counts: out for out in concentration_distribution(spec, 2)}
        assert dist[(1, 1)].probability == pytest.approx(0.5, abs=1e-12)
        assert dist[(1, 1)].log2_dim == pytest.approx(1.0, abs=1e-12)
        for counts in ((2, 0), (0, 2)):
            assert dist[counts].probability == pytest.approx(0.25, abs=1e-12)
            assert dist[counts].log2_dim == 0.0

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            spec = random_spectrum(rng)
            dist = concentration_distribution(spec, int(rng.integers(1, 9)))
            assert sum(o.probability for o in dist) == pytest.approx(
                1.0, abs=1e-9)

    def test_multinomial_probability_formula(self):
        # brute-force string enumeration oracle at n=5
        spec = SchmidtSpectrum(values=((0.5, 1), (0.3, 1), (0.2, 1)))
        p = [0.5, 0.3, 0.2]
        n = 5
        brute: dict[tuple, float] = {}
        for s in itertools.product(range(3), repeat=n):
            counts = tuple(s.count(i) for i in range(3))
            brute[counts] = brute.get(counts, 0.0) + math.prod(p[i] for i in s)
        for out in concentration_distribution(spec, n):
            assert out.probability == pytest.approx(brute[out.counts], abs=1e-12)
            assert out.log2_dim == pytest.approx(
                log2_multinomial(out.counts), abs=1e-12)

    def test_exact_mode_refuses_huge_enumerations(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=8))
        with pytest.raises(ModeError):
            concentration_distribution(spec, 64, mode="exact")

    def test_auto_falls_back_to_sampling(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=8))
        dist = concentration_distribution(spec, 64, samples=2000, seed=1)
        assert sum(o.probability for o in dist) == pytest.approx(1.0, abs=1e-9)

    def test_sampling_agrees_with_exact(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        exact = concentration_distribution(spec, 16)
        sampled = concentration_distribution(spec, 16, mode="sample",
                                             samples=200_000, seed=5)
        mean_exact = sum(o.probability * o.log2_dim for o in exact)
        mean_sampled = sum(o.probability * o.log2_dim for o in sampled)
        assert mean_sampled == pytest.approx(mean_exact, abs=0.05)

    def test_mean_bounded_by_entropy(self):
        # concavity: E[log2 multinomial] <= n S
        rng = np.random.default_rng(9)
        for _ in range(15):
            spec = random_spectrum(rng)
            n = int(rng.integers(1, 10))
            dist = concentration_distribution(spec, n)
            mean = sum(o.probability * o.log2_dim for o in dist)
            assert mean <= n * spec.entropy_bits + 1e-9


class TestMaximalEntanglementWitness:
    def test_explicit_type_projection(self):
        # build |psi>^(x)n literally for n <= 3 and check that each type
        # class holds a maximally entangled state of multinomial dimension
        lam = 0.37
        spec = psi_spectrum(PsiSpec(lam=lam, d2=2))
        amps = np.array([math.sqrt(lam), math.sqrt(1 - lam)])
        for n in (1, 2, 3):
            strings = list(itertools.product(range(2), repeat=n))
            dim = 2 ** n
            vec = np.zeros((dim, dim))
            for idx, s in enumerate(strings):
                c = math.prod(amps[i] for i in s)
                vec[idx, idx] = c  # |s>_A |s>_B amplitude
            dist = {o.counts: o for o in concentration_distribution(spec, n)}
            for k in range(n + 1):
                members = [i for i, s in enumerate(strings) if sum(s) == k]
                block = np.zeros((dim, dim))
                for i in members:
                    block[i, i] = vec[i, i]
                prob = float((block ** 2).sum())
                post = block / math.sqrt(prob)
                reduced = post @ post.T  # A-side marginal of the post state
                L = math.comb(n, k)
                counts = (n - k, k)
                assert dist[counts].probability == pytest.approx(prob, abs=1e-12)
                assert dist[counts].log2_dim == pytest.approx(
                    math.log2(L), abs=1e-12)
                expect = np.zeros((dim, dim))
                for i in members:
                    expect[i, i] = 1.0 / L
                np.testing.assert_allclose(reduced, expect, atol=1e-10)


class TestSuccessProbability:
    def test_target_zero(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=3))
        est = concentration_success_prob(spec, 6, 0.0)
        assert est.exact and est.estimate == 1.0

    def test_impossible_target(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=3))
        est = concentration_success_prob(spec, 6, 6 * math.log2(3) + 1.0)
        assert est.estimate == 0.0

    def test_two_copy_worked_example(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        est = concentration_success_prob(spec, 2, 1.0)
        assert est.exact
        assert est.estimate == pytest.approx(0.5, abs=1e-12)

    def test_wilson_interval_brackets_exact(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        exact = concentration_success_prob(spec, 20, 12.0).estimate
        est = concentration_success_prob(spec, 20, 12.0, mode="sample",
                                         samples=100_000, seed=3)
        assert not est.exact
        assert est.ci_low <= exact <= est.ci_high
        assert est.estimate == pytest.approx(exact, abs=0.01)

    def test_mode_error_mirrors_distribution(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=8))
        with pytest.raises(ModeError):
            concentration_success_prob(spec, 64, 100.0, mode="exact")


class TestFailureExponent:
    def test_positive_rate_below_entropy(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))  # S = 1 bit
        fit = failure_exponent_fit(spec, 0.5, (8, 12, 16, 20))
        assert fit.bits_per_copy > 0.0
        assert all(f > 0 for f in fit.failure_probs)
        # failures must actually decay along the checkpoints
        assert fit.failure_probs[-1] < fit.failure_probs[0]

    def test_degenerate_inputs(self):
        spec = psi_spectrum(PsiSpec(lam=0.5, d2=2))
        with pytest.raises(DomainError):
            failure_exponent_fit(spec, 0.0, (4, 8))  # never fails
