import math

import numpy as np
import pytest

from locclab import (
    ChannelError,
    ConfigError,
    DensityOperator,
    HidingPairSpec,
    LayoutError,
    MeasurementChannel,
    PsiSpec,
    SpecError,
    TensorLayout,
    apply_channel,
    bound_bracket,
    helstrom,
    locc_lower_bound,
    make_hiding_pair,
    make_psi,
    make_rho_pair,
    one_way_library,
    ppt_sdp,
    ppt_upper_bound,
    tensor,
    thm2_locc_bound,
    trace_norm,
)

AB22 = TensorLayout((("A1", 2), ("B1", 2)))


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_pair(rng: np.random.Generator) -> tuple[DensityOperator, DensityOperator]:
    return (DensityOperator(AB22, random_density(rng, 4)),
            DensityOperator(AB22, random_density(rng, 4)))


def commutant_grid_value(d: int, steps: int) -> float:
    """Independent oracle for the hiding-pair PPT value.

    Restrict the measurement operator to M = a P_sym + b P_asym (the
    commutant of the problem's U x U symmetry), discretize (a, b) on a
    grid, keep pairs where eigendecompositions certify 0 <= M <= I and
    0 <= M^G <= I, and maximize Tr[M (sigma0 - sigma1)] = a - b. Built
    from raw numpy so it shares nothing with the solver under test.
    """
    dim = d * d
    swap = np.zeros((dim, dim))
    for i in range(d):
        for k in range(d):
            swap[i * d + k, k * d + i] = 1.0
    p_sym = (np.eye(dim) + swap) / 2.0
    p_asym = (np.eye(dim) - swap) / 2.0
    best = -1.0
    for a in np.linspace(0.0, 1.0, steps):
        for b in np.linspace(0.0, 1.0, steps):
            if a - b <= best:
                continue
            m = a * p_sym + b * p_asym
            mg = m.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(dim, dim)
            w = np.linalg.eigvalsh(m)
            wg = np.linalg.eigvalsh(mg)
            if (w.min() >= -1e-12 and w.max() <= 1 + 1e-12
                    and wg.min() >= -1e-12 and wg.max() <= 1 + 1e-12):
                best = a - b
    return 0.5 + best / 2.0


class TestHelstrom:
    def test_equal_states(self):
        rho = DensityOperator(AB22, random_density(np.random.default_rng(0), 4))
        assert helstrom(rho, rho) == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_pure_states(self):
        layout = TensorLayout((("A1", 2),))
        a = DensityOperator(layout, np.diag([1.0, 0.0]))
        b = DensityOperator(layout, np.diag([0.0, 1.0]))
        assert helstrom(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_pure_vs_mixed(self):
        layout = TensorLayout((("A1", 2),))
        a = DensityOperator(layout, np.diag([1.0, 0.0]))
        b = DensityOperator(layout, np.eye(2) / 2)
        assert helstrom(a, b) == pytest.approx(0.75, abs=1e-12)

    def test_layout_mismatch(self):
        a = DensityOperator(TensorLayout((("A1", 2),)), np.eye(2) / 2)
        b = DensityOperator(TensorLayout((("A1", 3),)), np.eye(3) / 3)
        with pytest.raises(LayoutError):
            helstrom(a, b)

    def test_additivity_under_common_factor(self):
        rng = np.random.default_rng(4)
        rho0, rho1 = random_pair(rng)
        omega = DensityOperator(TensorLayout((("A2", 2),)),
                                random_density(rng, 2))
        base = helstrom(rho0, rho1)
        lifted = helstrom(tensor(rho0, omega), tensor(rho1, omega))
        assert lifted == pytest.approx(base, abs=1e-9)


class TestApplyChannel:
    def _basis_channel(self, dim: int) -> MeasurementChannel:
        elements = tuple(np.diag([1.0 if i == k else 0.0 for i in range(dim)])
                         for k in range(dim))
        return MeasurementChannel(elements=elements,
                                  outcomes=tuple(range(dim)),
                                  name="computational")

    def test_commuting_case_total_variation(self):
        p = np.array([0.5, 0.3, 0.2])
        q = np.array([0.2, 0.3, 0.5])
        ch = self._basis_channel(3)
        out = apply_channel(ch, np.diag(p - q))
        assert out.measured_norm == pytest.approx(np.abs(p - q).sum(), abs=1e-12)

    def test_zero_operator(self):
        ch = self._basis_channel(2)
        out = apply_channel(ch, np.zeros((2, 2)))
        assert out.measured_norm == 0.0

    def test_data_processing_random(self):
        rng = np.random.default_rng(8)
        ch = self._basis_channel(4)
        for _ in range(100):
            x = random_density(rng, 4) - random_density(rng, 4)
            out = apply_channel(ch, x)
            assert out.measured_norm <= trace_norm(x) + 1e-9

    def test_povm_invariant_enforced(self):
        with pytest.raises(ChannelError):
            MeasurementChannel(elements=(np.diag([1.0, 0.0]),),
                               outcomes=(0,), name="broken")

    def test_refinement_never_decreases_norm(self):
        # splitting one POVM element into two can only expose more signal
        rng = np.random.default_rng(12)
        for _ in range(20):
            x = random_density(rng, 2) - random_density(rng, 2)
            coarse = MeasurementChannel(
                elements=(np.eye(2),), outcomes=(0,), name="trivial")
            t = rng.uniform(0.2, 0.8)
            fine = MeasurementChannel(
                elements=(t * np.eye(2), (1 - t) * np.eye(2)),
                outcomes=(0, 1), name="split")
            basis = self._basis_channel(2)
            v_coarse = apply_channel(coarse, x).measured_norm
            v_fine = apply_channel(fine, x).measured_norm
            v_basis = apply_channel(basis, x).measured_norm
            assert v_fine >= v_coarse - 1e-12
            assert v_basis >= v_coarse - 1e-12


class TestLoccLowerBound:
    def test_classical_pair_reaches_helstrom(self):
        # both states diagonal in the product basis: one-way measurement
        # already extracts everything
        rho0 = DensityOperator(AB22, np.diag([0.5, 0.25, 0.15, 0.1]))
        rho1 = DensityOperator(AB22, np.diag([0.1, 0.15, 0.25, 0.5]))
        value, witness = locc_lower_bound(rho0, rho1)
        assert value == pytest.approx(helstrom(rho0, rho1), abs=1e-9)
        assert witness.name

    def test_werner_bracket(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        value, _ = locc_lower_bound(s0, s1)
        assert value >= 0.5
        assert value <= ppt_upper_bound(s0, s1) + 1e-6

    def test_empty_library(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        with pytest.raises(ConfigError):
            locc_lower_bound(s0, s1, library=())


class TestPptUpperBound:
    def test_equal_states(self):
        rho = DensityOperator(AB22, random_density(np.random.default_rng(1), 4))
        assert ppt_upper_bound(rho, rho) == pytest.approx(0.5, abs=1e-5)

    def test_werner_closed_form(self):
        for d in (2, 3):
            s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
            assert ppt_upper_bound(s0, s1) == pytest.approx(
                0.5 + 1.0 / (d + 1), abs=1e-5)

    def test_commutant_ansatz_cross_validation(self):
        # grid spacing 1/120 puts the optimizer a = 2/(d+1), b = 0 exactly
        # on the grid for d in {2, 3}
        for d in (2, 3):
            s0, s1 = make_hiding_pair(HidingPairSpec(d=d))
            oracle = commutant_grid_value(d, steps=121)
            assert oracle == pytest.approx(0.5 + 1.0 / (d + 1), abs=1e-9)
            assert ppt_upper_bound(s0, s1) == pytest.approx(oracle, abs=1e-5)

    def test_orthogonal_product_basis_states(self):
        # support projector is PPT, so the relaxation stays exact here
        rho0 = DensityOperator(AB22, np.diag([1.0, 0.0, 0.0, 0.0]))
        rho1 = DensityOperator(AB22, np.diag([0.0, 0.0, 0.0, 1.0]))
        assert ppt_upper_bound(rho0, rho1) == pytest.approx(1.0, abs=1e-5)

    def test_gap_reported(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        bound = ppt_sdp(s0, s1)
        assert 0.0 <= bound.sdp_gap <= 1e-6
        assert bound.value == pytest.approx(5.0 / 6.0, abs=1e-5)

    def test_never_exceeds_helstrom(self):
        rng = np.random.default_rng(33)
        for _ in range(10):
            rho0, rho1 = random_pair(rng)
            assert ppt_upper_bound(rho0, rho1) <= helstrom(rho0, rho1) + 1e-9


class TestThm2Bound:
    def test_zero_case(self):
        assert thm2_locc_bound(0.0, 0.0) == 0.5

    def test_small_eps_case(self):
        assert thm2_locc_bound(0.01, 0.02) == pytest.approx(0.52, abs=1e-12)

    def test_formula(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            eps = float(rng.uniform(0, 0.3))
            eps_prime = float(rng.uniform(0, 0.3))
            assert thm2_locc_bound(eps, eps_prime) == pytest.approx(
                eps + (1 + eps_prime) / 2, abs=1e-12)

    def test_negative_inputs(self):
        with pytest.raises(SpecError):
            thm2_locc_bound(-0.1, 0.0)
        with pytest.raises(SpecError):
            thm2_locc_bound(0.0, -0.1)

    def test_dominates_composed_ppt_value(self):
        # eps = PPT excess of the bare hiding pair, eps' = 2 sqrt(1-lambda);
        # the composed-pair PPT value must stay below the analytic ceiling
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        eps = ppt_upper_bound(s0, s1) - 0.5
        lam = 0.99
        for d2 in (2, 3):
            psi = make_psi(PsiSpec(lam=lam, d2=d2))
            r0, r1 = make_rho_pair((s0, s1), psi)
            ceiling = thm2_locc_bound(eps, 2 * math.sqrt(1 - lam))
            assert ppt_upper_bound(r0, r1) <= ceiling + 1e-5


class TestBoundBracket:
    def test_ordering_on_random_pairs(self):
        rng = np.random.default_rng(77)
        for _ in range(15):
            rho0, rho1 = random_pair(rng)
            br = bound_bracket(rho0, rho1)
            assert 0.5 <= br.locc_lower + 1e-12
            assert br.locc_lower <= br.ppt_upper + 1e-6
            assert br.ppt_upper <= br.helstrom + 1e-6
            assert br.helstrom <= 1.0 + 1e-12

    def test_witness_consistency(self):
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        br = bound_bracket(s0, s1)
        value = 0.5 + apply_channel(br.witness, s0.entries - s1.entries
                                    ).measured_norm / 4.0
        assert value == pytest.approx(br.locc_lower, abs=1e-10)

    def test_product_witnesses_below_ppt(self):
        # every product-structure channel in the library is PPT-implementable
        s0, s1 = make_hiding_pair(HidingPairSpec(d=2))
        upper = ppt_upper_bound(s0, s1)
        x = s0.entries - s1.entries
        for ch in one_way_library(s0, s1):
            value = 0.5 + apply_channel(ch, x).measured_norm / 4.0
            assert value <= upper + 1e-6
