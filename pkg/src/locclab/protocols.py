"""Quantum subprotocols: exact qudit teleportation and Schmidt-type
entanglement concentration.

Teleportation is simulated branch by branch: the generalized Bell
measurement on (X, resource-A) followed by the matching shift/clock
correction on resource-B reproduces the input state exactly, with the
teleported factor relocated to the B side.

Concentration measures the type class of |psi>^{(x) n}: the outcome is
the occupation vector k of the n local Schmidt labels. Every label
string in a type class carries the same coefficient prod_i p_i^{k_i/2},
so the post-measurement state is maximally entangled on a subspace of
dimension exactly the multinomial coefficient n!/prod_i k_i!, and
log2_dim is its base-2 logarithm (computed via log-gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import (DomainError, LayoutError, ModeError, ResourceError,
                     SpecError)
from .qmat import DensityOperator, PureState, TensorLayout, permute, tensor
from .seeding import rng_from
from .states import SchmidtSpectrum

_MAX_EXACT_TYPES = 1_000_000
_WILSON_Z_99 = 2.5758293035489004  # Phi^{-1}(0.995)
_LOG2 = math.log(2.0)


# --- teleportation -----------------------------------------------------

def _shift(dim: int) -> np.ndarray:
    x = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        x[(j + 1) % dim, j] = 1.0
    return x


def _clock(dim: int) -> np.ndarray:
    omega = np.exp(2j * np.pi / dim)
    return np.diag(omega ** np.arange(dim))


@dataclass(frozen=True)
class TeleportResult:
    """Output state plus the bookkeeping that the entangled resource was
    consumed by the Bell measurement."""

    state: DensityOperator
    resource_consumed: bool
    branches: int


def teleport(state: DensityOperator, x_label: str,
             resource: PureState) -> TeleportResult:
    """Teleport the ``x_label`` factor of ``state`` through ``resource``.

    The resource must be the canonical maximally entangled |phi_L> (up
    to global phase) on two factors matching the teleported dimension;
    anything else raises ResourceError. The output carries the factor on
    the resource's B register, appended after the untouched factors.
    """
    layout = state.layout
    dim = layout.dim_of(x_label)
    if len(resource.layout.factors) != 2:
        raise LayoutError("teleport resource must have exactly two factors, got "
                          f"{resource.layout.labels}")
    (ra, da), (rb, db) = resource.layout.factors
    if da != dim or db != dim:
        raise LayoutError(f"resource dimensions ({da}, {db}) do not match the "
                          f"teleported factor dimension {dim}")
    amp = resource.amplitudes.reshape(dim, dim)
    overlap = abs(np.trace(amp)) ** 2 / dim
    if overlap < 1.0 - 1e-10:
        raise ResourceError("teleportation is defined only for the maximally "
                            f"entangled resource |phi_{dim}>; overlap^2 = {overlap:.6f}")

    rest_labels = [lab for lab in layout.labels if lab != x_label]
    total = tensor(state, resource.to_density())
    total = permute(total, [x_label, ra, rb] + rest_labels)
    rest_dim = math.prod(layout.dim_of(lab) for lab in rest_labels)

    phi = np.zeros(dim * dim, dtype=np.complex128)
    phi[:: dim + 1] = 1.0 / math.sqrt(dim)
    shift = _shift(dim)
    clock = _clock(dim)
    eye_tail = np.eye(dim * rest_dim)
    eye_rest = np.eye(rest_dim)

    out = np.zeros((dim * rest_dim, dim * rest_dim), dtype=np.complex128)
    rho = total.entries
    for a in range(dim):
        for b in range(dim):
            u = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            bell = (np.kron(u, np.eye(dim)) @ phi).conj().reshape(1, -1)
            kraus = np.kron(u, eye_rest) @ np.kron(bell, eye_tail)
            out += kraus @ rho @ kraus.conj().T
    out_layout = TensorLayout(((rb, dim),)
                              + tuple(f for f in layout.factors if f[0] != x_label))
    result = DensityOperator(out_layout, out)
    result = permute(result, rest_labels + [rb])
    return TeleportResult(state=result, resource_consumed=True, branches=dim * dim)


# --- concentration -----------------------------------------------------

def log2_multinomial(counts) -> float:
    """log2 of n!/prod_i k_i! via log-gamma."""
    counts = np.asarray(counts, dtype=np.float64)
    n = counts.sum()
    return float((gammaln(n + 1.0) - gammaln(counts + 1.0).sum()) / _LOG2)


def type_log2_dim(spectrum: SchmidtSpectrum, counts) -> float:
    """log2 dimension of the type class picked out by a label occupation
    vector: the strings sharing the type have equal coefficients, so the
    class concentrates a maximally entangled state of multinomial size."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.shape != (spectrum.num_labels,):
        raise SpecError(f"counts shape {counts.shape} does not match the "
                        f"{spectrum.num_labels} spectrum labels")
    if counts.min(initial=0) < 0:
        raise SpecError("occupation numbers must be nonnegative")
    return log2_multinomial(counts)


@dataclass(frozen=True)
class ConcentrationOutcome:
    """One type-measurement outcome: label occupation vector, log2 of
    the concentrated maximally-entangled dimension, and its probability
    (or empirical weight in sampling mode)."""

    counts: tuple[int, ...]
    log2_dim: float
    probability: float

    def __post_init__(self):
        if self.log2_dim < -1e-12:
            raise SpecError("log2_dim must be nonnegative")
        if not (-1e-12 <= self.probability <= 1.0 + 1e-12):
            raise SpecError(f"probability {self.probability} outside [0, 1]")


@dataclass
class SchmidtTypeState:
    """n copies of a pure state tracked at the Schmidt-type level.

    Before measurement the occupation vector is all zeros and
    ``collapsed`` is False; ``measure`` samples a type, records it, and
    returns the corresponding outcome.
    """

    spectrum: SchmidtSpectrum
    n: int
    counts: tuple[int, ...] = field(default=())
    collapsed: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise SpecError(f"copy count must be >= 1, got {self.n}")
        if not self.counts:
            self.counts = tuple([0] * self.spectrum.num_labels)
        if self.collapsed:
            if sum(self.counts) != self.n:
                raise SpecError("collapsed type state must have counts summing to n")
        elif any(self.counts):
            raise SpecError("uncollapsed type state must have all-zero counts")

    def measure(self, rng: np.random.Generator) -> ConcentrationOutcome:
        if self.collapsed:
            raise SpecError("type state already collapsed")
        counts = sample_type(self.spectrum, self.n, rng)
        self.counts = tuple(int(c) for c in counts)
        self.collapsed = True
        return ConcentrationOutcome(
            counts=self.counts,
            log2_dim=type_log2_dim(self.spectrum, counts),
            probability=1.0)


def sample_type(spectrum: SchmidtSpectrum, n: int, rng) -> np.ndarray:
    """Draw one label occupation vector (multinomial over the label
    probabilities; for the two-valued psi spectrum this is k0 ~
    Binomial(n, lambda) with the rest uniform over the tail labels)."""
    if n < 1:
        raise SpecError(f"copy count must be >= 1, got {n}")
    if isinstance(rng, (int, np.integer)):
        rng = rng_from(int(rng), "sample-type")
    return rng.multinomial(n, spectrum.label_probabilities())


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _count_compositions(total: int, parts: int) -> int:
    return math.comb(total + parts - 1, parts - 1)


def concentration_distribution(spectrum: SchmidtSpectrum, n: int,
                               mode: str = "auto", samples: int = 100_000,
                               seed: int = 0) -> tuple[ConcentrationOutcome, ...]:
    """Full outcome distribution of the type measurement on n copies.

    Exact mode enumerates all label types (refused beyond ~1e6 types:
    ModeError points to sampling); sampling mode aggregates ``samples``
    seeded draws into empirical weights. Probabilities sum to 1 either
    way.
    """
    if n < 1:
        raise SpecError(f"copy count must be >= 1, got {n}")
    if mode not in ("auto", "exact", "sample"):
        raise SpecError(f"unknown mode {mode!r}")
    d = spectrum.num_labels
    n_types = _count_compositions(n, d)
    exact_ok = n_types <= _MAX_EXACT_TYPES
    if mode == "exact" and not exact_ok:
        raise ModeError(f"{n_types} label types exceed the exact-enumeration cap "
                        f"{_MAX_EXACT_TYPES}; use sampling mode")
    use_exact = exact_ok if mode == "auto" else (mode == "exact")

    label_p = spectrum.label_probabilities()
    if use_exact:
        counts = np.array(list(_compositions(n, d)), dtype=np.int64)
        with np.errstate(divide="ignore"):
            logp_labels = np.where(label_p > 0.0, np.log(label_p), -np.inf)
        mass = counts @ np.where(np.isfinite(logp_labels), logp_labels, 0.0)
        impossible = ((counts > 0) & ~np.isfinite(logp_labels)).any(axis=1)
        logw = gammaln(n + 1.0) - gammaln(counts + 1.0).sum(axis=1)
        weights = np.where(impossible, 0.0, np.exp(logw + mass))
        l2dim = logw / _LOG2
    else:
        rng = rng_from(seed, "concentration-distribution", n, samples)
        draws = rng.multinomial(n, label_p, size=samples)
        counts, freq = np.unique(draws, axis=0, return_counts=True)
        weights = freq / samples
        l2dim = (gammaln(n + 1.0) - gammaln(counts + 1.0).sum(axis=1)) / _LOG2

    outcomes = []
    for row, bits, w in zip(counts, l2dim, weights):
        if w == 0.0:
            continue
        outcomes.append(ConcentrationOutcome(
            counts=tuple(int(c) for c in row),
            log2_dim=float(max(bits, 0.0)),
            probability=float(w)))
    return tuple(outcomes)


@dataclass(frozen=True)
class SuccessEstimate:
    """P(log2_dim >= target). Exact estimates carry a degenerate
    interval; sampled ones a 99% Wilson interval."""

    estimate: float
    ci_low: float
    ci_high: float
    exact: bool
    samples: int | None = None


def _wilson(successes: int, trials: int, z: float = _WILSON_Z_99):
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials
                         + z * z / (4 * trials * trials)) / denom
    return max(center - half, 0.0), min(center + half, 1.0)


def concentration_success_prob(spectrum: SchmidtSpectrum, n: int,
                               target_log2_dim: float, mode: str = "auto",
                               samples: int = 200_000, seed: int = 0,
                               ) -> SuccessEstimate:
    """Probability that the type measurement concentrates at least
    ``target_log2_dim`` bits of entanglement.

    Exact mode sums the multinomial weights of all label types meeting
    the target (same ~1e6-type cap as the distribution); sampling mode
    returns the empirical frequency with a 99% Wilson interval.
    """
    if n < 1:
        raise SpecError(f"copy count must be >= 1, got {n}")
    if mode not in ("auto", "exact", "sample"):
        raise SpecError(f"unknown mode {mode!r}")
    d = spectrum.num_labels
    n_types = _count_compositions(n, d)
    exact_ok = n_types <= _MAX_EXACT_TYPES
    if mode == "exact" and not exact_ok:
        raise ModeError(f"{n_types} label types exceed the exact-enumeration cap "
                        f"{_MAX_EXACT_TYPES}; use sampling mode")
    use_exact = exact_ok if mode == "auto" else (mode == "exact")

    if use_exact:
        p = _exact_success_prob(spectrum, n, float(target_log2_dim))
        return SuccessEstimate(estimate=p, ci_low=p, ci_high=p, exact=True)
    rng = rng_from(seed, "concentration-success", n, samples)
    draws = rng.multinomial(n, spectrum.label_probabilities(), size=samples)
    l2dim = (gammaln(n + 1.0) - gammaln(draws + 1.0).sum(axis=1)) / _LOG2
    wins = int((l2dim >= target_log2_dim - 1e-9).sum())
    lo, hi = _wilson(wins, samples)
    return SuccessEstimate(estimate=wins / samples, ci_low=lo, ci_high=hi,
                           exact=False, samples=samples)


@lru_cache(maxsize=256)
def _exact_success_cached(values: tuple, n: int, target: float) -> float:
    spectrum = SchmidtSpectrum(values=values)
    label_p = spectrum.label_probabilities()
    counts = np.array(list(_compositions(n, spectrum.num_labels)),
                      dtype=np.int64)
    logw = gammaln(n + 1.0) - gammaln(counts + 1.0).sum(axis=1)
    l2dim = logw / _LOG2
    with np.errstate(divide="ignore"):
        logp = np.where(label_p > 0.0, np.log(label_p), -np.inf)
    lin = counts @ np.where(np.isfinite(logp), logp, 0.0)
    impossible = ((counts > 0) & ~np.isfinite(logp)).any(axis=1)
    p = np.where(impossible | (l2dim < target - 1e-9), 0.0,
                 np.exp(logw + lin)).sum()
    return float(min(max(p, 0.0), 1.0))


def _exact_success_prob(spectrum: SchmidtSpectrum, n: int,
                        target: float) -> float:
    # memoized: block strategies re-ask for the same (spectrum, n, target)
    return _exact_success_cached(spectrum.values, n, target)


@dataclass(frozen=True)
class FailureExponentFit:
    """Least-squares fit of ln(1 - P_n) ~ a - b n; ``bits_per_copy`` is
    b / ln 2. Reported as an empirical observation, not a claimed rate."""

    n_list: tuple[int, ...]
    failure_probs: tuple[float, ...]
    bits_per_copy: float
    intercept_nats: float


def failure_exponent_fit(spectrum: SchmidtSpectrum, target_bits_per_copy: float,
                         n_list) -> FailureExponentFit:
    """Fit the exponential decay of the concentration failure
    probability at a fixed per-copy target rate."""
    n_arr = [int(n) for n in n_list]
    fails = []
    for n in n_arr:
        est = concentration_success_prob(spectrum, n, target_bits_per_copy * n)
        fails.append(max(1.0 - est.estimate, 0.0))
    pts = [(n, f) for n, f in zip(n_arr, fails) if f > 0.0]
    if len(pts) < 2:
        raise DomainError("need at least two nonzero failure probabilities to fit "
                          "an exponent; lower the target or shrink n")
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.log([p[1] for p in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    return FailureExponentFit(n_list=tuple(n_arr), failure_probs=tuple(fails),
                              bits_per_copy=float(-slope / _LOG2),
                              intercept_nats=float(intercept))
