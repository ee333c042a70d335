"""Coordinate-by-coordinate secret recovery with retry and test budgets.

Each coordinate j gets up to L shots. A shot draws a fresh reduced
batch, pushes it through the transform kernel, measures, and extracts a
candidate; a null outcome (k* = 0) consumes the shot. Candidates face
an M-trial residual test and the first accepted one settles the
coordinate. A run is classified against the ground-truth secret as
success (all coordinates correct), failure (some coordinate never
accepted a candidate), or wrong_accept (a full vector was returned but
some coordinate is wrong).

Budgets follow the retry calculus: with per-shot success probability at
least C/xi' (C = gamma * cos^2(2*pi*gamma)) the coordinate-failure rate
drops below delta/n at L = ceil((xi'/C) * ln(n/delta)); M is the least
trial count pushing the false-accept union bound L*((2*xi'+1)/q)^M
under delta/n.

Shot measurement uses the factored sampler by default; dense=True
routes through the full statevector instead. The two paths draw from
identical distributions (tests pin this) so the choice is purely a
cost knob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InfeasibleParameters, InvariantViolation, SingularMatrix
from .fq import PrimeField
from .instance import ErrorDistribution, LweInstance, gen_samples, sample_error
from .qsim import bv_kernel, extract_candidate, measure, prepare_sample_state, sample_bv_outcome
from .reduce import (
    ReducedBatch,
    ReducedPair,
    elimination_batch,
    make_test_sample,
    synth_reduced_batch,
)
from .verify import m_trial_test

MODE_CONTROLLED = "controlled"
MODE_ELIMINATION = "elimination"

OUTCOME_SUCCESS = "success"
OUTCOME_FAILURE = "failure"
OUTCOME_WRONG_ACCEPT = "wrong_accept"

_MAX_M = 64

BatchSource = Callable[[], ReducedBatch]
TestSource = Callable[[], ReducedPair]


@dataclass(frozen=True)
class SolveParameters:
    gamma: float
    L: int
    M: int
    xi_prime: int
    C: float


@dataclass
class CoordinateStats:
    j: int
    shots: int = 0
    null_count: int = 0
    candidates_tried: int = 0
    tests_used: int = 0
    accepted_value: int | None = None
    true_rejections: int = 0  # harness counter; must stay 0 in controlled mode


@dataclass
class SolveOutcome:
    outcome: str
    returned_s: np.ndarray | None
    per_coordinate: list[CoordinateStats]
    quantum_samples: int
    test_samples: int


def choose_parameters(
    n: int, q: int, xi: int, kappa: float, delta: float, gamma: float = 0.125
) -> SolveParameters:
    """Derive (L, M, xi', C) for the requested failure budget delta.

    Raises InfeasibleParameters when the amplified bound does not fit
    under q/2, when the retry budget L would exceed q, or when no
    M <= 64 pushes the false-accept bound under delta/n.
    """
    if not 0 < gamma < 0.25:
        raise ValueError(f"gamma must lie in (0, 1/4), got {gamma}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    PrimeField(q)
    xi_prime_real = kappa * xi
    xi_prime = round(xi_prime_real)
    if abs(xi_prime_real - xi_prime) > 1e-9:
        raise InfeasibleParameters(f"kappa * xi = {xi_prime_real} is not an integer bound")
    if 2 * xi_prime >= q:
        raise InfeasibleParameters(f"amplified bound xi'={xi_prime} does not fit below q/2")
    c = gamma * math.cos(2 * math.pi * gamma) ** 2
    required = (xi_prime / c) * math.log(n / delta)
    l_budget = max(1, math.ceil(required))
    if l_budget > q:
        raise InfeasibleParameters(
            f"retry budget L={l_budget} exceeds q={q}; shrink xi' or relax delta"
        )
    per_trial = (2 * xi_prime + 1) / q
    target = delta / n
    for m in range(1, _MAX_M + 1):
        if l_budget * per_trial**m <= target:
            break
    else:
        raise InfeasibleParameters(f"no M <= {_MAX_M} reaches the false-accept target {target}")
    return SolveParameters(gamma=gamma, L=l_budget, M=m, xi_prime=xi_prime, C=c)


def controlled_sources(
    instance: LweInstance,
    j: int,
    params: SolveParameters,
    rng: np.random.Generator,
    v_size: int | None = None,
) -> tuple[BatchSource, TestSource]:
    """Synthesized batch and test-pair sources for coordinate j.

    Errors are drawn from the instance's noise kind rescaled to the
    amplified bound xi' (gaussian width defaults to xi'/3), so every
    batch honors |eta'| <= xi' by construction.
    """
    q = instance.q
    s_j = int(instance.s[j])
    chi_prime = ErrorDistribution(instance.chi.kind, params.xi_prime)
    all_inputs = np.arange(q, dtype=np.int64)
    coeff = math.ceil(params.xi_prime / instance.xi) if instance.xi > 0 else 0

    def batch_source() -> ReducedBatch:
        if v_size is None or v_size >= q:
            v = all_inputs
        else:
            v = rng.choice(q, size=v_size, replace=False)
        return synth_reduced_batch(
            s_j, q, v, params.xi_prime, chi_prime, rng, j=j, xi=instance.xi
        )

    def test_source() -> ReducedPair:
        t = int(rng.integers(1, q))
        eta = sample_error(chi_prime, rng)
        return ReducedPair(
            a_prime=t, b_prime=(t * s_j + eta) % q, eta_prime=eta, coeff_l1=coeff, q=q
        )

    return batch_source, test_source


def elimination_sources(
    instance: LweInstance,
    j: int,
    rng: np.random.Generator,
    v_size: int | None = None,
) -> tuple[BatchSource, TestSource]:
    """Batch and test-pair sources that eliminate fresh samples each call.

    Test pairs use sample sets disjoint from every batch's, since both
    consume the stream strictly forward.
    """
    q, n = instance.q, instance.n
    all_inputs = np.arange(q, dtype=np.int64)

    def batch_source() -> ReducedBatch:
        if v_size is None or v_size >= q:
            v = all_inputs
        else:
            v = rng.choice(q, size=v_size, replace=False)
        return elimination_batch(instance, j, v, rng)

    def test_source() -> ReducedPair:
        t = int(rng.integers(1, q))
        while True:
            samples = gen_samples(instance, rng, n)
            try:
                return make_test_sample(samples, j, t, instance.s, q)
            except SingularMatrix:
                continue

    return batch_source, test_source


def solve_coordinate(
    j: int,
    batch_source: BatchSource,
    test_source: TestSource,
    params: SolveParameters,
    rng: np.random.Generator,
    *,
    s_true: int | None = None,
    dense: bool = False,
    dedup: bool = False,
) -> tuple[int | None, CoordinateStats]:
    """Run up to L shots for coordinate j; return the accepted value or None.

    dedup=True skips retesting a candidate already rejected at this
    coordinate (the shot is still consumed). Off by default: retesting
    is statistically harmless and the bookkeeping is not free.
    """
    stats = CoordinateStats(j=j)
    rejected: set[int] = set()
    for _ in range(params.L):
        batch = batch_source()
        stats.shots += 1
        if dense:
            outcome = measure(bv_kernel(prepare_sample_state(batch)), rng)
        else:
            outcome = sample_bv_outcome(batch, rng)
        cand = extract_candidate(outcome, batch.q)
        if cand is None:
            stats.null_count += 1
            continue
        if dedup and cand in rejected:
            continue
        stats.candidates_tried += 1
        verdict = m_trial_test(cand, params.M, params.xi_prime, test_source)
        stats.tests_used += verdict.trials_used
        if verdict.accepted:
            stats.accepted_value = cand
            return cand, stats
        rejected.add(cand)
        if s_true is not None and cand == s_true:
            stats.true_rejections += 1
    return None, stats


def solve(
    instance: LweInstance,
    params: SolveParameters,
    mode: str,
    rng: np.random.Generator,
    *,
    v_size: int | None = None,
    dense: bool = False,
    dedup: bool = False,
) -> SolveOutcome:
    """Recover the full secret coordinate by coordinate and classify the run.

    Every coordinate owns an RNG stream spawned by index, so results do
    not depend on scheduling. The total quantum-sample count is checked
    against the n * L budget.
    """
    if mode not in (MODE_CONTROLLED, MODE_ELIMINATION):
        raise ValueError(f"mode must be {MODE_CONTROLLED!r} or {MODE_ELIMINATION!r}, got {mode!r}")
    n = instance.n
    coord_rngs = rng.spawn(n)
    per_coordinate: list[CoordinateStats] = []
    values: list[int | None] = []
    for j in range(n):
        crng = coord_rngs[j]
        if mode == MODE_CONTROLLED:
            batch_source, test_source = controlled_sources(instance, j, params, crng, v_size)
        else:
            batch_source, test_source = elimination_sources(instance, j, crng, v_size)
        value, stats = solve_coordinate(
            j,
            batch_source,
            test_source,
            params,
            crng,
            s_true=int(instance.s[j]),
            dense=dense,
            dedup=dedup,
        )
        per_coordinate.append(stats)
        values.append(value)

    quantum_samples = sum(st.shots for st in per_coordinate)
    test_samples = sum(st.tests_used for st in per_coordinate)
    if quantum_samples > n * params.L:
        raise InvariantViolation(
            f"consumed {quantum_samples} quantum samples against a budget of {n * params.L}"
        )
    if any(v is None for v in values):
        return SolveOutcome(
            outcome=OUTCOME_FAILURE,
            returned_s=None,
            per_coordinate=per_coordinate,
            quantum_samples=quantum_samples,
            test_samples=test_samples,
        )
    returned = np.array(values, dtype=np.int64)
    outcome = OUTCOME_SUCCESS if np.array_equal(returned, instance.s % instance.q) else OUTCOME_WRONG_ACCEPT
    return SolveOutcome(
        outcome=outcome,
        returned_s=returned,
        per_coordinate=per_coordinate,
        quantum_samples=quantum_samples,
        test_samples=test_samples,
    )
