"""Closed-form probabilities, bounds, baselines, and cost bookkeeping.

Everything here is an independent route to a number the simulator can
also produce empirically: the exact per-shot success probability of a
batch, its analytic lower bound, the wrong-accept and overall-success
bounds, the classical direct-candidate baseline, and the query-cost
table for the four memory layouts. Keeping these routes separate from
the statevector path is the point; tests compare them, they never feed
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidLength, InvariantViolation
from .fq import PrimeField
from .instance import ErrorDistribution, LweInstance, sample_error
from .reduce import ReducedBatch, ReducedPair
from .solver import (
    OUTCOME_FAILURE,
    OUTCOME_SUCCESS,
    OUTCOME_WRONG_ACCEPT,
    CoordinateStats,
    SolveOutcome,
)
from .verify import m_trial_test

SCHEME_PRIMITIVE = "primitive"
SCHEME_BUCKET = "bucket_brigade"
FORM_FULL = "full"
FORM_DIVIDED = "divided"


@dataclass(frozen=True)
class BoundReport:
    q: int
    xi_prime: int
    gamma: float
    batch_size: int
    exact_p: float
    lower_bound: float
    violated: bool


class WrongAcceptBound(NamedTuple):
    approx: float  # L * (2 kappa alpha)^M
    exact: float  # L * ((2 xi' + 1)/q)^M


def exact_success_probability(batch: ReducedBatch, s_j: int | None = None) -> float:
    """Probability that one shot lands on the correlated ridge k_d = -s_j k*.

    Computed from the batch's ground-truth errors by direct summation:
    (1/(q^2 m)) * sum_{k*} |sum_{a'} w^{eta'(a') k*}|^2. The k* = 0 term
    is included, so a noiseless full-field batch scores exactly 1.

    Passing s_j cross-checks the batch against the claimed secret
    coordinate first; the value itself never enters the sum, since the
    ridge mass depends only on the stored errors.
    """
    q, m = batch.q, batch.size
    if s_j is not None:
        implied = (batch.a_values * (int(s_j) % q) + batch.eta_values) % q
        if not np.array_equal(implied, batch.b_values % q):
            raise InvariantViolation(
                f"batch is inconsistent with s_j={int(s_j)}: b' != a' s_j + eta' mod {q}"
            )
    ks = np.arange(q, dtype=np.int64)
    phases = np.exp(2j * np.pi * (np.outer(batch.eta_values, ks) % q) / q)
    inner = phases.sum(axis=0)
    return float((np.abs(inner) ** 2).sum() / (q * q * m))


def restricted_ridge_sum(batch: ReducedBatch, gamma: float) -> float:
    """Partial ridge mass over k* = 0 .. floor(gamma q / xi').

    Keeps only the squared real part of each term, which is the middle
    step of the lower-bound chain; useful for term-by-term comparison
    when a bound looks tight.
    """
    q, m = batch.q, batch.size
    if batch.xi_prime < 1:
        raise InvalidLength("restricted sum needs xi' >= 1")
    k_max = math.floor(gamma * q / batch.xi_prime)
    ks = np.arange(0, min(k_max, q - 1) + 1, dtype=np.int64)
    re = np.cos(2 * np.pi * (np.outer(batch.eta_values, ks) % q) / q).sum(axis=0)
    return float((re**2).sum() / (q * q * m))


def lower_bound_p(gamma: float, batch_size: int, xi_prime: int, q: int) -> float:
    """Analytic floor gamma * m * cos^2(2 pi gamma) / (xi' q) on the ridge mass.

    Valid for 0 <= gamma < 1/4 and xi' >= 1; gamma = 0 keeps no k*
    window at all and the bound degenerates to 0.
    """
    if not 0 <= gamma < 0.25:
        raise ValueError(f"gamma must lie in [0, 1/4), got {gamma}")
    if xi_prime < 1:
        raise ValueError(f"lower bound needs xi' >= 1, got {xi_prime}")
    if not 1 <= batch_size <= q:
        raise InvalidLength(f"batch size {batch_size} out of range for q={q}")
    return gamma * batch_size * math.cos(2 * math.pi * gamma) ** 2 / (xi_prime * q)


def bound_report(batch: ReducedBatch, gamma: float) -> BoundReport:
    exact = exact_success_probability(batch)
    bound = lower_bound_p(gamma, batch.size, batch.xi_prime, batch.q)
    return BoundReport(
        q=batch.q,
        xi_prime=batch.xi_prime,
        gamma=gamma,
        batch_size=batch.size,
        exact_p=exact,
        lower_bound=bound,
        violated=bool(exact < bound - 1e-10),
    )


def prob_iii_bound(l_budget: int, kappa: float, alpha: float, m: int, q: int) -> WrongAcceptBound:
    """Wrong-accept probability bound after L candidates of M trials each.

    Returns the reporting approximation L * (2 kappa alpha)^M next to
    the exact-count form L * ((2 xi' + 1)/q)^M.
    """
    if l_budget < 1 or m < 1:
        raise ValueError("L and M must be at least 1")
    xi_prime = round(kappa * alpha * q)
    if abs(kappa * alpha * q - xi_prime) > 1e-9:
        raise ValueError(f"kappa * alpha * q = {kappa * alpha * q} is not an integer bound")
    return WrongAcceptBound(
        approx=l_budget * (2 * kappa * alpha) ** m,
        exact=l_budget * ((2 * xi_prime + 1) / q) ** m,
    )


def prob_i_bound(delta: float, n: int) -> float:
    """Floor (1 - delta/n)^n on the all-coordinates success probability."""
    if n < 1:
        raise InvalidLength(f"n must be at least 1, got {n}")
    if not 0 < delta < n:
        raise ValueError(f"delta must lie in (0, n), got {delta}")
    return (1 - delta / n) ** n


def baseline_coordinate_rate(chi_prime: ErrorDistribution) -> float:
    """Exact single-draw success rate of the direct candidate: P(eta' = 0)."""
    weights = chi_prime.weights()
    return float(weights[chi_prime.xi] / weights.sum())


def classical_baseline_solve(
    instance: LweInstance,
    kappa: float,
    m: int,
    trial_budget: int,
    rng: np.random.Generator,
) -> SolveOutcome:
    """Classical control: read the candidate straight off one reduced pair.

    Per coordinate, each of up to trial_budget attempts draws a single
    pair (a', a' s_j + eta') with the amplified bound, takes
    s~ = b' * a'^-1, and runs the same M-trial residual test the
    quantum path uses. The candidate is correct only when eta'
    vanished, so with uniform errors the per-coordinate rate is
    1/(2 xi' + 1) and the full-solve rate decays geometrically in n.
    """
    if trial_budget < 1:
        raise ValueError(f"trial_budget must be at least 1, got {trial_budget}")
    q, n = instance.q, instance.n
    field = PrimeField(q)
    xi_prime = round(kappa * instance.xi)
    chi_prime = ErrorDistribution(instance.chi.kind, xi_prime)
    coeff = math.ceil(kappa) if instance.xi > 0 else 0
    coord_rngs = rng.spawn(n)
    per_coordinate: list[CoordinateStats] = []
    values: list[int | None] = []
    for j in range(n):
        crng = coord_rngs[j]
        s_j = int(instance.s[j])

        def test_source() -> ReducedPair:
            t = int(crng.integers(1, q))
            eta = sample_error(chi_prime, crng)
            return ReducedPair(
                a_prime=t, b_prime=(t * s_j + eta) % q, eta_prime=eta, coeff_l1=coeff, q=q
            )

        stats = CoordinateStats(j=j)
        for _ in range(trial_budget):
            a_prime = int(crng.integers(1, q))
            eta = sample_error(chi_prime, crng)
            b_prime = (a_prime * s_j + eta) % q
            cand = b_prime * field.inv(a_prime) % q
            stats.shots += 1
            stats.candidates_tried += 1
            verdict = m_trial_test(cand, m, xi_prime, test_source)
            stats.tests_used += verdict.trials_used
            if verdict.accepted:
                stats.accepted_value = cand
                break
            if cand == s_j:
                stats.true_rejections += 1
        per_coordinate.append(stats)
        values.append(stats.accepted_value)

    quantum_samples = 0  # the baseline never touches the kernel
    test_samples = sum(st.tests_used for st in per_coordinate)
    if any(v is None for v in values):
        return SolveOutcome(OUTCOME_FAILURE, None, per_coordinate, quantum_samples, test_samples)
    returned = np.array(values, dtype=np.int64)
    outcome = OUTCOME_SUCCESS if np.array_equal(returned, instance.s % q) else OUTCOME_WRONG_ACCEPT
    return SolveOutcome(outcome, returned, per_coordinate, quantum_samples, test_samples)


def qram_cost(q: int, n: int, d: int, scheme: str, sample_form: str) -> float:
    """Query cost of one memory access for the four layout combinations.

    full + primitive scales as q^(n/d); full + bucket_brigade as
    n log2 q; divided + primitive as q^(1/d); divided + bucket_brigade
    as log2 q. Constants are taken as 1.
    """
    if q < 2 or n < 1 or d < 1:
        raise InvalidLength(f"need q >= 2, n >= 1, d >= 1; got q={q}, n={n}, d={d}")
    if sample_form == FORM_FULL:
        if scheme == SCHEME_PRIMITIVE:
            return float(q ** (n / d))
        if scheme == SCHEME_BUCKET:
            return float(n * math.log2(q))
    elif sample_form == FORM_DIVIDED:
        if scheme == SCHEME_PRIMITIVE:
            return float(q ** (1 / d))
        if scheme == SCHEME_BUCKET:
            return float(math.log2(q))
    raise ValueError(f"unknown scheme/sample_form combination ({scheme!r}, {sample_form!r})")
