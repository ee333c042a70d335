"""Reduction of n-dimensional LWE samples to single-coordinate pairs.

A reduced pair fixes one coordinate j of the secret: it looks like a
one-dimensional sample (a', a' * s_j + eta') where eta' is the original
noise pushed through an integer combination of samples. Combining rows
amplifies the error bound by the L1 norm of the centered combination
coefficients, so each pair records that norm and batches record the
worst case over their pairs.

Two ways to build a batch:

- elimination: invert the stacked sample matrix and combine real
  samples; the amplification is whatever the elimination produced, and
  it is measured, never assumed.
- controlled: synthesize pairs whose errors are drawn directly within a
  declared bound xi', so probability statements downstream can be
  checked in isolation from the elimination's amplification behavior.

Batches store their pairs as parallel arrays (the simulator and the
analysis oracles consume them whole); `pairs()` materializes individual
ReducedPair values when object-level access reads better.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    BoundTooLarge,
    DegenerateTest,
    DuplicateInput,
    InvalidLength,
    InvariantViolation,
    SingularMatrix,
)
from .fq import PrimeField, mat_inverse
from .instance import LweInstance, Sample, gen_samples, sample_errors, samples_to_arrays


@dataclass(frozen=True)
class ReducedPair:
    a_prime: int
    b_prime: int
    eta_prime: int  # ground truth, harness only
    coeff_l1: int
    q: int


@dataclass(frozen=True)
class ReducedBatch:
    j: int
    q: int
    a_values: np.ndarray
    b_values: np.ndarray
    eta_values: np.ndarray  # ground truth, harness only
    coeff_l1_values: np.ndarray
    xi_prime: int
    kappa: float

    def __post_init__(self):
        m = self.a_values.size
        if m == 0:
            raise InvalidLength("batch needs at least one pair")
        if m > self.q:
            raise InvalidLength(f"batch of {m} pairs exceeds field size {self.q}")
        if not (self.b_values.size == self.eta_values.size == self.coeff_l1_values.size == m):
            raise InvalidLength("batch arrays disagree on length")
        if np.unique(self.a_values).size != m:
            raise DuplicateInput("batch inputs a' must be distinct")
        if int(np.abs(self.eta_values).max()) > self.xi_prime:
            raise InvariantViolation("batch error exceeds declared bound xi'")

    @property
    def size(self) -> int:
        return int(self.a_values.size)

    def pairs(self) -> list[ReducedPair]:
        return [
            ReducedPair(
                a_prime=int(a),
                b_prime=int(b),
                eta_prime=int(e),
                coeff_l1=int(c),
                q=self.q,
            )
            for a, b, e, c in zip(
                self.a_values, self.b_values, self.eta_values, self.coeff_l1_values
            )
        ]


def _input_array(v: Iterable[int], q: int) -> np.ndarray:
    """Sorted distinct inputs mod q from any iterable."""
    if isinstance(v, (set, frozenset)):
        v = list(v)
    arr = np.sort(np.asarray(v, dtype=np.int64) % q)
    if arr.size == 0:
        raise InvalidLength("v must be nonempty")
    if arr.size > 1 and (arr[1:] == arr[:-1]).any():
        raise DuplicateInput("v contains repeated inputs")
    return arr


def _combine(samples: Sequence[Sample], j: int, target: int, secret: np.ndarray, q: int) -> ReducedPair:
    field = PrimeField(q)
    n = len(samples)
    a, b = samples_to_arrays(samples, q)
    if a.shape != (n, n):
        raise InvalidLength(f"need n samples of dimension n, got shape {a.shape}")
    if not 0 <= j < n:
        raise InvalidLength(f"coordinate {j} out of range for n={n}")
    row = mat_inverse(a, q)[j]
    c = target * row % q
    b_prime = int((c * b % q).sum() % q)
    eta_prime = field.centered(b_prime - target * int(secret[j]))
    coeff_l1 = int(np.abs(field.centered_array(c)).sum())
    return ReducedPair(a_prime=target, b_prime=b_prime, eta_prime=eta_prime, coeff_l1=coeff_l1, q=q)


def reduce_to_coordinate(
    samples: Sequence[Sample], j: int, a_target: int, secret: np.ndarray, q: int
) -> ReducedPair:
    """Combine n samples into one pair for coordinate j with input a_target.

    The combination is a_target times row j of the inverse sample
    matrix, so b' = a_target * s_j + eta' where eta' is the same
    combination applied to the hidden errors. The pair's eta_prime is
    recovered from the ground-truth secret for harness use only.
    """
    return _combine(samples, j, int(a_target) % q, secret, q)


def make_test_sample(
    samples: Sequence[Sample], j: int, t_target: int, secret: np.ndarray, q: int
) -> ReducedPair:
    """Deterministic test pair (t, t * s_j + eta') for candidate checking.

    t = 0 would reduce to a pure noise sample and is rejected.
    """
    t = int(t_target) % q
    if t == 0:
        raise DegenerateTest("test input t = 0 carries no information")
    return _combine(samples, j, t, secret, q)


def synth_reduced_batch(
    s_j: int,
    q: int,
    v: Iterable[int],
    xi_prime: int,
    chi_prime,
    rng: np.random.Generator,
    *,
    j: int = 0,
    xi: int = 1,
) -> ReducedBatch:
    """Controlled-mode batch over inputs v with errors drawn from chi_prime.

    Every error honors |eta'| <= xi_prime by construction; the recorded
    amplification is the ratio of xi_prime to the reference bound xi.
    """
    if xi_prime < 0 or 2 * xi_prime >= q:
        raise BoundTooLarge(f"xi'={xi_prime} does not fit below q/2 for q={q}")
    if chi_prime.xi > xi_prime:
        raise BoundTooLarge(f"chi bound {chi_prime.xi} exceeds declared xi'={xi_prime}")
    a_values = _input_array(v, q)
    eta_values = sample_errors(chi_prime, rng, a_values.size)
    b_values = (a_values * (int(s_j) % q) + eta_values) % q
    kappa = xi_prime / xi if xi > 0 else 1.0
    coeff = math.ceil(kappa) if xi > 0 else 0
    return ReducedBatch(
        j=j,
        q=q,
        a_values=a_values,
        b_values=b_values,
        eta_values=eta_values,
        coeff_l1_values=np.full(a_values.size, coeff, dtype=np.int64),
        xi_prime=int(xi_prime),
        kappa=kappa,
    )


def elimination_batch(
    instance: LweInstance,
    j: int,
    v: Iterable[int],
    rng: np.random.Generator,
    *,
    max_redraws: int = 64,
) -> ReducedBatch:
    """Batch for coordinate j built from n fresh samples by elimination.

    One invertible sample matrix serves the whole batch: each input a'
    in v is pushed through the same inverse row, so its error is that
    row's combined noise scaled by a'. The batch bound xi' is the
    measured worst-case amplification times the instance bound.
    """
    q, n = instance.q, instance.n
    field = PrimeField(q)
    for _ in range(max_redraws):
        samples = gen_samples(instance, rng, n)
        a, b = samples_to_arrays(samples, q)
        try:
            inv = mat_inverse(a, q)
        except SingularMatrix:
            continue
        break
    else:
        raise SingularMatrix(f"no invertible sample matrix in {max_redraws} draws")

    a_values = _input_array(v, q)
    row = inv[j]
    combos = a_values[:, None] * row[None, :] % q  # one combination per a'
    b_values = (combos * b[None, :] % q).sum(axis=1) % q
    eta_values = field.centered_array(b_values - a_values * int(instance.s[j]))
    coeff_l1_values = np.abs(field.centered_array(combos)).sum(axis=1)
    kappa = int(coeff_l1_values.max())
    return ReducedBatch(
        j=j,
        q=q,
        a_values=a_values,
        b_values=b_values,
        eta_values=eta_values,
        coeff_l1_values=coeff_l1_values,
        xi_prime=kappa * instance.xi,
        kappa=float(kappa),
    )


def kappa_observed(batch: ReducedBatch) -> int:
    """Worst-case measured amplification across the batch."""
    return int(batch.coeff_l1_values.max())


def dump_batch(batch: ReducedBatch, fh: TextIO) -> None:
    """One line per pair: `a_prime b_prime eta_prime coeff_l1`."""
    for a, b, e, c in zip(batch.a_values, batch.b_values, batch.eta_values, batch.coeff_l1_values):
        fh.write(f"{int(a)} {int(b)} {int(e)} {int(c)}\n")
