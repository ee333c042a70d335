"""LWE instance generation: secrets, bounded error draws, sample streams.

Ground truth (the secret and each sample's error term) is carried for
the measurement harness only. Solver-facing code must consume just the
(a, b) pair of a sample; the serialized sample format enforces this by
construction, keeping the secret in a separate sidecar file and never
writing error terms at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundTooLarge, InvalidLength
from .fq import PrimeField, mat_vec

UNIFORM = "uniform"
GAUSSIAN = "gaussian"
_KINDS = (UNIFORM, GAUSSIAN)


@dataclass(frozen=True)
class ErrorDistribution:
    """Noise law on the integer window [-xi, xi].

    kind "uniform" draws each value with equal weight; "gaussian" draws
    proportionally to exp(-eta^2 / (2 sigma^2)) truncated to the window,
    with sigma defaulting to xi / 3.
    """

    kind: str
    xi: int
    sigma: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.xi < 0:
            raise ValueError(f"xi must be non-negative, got {self.xi}")
        if self.kind == GAUSSIAN:
            if self.sigma is None:
                object.__setattr__(self, "sigma", self.xi / 3 if self.xi > 0 else 1.0)
            elif self.sigma <= 0:
                raise ValueError(f"sigma must be positive, got {self.sigma}")

    def weights(self) -> np.ndarray:
        """Unnormalized weight of each eta in [-xi, xi], in window order."""
        etas = np.arange(-self.xi, self.xi + 1, dtype=np.int64)
        if self.kind == UNIFORM:
            return np.ones_like(etas, dtype=float)
        return np.exp(-(etas.astype(float) ** 2) / (2.0 * self.sigma**2))


@dataclass(frozen=True)
class Sample:
    """One LWE sample; `eta` is ground truth visible to the harness only."""

    a: np.ndarray
    b: int
    eta: int


@dataclass(frozen=True)
class LweInstance:
    n: int
    q: int
    s: np.ndarray
    chi: ErrorDistribution

    @property
    def xi(self) -> int:
        return self.chi.xi

    @property
    def alpha(self) -> float:
        """Relative error rate xi / q."""
        return self.chi.xi / self.q


def gen_secret(n: int, q: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform secret in F_q^n."""
    PrimeField(q)
    if n < 1:
        raise InvalidLength(f"n must be at least 1, got {n}")
    return rng.integers(0, q, size=n, dtype=np.int64)


def make_instance(n: int, q: int, chi: ErrorDistribution, rng: np.random.Generator) -> LweInstance:
    if 2 * chi.xi >= q:
        raise BoundTooLarge(f"xi={chi.xi} does not fit below q/2 for q={q}")
    return LweInstance(n=n, q=q, s=gen_secret(n, q, rng), chi=chi)


def sample_error(chi: ErrorDistribution, rng: np.random.Generator) -> int:
    """One draw from chi; gaussian uses rejection on the bounded window."""
    if chi.kind == UNIFORM:
        return int(rng.integers(-chi.xi, chi.xi + 1))
    two_s2 = 2.0 * chi.sigma**2
    while True:
        eta = int(rng.integers(-chi.xi, chi.xi + 1))
        if rng.random() < math.exp(-(eta * eta) / two_s2):
            return eta


def sample_errors(chi: ErrorDistribution, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized draws with the same law as sample_error (not the same stream)."""
    if chi.kind == UNIFORM:
        return rng.integers(-chi.xi, chi.xi + 1, size=size, dtype=np.int64)
    two_s2 = 2.0 * chi.sigma**2
    out = np.empty(size, dtype=np.int64)
    filled = 0
    while filled < size:
        need = size - filled
        cand = rng.integers(-chi.xi, chi.xi + 1, size=need, dtype=np.int64)
        keep = cand[rng.random(need) < np.exp(-(cand.astype(float) ** 2) / two_s2)]
        out[filled : filled + keep.size] = keep
        filled += keep.size
    return out


def gen_sample(instance: LweInstance, rng: np.random.Generator) -> Sample:
    a = rng.integers(0, instance.q, size=instance.n, dtype=np.int64)
    eta = sample_error(instance.chi, rng)
    b = int((int(mat_vec(a, instance.s, instance.q)) + eta) % instance.q)
    # Ground-truth identity checked on every generated sample.
    assert abs(eta) <= instance.chi.xi
    assert (b - int(mat_vec(a, instance.s, instance.q))) % instance.q == eta % instance.q
    return Sample(a=a, b=b, eta=eta)


def gen_samples(instance: LweInstance, rng: np.random.Generator, count: int) -> list[Sample]:
    return [gen_sample(instance, rng) for _ in range(count)]


def write_samples(path: str | Path, instance: LweInstance, samples: Iterable[Sample], seed: int) -> None:
    """Line-oriented dump: header `n q xi kind seed`, then `a_0 .. a_{n-1} b`.

    Error terms are deliberately not written; the secret goes into a
    sidecar via write_secret.
    """
    with open(path, "w") as fh:
        fh.write(f"{instance.n} {instance.q} {instance.chi.xi} {instance.chi.kind} {seed}\n")
        for s in samples:
            fh.write(" ".join(str(int(v)) for v in s.a) + f" {int(s.b)}\n")


def read_samples(path: str | Path) -> tuple[dict, list[tuple[np.ndarray, int]]]:
    """Parse a sample dump; returns (header, [(a, b), ...])."""
    with open(path) as fh:
        head = fh.readline().split()
        if len(head) != 5:
            raise InvalidLength(f"bad header in {path}: expected 5 fields, got {len(head)}")
        header = {
            "n": int(head[0]),
            "q": int(head[1]),
            "xi": int(head[2]),
            "kind": head[3],
            "seed": int(head[4]),
        }
        pairs = []
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) != header["n"] + 1:
                raise InvalidLength(f"bad sample line in {path}: {line.rstrip()!r}")
            pairs.append((np.array(parts[:-1], dtype=np.int64), int(parts[-1])))
    return header, pairs


def write_secret(path: str | Path, instance: LweInstance) -> None:
    with open(path, "w") as fh:
        fh.write(" ".join(str(int(v)) for v in instance.s) + "\n")


def read_secret(path: str | Path) -> np.ndarray:
    with open(path) as fh:
        return np.array(fh.readline().split(), dtype=np.int64)


def samples_to_arrays(samples: Sequence[Sample], q: int) -> tuple[np.ndarray, np.ndarray]:
    """Stack the public parts of samples into (A, b) arrays mod q."""
    a = np.stack([s.a for s in samples]).astype(np.int64) % q
    b = np.array([s.b for s in samples], dtype=np.int64) % q
    return a, b
