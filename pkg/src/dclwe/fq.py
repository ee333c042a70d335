"""Arithmetic and dense linear algebra over a prime field.

Field elements are plain ints in [0, q); vectors and matrices are numpy
int64 arrays reduced mod q. Centered representatives live in the
symmetric window (-q/2, q/2], which for odd q is the integer range
[-(q-1)/2, (q-1)/2].

Supported moduli are odd primes with 3 <= q <= MODULUS_CEILING. The
ceiling keeps a product of two reduced values, plus a length-n
accumulation of such products, comfortably inside int64: routines here
reduce mod q before summing, so intermediate magnitudes stay below
n * q^2 < 2**63 for any realistic n.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidLength, InvalidModulus, SingularMatrix, ZeroInverse

MODULUS_CEILING = 1 << 25

# Witness set making Miller-Rabin deterministic far beyond the ceiling.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic context for one odd prime modulus."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        q = int(q)
        if q < 3 or q % 2 == 0 or not is_prime(q):
            raise InvalidModulus(f"q must be an odd prime, got {q}")
        if q > MODULUS_CEILING:
            raise InvalidModulus(f"q={q} exceeds the supported ceiling {MODULUS_CEILING}")
        self.q = q

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def inv(self, x: int) -> int:
        """Multiplicative inverse of x mod q (Fermat)."""
        x = int(x) % self.q
        if x == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(x, self.q - 2, self.q)

    def inverse_table(self) -> np.ndarray:
        """table[x] = x^-1 mod q for x in [1, q); table[0] = 0 as a sentinel."""
        table = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            table[x] = pow(x, self.q - 2, self.q)
        return table

    def centered(self, x: int) -> int:
        """Representative of x in (-q/2, q/2]."""
        h = self.q // 2
        return (int(x) + h) % self.q - h

    def centered_array(self, xs) -> np.ndarray:
        h = self.q // 2
        return (np.asarray(xs, dtype=np.int64) + h) % self.q - h

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


def centered(x: int, q: int) -> int:
    """Representative of x in (-q/2, q/2] without building a field object."""
    h = q // 2
    return (int(x) + h) % q - h


def mat_vec(a: np.ndarray, x: np.ndarray, q: int) -> np.ndarray:
    """a @ x mod q with per-term reduction before accumulation."""
    a = np.asarray(a, dtype=np.int64) % q
    x = np.asarray(x, dtype=np.int64) % q
    return (a * x % q).sum(axis=-1) % q


def mat_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64) % q
    b = np.asarray(b, dtype=np.int64) % q
    return np.einsum("ik,kj->ij", a, b) % q


def mat_inverse(a: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a square matrix mod q by Gauss-Jordan elimination.

    Pivoting picks the first nonzero entry in each column. Raises
    SingularMatrix when no pivot exists, InvalidModulus for a bad q.
    """
    field = PrimeField(q)
    a = np.array(a, dtype=np.int64) % q
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidLength(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        raise InvalidLength("empty matrix has no inverse")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivots = np.nonzero(aug[col:, col])[0]
        if pivots.size == 0:
            raise SingularMatrix(f"no pivot in column {col}")
        r = col + int(pivots[0])
        if r != col:
            aug[[col, r]] = aug[[r, col]]
        aug[col] = aug[col] * field.inv(int(aug[col, col])) % q
        factors = aug[:, col].copy()
        factors[col] = 0
        aug = (aug - np.outer(factors, aug[col])) % q
    return aug[:, n:]


def solve_noiseless(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Recover x from n exact equations a_i . x = b_i mod q.

    a is the (n, n) stack of input rows, b the matching outputs.
    Raises SingularMatrix when the rows do not span, InvalidLength on a
    shape mismatch.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64) % q
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidLength(f"expected n equations in n unknowns, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise InvalidLength(f"output vector shape {b.shape} does not match {a.shape[0]} rows")
    return mat_vec(mat_inverse(a, q), b, q)
