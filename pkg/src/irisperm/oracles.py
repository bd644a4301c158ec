"""Ground-truth permanent engines.

Four independent routes to the same number: naive permutation expansion,
Ryser's inclusion-exclusion with Gray-code subset stepping, first-row
minor (Laplace) expansion, and the n-dimensional roots-of-unity grid sum
of the permanent's generating function.  The first three are exact on
Gaussian integers; the grid sum is floating point.
"""

from __future__ import annotations

import itertools

import numpy as np

from .gaussint import ONE, ZERO, GaussianBigInt
from .matrices import ComplexIntMatrix


class DimensionCapError(ValueError):
    """The matrix is larger than this engine's configured cap."""


def _check_cap(n: int, cap: int, engine: str):
    if n > cap:
        raise DimensionCapError(f"{engine}: n={n} exceeds cap {cap}")


def naive_permanent(A: ComplexIntMatrix, cap: int = 10) -> GaussianBigInt:
    """Sum over all n! permutations of the product of selected entries."""
    n = A.n
    _check_cap(n, cap, "naive_permanent")
    E = A.entries
    total = ZERO
    for sigma in itertools.permutations(range(n)):
        term = ONE
        for i in range(n):
            e = E[i][sigma[i]]
            if not e:
                term = ZERO
                break
            term = term * e
        total = total + term
    return total


def laplace_permanent(A: ComplexIntMatrix, cap: int = 10) -> GaussianBigInt:
    """First-row minor expansion, memoized on the set of open columns.

    The permanent of the empty 0x0 matrix is 1.
    """
    n = A.n
    _check_cap(n, cap, "laplace_permanent")
    E = A.entries
    cache: dict[int, GaussianBigInt] = {}

    def rec(row: int, open_cols: int) -> GaussianBigInt:
        if row == n:
            return ONE
        hit = cache.get(open_cols)
        if hit is not None:
            return hit
        acc = ZERO
        cols = open_cols
        while cols:
            low = cols & -cols
            j = low.bit_length() - 1
            e = E[row][j]
            if e:
                acc = acc + e * rec(row + 1, open_cols ^ low)
            cols ^= low
        cache[open_cols] = acc
        return acc

    return rec(0, (1 << n) - 1)


def ryser_permanent(A: ComplexIntMatrix, cap: int = 24) -> GaussianBigInt:
    """Ryser's inclusion-exclusion over column subsets.

    per(A) = (-1)^n * sum over nonempty S of (-1)^|S| prod_i sum_{j in S} A[i][j].
    Subsets are visited in Gray-code order so each step adjusts the row
    sums by a single column.
    """
    n = A.n
    _check_cap(n, cap, "ryser_permanent")
    cols = list(zip(*A.entries))  # cols[j][i] = A[i][j]
    row_sums = [ZERO] * n
    size = 0
    total = ZERO
    gray = 0
    for m in range(1, 1 << n):
        new_gray = m ^ (m >> 1)
        bit = gray ^ new_gray
        j = bit.bit_length() - 1
        col = cols[j]
        if new_gray & bit:
            row_sums = [row_sums[i] + col[i] for i in range(n)]
            size += 1
        else:
            row_sums = [row_sums[i] - col[i] for i in range(n)]
            size -= 1
        gray = new_gray
        term = ONE
        for s in row_sums:
            if not s:
                term = ZERO
                break
            term = term * s
        if term:
            if (n - size) & 1:
                total = total - term
            else:
                total = total + term
    return total


def grid_permanent(A: ComplexIntMatrix, cap: int = 7, chunk: int = 1 << 15) -> complex:
    """Discrete n^n roots-of-unity grid sum of the generating function.

    Every non-permutation term carries a frequency in (-n, n) in at least
    one dimension and is annihilated exactly by the n-point sums, so the
    result matches the permanent up to float rounding.  Division by the
    unit-modulus sample product is done by conjugate multiplication.
    """
    n = A.n
    _check_cap(n, cap, "grid_permanent")
    M = np.array(A.to_complex(), dtype=complex)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    total = 0.0 + 0.0j
    grid = itertools.product(range(n), repeat=n)
    while True:
        block = list(itertools.islice(grid, chunk))
        if not block:
            break
        Z = roots[np.array(block)]  # (B, n): sample for each column
        row_vals = Z @ M.T  # (B, n): row_vals[., i] = sum_k A[i,k] z_k
        terms = row_vals.prod(axis=1) * np.conj(Z.prod(axis=1))
        total += terms.sum()
    return total / float(n**n)
