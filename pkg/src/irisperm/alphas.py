"""Construction and certification of exponent-row matrices.

An exponent matrix assigns each matrix column a monomial exponent per
row.  It is *valid* when the all-ones vector is the unique composition
of n into n nonnegative parts solving alpha @ x = row totals; validity
is exactly what lets a generating-function coefficient carry the
permanent with no alias collisions.

Two constructions are provided: the two-row form (consecutive primes
and their squares, subject to the prime-gap condition) and the
collapsed one-row form (prime + beta * prime^2 with beta large enough
to separate the square row).  Validity is always certifiable per
instance by brute-force enumeration, and the two-row kernel can be
probed directly for integer alias vectors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import primes as primes_mod
from .primes import PrimeWindow, condition_bound, primes_range, theorem1_condition


class AlphaConditionError(ValueError):
    """The prime-gap condition does not hold and no override was given."""


class EnumerationCapError(ValueError):
    """Brute-force enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class AlphaMatrix:
    """A t-by-n matrix of nonnegative integer exponents.

    ``alpha_T`` holds the per-row totals and ``S`` their grand total.
    ``provenance`` records how the matrix was built.
    """

    rows: tuple[tuple[int, ...], ...]
    provenance: dict

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("alpha must have at least one row and column")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("alpha rows must have equal length")
        if any(e < 0 for r in self.rows for e in r):
            raise ValueError("alpha entries must be nonnegative")

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def alpha_T(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    @property
    def S(self) -> int:
        return sum(self.alpha_T)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "rows": [list(r) for r in self.rows],
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlphaMatrix":
        rows = tuple(tuple(int(e) for e in r) for r in obj["rows"])
        return cls(rows=rows, provenance=dict(obj.get("provenance", {"kind": "user"})))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of brute-force certification over all compositions."""

    valid: bool
    checked: int
    witness: tuple[int, ...] | None
    elapsed: float

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "checked": self.checked,
            "witness": list(self.witness) if self.witness is not None else None,
            "elapsed_s": self.elapsed,
        }


@dataclass(frozen=True)
class KernelBasis:
    """Exact rational kernel columns of a two-row prime/prime-square matrix.

    Column i has a 1 in slot i+2, zeros in the other tail slots, and
    rational top-two entries ``n_up``.
    """

    vectors: tuple[tuple[Fraction, ...], ...]  # columns
    n_up: tuple[tuple[Fraction, ...], ...]  # 2 x (n-2)


def identity_alpha(n: int) -> AlphaMatrix:
    rows = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return AlphaMatrix(rows=rows, provenance={"kind": "identity", "n": n})


def user_alpha(rows) -> AlphaMatrix:
    rows = tuple(tuple(int(e) for e in r) for r in rows)
    return AlphaMatrix(rows=rows, provenance={"kind": "user"})


def _require_condition(p: int, n: int, override: bool):
    # rank alone certifies n <= 2; the gap condition only matters beyond that
    if n <= 2 or override:
        return
    if not theorem1_condition(p, n):
        raise AlphaConditionError(
            f"prime-gap condition fails for p={p}, n={n}; "
            "pass override=True to build anyway"
        )


def theorem1_alpha(n: int, p: int, override: bool = False) -> AlphaMatrix:
    """Two-row matrix: consecutive primes P_p.. and their squares."""
    _require_condition(p, n, override)
    window = primes_range(p, n)
    row1 = window.primes
    row2 = tuple(q * q for q in row1)
    return AlphaMatrix(rows=(row1, row2), provenance={"kind": "theorem1", "p": p})


def auto_beta(n: int, p: int) -> int:
    """Smallest admissible separation factor: n * P_{p+n-1} + 1."""
    window = primes_range(p, n)
    return n * window.primes[-1] + 1


def lemma1_alpha(n: int, p: int, beta: int | None = None, override: bool = False) -> AlphaMatrix:
    """One-row matrix alpha_j = P_{p+j} + beta * P_{p+j}^2.

    beta must strictly exceed n * P_{p+n-1} so the square row dominates
    any first-row discrepancy; None picks the smallest admissible value.
    """
    _require_condition(p, n, override)
    window = primes_range(p, n)
    min_beta = n * window.primes[-1]
    if beta is None:
        beta = min_beta + 1
    if beta <= min_beta:
        raise ValueError(f"beta={beta} too small; needs beta > {min_beta}")
    row = tuple(q + beta * q * q for q in window.primes)
    return AlphaMatrix(rows=(row,), provenance={"kind": "lemma1", "p": p, "beta": beta})


def compositions(total: int, parts: int):
    """All weak compositions of ``total`` into ``parts`` nonnegative parts.

    Emitted in decreasing lexicographic order, so the first witness a
    scan finds is deterministic (for the all-equal row it is
    (total, 0, ..., 0)).
    """
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def validate_alpha(alpha: AlphaMatrix, cap: int = 5_000_000) -> ValidationReport:
    """Certify validity by enumerating every composition of n into n parts."""
    n = alpha.n
    count = comb(2 * n - 1, n - 1)
    if count > cap:
        raise EnumerationCapError(f"{count} compositions exceed cap {cap}")
    targets = alpha.alpha_T
    rows = alpha.rows
    ones = (1,) * n
    start = time.perf_counter()
    checked = 0
    witness = None
    for x in compositions(n, n):
        checked += 1
        if x == ones:
            continue
        if all(sum(r[j] * x[j] for j in range(n)) == t for r, t in zip(rows, targets)):
            witness = x
            break
    elapsed = time.perf_counter() - start
    return ValidationReport(valid=witness is None, checked=checked, witness=witness, elapsed=elapsed)


def kernel_basis(alpha: AlphaMatrix) -> KernelBasis:
    """Exact rational basis of the kernel of a prime/prime-square matrix.

    Column i (0-based) is supported on slots {0, 1, i+2}; the tail slot
    carries a 1 and the top two entries follow from eliminating the
    first two columns.  Every column is verified to be annihilated.
    """
    if alpha.t != 2:
        raise ValueError("kernel basis is defined for two-row alphas")
    row1 = alpha.rows[0]
    n = alpha.n
    if len(set(row1)) != n:
        raise ValueError("degenerate alpha: repeated first-row values")
    if alpha.rows[1] != tuple(v * v for v in row1):
        raise ValueError("second row must be the squares of the first")
    a1, a2 = row1[0], row1[1]
    vectors = []
    for i in range(n - 2):
        ai = row1[i + 2]
        v = [Fraction(0)] * n
        v[0] = Fraction(ai * (ai - a2), a1 * (a2 - a1))
        v[1] = Fraction(ai * (a1 - ai), a2 * (a2 - a1))
        v[i + 2] = Fraction(1)
        for r in alpha.rows:
            if sum(r[j] * v[j] for j in range(n)) != 0:
                raise AssertionError("kernel column not annihilated")
        vectors.append(tuple(v))
    n_up = (
        tuple(v[0] for v in vectors),
        tuple(v[1] for v in vectors),
    )
    return KernelBasis(vectors=tuple(vectors), n_up=n_up)


def rb_minus_probe(alpha: AlphaMatrix, cap: int = 10_000_000) -> list[tuple[int, ...]]:
    """Exhaustive search for nonzero integer kernel vectors in [-1, n-1]^n.

    Enumerates every coefficient vector gamma with entries in [-1, n-1]
    over the kernel columns and returns the combinations whose entries
    are all integers in [-1, n-1].  An empty list certifies that no
    alias composition exists for this alpha.
    """
    n = alpha.n
    if alpha.t != 2:
        raise ValueError("kernel probe is defined for two-row alphas")
    if n <= 2:
        return []
    total = (n + 1) ** (n - 2)
    if total > cap:
        raise EnumerationCapError(f"{total} coefficient vectors exceed cap {cap}")
    basis = kernel_basis(alpha)
    top1, top2 = basis.n_up
    witnesses = []
    # gamma ranges over [-1, n-1]^(n-2); tail entries of S equal gamma itself
    def scan(idx, s1, s2, gamma):
        if idx == n - 2:
            if any(gamma) and s1.denominator == 1 and s2.denominator == 1:
                if -1 <= s1 <= n - 1 and -1 <= s2 <= n - 1:
                    witnesses.append((int(s1), int(s2)) + gamma)
            return
        for g in range(-1, n):
            scan(idx + 1, s1 + g * top1[idx], s2 + g * top2[idx], gamma + (g,))

    scan(0, Fraction(0), Fraction(0), ())
    witnesses.sort()
    return witnesses


def nup_bound(alpha: AlphaMatrix) -> Fraction:
    """The exact rational gap bound that caps |N_UP . gamma|."""
    window = primes_range(alpha.provenance["p"], alpha.n)
    return condition_bound(window)


# re-export the window/condition helpers alongside the constructions
__all__ = [
    "AlphaMatrix",
    "ValidationReport",
    "KernelBasis",
    "AlphaConditionError",
    "EnumerationCapError",
    "identity_alpha",
    "user_alpha",
    "theorem1_alpha",
    "lemma1_alpha",
    "auto_beta",
    "compositions",
    "validate_alpha",
    "kernel_basis",
    "rb_minus_probe",
    "nup_bound",
    "PrimeWindow",
    "primes_range",
    "theorem1_condition",
]
