"""Prime windows and the gap condition that licenses the prime exponent rows."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class SieveCapacityError(ValueError):
    """The requested prime index exceeds the configured sieve ceiling."""


# Primes in increasing order; grown on demand.  P_i below is 1-indexed.
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
_SIEVE_LIMIT_CAP = 50_000_000


def _extend_sieve(limit: int):
    if limit > _SIEVE_LIMIT_CAP:
        raise SieveCapacityError(f"sieve limit {limit} exceeds cap {_SIEVE_LIMIT_CAP}")
    start = _PRIMES[-1] + 1
    if limit < start:
        return
    flags = bytearray([1]) * (limit - start + 1)
    for p in _PRIMES:
        if p * p > limit:
            break
        first = max(p * p, ((start + p - 1) // p) * p)
        flags[first - start :: p] = bytes(len(range(first, limit + 1, p)))
    q = math.isqrt(limit)
    p = _PRIMES[-1]
    # new primes found in this segment also sieve within it
    for v in range(start, limit + 1):
        if flags[v - start]:
            _PRIMES.append(v)
            if v <= q:
                flags[v * v - start :: v] = bytes(len(range(v * v, limit + 1, v)))


def nth_prime(i: int) -> int:
    """The i-th prime, 1-indexed (P_1 = 2)."""
    if i < 1:
        raise ValueError("prime index must be >= 1")
    while len(_PRIMES) < i:
        k = max(len(_PRIMES) * 2, i)
        # Rosser-type upper bound on P_k for k >= 6
        bound = int(k * (math.log(k) + math.log(math.log(k)))) + 16 if k >= 6 else 16
        _extend_sieve(max(bound, _PRIMES[-1] * 2))
    return _PRIMES[i - 1]


@dataclass(frozen=True)
class PrimeWindow:
    """Consecutive primes P_p .. P_{p+n-1} with their extreme gaps.

    ``delta_min`` is the smallest gap between distinct primes in the
    window (None for a single-prime window).
    """

    p: int
    primes: tuple[int, ...]
    delta_max: int
    delta_min: int | None

    @property
    def n(self) -> int:
        return len(self.primes)


def primes_range(p: int, n: int) -> PrimeWindow:
    """The 1-indexed window of n consecutive primes starting at index p."""
    if p < 1 or n < 1:
        raise ValueError("p and n must be >= 1")
    nth_prime(p + n - 1)
    window = tuple(_PRIMES[p - 1 : p + n - 1])
    delta_max = window[-1] - window[0]
    # consecutive gaps suffice: the window is sorted
    delta_min = min(b - a for a, b in zip(window, window[1:])) if n >= 2 else None
    return PrimeWindow(p=p, primes=window, delta_max=delta_max, delta_min=delta_min)


def condition_bound(window: PrimeWindow) -> Fraction:
    """The gap-condition right-hand side n^2 (1 + dmax/P_p) dmax/dmin, exact."""
    if window.n < 2:
        raise ValueError("condition needs a window of at least 2 primes")
    n = window.n
    p0 = window.primes[0]
    return (
        Fraction(n * n)
        * (1 + Fraction(window.delta_max, p0))
        * Fraction(window.delta_max, window.delta_min)
    )


def theorem1_condition(p: int, n: int) -> bool:
    """Whether P_p strictly exceeds the gap bound for the (p, n) window.

    Evaluated in exact rational arithmetic; for minimal p the comparison
    sits near the boundary and floats are not trusted.
    """
    window = primes_range(p, n)
    return window.primes[0] > condition_bound(window)


def minimal_p(n: int, p_cap: int = 100_000) -> int:
    """Smallest window start index satisfying the gap condition."""
    if n < 3:
        raise ValueError("minimal_p is defined for n >= 3")
    for p in range(1, p_cap + 1):
        if theorem1_condition(p, n):
            return p
    raise SieveCapacityError(f"no admissible p found below {p_cap} for n={n}")


def cube_p(n: int) -> int:
    """The asymptotic window-start policy p = n**3."""
    return n**3
