"""Permanent engines built on exponent-row generating functions.

Three routes:

* ``per_m_sparse`` expands the product of row polynomials symbolically
  and reads the permanent off the coefficient at the total-degree
  exponent.  Exact, and the default: it is the carry-free digit view of
  the bigint evaluation, so it scales far beyond it.
* ``per_m_bigint`` evaluates the same product at z = 2**k with plain
  shifted big integers, rounds the shifted-down value to the nearest
  Gaussian integer, takes the least residue mod 2**k and applies the
  negative-value correction.  Retained to demonstrate the bit-level
  mechanics exactly.
* ``quadrature_permanent`` evaluates the two-angle contour form of the
  two-row construction as an exact double discrete Fourier sum in
  floating point.

``theorem2_permanent`` is the end-to-end pipeline: build a one-row
alpha from a prime-window policy, certify it, dispatch, report.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .alphas import (
    AlphaMatrix,
    ValidationReport,
    lemma1_alpha,
    rb_minus_probe,
    theorem1_alpha,
    validate_alpha,
)
from .gaussint import GaussianBigInt, ZERO, least_residue, shift_round
from .matrices import ComplexIntMatrix
from .primes import cube_p, minimal_p

DEFAULT_BIT_GUARD = 1_000_000_000
DEFAULT_GRID_CAP = 100_000_000


class InvalidAlphaError(ValueError):
    """The exponent row failed brute-force certification."""

    def __init__(self, report: ValidationReport):
        super().__init__(f"alpha is not valid; witness composition {report.witness}")
        self.report = report


class ResourceGuardError(ValueError):
    """A size estimate exceeded the configured guard."""


class SparseIrisPoly:
    """Sparse polynomial: exponent -> Gaussian-integer coefficient.

    Exponents are plain Python ints and may exceed 64 bits.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[int, GaussianBigInt] = dict(terms or {})

    @classmethod
    def one(cls) -> "SparseIrisPoly":
        return cls({0: GaussianBigInt(1)})

    def coeff(self, e: int) -> GaussianBigInt:
        return self.terms.get(e, ZERO)

    def term_count(self) -> int:
        return len(self.terms)

    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else 0

    def mul_sparse(self, other: dict[int, GaussianBigInt]) -> "SparseIrisPoly":
        out: dict[int, GaussianBigInt] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.items():
                e = e1 + e2
                prev = out.get(e)
                c = c1 * c2
                if prev is not None:
                    c = prev + c
                if c:
                    out[e] = c
                elif prev is not None:
                    del out[e]
        return SparseIrisPoly(out)

    def __eq__(self, other):
        if isinstance(other, SparseIrisPoly):
            return self.terms == other.terms
        if isinstance(other, dict):
            return self.terms == {e: GaussianBigInt.coerce(c) for e, c in other.items()}
        return NotImplemented

    def __repr__(self):
        return f"SparseIrisPoly({self.terms!r})"


def _row_poly(row, alpha_row) -> dict[int, GaussianBigInt]:
    poly: dict[int, GaussianBigInt] = {}
    for entry, e in zip(row, alpha_row):
        if not entry:
            continue
        prev = poly.get(e)
        poly[e] = prev + entry if prev is not None else entry
    return poly


def iris_poly(A: ComplexIntMatrix, alpha: AlphaMatrix) -> SparseIrisPoly:
    """Exact product of the row polynomials sum_k A[i,k] z**alpha_k.

    The distinct-multiset-sum bound C(n+i-1, i) on the term count after
    i rows is asserted as the product is built.
    """
    if alpha.t != 1:
        raise ValueError("iris_poly needs a one-row alpha")
    n = A.n
    if alpha.n != n:
        raise ValueError("alpha width must match the matrix dimension")
    arow = alpha.rows[0]
    poly = SparseIrisPoly.one()
    for i, row in enumerate(A.entries, start=1):
        poly = poly.mul_sparse(_row_poly(row, arow))
        bound = comb(n + i - 1, i)
        if poly.term_count() > bound:
            raise AssertionError(
                f"term count {poly.term_count()} exceeds C({n + i - 1},{i})={bound}"
            )
    return poly


def _certify(alpha: AlphaMatrix, skip_validation: bool):
    if skip_validation:
        return None
    report = validate_alpha(alpha)
    if not report.valid:
        raise InvalidAlphaError(report)
    return report


def per_m_sparse(
    A: ComplexIntMatrix, alpha: AlphaMatrix, skip_validation: bool = False
) -> GaussianBigInt:
    """Coefficient of the total-degree exponent in the sparse product.

    Equals the permanent whenever alpha is valid.  Unless told
    otherwise, validity is certified here by brute force.
    """
    _certify(alpha, skip_validation)
    return iris_poly(A, alpha).coeff(alpha.alpha_T[0])


@dataclass(frozen=True)
class BigintRun:
    """Full trace of one bigint-mode evaluation."""

    value: GaussianBigInt
    iota: GaussianBigInt
    rounded: GaussianBigInt
    residue: tuple[int, int]
    threshold: int
    corrected_re: bool
    corrected_im: bool
    frac_below_half: bool
    k: int
    shift: int
    bits: int


def per_m_bigint_trace(
    A: ComplexIntMatrix,
    alpha: AlphaMatrix,
    k: int,
    bit_guard: int = DEFAULT_BIT_GUARD,
    skip_validation: bool = False,
) -> BigintRun:
    """Bigint-mode evaluation with every intermediate kept for inspection.

    The product iota(2**k) is assembled row by row, each row value by
    setting shifted entry bits at positions k * alpha_j; the n-1 big
    multiplications dominate.  The shifted-down value is rounded to the
    nearest Gaussian integer, reduced to its least residue mod 2**k, and
    corrected downward by 2**k on any component exceeding M**n * n!.
    """
    if alpha.t != 1:
        raise ValueError("bigint mode needs a one-row alpha")
    n = A.n
    if alpha.n != n:
        raise ValueError("alpha width must match the matrix dimension")
    M = A.M
    if (1 << k) <= 2 * (M * n) ** n:
        raise ResourceGuardError(f"2**{k} is not above 2*(M*n)**n = {2 * (M * n) ** n}")
    arow = alpha.rows[0]
    est_bits = k * (n * max(arow) + 1)
    if est_bits > bit_guard:
        raise ResourceGuardError(f"estimated {est_bits} bits exceed guard {bit_guard}")
    _certify(alpha, skip_validation)

    prod_re, prod_im = 1, 0
    for row in A.entries:
        row_re = row_im = 0
        for entry, e in zip(row, arow):
            if entry:
                shift = k * e
                row_re += entry.re << shift
                row_im += entry.im << shift
        prod_re, prod_im = (
            prod_re * row_re - prod_im * row_im,
            prod_re * row_im + prod_im * row_re,
        )
    iota = GaussianBigInt(prod_re, prod_im)

    shift = k * alpha.alpha_T[0]
    rounded = shift_round(iota, shift)
    half = 1 << (shift - 1) if shift else 0
    frac_below_half = (
        abs(iota.re - (rounded.re << shift)) < half
        and abs(iota.im - (rounded.im << shift)) < half
    ) if shift else True

    a, b = least_residue(rounded, k)
    threshold = M**n * factorial(n)
    corrected_re = a > threshold
    corrected_im = b > threshold
    z = 1 << k
    value = GaussianBigInt(a - (z if corrected_re else 0), b - (z if corrected_im else 0))
    return BigintRun(
        value=value,
        iota=iota,
        rounded=rounded,
        residue=(a, b),
        threshold=threshold,
        corrected_re=corrected_re,
        corrected_im=corrected_im,
        frac_below_half=frac_below_half,
        k=k,
        shift=shift,
        bits=max(prod_re.bit_length(), prod_im.bit_length()),
    )


def per_m_bigint(
    A: ComplexIntMatrix,
    alpha: AlphaMatrix,
    k: int,
    bit_guard: int = DEFAULT_BIT_GUARD,
    skip_validation: bool = False,
) -> GaussianBigInt:
    return per_m_bigint_trace(A, alpha, k, bit_guard, skip_validation).value


def auto_k(M: int, n: int) -> int:
    """Smallest k with 2**k > 2 * (M*n)**n, computed in integers."""
    return (2 * (max(M, 1) * n) ** n).bit_length()


@dataclass(frozen=True)
class EngineConfig:
    mode: str = "sparse"  # sparse | bigint
    k: int | str = "auto"
    p_policy: int | str = "minimal"  # minimal | cube | explicit index
    beta: int | str = "auto"
    validation: str = "brute"  # brute | probe | skip
    bit_guard: int = DEFAULT_BIT_GUARD


def _resolve_p(policy, n: int) -> int:
    if policy == "minimal":
        # rank certifies n <= 2 with any window; use the first
        return minimal_p(n) if n >= 3 else 1
    if policy == "cube":
        return cube_p(n)
    return int(policy)


def theorem2_permanent(
    A: ComplexIntMatrix, config: EngineConfig = EngineConfig()
) -> tuple[GaussianBigInt, dict]:
    """Full modular pipeline: build a one-row alpha, certify, evaluate.

    Returns the permanent together with a report of everything the run
    chose or measured.
    """
    start = time.perf_counter()
    n = A.n
    p = _resolve_p(config.p_policy, n)
    beta = None if config.beta == "auto" else int(config.beta)
    alpha = lemma1_alpha(n, p, beta)

    validation_outcome: dict = {"policy": config.validation}
    if config.validation == "brute":
        vreport = validate_alpha(alpha)
        validation_outcome["valid"] = vreport.valid
        validation_outcome["checked"] = vreport.checked
        if not vreport.valid:
            raise InvalidAlphaError(vreport)
    elif config.validation == "probe":
        # the one-row alpha inherits validity from the two-row prime form
        # whenever the kernel probe finds no alias vector
        witnesses = rb_minus_probe(theorem1_alpha(n, p, override=n <= 2)) if n >= 3 else []
        validation_outcome["valid"] = not witnesses
        validation_outcome["witnesses"] = [list(w) for w in witnesses]
        if witnesses:
            raise InvalidAlphaError(
                ValidationReport(False, len(witnesses), tuple(v + 1 for v in witnesses[0]), 0.0)
            )
    elif config.validation == "skip":
        validation_outcome["valid"] = None
    else:
        raise ValueError(f"unknown validation policy {config.validation!r}")

    report: dict = {
        "alpha": alpha.to_json(),
        "p": p,
        "beta": alpha.provenance["beta"],
        "mode": config.mode,
        "validation": validation_outcome,
        "n": n,
        "M": A.M,
    }
    if config.mode == "sparse":
        poly = iris_poly(A, alpha)
        value = poly.coeff(alpha.alpha_T[0])
        report["term_count"] = poly.term_count()
        report["max_exponent"] = str(poly.max_exponent())
    elif config.mode == "bigint":
        k = auto_k(A.M, n) if config.k == "auto" else int(config.k)
        run = per_m_bigint_trace(A, alpha, k, config.bit_guard, skip_validation=True)
        value = run.value
        report["k"] = k
        report["bit_count"] = run.bits
        report["max_exponent"] = str(n * max(alpha.rows[0]))
        report["frac_below_half"] = run.frac_below_half
    else:
        raise ValueError(f"unknown mode {config.mode!r}")
    report["elapsed_s"] = time.perf_counter() - start
    return value, report


def quadrature_permanent(
    A, alpha: AlphaMatrix, grid_cap: int = DEFAULT_GRID_CAP
) -> complex:
    """Double discrete Fourier sum of the two-angle contour integrand.

    With N_t = n * (max alpha^t - min alpha^t) + 1 samples per angle,
    every alias frequency has magnitude below N_t and is annihilated
    exactly, so the sum equals the permanent up to float rounding.
    """
    if alpha.t != 2:
        raise ValueError("quadrature needs a two-row alpha")
    if isinstance(A, ComplexIntMatrix):
        n = A.n
        Mat = np.array(A.to_complex(), dtype=complex)
    else:
        Mat = np.array(A, dtype=complex)
        if Mat.ndim != 2 or Mat.shape[0] != Mat.shape[1]:
            raise ValueError("matrix must be square")
        n = Mat.shape[0]
    if alpha.n != n:
        raise ValueError("alpha width must match the matrix dimension")

    sizes = [n * (max(r) - min(r)) + 1 for r in alpha.rows]
    n1, n2 = sizes
    if n1 * n2 > grid_cap:
        raise ResourceGuardError(f"grid {n1}x{n2} exceeds cap {grid_cap}")

    # phases are reduced with exact integer mods so no sample ever sees a
    # large argument; exponents themselves can exceed float precision
    a1 = np.array([v % n1 for v in alpha.rows[0]], dtype=np.int64)
    a2 = np.array([v % n2 for v in alpha.rows[1]], dtype=np.int64)
    t1, t2 = (t % s for t, s in zip(alpha.alpha_T, sizes))
    i2 = np.arange(n2, dtype=np.int64)
    # per-column samples and the conjugate total-degree factor, dim 2
    u2 = np.exp(2j * np.pi * (np.outer(i2, a2) % n2) / n2)  # (N2, n)
    g2 = np.exp(-2j * np.pi * ((i2 * t2) % n2) / n2)  # (N2,)
    total = 0.0 + 0.0j
    for j1 in range(n1):
        u1 = np.exp(2j * np.pi * ((j1 * a1) % n1) / n1)  # (n,)
        g1 = np.exp(-2j * np.pi * ((j1 * t1) % n1) / n1)
        row_vals = (u2 * u1) @ Mat.T  # (N2, n)
        total += g1 * (row_vals.prod(axis=1) @ g2)
    return total / float(n1 * n2)
