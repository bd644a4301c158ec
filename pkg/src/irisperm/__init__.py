"""Exact matrix permanents via generating-function exponent encodings.

Public surface: Gaussian-integer arithmetic, classical permanent
oracles, exponent-matrix construction and certification, the sparse /
bigint / quadrature permanent engines, and a cross-verification
harness.
"""

from .alphas import (
    AlphaConditionError,
    AlphaMatrix,
    EnumerationCapError,
    KernelBasis,
    ValidationReport,
    auto_beta,
    compositions,
    identity_alpha,
    kernel_basis,
    lemma1_alpha,
    rb_minus_probe,
    theorem1_alpha,
    user_alpha,
    validate_alpha,
)
from .crosscheck import DiscrepancyRecord, TrialSpec, bench, random_matrix, run_crosscheck
from .engine import (
    BigintRun,
    EngineConfig,
    InvalidAlphaError,
    ResourceGuardError,
    SparseIrisPoly,
    auto_k,
    iris_poly,
    per_m_bigint,
    per_m_bigint_trace,
    per_m_sparse,
    quadrature_permanent,
    theorem2_permanent,
)
from .gaussint import GaussianBigInt, gadd, gmul, least_residue, shift_round
from .matrices import ComplexIntMatrix
from .oracles import (
    DimensionCapError,
    grid_permanent,
    laplace_permanent,
    naive_permanent,
    ryser_permanent,
)
from .primes import PrimeWindow, cube_p, minimal_p, nth_prime, primes_range, theorem1_condition

__version__ = "0.1.0"
