"""Acceptance suite: one criterion per test, one PASS/FAIL line per criterion.

Each test prints its verdict straight to the terminal (bypassing pytest
capture) so the acceptance record survives in the run log.  Criterion 2
treats a certified-invalid exponent row as a reportable scientific
outcome, not a failure: the only failing condition is an engine
disagreement that the validation machinery did not flag.
"""

import itertools
import random
import time

from irisperm.alphas import (
    compositions,
    identity_alpha,
    lemma1_alpha,
    rb_minus_probe,
    theorem1_alpha,
    user_alpha,
    validate_alpha,
)
from irisperm.crosscheck import TrialSpec, emit_jsonl, random_matrix, run_crosscheck
from irisperm.engine import (
    auto_k,
    per_m_bigint_trace,
    per_m_sparse,
    quadrature_permanent,
)
from irisperm.gaussint import GaussianBigInt
from irisperm.matrices import ComplexIntMatrix
from irisperm.oracles import (
    grid_permanent,
    laplace_permanent,
    naive_permanent,
    ryser_permanent,
)
from irisperm.primes import minimal_p

G = GaussianBigInt


def announce(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num}: {detail}"


def _small_alpha(n):
    """Smallest brute-certified one-row construction alpha for tiny n."""
    a = lemma1_alpha(n, 1, override=True)
    assert validate_alpha(a).valid
    return a


def _all_witnesses(alpha):
    n = alpha.n
    ones = (1,) * n
    out = []
    for x in compositions(n, n):
        if x == ones:
            continue
        if all(
            sum(r[j] * x[j] for j in range(n)) == t
            for r, t in zip(alpha.rows, alpha.alpha_T)
        ):
            out.append(x)
    return out


def test_criterion_1_exhaustive_3x3(capsys):
    start = time.perf_counter()
    alpha = lemma1_alpha(3, 11)
    assert validate_alpha(alpha).valid
    mismatches = 0
    for bits in itertools.product((0, 1), repeat=9):
        A = ComplexIntMatrix([list(bits[0:3]), list(bits[3:6]), list(bits[6:9])])
        v = naive_permanent(A)
        if not (
            ryser_permanent(A) == v
            and laplace_permanent(A) == v
            and per_m_sparse(A, alpha, skip_validation=True) == v
        ):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    announce(
        capsys, 1, ok,
        f"all 512 binary 3x3 matrices agree across naive/ryser/laplace/sparse "
        f"(mismatches={mismatches}, {elapsed:.1f}s)",
    )


def test_criterion_2_randomized_binary_4_to_9(capsys):
    start = time.perf_counter()
    seed = 20240902
    alphas: dict[int, tuple] = {}  # n -> (alpha, report)
    invalid_findings = []
    discrepancies = []
    silent = 0
    for trial in range(200):
        n = random.Random(f"{seed}:{trial}").randint(4, 9)
        A = random_matrix(n, "binary", seed=seed, trial=trial)
        if n not in alphas:
            a = lemma1_alpha(n, minimal_p(n))
            rep = validate_alpha(a)
            alphas[n] = (a, rep)
            if not rep.valid:
                # reproduce the witness arithmetically before recording it
                x = rep.witness
                row = a.rows[0]
                assert sum(x) == n
                assert sum(row[j] * x[j] for j in range(n)) == a.alpha_T[0]
                invalid_findings.append(
                    {"n": n, "p": minimal_p(n), "witness": list(x)}
                )
        a, rep = alphas[n]
        exact = ryser_permanent(A)
        aliased = per_m_sparse(A, a, skip_validation=True)
        if aliased != exact:
            record = {
                "trial": trial,
                "seed": seed,
                "n": n,
                "matrix": A.to_json(),
                "ryser": exact.to_json(),
                "sparse_unvalidated": aliased.to_json(),
                "alpha_certified_valid": rep.valid,
            }
            discrepancies.append(record)
            if rep.valid:
                silent += 1  # validation said valid yet the values diverged
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        for f in invalid_findings:
            print(
                f"\nACCEPTANCE 2 FINDING: construction alpha at n={f['n']} "
                f"(minimal p={f['p']}) is INVALID — witness composition "
                f"{f['witness']}; brute validation flags it and the engine "
                f"refuses to return a value for this alpha"
            )
        for r in discrepancies:
            print(f"ACCEPTANCE 2 DISCREPANCY RECORD: {r}")
    flagged = sum(1 for r in discrepancies if not r["alpha_certified_valid"])
    ok = silent == 0 and elapsed < 300
    announce(
        capsys, 2, ok,
        f"200 binary trials n in [4,9]: 0 silent divergences; "
        f"{len(invalid_findings)} invalid-alpha finding(s) "
        f"({[f['n'] for f in invalid_findings]}), {flagged} divergence(s) all "
        f"pre-flagged by brute validation ({elapsed:.1f}s)",
    )


def test_criterion_3_gaussian_equivalence(capsys):
    start = time.perf_counter()
    spec = TrialSpec(
        n_lo=2, n_hi=6, entry_kind="gaussian", M=2, trials=100, seed=303,
        engines=("naive", "theorem2-sparse"),
    )
    summary, records = run_crosscheck(spec)
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        for r in records:
            print(f"ACCEPTANCE 3 DISCREPANCY RECORD: {r.to_json()}")
    ok = summary["discrepancies"] == 0 and elapsed < 120
    announce(
        capsys, 3, ok,
        f"100 Gaussian trials (moduli<=2, n in [2,6]) naive vs sparse: "
        f"{summary['discrepancies']} discrepancies ({elapsed:.1f}s)",
    )


def test_criterion_4_bigint_fidelity(capsys):
    start = time.perf_counter()
    alphas = {n: _small_alpha(n) for n in (2, 3, 4)}
    runs = 0
    frac_ok = True
    agree = True
    for kind, count, M in (("binary", 50, 1), ("gaussian", 20, 2)):
        for trial in range(count):
            n = random.Random(f"404:{kind}:{trial}").randint(2, 4)
            A = random_matrix(n, kind, seed=404, M=M, trial=trial)
            alpha = alphas[n]
            trace = per_m_bigint_trace(
                A, alpha, auto_k(A.M, n), skip_validation=True
            )
            frac_ok &= trace.frac_below_half
            exact = naive_permanent(A)
            sparse = per_m_sparse(A, alpha, skip_validation=True)
            agree &= trace.value == sparse == exact
            runs += 1
    elapsed = time.perf_counter() - start
    ok = runs == 70 and frac_ok and agree and elapsed < 120
    announce(
        capsys, 4, ok,
        f"70 runs (50 binary + 20 Gaussian, n in [2,4]): bigint = sparse = "
        f"naive, pre-rounding remainder < 1/2 on every run ({elapsed:.1f}s)",
    )


def test_criterion_5_correction_branch(capsys):
    A = ComplexIntMatrix([[-1, 0], [0, 1]])
    run = per_m_bigint_trace(A, user_alpha([[1, 2]]), 4)
    ok = (
        run.residue == (15, 0)
        and run.corrected_re
        and not run.corrected_im
        and run.value == G(-1)
    )
    announce(
        capsys, 5, ok,
        f"[[-1,0],[0,1]] with alpha=[1,2], k=4: least residue "
        f"{run.residue[0]} corrected by -16 to {run.value.re}",
    )


def test_criterion_6_quadrature(capsys):
    start = time.perf_counter()
    alphas = {
        2: theorem1_alpha(2, 1),
        3: theorem1_alpha(3, minimal_p(3)),
        4: theorem1_alpha(4, minimal_p(4)),
    }
    sizes3 = [3 * (max(r) - min(r)) + 1 for r in alphas[3].rows]
    assert sizes3 == [31, 2161]
    worst = 0.0
    for trial in range(30):
        n = random.Random(f"606:{trial}").randint(2, 4)
        A = random_matrix(n, "integer", seed=606, M=2, trial=trial)
        approx = quadrature_permanent(A, alphas[n])
        err = abs(approx - complex(naive_permanent(A)))
        worst = max(worst, err)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 120
    announce(
        capsys, 6, ok,
        f"30 quadrature fixtures n in [2,4], grid sizes [31, 2161] at n=3: "
        f"worst error {worst:.2e} ({elapsed:.1f}s)",
    )


def test_criterion_7_grid_engine(capsys):
    fixtures = []
    for n in range(1, 6):
        fixtures.append(ComplexIntMatrix.identity(n))
        fixtures.append(ComplexIntMatrix.ones(n))
        rng = random.Random(f"707:{n}")
        fixtures.append(
            ComplexIntMatrix(
                [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            )
        )
    fixtures.append(ComplexIntMatrix([[1, 1, 0], [1, 1, 1], [0, 1, 1]]))
    fixtures.append(ComplexIntMatrix([[(0, 1), 1], [1, (0, 1)]]))
    worst = 0.0
    for A in fixtures:
        err = abs(grid_permanent(A) - complex(naive_permanent(A)))
        worst = max(worst, err)
    ok = worst < 1e-9
    announce(
        capsys, 7, ok,
        f"discrete grid sum vs naive on {len(fixtures)} fixtures (n<=5): "
        f"worst error {worst:.2e}",
    )


def test_criterion_8_alpha_certification(capsys):
    construction_ok = True
    for n in range(3, 9):
        p = minimal_p(n)
        construction_ok &= validate_alpha(theorem1_alpha(n, p)).valid
        construction_ok &= validate_alpha(lemma1_alpha(n, p)).valid
    ones_ok = True
    for n in range(2, 7):
        rep = validate_alpha(user_alpha([[1] * n]))
        ones_ok &= (not rep.valid) and rep.witness == (n,) + (0,) * (n - 1)
    identity_ok = all(validate_alpha(identity_alpha(n)).valid for n in range(1, 7))
    ok = construction_ok and ones_ok and identity_ok
    announce(
        capsys, 8, ok,
        f"two-row and collapsed constructions valid at minimal p for n=3..8 "
        f"({construction_ok}); all-ones row fails with witness [n,0,...,0] "
        f"({ones_ok}); identity valid for n<=6 ({identity_ok})",
    )


def test_criterion_9_kernel_probe(capsys):
    probe3 = rb_minus_probe(theorem1_alpha(3, minimal_p(3)))
    n3_ok = probe3 == []  # exhaustive over the 4 one-dimensional combinations
    outcomes = {}
    consistent = True
    for n in range(4, 8):
        a = theorem1_alpha(n, minimal_p(n))
        probe = rb_minus_probe(a)
        outcomes[n] = len(probe)
        probe_as_comps = sorted(
            tuple(v + 1 for v in y) for y in probe if sum(y) == 0
        )
        consistent &= probe_as_comps == sorted(_all_witnesses(a))
    ok = n3_ok and consistent
    announce(
        capsys, 9, ok,
        f"probe empty at n=3 (4 combinations); witness counts for n=4..7 "
        f"{outcomes}, all cross-consistent with brute validation",
    )


def test_criterion_10_invariance(capsys):
    start = time.perf_counter()
    alphas = {n: _small_alpha(n) for n in (2, 3, 4, 5)}
    engines = {
        "naive": naive_permanent,
        "ryser": ryser_permanent,
        "laplace": laplace_permanent,
        "sparse": lambda A: per_m_sparse(A, alphas[A.n], skip_validation=True),
    }
    rng = random.Random(1010)
    ok = True
    for _ in range(100):
        n = rng.randint(2, 5)
        A = random_matrix(n, "gaussian", seed=1010, M=2, trial=rng.randint(0, 10**6))
        rp, cp = list(range(n)), list(range(n))
        rng.shuffle(rp)
        rng.shuffle(cp)
        B = A.permuted(rp, cp)
        T = A.transpose()
        c = G(rng.randint(-2, 2), rng.randint(-2, 2))
        S = A.with_scaled_row(rng.randrange(n), c)
        for fn in engines.values():
            v = fn(A)
            ok &= fn(B) == v and fn(T) == v and fn(S) == c * v
    elapsed = time.perf_counter() - start
    announce(
        capsys, 10, ok,
        f"permutation, transpose, and row-scaling invariance across "
        f"naive/ryser/laplace/sparse on 100 random instances each "
        f"({elapsed:.1f}s)",
    )


def test_criterion_11_determinism(capsys):
    spec = TrialSpec(
        n_lo=3, n_hi=5, entry_kind="binary", trials=25, seed=1111,
        engines=("naive", "ryser", "laplace", "theorem2-sparse"),
    )
    out1 = emit_jsonl(*run_crosscheck(spec))
    out2 = emit_jsonl(*run_crosscheck(spec))
    ok = out1 == out2
    announce(
        capsys, 11, ok,
        f"repeated crosscheck with identical seeds is byte-identical "
        f"({len(out1)} bytes of JSON-lines output)",
    )
