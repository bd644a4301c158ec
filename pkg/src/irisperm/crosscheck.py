"""Randomized cross-verification and benchmarking of the permanent engines.

Every trial draws a deterministic matrix, runs the selected engines, and
compares: exact engines bit-exactly, floating-point engines against the
exact value within a tolerance.  Discrepancies never abort a run; they
are captured with enough context to reproduce in isolation, because a
counterexample would be the interesting outcome.
"""

from __future__ import annotations

import hashlib
import json
import random
import statistics
import time
from dataclasses import dataclass, field

from .alphas import lemma1_alpha, theorem1_alpha
from .engine import (
    EngineConfig,
    per_m_bigint,
    per_m_sparse,
    quadrature_permanent,
    theorem2_permanent,
)
from .gaussint import GaussianBigInt
from .matrices import ComplexIntMatrix
from .oracles import grid_permanent, laplace_permanent, naive_permanent, ryser_permanent
from .primes import minimal_p

EXACT_ENGINES = {"naive", "ryser", "laplace", "theorem2-sparse", "theorem2-bigint"}
FLOAT_ENGINES = {"grid", "quadrature"}


@dataclass(frozen=True)
class TrialSpec:
    n_lo: int
    n_hi: int
    entry_kind: str = "binary"  # binary | integer | gaussian
    M: int = 1
    trials: int = 10
    seed: int = 0
    engines: tuple[str, ...] = ("naive", "ryser")
    p_policy: int | str = "minimal"
    tolerance: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if len(self.engines) < 2:
            raise ValueError("need at least two engines to cross-check")

    def to_json(self) -> dict:
        return {
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "entry_kind": self.entry_kind,
            "M": self.M,
            "trials": self.trials,
            "seed": self.seed,
            "engines": list(self.engines),
            "p_policy": self.p_policy,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class DiscrepancyRecord:
    trial: int
    seed: int
    matrix: dict
    results: dict
    alpha: dict | None
    config: dict

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "seed": self.seed,
            "matrix": self.matrix,
            "results": self.results,
            "alpha": self.alpha,
            "config": self.config,
        }


def _substream(seed: int, trial: int) -> random.Random:
    """Deterministic per-trial generator, independent of trial order."""
    digest = hashlib.blake2b(
        f"irisperm:{seed}:{trial}".encode(), digest_size=8
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


def random_matrix(n: int, entry_kind: str, seed: int, M: int = 1, trial: int = 0) -> ComplexIntMatrix:
    """Deterministic random matrix for (seed, trial); entries within bound."""
    rng = _substream(seed, trial)
    return _random_matrix_from(rng, n, entry_kind, M)


def _random_matrix_from(rng: random.Random, n: int, entry_kind: str, M: int) -> ComplexIntMatrix:
    if entry_kind == "binary":
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
    elif entry_kind == "integer":
        rows = [[rng.randint(-M, M) for _ in range(n)] for _ in range(n)]
    elif entry_kind == "gaussian":
        def draw():
            while True:
                re = rng.randint(-M, M)
                im = rng.randint(-M, M)
                if re * re + im * im <= M * M:
                    return (re, im)

        rows = [[draw() for _ in range(n)] for _ in range(n)]
    else:
        raise ValueError(f"unknown entry kind {entry_kind!r}")
    return ComplexIntMatrix(rows)


class _AlphaCache:
    """Lemma-style alphas and quadrature alphas, built once per dimension."""

    def __init__(self, p_policy):
        self.p_policy = p_policy
        self._lemma = {}
        self._two_row = {}

    def _p(self, n: int) -> int:
        if self.p_policy == "minimal":
            return minimal_p(n) if n >= 3 else 1
        if self.p_policy == "cube":
            return n**3
        return int(self.p_policy)

    def lemma(self, n: int):
        if n not in self._lemma:
            self._lemma[n] = lemma1_alpha(n, self._p(n))
        return self._lemma[n]

    def two_row(self, n: int):
        if n not in self._two_row:
            self._two_row[n] = theorem1_alpha(n, self._p(n), override=n <= 2)
        return self._two_row[n]


def _builtin_engines(cache: _AlphaCache, config_mode_k="auto"):
    validated: set[tuple] = set()

    def _sparse(A):
        alpha = cache.lemma(A.n)
        key = alpha.rows
        skip = key in validated
        value = per_m_sparse(A, alpha, skip_validation=skip)
        validated.add(key)
        return value

    def _bigint(A):
        from .engine import auto_k

        alpha = cache.lemma(A.n)
        key = alpha.rows
        skip = key in validated
        value = per_m_bigint(A, alpha, auto_k(A.M, A.n), skip_validation=skip)
        validated.add(key)
        return value

    return {
        "naive": naive_permanent,
        "ryser": ryser_permanent,
        "laplace": laplace_permanent,
        "grid": grid_permanent,
        "quadrature": lambda A: quadrature_permanent(A, cache.two_row(A.n)),
        "theorem2-sparse": _sparse,
        "theorem2-bigint": _bigint,
    }


def _engine_context(spec: TrialSpec, extra_engines=None):
    cache = _AlphaCache(spec.p_policy)
    engines = _builtin_engines(cache)
    exact = set(EXACT_ENGINES)
    if extra_engines:
        for name, (fn, is_exact) in extra_engines.items():
            engines[name] = fn
            if is_exact:
                exact.add(name)
    return engines, exact, cache


def _trial_matrix(spec: TrialSpec, trial: int) -> ComplexIntMatrix:
    rng = _substream(spec.seed, trial)
    n = rng.randint(spec.n_lo, spec.n_hi)
    return _random_matrix_from(rng, n, spec.entry_kind, spec.M)


def run_crosscheck(spec: TrialSpec, extra_engines=None) -> tuple[dict, list[DiscrepancyRecord]]:
    """Run every engine on every trial matrix and compare the results.

    Returns a summary plus one DiscrepancyRecord per trial where exact
    engines disagreed or a float engine strayed beyond tolerance.
    """
    engines, exact_names, cache = _engine_context(spec, extra_engines)
    selected_exact = [e for e in spec.engines if e in exact_names]
    selected_float = [e for e in spec.engines if e not in exact_names]
    if not selected_exact and spec.tolerance is None:
        raise ValueError("float-only engine sets require an explicit tolerance")
    if selected_float and spec.tolerance is None:
        raise ValueError(f"engines {selected_float} need a tolerance")

    records: list[DiscrepancyRecord] = []
    pair_disagreements: dict[str, int] = {}
    for trial in range(spec.trials):
        A = _trial_matrix(spec, trial)
        results = {name: engines[name](A) for name in spec.engines}

        bad_pairs = []
        for i, e1 in enumerate(selected_exact):
            for e2 in selected_exact[i + 1 :]:
                if results[e1] != results[e2]:
                    bad_pairs.append((e1, e2))
        if selected_exact:
            ref_name = selected_exact[0]
            ref = complex(results[ref_name])
            for e in selected_float:
                if abs(complex(results[e]) - ref) > spec.tolerance:
                    bad_pairs.append((ref_name, e))
        else:
            for i, e1 in enumerate(selected_float):
                for e2 in selected_float[i + 1 :]:
                    if abs(complex(results[e1]) - complex(results[e2])) > spec.tolerance:
                        bad_pairs.append((e1, e2))

        if bad_pairs:
            for pair in bad_pairs:
                key = "|".join(pair)
                pair_disagreements[key] = pair_disagreements.get(key, 0) + 1
            alpha = None
            if any(e.startswith("theorem2") for e in spec.engines):
                alpha = cache.lemma(A.n).to_json()
            records.append(
                DiscrepancyRecord(
                    trial=trial,
                    seed=spec.seed,
                    matrix=A.to_json(),
                    results={k: _encode_result(v) for k, v in results.items()},
                    alpha=alpha,
                    config=spec.to_json(),
                )
            )

    records.sort(key=lambda r: r.trial)
    summary = {
        "spec": spec.to_json(),
        "trials": spec.trials,
        "discrepancies": len(records),
        "pair_disagreements": dict(sorted(pair_disagreements.items())),
    }
    return summary, records


def _encode_result(v):
    if isinstance(v, GaussianBigInt):
        return v.to_json()
    v = complex(v)
    return {"re_float": v.real, "im_float": v.imag}


def emit_jsonl(summary: dict, records: list[DiscrepancyRecord]) -> str:
    """Summary plus one record per line, byte-stable for fixed inputs."""
    lines = [json.dumps({"summary": summary}, sort_keys=True)]
    lines.extend(json.dumps({"record": r.to_json()}, sort_keys=True) for r in records)
    return "\n".join(lines) + "\n"


def bench(spec: TrialSpec) -> list[dict]:
    """Per-engine wall times plus size metrics for the modular engines."""
    engines, exact_names, cache = _engine_context(spec)
    rows = []
    for name in spec.engines:
        fn = engines[name]
        times = []
        extra: dict = {}
        for trial in range(spec.trials):
            A = _trial_matrix(spec, trial)
            t0 = time.perf_counter()
            if name == "theorem2-sparse":
                value, report = theorem2_permanent(
                    A, EngineConfig(mode="sparse", p_policy=spec.p_policy, validation="brute")
                )
                extra = {
                    "term_count": report["term_count"],
                    "max_exponent": report["max_exponent"],
                }
            elif name == "theorem2-bigint":
                value, report = theorem2_permanent(
                    A, EngineConfig(mode="bigint", p_policy=spec.p_policy, validation="brute")
                )
                extra = {"bit_count": report["bit_count"], "k": report["k"]}
            else:
                fn(A)
            times.append(time.perf_counter() - t0)
        rows.append(
            {
                "engine": name,
                "trials": spec.trials,
                "median_s": statistics.median(times),
                "worst_s": max(times),
                **extra,
            }
        )
    return rows
