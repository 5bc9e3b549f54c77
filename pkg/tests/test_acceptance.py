"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary.

Example runs use the CLI defaults: instance seed 0, fast schedule,
500 trials, N=30, M=8 and the alpha set {0, 0.1, 0.2, 0.5, 1, 2, 10}.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from cardqubo.constraint import PenaltySpec, apply_constraint, penalty_matrix, penalty_value, safe_alpha
from cardqubo.core import LinearTerm, all_binary_vectors, fold_linear, symmetrize, to_ising
from cardqubo.experiment import DEFAULT_ALPHAS, ExperimentConfig, run_experiment
from cardqubo.instances import gaussian_symmetric, psd
from cardqubo.solvers import QUALITY, anneal_batch, brute_force, brute_force_cardinality

ALPHAS = [0.1, 0.5, 1.0, 2.0, 10.0]
N, M, TRIALS = 30, 8, 500


def _forms(matrix, X):
    """Row-wise x^T A x for a stack of binary rows (einsum, no shared code with the package)."""
    X = np.asarray(X, dtype=float)
    return np.einsum("ri,ij,rj->r", X, np.asarray(matrix, dtype=float), X)


def _identity_errors(rng, n, X):
    raw = rng.uniform(-10, 10, (n, n))
    b = rng.uniform(-10, 10, n)
    a = symmetrize(raw)
    errs = {}
    errs["symmetrize"] = np.abs(_forms(a.entries, X) - _forms(raw, X)).max()
    errs["fold_linear"] = np.abs(_forms(fold_linear(a, LinearTerm(b)).entries, X) - (_forms(a.entries, X) + X @ b)).max()
    m = to_ising(a)
    Z = 2.0 * X - 1.0
    ising = _forms(m.coupling.entries, Z) + Z @ m.field + m.offset
    errs["to_ising"] = np.abs(ising - _forms(a.entries, X)).max()
    spec = PenaltySpec(n, int(rng.integers(1, n + 1)), float(rng.choice(ALPHAS)))
    closed = np.array([penalty_value(spec, int(k)) for k in X.sum(axis=1)])
    errs["penalty"] = np.abs(_forms(penalty_matrix(spec).entries, X) - closed).max()
    return errs


def test_c1_algebraic_identities(rng, report):
    start = time.perf_counter()
    worst = dict.fromkeys(["symmetrize", "fold_linear", "to_ising", "penalty"], 0.0)
    # 1000 randomized cases per identity at n <= 20
    for _ in range(1000):
        n = int(rng.integers(1, 21))
        x = rng.integers(0, 2, (1, n))
        for k, v in _identity_errors(rng, n, x).items():
            worst[k] = max(worst[k], v)
    # exhaustive over {0,1}^n for n <= 10
    for n in range(1, 11):
        X = all_binary_vectors(n)
        for _ in range(3):
            for k, v in _identity_errors(rng, n, X).items():
                worst[k] = max(worst[k], v)
    elapsed = time.perf_counter() - start
    ok = all(v <= 1e-9 for v in worst.values()) and elapsed < 10
    detail = ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    report("C1 algebraic identities", ok, f"max abs err {detail}; {elapsed:.1f}s")
    assert ok


def test_c2_penalty_minimum(report):
    failures = 0
    for n in range(1, 31):
        for m in range(1, n + 1):
            for alpha in ALPHAS:
                spec = PenaltySpec(n, m, alpha)
                values = [penalty_value(spec, k) for k in range(n + 1)]
                if int(np.argmin(values)) != m or any(v <= values[m] for k, v in enumerate(values) if k != m):
                    failures += 1
                for d in range(1, min(m, n - m) + 1):
                    if abs(values[m + d] - values[m - d]) > 1e-9:
                        failures += 1
    report("C2 penalty minimum at M = -beta/(2 alpha)", failures == 0, f"{failures} violations")
    assert failures == 0


@pytest.mark.slow
def test_c3_sufficiency_theorem(report):
    start = time.perf_counter()
    checked = bad = 0
    for family in (gaussian_symmetric, psd):
        for seed in range(20):
            a = family(12, seed)
            alpha = safe_alpha(a)
            for m in range(1, 12):
                spec = PenaltySpec(12, m, alpha)
                opt = brute_force(apply_constraint(a, spec))
                restricted = brute_force_cardinality(a, m)
                offset_removed = opt.cost - penalty_value(spec, m)
                checked += 1
                if opt.cardinality != m or abs(offset_removed - restricted.cost) > 1e-9 * max(1.0, alpha * 144):
                    bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 120
    report("C3 safe_alpha sufficiency (n=12)", ok, f"{checked - bad}/{checked} cases; {elapsed:.1f}s")
    assert ok


@pytest.fixture(scope="module")
def example1():
    start = time.perf_counter()
    h = run_experiment(ExperimentConfig(n=N, m_target=M, alphas=DEFAULT_ALPHAS, trials=TRIALS, instance="gaussian"))
    return h, time.perf_counter() - start


@pytest.fixture(scope="module")
def example2():
    start = time.perf_counter()
    h = run_experiment(ExperimentConfig(n=N, m_target=M, alphas=DEFAULT_ALPHAS, trials=TRIALS, instance="psd"))
    return h, time.perf_counter() - start


@pytest.mark.slow
def test_c4_runtime(example1, report):
    _, elapsed = example1
    ok = elapsed < 60
    report("C4 example 1 runtime", ok, f"{elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_c4_unconstrained_between_10_and_20(example1, report):
    h, _ = example1
    counts = h.counts[0.0]
    inside = counts[10:21].sum() / TRIALS
    mean = h.mean_cardinality(0.0)
    half_width = math.sqrt(N)
    ok = inside >= 2 / 3 and N / 2 - half_width <= mean <= N / 2 + half_width
    report(
        "C4 example 1 unconstrained mass in [10, 20]",
        ok,
        f"fraction in [10,20] = {inside:.3f} (need >= 0.667), mean k = {mean:.2f}, mode = {h.mode(0.0)}",
    )
    assert ok


@pytest.mark.slow
def test_c4_mode_moves_toward_target(example1, report):
    h, _ = example1
    modes = [h.mode(a) for a in DEFAULT_ALPHAS]
    gaps = [abs(k - M) for k in modes]
    ok = all(later <= earlier for earlier, later in zip(gaps, gaps[1:]))
    report("C4 example 1 mode shifts monotonically toward 8", ok, f"modes {modes}")
    assert ok


@pytest.mark.slow
def test_c4_alpha10_selects_target(example1, report):
    h, _ = example1
    frac = h.fraction_at(10.0, M)
    ok = frac >= 0.99
    report("C4 example 1 alpha=10 at cardinality 8", ok, f"{frac:.3f} (need >= 0.99)")
    assert ok


@pytest.mark.slow
def test_c5_psd_trend(example2, report):
    h, elapsed = example2
    fractions = {a: h.fraction_at(a, M) for a in DEFAULT_ALPHAS}
    ok = fractions[0.5] >= 0.80 and all(fractions[a] >= 0.99 for a in DEFAULT_ALPHAS if a >= 2) and elapsed < 60
    detail = " ".join(f"a={a:g}:{f:.3f}" for a, f in fractions.items())
    report("C5 example 2 PSD pull to 8", ok, f"{detail}; {elapsed:.1f}s")
    assert ok


@pytest.mark.slow
def test_c6_annealer_vs_oracle(report):
    hits = []
    for seed in range(10):
        a = gaussian_symmetric(16, seed)
        opt = brute_force(a).cost
        results = anneal_batch(a, QUALITY, range(100))
        hits.append(sum(abs(r.cost - opt) <= 1e-9 * max(1.0, abs(opt)) for r in results))
    ok = min(hits) >= 80
    report("C6 quality annealer hits brute-force optimum", ok, f"hits per instance {hits} (need >= 80 each)")
    assert ok


@pytest.mark.slow
def test_c7_reproducible_csv(tmp_path, report):
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        subprocess.run(
            [sys.executable, "-m", "cardqubo", "experiment", "--instance", "gaussian", "--seed", "0", "--out", str(out)],
            check=True,
            capture_output=True,
        )
        outputs.append(out.read_bytes())
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 0
    report("C7 experiment CSV byte-identical across runs", ok, f"{len(outputs[0])} bytes")
    assert ok
