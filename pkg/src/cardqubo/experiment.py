"""Multi-alpha, multi-trial annealing runs tallied into cardinality histograms."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constraint import PenaltySpec, apply_constraint
from .core import SymmetricMatrix
from .errors import ValidationError
from .instances import GENERATORS, load_matrix
from .solvers import SCHEDULES, anneal_batch

DEFAULT_ALPHAS = (0.0, 0.1, 0.2, 0.5, 1.0, 2.0, 10.0)
CSV_HEADER = ("alpha", "cardinality", "count", "best_cost", "mean_cost")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 30
    m_target: int = 8
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    trials: int = 500
    instance: str = "gaussian"  # gaussian | psd | file:PATH
    seed: int = 0
    schedule: str = "fast"

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        if not self.alphas:
            raise ValidationError("at least one alpha is required")
        if len(set(self.alphas)) != len(self.alphas):
            raise ValidationError(f"duplicate alphas in {self.alphas}")
        for a in self.alphas:
            if not math.isfinite(a) or a < 0:
                raise ValidationError(f"alphas must be finite and non-negative, got {a}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValidationError(f"trials must be a positive integer, got {self.trials}")
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n}")
        if int(self.m_target) != self.m_target or not 1 <= self.m_target <= self.n:
            raise ValidationError(f"target cardinality must satisfy 1 <= M <= {self.n}, got {self.m_target}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 1 << 64:
            raise ValidationError(f"seed must be an integer in [0, 2**64), got {self.seed}")
        if self.schedule not in SCHEDULES:
            raise ValidationError(f"unknown schedule {self.schedule!r}; choose from {sorted(SCHEDULES)}")
        if self.instance not in GENERATORS and not self.instance.startswith("file:"):
            raise ValidationError(f"instance must be gaussian, psd or file:PATH, got {self.instance!r}")


def build_instance(config: ExperimentConfig) -> SymmetricMatrix:
    if config.instance.startswith("file:"):
        a = load_matrix(config.instance[len("file:"):])
        if a.n != config.n:
            raise ValidationError(f"matrix file has n={a.n} but config says n={config.n}")
        return a
    return GENERATORS[config.instance](config.n, config.seed)


def trial_seed(seed: int, alpha_index: int, trial_index: int) -> int:
    """Per-trial 64-bit seed.

    ``SeedSequence(seed, spawn_key=(alpha_index, trial_index))`` hashes the
    three integers together, so each stream depends only on its own indices
    and adding alphas or trials never shifts existing streams.
    """
    ss = np.random.SeedSequence(seed, spawn_key=(alpha_index, trial_index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class HistogramSet:
    n: int
    trials: int
    alphas: tuple[float, ...]
    counts: dict[float, np.ndarray] = field(default_factory=dict)
    best_cost: dict[float, float] = field(default_factory=dict)
    mean_cost: dict[float, float] = field(default_factory=dict)

    def fraction_at(self, alpha: float, k: int) -> float:
        return float(self.counts[alpha][k]) / self.trials

    def mode(self, alpha: float) -> int:
        return int(np.argmax(self.counts[alpha]))

    def mean_cardinality(self, alpha: float) -> float:
        c = self.counts[alpha]
        return float(np.arange(len(c)) @ c) / self.trials


def _run_alpha(a: SymmetricMatrix, config: ExperimentConfig, index: int, alpha: float):
    matrix = a if alpha == 0 else apply_constraint(a, PenaltySpec(config.n, config.m_target, alpha))
    seeds = [trial_seed(config.seed, index, t) for t in range(config.trials)]
    results = anneal_batch(matrix, SCHEDULES[config.schedule], seeds)
    counts = np.bincount([r.cardinality for r in results], minlength=config.n + 1)
    costs = np.array([r.cost for r in results])
    return counts, float(costs.min()), float(costs.mean())


def run_experiment(config: ExperimentConfig, workers: int = 1) -> HistogramSet:
    """Anneal ``config.trials`` runs per alpha on one generated instance.

    ``alpha == 0`` anneals the raw matrix; otherwise ``A + C(alpha)``.
    Costs are energies of the matrix that was annealed. Alphas may run on
    ``workers`` threads; results are merged by alpha index, so output does
    not depend on ``workers``.
    """
    a = build_instance(config)
    jobs = list(enumerate(config.alphas))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(lambda job: _run_alpha(a, config, *job), jobs))
    else:
        outputs = [_run_alpha(a, config, i, alpha) for i, alpha in jobs]
    hist = HistogramSet(n=config.n, trials=config.trials, alphas=config.alphas)
    for alpha, (counts, best, mean) in zip(config.alphas, outputs):
        hist.counts[alpha] = counts
        hist.best_cost[alpha] = best
        hist.mean_cost[alpha] = mean
    return hist


def histograms_to_csv(h: HistogramSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for alpha in sorted(h.alphas):
        for k, count in enumerate(h.counts[alpha]):
            writer.writerow([repr(alpha), k, int(count), repr(h.best_cost[alpha]), repr(h.mean_cost[alpha])])
    return buf.getvalue()


def write_histograms(h: HistogramSet, path: str | os.PathLike) -> None:
    """Long-format CSV, one row per (alpha, cardinality) for cardinality 0..n."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(histograms_to_csv(h))


def read_histograms(path: str | os.PathLike) -> dict[float, dict[int, int]]:
    out: dict[float, dict[int, int]] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(float(row["alpha"]), {})[int(row["cardinality"])] = int(row["count"])
    return out
