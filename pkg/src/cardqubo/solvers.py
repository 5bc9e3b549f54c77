"""Simulated annealing and exhaustive oracles for ``min x^T A x``.

The annealer is single-bit-flip Metropolis with geometric cooling. Sites are
visited in index order within each sweep and one uniform variate is drawn per
proposed flip, so the random stream consumed by a run is fixed by the schedule
alone. Each run owns a ``numpy.random.Generator(PCG64(seed))``: the first
``n`` draws from ``integers(0, 2)`` give the initial state, then one block of
``random()`` draws per temperature level drives acceptance.

Many seeds can be annealed together (:func:`anneal_batch`). The batch kernel
only uses elementwise arithmetic, so a run produces bit-identical output
whether it is executed alone or alongside others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable, Sequence

import numpy as np

from .core import BinaryLike, BinaryVector, SymmetricMatrix, all_binary_vectors, as_binary, evaluate
from .errors import CapacityError, DimensionError, ValidationError

MAX_BRUTE_FORCE_N = 30
MAX_COMBINATIONS = 10**8

_LOW_BITS = 16
_CHUNK = 1 << 16


@dataclass(frozen=True)
class AnnealSchedule:
    t_initial: float
    t_final: float
    cooling: float
    sweeps_per_temperature: int

    def __post_init__(self):
        if not (math.isfinite(self.t_initial) and math.isfinite(self.t_final)):
            raise ValidationError("temperatures must be finite")
        if not 0 < self.t_final < self.t_initial:
            raise ValidationError(
                f"need 0 < t_final < t_initial, got t_final={self.t_final}, t_initial={self.t_initial}"
            )
        if not 0 < self.cooling < 1:
            raise ValidationError(f"cooling factor must lie in (0, 1), got {self.cooling}")
        if int(self.sweeps_per_temperature) != self.sweeps_per_temperature or self.sweeps_per_temperature < 1:
            raise ValidationError(
                f"sweeps_per_temperature must be a positive integer, got {self.sweeps_per_temperature}"
            )

    def temperatures(self) -> np.ndarray:
        """Levels ``t_initial * cooling**k`` down to, and including, ``t_final``."""
        count = int(math.floor(math.log(self.t_final / self.t_initial) / math.log(self.cooling) + 1e-12)) + 1
        return self.t_initial * self.cooling ** np.arange(count)


FAST = AnnealSchedule(t_initial=10.0, t_final=0.05, cooling=0.8, sweeps_per_temperature=2)
QUALITY = AnnealSchedule(t_initial=10.0, t_final=0.05, cooling=0.98, sweeps_per_temperature=10)
SCHEDULES = {"fast": FAST, "quality": QUALITY}


@dataclass(frozen=True, eq=False)
class SolveResult:
    cost: float
    solution: BinaryVector
    seed: int | None = None

    @property
    def cardinality(self) -> int:
        return self.solution.cardinality


def _check_seed(seed) -> int:
    if int(seed) != seed or seed < 0 or seed >= 1 << 64:
        raise ValidationError(f"seed must be an integer in [0, 2**64), got {seed}")
    return int(seed)


def single_flip_delta(a: SymmetricMatrix, x: BinaryLike, i: int) -> float:
    """Energy change from flipping bit ``i`` of ``x``, in O(n)."""
    x = as_binary(x)
    if x.n != a.n:
        raise DimensionError(f"matrix is {a.n}x{a.n} but vector has length {x.n}")
    if int(i) != i or not 0 <= i < a.n:
        raise ValidationError(f"index {i} out of range for n={a.n}")
    row = a.entries[i]
    v = x.bits.astype(np.float64)
    direction = 1.0 - 2.0 * v[i]
    off = float(row @ v) - row[i] * v[i]
    return float(direction * (row[i] + 2.0 * off))


def simulated_anneal(a: SymmetricMatrix, schedule: AnnealSchedule = FAST, seed: int = 0) -> SolveResult:
    """Anneal one run and return the best state visited."""
    return anneal_batch(a, schedule, [seed])[0]


def anneal_batch(a: SymmetricMatrix, schedule: AnnealSchedule, seeds: Sequence[int]) -> list[SolveResult]:
    """Anneal one independent run per seed; ``result[b]`` matches ``simulated_anneal(a, schedule, seeds[b])``."""
    seeds = [_check_seed(s) for s in seeds]
    if not seeds:
        return []
    A = a.entries
    n = a.n
    diag = np.diagonal(A).copy()
    rngs = [np.random.Generator(np.random.PCG64(s)) for s in seeds]

    X = np.stack([r.integers(0, 2, size=n) for r in rngs]).astype(np.float64)
    # local fields H = X A, accumulated in fixed column order
    H = np.zeros_like(X)
    for j in range(n):
        H += X[:, j : j + 1] * A[j]
    E = np.zeros(len(seeds))
    for j in range(n):
        E += X[:, j] * H[:, j]

    best_E = E.copy()
    best_X = X.copy()
    steps = schedule.sweeps_per_temperature * n

    for T in schedule.temperatures():
        U = np.stack([r.random(steps) for r in rngs])
        t = 0
        for _ in range(schedule.sweeps_per_temperature):
            for i in range(n):
                xi = X[:, i]
                s = 1.0 - 2.0 * xi
                delta = s * (diag[i] + 2.0 * (H[:, i] - diag[i] * xi))
                accept = (delta <= 0.0) | (U[:, t] < np.exp(-np.maximum(delta, 0.0) / T))
                t += 1
                if not accept.any():
                    continue
                step = np.where(accept, s, 0.0)
                X[:, i] = xi + step
                H += step[:, None] * A[i]
                E += np.where(accept, delta, 0.0)
                better = E < best_E
                if better.any():
                    best_E[better] = E[better]
                    best_X[better] = X[better]

    out = []
    for b, seed in enumerate(seeds):
        x = BinaryVector(best_X[b].astype(np.int8))
        out.append(SolveResult(cost=evaluate(a, x), solution=x, seed=seed))
    return out


def _popcount(codes: np.ndarray) -> np.ndarray:
    return np.bitwise_count(codes.astype(np.uint64)).astype(np.int64)


def _block_search(a: SymmetricMatrix, cardinality: int | None = None) -> SolveResult:
    """Enumerate all ``2**n`` vectors in increasing little-endian order.

    The low bits form a table of ``2**L`` partial energies; for each setting
    of the high bits only the cross term ``2 X_low (A_lh x_high)`` is new.
    """
    A = a.entries
    n = a.n
    L = min(n, _LOW_BITS)
    X_low = all_binary_vectors(L).astype(np.float64)
    A_ll = A[:L, :L]
    E_low = np.einsum("ri,ij,rj->r", X_low, A_ll, X_low)
    A_lh = A[:L, L:]
    A_hh = A[L:, L:]
    pop_low = _popcount(np.arange(1 << L)) if cardinality is not None else None

    best_cost = math.inf
    best_code = -1
    for high in range(1 << (n - L)):
        x_high = np.array([(high >> j) & 1 for j in range(n - L)], dtype=np.float64)
        energies = E_low + float(x_high @ A_hh @ x_high) + 2.0 * (X_low @ (A_lh @ x_high))
        if cardinality is not None:
            need = cardinality - int(x_high.sum())
            if not 0 <= need <= L:
                continue
            energies = np.where(pop_low == need, energies, np.inf)
        idx = int(np.argmin(energies))
        if energies[idx] < best_cost:
            best_cost = float(energies[idx])
            best_code = idx | (high << L)

    x = BinaryVector.from_int(best_code, n)
    return SolveResult(cost=evaluate(a, x), solution=x)


def brute_force(a: SymmetricMatrix) -> SolveResult:
    """Exact global minimizer; ties go to the smallest little-endian code."""
    if a.n > MAX_BRUTE_FORCE_N:
        raise CapacityError(f"brute force limited to n <= {MAX_BRUTE_FORCE_N}, got n={a.n}")
    return _block_search(a)


def _combination_chunks(n: int, m: int) -> Iterable[np.ndarray]:
    it = combinations(range(n), m)
    while True:
        chunk = list(islice(it, _CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp).reshape(len(chunk), m)


def brute_force_cardinality(a: SymmetricMatrix, m: int) -> SolveResult:
    """Exact minimizer over vectors with exactly ``m`` ones; same tie-break as :func:`brute_force`."""
    n = a.n
    if int(m) != m or not 0 <= m <= n:
        raise ValidationError(f"cardinality must lie in 0..{n}, got {m}")
    m = int(m)
    count = math.comb(n, m)
    if count > MAX_COMBINATIONS:
        raise CapacityError(f"C({n}, {m}) = {count} subsets exceeds the limit {MAX_COMBINATIONS}")
    if n <= MAX_BRUTE_FORCE_N and count * m * m > (1 << n):
        return _block_search(a, cardinality=m)

    A = a.entries
    best_cost = math.inf
    best_code = None
    for idx in _combination_chunks(n, m):
        energies = A[idx[:, :, None], idx[:, None, :]].sum(axis=(1, 2))
        low = float(energies.min())
        if low > best_cost:
            continue
        for r in np.flatnonzero(energies == low):
            code = sum(1 << int(j) for j in idx[r])
            if low < best_cost or code < best_code:
                best_cost, best_code = low, code
    x = BinaryVector.from_int(best_code, n)
    return SolveResult(cost=evaluate(a, x), solution=x)
