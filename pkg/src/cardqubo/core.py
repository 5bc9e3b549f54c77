"""QUBO data types, exact algebraic transforms, and objective evaluation.

All problems are stored as a dense symmetric matrix ``A`` and the objective
is the pure quadratic form ``x^T A x`` over binary ``x``. A linear term is
absorbed into the diagonal with :func:`fold_linear`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionError, ValidationError

# Soft guard: dense storage stops being sensible well before this.
MAX_DIMENSION = 10_000


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_square(raw, what: str = "matrix") -> np.ndarray:
    arr = np.array(raw, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise DimensionError(f"{what} must have dimension >= 1")
    if arr.shape[0] > MAX_DIMENSION:
        raise DimensionError(
            f"{what} dimension {arr.shape[0]} exceeds the dense limit {MAX_DIMENSION}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} contains non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real symmetric ``n x n`` quadratic form.

    Construction rejects asymmetric input; go through :func:`symmetrize`
    to repair a triangular or otherwise non-symmetric matrix.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_square(self.entries)
        if not np.array_equal(arr, arr.T):
            gap = float(np.max(np.abs(arr - arr.T)))
            raise ValidationError(f"matrix is not symmetric (max |a_ij - a_ji| = {gap:g})")
        object.__setattr__(self, "entries", _readonly(arr))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __add__(self, other: "SymmetricMatrix") -> "SymmetricMatrix":
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"cannot add {self.n}x{self.n} and {other.n}x{other.n}")
        return SymmetricMatrix(self.entries + other.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    __hash__ = None

    @classmethod
    def zeros(cls, n: int) -> "SymmetricMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def identity(cls, n: int) -> "SymmetricMatrix":
        return cls(np.eye(n))

    @classmethod
    def ones(cls, n: int) -> "SymmetricMatrix":
        return cls(np.ones((n, n)))


@dataclass(frozen=True, eq=False)
class BinaryVector:
    """Candidate solution ``x`` in ``{0,1}^n``."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.ndim != 1:
            raise DimensionError(f"binary vector must be 1-D, got shape {arr.shape}")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValidationError("binary vector entries must be exactly 0 or 1")
        object.__setattr__(self, "bits", _readonly(arr.astype(np.int8)))

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    @property
    def cardinality(self) -> int:
        return int(np.count_nonzero(self.bits))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryVector):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None

    def to_int(self) -> int:
        """Little-endian integer code: bit ``i`` contributes ``2**i``."""
        return sum(1 << i for i in np.flatnonzero(self.bits).tolist())

    @classmethod
    def from_int(cls, code: int, n: int) -> "BinaryVector":
        if code < 0 or code >> n:
            raise ValidationError(f"code {code} does not fit in {n} bits")
        return cls(np.array([(code >> i) & 1 for i in range(n)], dtype=np.int8))

    def bitstring(self) -> str:
        return "".join(str(int(b)) for b in self.bits)


@dataclass(frozen=True, eq=False)
class LinearTerm:
    """Linear coefficients ``B`` of the objective ``x^T A x + B . x``."""

    coefficients: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coefficients, dtype=np.float64, copy=True)
        if arr.ndim != 1:
            raise DimensionError(f"linear term must be 1-D, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("linear term contains non-finite entries")
        object.__setattr__(self, "coefficients", _readonly(arr))

    @property
    def n(self) -> int:
        return self.coefficients.shape[0]


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Spin-space form ``z^T J z + h . z + offset`` with ``z`` in ``{-1,+1}^n``."""

    coupling: SymmetricMatrix
    field: np.ndarray
    offset: float

    def __post_init__(self):
        h = np.array(self.field, dtype=np.float64, copy=True)
        if h.shape != (self.coupling.n,):
            raise DimensionError(
                f"field has shape {h.shape}, expected ({self.coupling.n},)"
            )
        if not (np.all(np.isfinite(h)) and np.isfinite(self.offset)):
            raise ValidationError("Ising field/offset must be finite")
        object.__setattr__(self, "field", _readonly(h))
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n(self) -> int:
        return self.coupling.n


BinaryLike = Union[BinaryVector, np.ndarray, list, tuple]


def as_binary(x: BinaryLike) -> BinaryVector:
    return x if isinstance(x, BinaryVector) else BinaryVector(np.asarray(x))


def symmetrize(raw) -> SymmetricMatrix:
    """Return ``(R + R^T) / 2``; leaves ``x^T R x`` unchanged for every ``x``."""
    arr = _as_square(raw)
    # float addition commutes, so the result is exactly symmetric
    return SymmetricMatrix((arr + arr.T) / 2.0)


def fold_linear(a: SymmetricMatrix, b: LinearTerm) -> SymmetricMatrix:
    """Absorb a linear term into the diagonal, ``A + diag(B)``.

    Valid because ``x_i**2 == x_i`` for binary variables.
    """
    if not isinstance(b, LinearTerm):
        b = LinearTerm(b)
    if a.n != b.n:
        raise DimensionError(f"matrix is {a.n}x{a.n} but linear term has length {b.n}")
    out = a.entries.copy()
    out[np.diag_indices(a.n)] += b.coefficients
    return SymmetricMatrix(out)


def evaluate(a: SymmetricMatrix, x: BinaryLike) -> float:
    """Energy ``x^T A x``."""
    x = as_binary(x)
    if x.n != a.n:
        raise DimensionError(f"matrix is {a.n}x{a.n} but vector has length {x.n}")
    v = x.bits.astype(np.float64)
    return float(v @ a.entries @ v)


def to_ising(a: SymmetricMatrix) -> IsingModel:
    """Change variables ``x = (z + 1) / 2``.

    Expanding ``x^T A x`` gives ``J = A/4``, ``h = (A 1)/2`` and
    ``offset = sum(A)/4`` for symmetric ``A``.
    """
    A = a.entries
    return IsingModel(
        coupling=SymmetricMatrix(A / 4.0),
        field=A.sum(axis=1) / 2.0,
        offset=float(A.sum()) / 4.0,
    )


def ising_evaluate(m: IsingModel, z) -> float:
    """Energy ``z^T J z + h . z + offset`` of a spin configuration."""
    s = np.asarray(z)
    if s.ndim != 1 or s.shape[0] != m.n:
        raise DimensionError(f"spin vector must have shape ({m.n},), got {s.shape}")
    if not np.all((s == 1) | (s == -1)):
        raise ValidationError("spin entries must be -1 or +1")
    s = s.astype(np.float64)
    return float(s @ m.coupling.entries @ s + m.field @ s + m.offset)


def spins_from_binary(x: BinaryLike) -> np.ndarray:
    return 2 * as_binary(x).bits.astype(np.int64) - 1


def all_binary_vectors(n: int) -> np.ndarray:
    """Every vector of ``{0,1}^n`` as rows, row ``c`` encoding integer ``c`` little-endian."""
    codes = np.arange(1 << n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(np.int8)


def close(a: float, b: float, tol: float = 1e-9) -> bool:
    """Absolute tolerance ``tol`` scaled by ``max(1, |value|)``."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
