"""Random test instances and the plain-text matrix format.

Both generators draw from ``numpy.random.Generator(PCG64(seed))`` using
``standard_normal`` (numpy's ziggurat method), so a given ``(n, seed)``
reproduces the same matrix on every platform for a fixed numpy release.

Text format: one row per line, whitespace-separated decimals, ``n`` is the
number of rows. Values are written with 17 significant digits, enough to
round-trip any double exactly.
"""

from __future__ import annotations

import os

import numpy as np

from .core import SymmetricMatrix, symmetrize
from .errors import DimensionError, ValidationError


class MatrixFormatError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _rng(seed: int) -> np.random.Generator:
    if int(seed) != seed or seed < 0:
        raise ValidationError(f"seed must be a non-negative integer, got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")
    return int(n)


def gaussian_symmetric(n: int, seed: int) -> SymmetricMatrix:
    """``(R + R^T) / 2`` with ``R`` i.i.d. standard normal.

    Diagonal entries keep unit variance, off-diagonal entries have variance 1/2.
    """
    n = _check_n(n)
    return symmetrize(_rng(seed).standard_normal((n, n)))


def psd(n: int, seed: int) -> SymmetricMatrix:
    """Sample-covariance style Gram matrix ``G^T G / n``, ``G`` i.i.d. standard normal.

    Positive definite almost surely, with diagonal entries near 1. The
    ``1/n`` keeps entries O(1) so penalty weights are comparable across ``n``.
    """
    n = _check_n(n)
    g = _rng(seed).standard_normal((n, n))
    # einsum without BLAS: fixed summation order, exactly symmetric result
    gram = np.einsum("ki,kj->ij", g, g, optimize=False) / n
    return SymmetricMatrix((gram + gram.T) / 2.0)


GENERATORS = {"gaussian": gaussian_symmetric, "psd": psd}


def save_matrix(a: SymmetricMatrix, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for row in a.entries:
            fh.write(" ".join(format(float(v), ".17g") for v in row))
            fh.write("\n")


def load_matrix(path: str | os.PathLike, symmetrize_input: bool = False) -> SymmetricMatrix:
    """Read a matrix file.

    Asymmetric data is rejected unless ``symmetrize_input`` is set, in which
    case ``(R + R^T) / 2`` is returned.
    """
    rows = []
    width = None
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            try:
                row = [float(v) for v in fields]
            except ValueError as exc:
                raise MatrixFormatError(f"cannot parse value ({exc})", lineno) from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise MatrixFormatError(f"expected {width} values, found {len(row)}", lineno)
            rows.append(row)
    if not rows:
        raise MatrixFormatError("file contains no matrix rows")
    if width != len(rows):
        raise DimensionError(f"matrix must be square: {len(rows)} rows of {width} values")
    raw = np.array(rows)
    if symmetrize_input:
        return symmetrize(raw)
    return SymmetricMatrix(raw)
