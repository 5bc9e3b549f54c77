"""Cardinality penalty ``C(alpha) = alpha (J_N - 2 M I_N)``.

Adding ``C`` to a QUBO matrix contributes ``alpha k^2 + beta k`` for a binary
vector of cardinality ``k``, with ``beta = -2 alpha M``. That is
``alpha ((k - M)^2 - M^2)``, strictly minimized over integers at ``k = M``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import SymmetricMatrix
from .errors import DimensionError, ValidationError


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0:
        raise ValidationError(
            f"alpha must be a finite positive number (alpha > 0 gives a minimum), got {alpha}"
        )
    return alpha


@dataclass(frozen=True)
class PenaltySpec:
    n: int
    m_target: int
    alpha: float
    beta: float = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValidationError(f"n must be a positive integer, got {self.n}")
        if int(self.m_target) != self.m_target or not 1 <= self.m_target <= self.n:
            raise ValidationError(f"target cardinality must satisfy 1 <= M <= {self.n}, got {self.m_target}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m_target", int(self.m_target))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "beta", -2.0 * self.alpha * self.m_target)

    @classmethod
    def from_params(cls, n: int, alpha: float, beta: float) -> "PenaltySpec":
        """Build from the ``(alpha, beta)`` form; ``-beta / (2 alpha)`` must be an integer."""
        target = target_from_params(alpha, beta)
        if not target.is_integer:
            raise ValidationError(
                f"(alpha={alpha}, beta={beta}) targets non-integer cardinality {target.value}"
            )
        return cls(n=n, m_target=int(round(target.value)), alpha=alpha)


def penalty_matrix(spec: PenaltySpec) -> SymmetricMatrix:
    """``alpha`` off the diagonal, ``alpha (1 - 2M)`` on it."""
    c = np.full((spec.n, spec.n), spec.alpha)
    np.fill_diagonal(c, spec.alpha * (1 - 2 * spec.m_target))
    return SymmetricMatrix(c)


def penalty_matrix_ab(n: int, alpha: float, beta: float) -> SymmetricMatrix:
    """``alpha J_N + beta I_N`` with unrestricted ``beta``."""
    alpha = _check_alpha(alpha)
    return SymmetricMatrix(alpha * np.ones((n, n)) + float(beta) * np.eye(n))


def penalty_value(spec: PenaltySpec, k: int) -> float:
    """Closed-form ``x^T C x`` for any ``x`` with ``k`` ones."""
    if int(k) != k or not 0 <= k <= spec.n:
        raise ValidationError(f"cardinality must lie in 0..{spec.n}, got {k}")
    k = int(k)
    return spec.alpha * k * k + spec.beta * k


def apply_constraint(a: SymmetricMatrix, spec: PenaltySpec) -> SymmetricMatrix:
    if a.n != spec.n:
        raise DimensionError(f"matrix is {a.n}x{a.n} but penalty is for n={spec.n}")
    return a + penalty_matrix(spec)


def params_from_target(m: int, alpha: float, n: int | None = None) -> tuple[float, float]:
    """Return ``(alpha, beta)`` with ``beta = -2 alpha m``."""
    alpha = _check_alpha(alpha)
    if int(m) != m or m < 1 or (n is not None and m > n):
        upper = n if n is not None else "n"
        raise ValidationError(f"target cardinality must satisfy 1 <= M <= {upper}, got {m}")
    return alpha, -2.0 * alpha * int(m)


@dataclass(frozen=True)
class Target:
    """Cardinality targeted by an ``(alpha, beta)`` pair.

    ``value`` is returned as computed; deciding how to round a non-integer
    target is left to the caller, who can check ``is_integer``.
    """

    value: float

    @property
    def is_integer(self) -> bool:
        return float(self.value).is_integer()

    def __float__(self) -> float:
        return self.value

    def __eq__(self, other):
        if isinstance(other, Target):
            return self.value == other.value
        if isinstance(other, (int, float)):
            return self.value == other
        return NotImplemented

    __hash__ = None


def target_from_params(alpha: float, beta: float) -> Target:
    alpha = float(alpha)
    if alpha == 0 or not math.isfinite(alpha):
        raise ValidationError("target cardinality is undefined for alpha == 0")
    if alpha < 0:
        raise ValidationError(f"alpha must be positive (alpha < 0 gives a maximum), got {alpha}")
    value = -float(beta) / (2.0 * alpha)
    nearest = round(value)
    # undo representation noise from beta = -2 alpha M; real fractions are kept
    if abs(value - nearest) <= 1e-12 * max(1.0, abs(value)):
        value = float(nearest)
    return Target(value)


def safe_alpha(a: SymmetricMatrix) -> float:
    """Penalty weight above which every global minimizer has cardinality ``M``.

    Moving from ``k = M`` to any ``k != M`` costs at least ``alpha`` in
    penalty, while the data term can change by at most ``sum |a_ij|``.
    ``2 sum |a_ij| + 1`` clears that with room to spare; it is conservative.
    """
    return 2.0 * float(np.abs(a.entries).sum()) + 1.0
