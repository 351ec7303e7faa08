"""Local observables X(alpha) as exact monomial matrices.

A :class:`MonomialOp` stores, for every column ``c``, the row ``target[c]`` of
its single nonzero entry and that entry's root-of-unity exponent.  Composite
observables are plain sequences of MonomialOps, one per party; they are never
expanded into D**N matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exactnum import CycScalar, OrderMismatchError, PhaseLike, as_phase, omega_exponent


class DimensionError(ValueError):
    pass


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MonomialOp:
    target: np.ndarray
    exps: np.ndarray
    order: int

    def __post_init__(self):
        target = _frozen(self.target)
        exps = _frozen(np.asarray(self.exps) % self.order)
        dim = target.shape[0]
        if target.shape != (dim,) or exps.shape != (dim,):
            raise DimensionError("target and exps must be 1-d arrays of equal length")
        if sorted(target.tolist()) != list(range(dim)):
            raise ValueError("target is not a permutation")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "exps", exps)

    @property
    def dim(self) -> int:
        return self.target.shape[0]

    @property
    def weight(self) -> list[CycScalar]:
        return [CycScalar(int(e), self.order) for e in self.exps]

    @classmethod
    def identity(cls, dim: int, order: int) -> "MonomialOp":
        return cls(np.arange(dim), np.zeros(dim, dtype=np.int64), order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialOp):
            return NotImplemented
        return (
            self.order == other.order
            and np.array_equal(self.target, other.target)
            and np.array_equal(self.exps, other.exps)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.target.tobytes(), self.exps.tobytes()))

    def __matmul__(self, other: "MonomialOp") -> "MonomialOp":
        return compose(self, other)

    def adjoint(self) -> "MonomialOp":
        target = np.empty_like(self.target)
        exps = np.empty_like(self.exps)
        target[self.target] = np.arange(self.dim)
        exps[self.target] = -self.exps
        return MonomialOp(target, exps, self.order)

    def to_dense(self) -> np.ndarray:
        """Complex matrix; for tests and display only."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        vals = np.exp(2j * np.pi * self.exps / self.order)
        out[self.target, np.arange(self.dim)] = vals
        return out


def _check_pair(a: MonomialOp, b: MonomialOp) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} vs {b.order}")


def build_local_observable(alpha: PhaseLike, dim: int, order: Optional[int] = None) -> MonomialOp:
    """X(alpha) = P X P^dagger with P = diag(omega**(alpha*n)).

    Column ``n+1`` maps to row ``n`` with weight omega**(-alpha); column 0 maps
    to row ``D-1`` with weight omega**(-alpha) * omega**(alpha*D).
    """
    if dim < 2:
        raise DimensionError(f"local dimension must be >= 2, got {dim}")
    alpha = as_phase(alpha)
    if order is None:
        order = dim * alpha.denominator
    base = omega_exponent(-alpha, dim, order)
    exps = np.full(dim, base, dtype=np.int64)
    exps[0] = base + omega_exponent(alpha * dim, dim, order)
    target = (np.arange(dim) - 1) % dim
    return MonomialOp(target, exps, order)


def compose(a: MonomialOp, b: MonomialOp) -> MonomialOp:
    """Matrix product a @ b."""
    _check_pair(a, b)
    return MonomialOp(a.target[b.target], a.exps[b.target] + b.exps, a.order)


def proportionality(a: MonomialOp, b: MonomialOp) -> Optional[CycScalar]:
    """Ratio c with a == c * b, or None if no such scalar exists."""
    _check_pair(a, b)
    if not np.array_equal(a.target, b.target):
        return None
    diff = (a.exps - b.exps) % a.order
    if np.any(diff != diff[0]):
        return None
    return CycScalar(int(diff[0]), a.order)


def composite_commutator_phase(a: Sequence[MonomialOp], b: Sequence[MonomialOp]) -> Optional[CycScalar]:
    """Scalar c with A B = c B A for tensor products A, B, or None.

    Decided factor-wise: each A_k B_k must be proportional to B_k A_k and the
    ratios multiply.
    """
    if len(a) != len(b):
        raise DimensionError("composites have different party counts")
    total = CycScalar.one(a[0].order)
    for ak, bk in zip(a, b):
        ratio = proportionality(compose(ak, bk), compose(bk, ak))
        if ratio is None:
            return None
        total = total * ratio
    return total


def composites_commute(a: Sequence[MonomialOp], b: Sequence[MonomialOp]) -> bool:
    ratio = composite_commutator_phase(a, b)
    return ratio is not None and ratio.exponent == 0


def build_composite(phases: Sequence[Fraction], dim: int, order: int) -> list[MonomialOp]:
    return [build_local_observable(p, dim, order) for p in phases]
