"""Sparse N-qudit kets with root-of-unity amplitudes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .exactnum import CycScalar
from .operators import DimensionError, MonomialOp

Basis = tuple[int, ...]


@dataclass(frozen=True)
class SparseState:
    """(1/sqrt(len(terms))) * sum of amplitude * |basis>.

    The normalisation is symbolic: ``norm_divisor`` is the count under the
    square root and is never evaluated numerically.
    """

    n_parties: int
    dim: int
    order: int
    terms: Mapping[Basis, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for basis, exp in sorted(self.terms.items()):
            basis = tuple(int(b) for b in basis)
            if len(basis) != self.n_parties or any(not 0 <= b < self.dim for b in basis):
                raise DimensionError(f"basis string {basis} invalid for N={self.n_parties}, D={self.dim}")
            clean[basis] = int(exp) % self.order
        object.__setattr__(self, "terms", clean)

    @property
    def norm_divisor(self) -> int:
        return len(self.terms)

    def amplitude(self, basis: Basis) -> CycScalar:
        if basis not in self.terms:
            return CycScalar.zero(self.order)
        return CycScalar(self.terms[basis], self.order)


def build_ghz(n_parties: int, dim: int, order: Optional[int] = None) -> SparseState:
    if n_parties < 2:
        raise ValueError(f"need at least 2 parties, got {n_parties}")
    if dim < 2:
        raise DimensionError(f"local dimension must be >= 2, got {dim}")
    order = dim if order is None else order
    return SparseState(n_parties, dim, order, {(n,) * n_parties: 0 for n in range(dim)})


def _check_shapes(obs: Sequence[MonomialOp], state: SparseState) -> None:
    if len(obs) != state.n_parties:
        raise DimensionError(f"{len(obs)} factors for a {state.n_parties}-party state")
    for op in obs:
        if op.dim != state.dim:
            raise DimensionError(f"factor of dim {op.dim} on a D={state.dim} state")
        if op.order != state.order:
            raise DimensionError(f"factor of order {op.order} on a state of order {state.order}")


def apply_composite(obs: Sequence[MonomialOp], state: SparseState) -> SparseState:
    """Apply the tensor product of ``obs`` factor by factor."""
    _check_shapes(obs, state)
    out = {}
    for basis, exp in state.terms.items():
        new = tuple(int(op.target[b]) for op, b in zip(obs, basis))
        out[new] = exp + sum(int(op.exps[b]) for op, b in zip(obs, basis))
    return SparseState(state.n_parties, state.dim, state.order, out)


def eigenvalue_of(obs: Sequence[MonomialOp], state: SparseState) -> Optional[CycScalar]:
    """Eigenvalue of ``state`` under the composite, or None if not an eigenstate."""
    image = apply_composite(obs, state)
    if image.terms.keys() != state.terms.keys():
        return None
    ratios = {(image.terms[b] - e) % state.order for b, e in state.terms.items()}
    if len(ratios) != 1:
        return None
    return CycScalar(ratios.pop(), state.order)
