"""Concurrent composite observables for multisetting GHZ arguments.

Two families are generated:

* tripartite, M settings for parties 1 and 2, D = M*d;
* N-partite (N odd), N settings for parties 1..N-1, D = N*d, using the
  cyclic pattern with t_r = 2r+1 (mod N).

In both the last party measures exactly two settings (the *pair*).  Every
composite's eigenvalue exponent is computed twice: from the phase sum and by
applying the composite to the GHZ state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import PhaseLike, as_phase, canonical_phase, working_order
from .operators import build_composite, composites_commute
from .states import build_ghz, eigenvalue_of


class InstanceError(ValueError):
    """Parameters that do not define a valid paradox instance."""


@dataclass(frozen=True)
class Composite:
    label: str
    group: str  # "A" or "B"
    phases: tuple[Fraction, ...]
    gamma: int


@dataclass(frozen=True)
class ParadoxInstance:
    n_parties: int
    n_settings: int
    dim_factor: int
    dim: int
    pair: tuple[Fraction, Fraction]
    composites: tuple[Composite, ...]
    generator: str
    t_sequence: Optional[tuple[int, ...]] = None
    flags: dict = field(default_factory=dict)

    @property
    def obs_a(self) -> tuple[Composite, ...]:
        return tuple(c for c in self.composites if c.group == "A")

    @property
    def obs_b(self) -> tuple[Composite, ...]:
        return tuple(c for c in self.composites if c.group == "B")

    @property
    def settings(self) -> list[list[Fraction]]:
        """Sorted distinct phases used by each party."""
        return [
            sorted({c.phases[k] for c in self.composites}) for k in range(self.n_parties)
        ]

    @property
    def order(self) -> int:
        return working_order(self.dim, (p for c in self.composites for p in c.phases))

    def operators(self, comp: Composite):
        return build_composite(comp.phases, self.dim, self.order)


def invariance_gamma(phases: Sequence[PhaseLike]) -> Optional[int]:
    """Integer gamma with sum(phases) == gamma, or None."""
    total = sum((as_phase(p) for p in phases), Fraction(0))
    if total.denominator != 1:
        return None
    return int(total)


def _check_pair(pair, denom: int) -> tuple[Fraction, Fraction]:
    a, b = (canonical_phase(as_phase(p)) for p in pair)
    for p in (a, b):
        if (p * denom).denominator != 1:
            raise InstanceError(f"pair phase {p} is not a multiple of 1/{denom}")
    if a == b:
        raise InstanceError("the two settings of the last party must differ")
    return a, b


def _make_composites(rows: Sequence[tuple[str, str, Sequence[Fraction]]], dim: int) -> tuple[Composite, ...]:
    """Attach gamma to each phase tuple, cross-checked on the GHZ state."""
    phases_all = [p for _, _, ph in rows for p in ph]
    order = working_order(dim, phases_all)
    n = len(rows[0][2])
    ghz = build_ghz(n, dim, order)
    out = []
    for label, group, phases in rows:
        phases = tuple(Fraction(p) for p in phases)
        gamma = invariance_gamma(phases)
        if gamma is None:
            raise InstanceError(f"{label}: phase sum {sum(phases)} is not an integer")
        ev = eigenvalue_of(build_composite(phases, dim, order), ghz)
        if ev is None or ev.omega_power(dim) % dim != (-gamma) % dim:
            raise InstanceError(f"{label}: GHZ eigenvalue disagrees with gamma={gamma}")
        out.append(Composite(label, group, phases, gamma))
    return tuple(out)


def generate_tripartite(n_settings: int, dim_factor: int = 1, pair=(0, None)) -> ParadoxInstance:
    """2M composites on three parties.

    A_r = X((r-1)/M) (x) X(beta_r) (x) X(alpha), B_r likewise with alpha', where
    beta_r is the unique multiple of 1/M in [0, 1) that makes the phase sum
    integral.  At M = 3 with the default pair this is the six-observable
    qutrit table, in its usual row order.
    """
    m = n_settings
    if m < 2:
        raise InstanceError(f"settings M must be >= 2, got {m}")
    if dim_factor < 1:
        raise InstanceError(f"dimension factor d must be >= 1, got {dim_factor}")
    if pair[1] is None:
        pair = (pair[0], Fraction(1, m))
    alpha, alpha2 = _check_pair(pair, m)
    dim = m * dim_factor
    rows = []
    for group, last in (("A", alpha), ("B", alpha2)):
        for r in range(1, m + 1):
            first = Fraction(r - 1, m)
            second = canonical_phase(-first - last)
            rows.append((f"{group}{r}", group, (first, second, last)))
    return ParadoxInstance(
        n_parties=3,
        n_settings=m,
        dim_factor=dim_factor,
        dim=dim,
        pair=(alpha, alpha2),
        composites=_make_composites(rows, dim),
        generator="tripartite",
        flags={"instantiation": "compensated second party; one valid choice for M != 3"},
    )


def t_sequence(n_parties: int) -> tuple[int, ...]:
    return tuple((2 * r + 1) % n_parties for r in range(1, n_parties + 1))


def generate_npartite(n_parties: int, dim_factor: int = 1, pair=(0, None)) -> ParadoxInstance:
    """2N composites for odd N with N settings per free party.

    Parties 1..N-2 measure X((r-k mod N)/N); party N measures one of the pair
    and party N-1 takes the compensating phase.  For the default pair (0, 1/N)
    party N-1 measures X(t_r/N) in A_r and X((t_r - 1 mod N)/N) in B_r.
    """
    n = n_parties
    if n < 3:
        raise InstanceError(f"N-partite construction needs N >= 3, got {n}")
    if n % 2 == 0:
        t = t_sequence(n)
        clash = next((r, j) for r in range(n) for j in range(r + 1, n) if t[r] == t[j])
        raise InstanceError(
            f"N must be odd: t_r = 2r+1 mod {n} is not injective "
            f"(t_{clash[0] + 1} = t_{clash[1] + 1} = {t[clash[0]]})"
        )
    if dim_factor < 1:
        raise InstanceError(f"dimension factor d must be >= 1, got {dim_factor}")
    if pair[1] is None:
        pair = (pair[0], Fraction(1, n))
    alpha, alpha2 = _check_pair(pair, n)
    dim = n * dim_factor
    t = t_sequence(n)
    if len(set(t)) != n:
        raise InstanceError("t_r sequence is not injective")
    rows = []
    for group, last in (("A", alpha), ("B", alpha2)):
        for r in range(1, n + 1):
            head = [Fraction((r - k) % n, n) for k in range(1, n - 1)]
            comp = canonical_phase(-sum(head, Fraction(0)) - last)
            rows.append((f"{group}{r}", group, (*head, comp, last)))
    return ParadoxInstance(
        n_parties=n,
        n_settings=n,
        dim_factor=dim_factor,
        dim=dim,
        pair=(alpha, alpha2),
        composites=_make_composites(rows, dim),
        generator="npartite",
        t_sequence=t,
        flags={"instantiation": "cyclic pattern, party N-1 compensates the chosen pair"},
    )


def generate(n_parties: int, n_settings: int, dim_factor: int = 1, pair=(0, None)) -> ParadoxInstance:
    """Dispatch on party count: three parties allow any M, otherwise M must equal N."""
    if n_parties == 3:
        return generate_tripartite(n_settings, dim_factor, pair)
    if n_settings != n_parties:
        raise InstanceError(
            f"for N != 3 the construction needs settings M == parties N (got N={n_parties}, M={n_settings})"
        )
    return generate_npartite(n_parties, dim_factor, pair)


def instance_from_composites(
    n_parties: int,
    n_settings: int,
    dim_factor: int,
    rows: Sequence[tuple[str, str, Sequence[Fraction]]],
    generator: str = "custom",
    pair: Optional[tuple[Fraction, Fraction]] = None,
    t_seq: Optional[Sequence[int]] = None,
    flags: Optional[dict] = None,
) -> ParadoxInstance:
    """Build an instance from explicit phase tuples, recomputing every gamma."""
    dim = n_settings * dim_factor
    composites = _make_composites(rows, dim)
    if pair is None:
        last = sorted({c.phases[-1] for c in composites})
        pair = (last[0], last[-1])
    return ParadoxInstance(
        n_parties=n_parties,
        n_settings=n_settings,
        dim_factor=dim_factor,
        dim=dim,
        pair=tuple(pair),
        composites=composites,
        generator=generator,
        t_sequence=None if t_seq is None else tuple(t_seq),
        flags=dict(flags or {}),
    )


@dataclass(frozen=True)
class ConcurrencyReport:
    eigenvalues: tuple[Optional[int], ...]  # omega exponents, None = not an eigenstate
    common_eigenstate: bool
    all_commute: bool
    noncommuting_pairs: tuple[tuple[str, str], ...]

    @property
    def concurrent(self) -> bool:
        return self.common_eigenstate and not self.all_commute


def verify_concurrency(p: ParadoxInstance) -> ConcurrencyReport:
    order = p.order
    ghz = build_ghz(p.n_parties, p.dim, order)
    ops = [build_composite(c.phases, p.dim, order) for c in p.composites]
    eig = []
    for op in ops:
        ev = eigenvalue_of(op, ghz)
        eig.append(None if ev is None else int(ev.omega_power(p.dim)) % p.dim)
    bad = []
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not composites_commute(ops[i], ops[j]):
                bad.append((p.composites[i].label, p.composites[j].label))
    return ConcurrencyReport(
        eigenvalues=tuple(eig),
        common_eigenstate=all(e is not None for e in eig),
        all_commute=not bad,
        noncommuting_pairs=tuple(bad),
    )
