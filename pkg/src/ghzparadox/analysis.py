"""Irreducibility, genuineness and dimensional checks on paradox instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .exactnum import PhaseLike, as_phase, canonical_phase
from .lhv import (
    CongruenceSystem,
    SolveResult,
    Variable,
    brute_force_solve,
    extract_system,
    snf_solve,
)
from .operators import build_composite
from .paradox import InstanceError, ParadoxInstance, instance_from_composites
from .states import build_ghz, eigenvalue_of

OVERLAP_TOL = 1e-10
POSITIVITY_FLOOR = 1e-12


class SolverDisagreement(RuntimeError):
    pass


def _decide(system: CongruenceSystem, cross_check: bool, cap: Optional[int]) -> tuple[SolveResult, Optional[SolveResult]]:
    res = snf_solve(system)
    if res.sat and not system.satisfied_by(res.witness):
        raise SolverDisagreement("Smith-form witness fails substitution")
    brute = None
    if cross_check:
        brute = brute_force_solve(system, cap)
        if brute.status == "too_large":
            brute = None
        elif brute.status != res.status:
            raise SolverDisagreement(f"snf says {res.status}, brute force says {brute.status}")
    return res, brute


# ---------------------------------------------------------------- removals


@dataclass(frozen=True)
class RemovalReport:
    removed: Variable
    surviving: tuple[int, ...]
    solvable: bool
    witness: Optional[dict[Variable, int]]
    lone_variables: tuple[Variable, ...]
    brute_checked: Optional[int] = None  # assignments enumerated by the cross-check


@dataclass(frozen=True)
class PrimeReduction:
    prime: int
    reducible: bool
    sub_instance: Optional[ParadoxInstance]
    reason: str


@dataclass(frozen=True)
class IrreducibilityScan:
    removals: tuple[RemovalReport, ...]
    prime_reductions: tuple[PrimeReduction, ...]

    @property
    def all_removals_sat(self) -> bool:
        return all(r.solvable for r in self.removals)

    @property
    def irreducible(self) -> bool:
        """Every single-setting removal is consistent and no prime reduction exists."""
        return self.all_removals_sat and not any(p.reducible for p in self.prime_reductions)


def lone_variables(system: CongruenceSystem) -> tuple[Variable, ...]:
    return tuple(v for v in system.variables if len(system.occurrences(v)) == 1)


def remove_setting(system: CongruenceSystem, var: Variable) -> tuple[tuple[int, ...], CongruenceSystem]:
    hit = set(system.occurrences(var))
    keep = tuple(i for i in range(system.n_equations) if i not in hit)
    return keep, system.subsystem(keep)


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def irreducibility_scan(p: ParadoxInstance, cross_check: bool = True, cap: Optional[int] = None) -> IrreducibilityScan:
    """Remove each setting in turn and decide the surviving subsystem.

    Raises :class:`InstanceError` if the full system is already solvable.
    """
    system = extract_system(p)
    full, _ = _decide(system, cross_check=False, cap=cap)
    if full.sat:
        raise InstanceError("full system is satisfiable: there is no contradiction to reduce")
    reports = []
    for var in system.variables:
        keep, sub = remove_setting(system, var)
        res, brute = _decide(sub, cross_check, cap)
        reports.append(
            RemovalReport(
                removed=var,
                surviving=keep,
                solvable=res.sat,
                witness=res.witness,
                lone_variables=lone_variables(sub),
                brute_checked=None if brute is None else brute.checked,
            )
        )
    primes = tuple(prime_reduction(p, q) for q in prime_factors(p.n_settings))
    return IrreducibilityScan(tuple(reports), primes)


# ------------------------------------------------------- prime reduction


def _reduced_rows(n_parties: int, q: int, pair: tuple[Fraction, Fraction]):
    """q-setting family: party 1 cycles through r/q, middle parties stay at 0,
    party N-1 compensates, party N uses ``pair``."""
    rows = []
    for group, last in (("A", pair[0]), ("B", pair[1])):
        for r in range(1, q + 1):
            head = [Fraction(r - 1, q)] + [Fraction(0)] * (n_parties - 3)
            comp = canonical_phase(-sum(head, Fraction(0)) - last)
            rows.append((f"{group}{r}", group, (*head, comp, last)))
    return rows


def prime_reduction(p: ParadoxInstance, q: int) -> PrimeReduction:
    """Look for a contradiction using only phases that are multiples of 1/q.

    The sub-instance lives on the same GHZ state and dimension; its free-party
    settings are a subset of the parent's, and the last party keeps the parent
    pair when both phases are multiples of 1/q, else uses (0, 1/q).
    """
    m = p.n_settings
    if q < 2 or prime_factors(q) != [q]:
        raise ValueError(f"{q} is not prime")
    if m % q:
        raise ValueError(f"{q} does not divide M={m}")
    if q == m:
        return PrimeReduction(q, False, None, "q equals M: no proper subset of settings")
    if all((ph * q).denominator == 1 for ph in p.pair):
        pair = tuple(p.pair)
    else:
        pair = (Fraction(0), Fraction(1, q))
    sub = instance_from_composites(
        p.n_parties,
        q,
        p.dim // q,
        _reduced_rows(p.n_parties, q, pair),
        generator="prime-reduction",
        pair=pair,
        flags={"parent_settings": m, "prime": q},
    )
    parent = p.settings
    for k, phases in enumerate(sub.settings[:-1]):
        if not set(phases) <= set(parent[k]):
            raise InstanceError(f"reduced settings of party {k + 1} are not a subset of the parent's")
    status = snf_solve(extract_system(sub)).status
    if status == "unsat":
        return PrimeReduction(q, True, sub, f"contradiction survives with phases in (1/{q})Z")
    return PrimeReduction(q, False, None, "restricted system is satisfiable")


# ------------------------------------------------------------ party removal


@dataclass(frozen=True)
class PartyRemovalReport:
    party: int
    eigenvalues: tuple[Optional[int], ...]  # omega exponents on the reduced GHZ state

    @property
    def common_eigenstate(self) -> bool:
        return all(e is not None for e in self.eigenvalues)


def party_removal_check(p: ParadoxInstance, k: int) -> PartyRemovalReport:
    """Drop party ``k`` (1-based) and test each reduced composite on GHZ(N-1, D)."""
    if not 1 <= k <= p.n_parties:
        raise ValueError(f"party index {k} out of range 1..{p.n_parties}")
    order = p.order
    ghz = build_ghz(p.n_parties - 1, p.dim, order)
    eig = []
    for c in p.composites:
        phases = c.phases[: k - 1] + c.phases[k:]
        ev = eigenvalue_of(build_composite(phases, p.dim, order), ghz)
        eig.append(None if ev is None else int(ev.omega_power(p.dim)) % p.dim)
    return PartyRemovalReport(k, tuple(eig))


def genuine_in_parties(p: ParadoxInstance) -> tuple[bool, list[PartyRemovalReport]]:
    reports = [party_removal_check(p, k) for k in range(1, p.n_parties + 1)]
    return all(not r.common_eigenstate for r in reports), reports


# ------------------------------------------------------------------ overlaps


@dataclass(frozen=True)
class OverlapQuery:
    n: int
    m: int
    alpha: Fraction
    alpha_prime: Fraction
    dim: int

    @property
    def xi(self) -> Fraction:
        return self.m - self.n + Fraction(self.alpha_prime) - Fraction(self.alpha)


def eigenvector_overlap(q: OverlapQuery) -> float:
    """|<n_alpha | m_alpha'>|^2 = sin^2(pi xi) / (D^2 sin^2(pi xi / D))."""
    if q.dim < 2:
        raise ValueError("D must be >= 2")
    xi = q.xi
    if xi.denominator == 1:
        return 1.0 if xi.numerator % q.dim == 0 else 0.0
    x = float(xi)
    return math.sin(math.pi * x) ** 2 / (q.dim**2 * math.sin(math.pi * x / q.dim) ** 2)


def eigenbasis(alpha: PhaseLike, dim: int) -> np.ndarray:
    """Columns are |n>_alpha = D**-0.5 * sum_m omega**((n + alpha) m) |m>."""
    alpha = float(as_phase(alpha))
    m = np.arange(dim)
    return np.exp(2j * np.pi * np.outer(m, m + alpha) / dim) / math.sqrt(dim)


def direct_overlap_grid(alpha: PhaseLike, alpha_prime: PhaseLike, dim: int) -> np.ndarray:
    """Entry (n, m) is |<n_alpha | m_alpha'>|^2 from explicit vectors."""
    amp = eigenbasis(alpha, dim).conj().T @ eigenbasis(alpha_prime, dim)
    return np.abs(amp) ** 2


def closed_form_grid(alpha: PhaseLike, alpha_prime: PhaseLike, dim: int) -> np.ndarray:
    delta = as_phase(alpha_prime) - as_phase(alpha)
    if delta.denominator == 1:
        n = np.arange(dim)
        return ((n[None, :] - n[:, None] + int(delta)) % dim == 0).astype(float)
    return np.asarray(kernels.overlap_grid(dim, float(delta)))


@dataclass(frozen=True)
class PairOverlap:
    alpha: Fraction
    alpha_prime: Fraction
    parties: tuple[int, ...]
    min_overlap: float
    max_deviation: float  # closed form vs explicit vectors
    max_row_sum_error: float


@dataclass(frozen=True)
class DimReport:
    dim: int
    pairs: tuple[PairOverlap, ...]

    @property
    def passed(self) -> bool:
        return all(
            pr.min_overlap > POSITIVITY_FLOOR and pr.max_deviation <= OVERLAP_TOL for pr in self.pairs
        )


def dimensional_irreducibility_check(p: ParadoxInstance) -> DimReport:
    """Every pair of inequivalent settings has strictly positive eigenvector overlaps.

    A common block-diagonal splitting would force some overlap to vanish, so a
    pass rules it out.
    """
    owners: dict[tuple[Fraction, Fraction], list[int]] = {}
    for k, phases in enumerate(p.settings, 1):
        for a, b in combinations(phases, 2):
            if (b - a).denominator != 1:
                owners.setdefault((a, b), []).append(k)
    pairs = []
    for (a, b), parties in sorted(owners.items()):
        closed = closed_form_grid(a, b, p.dim)
        direct = direct_overlap_grid(a, b, p.dim)
        pairs.append(
            PairOverlap(
                alpha=a,
                alpha_prime=b,
                parties=tuple(parties),
                min_overlap=float(closed.min()),
                max_deviation=float(np.abs(closed - direct).max()),
                max_row_sum_error=float(np.abs(closed.sum(axis=1) - 1).max()),
            )
        )
    return DimReport(p.dim, tuple(pairs))
