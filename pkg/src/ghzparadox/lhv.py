"""Local-realistic constraint systems and their solvability.

A local hidden-variable model assigns an outcome exponent x[p, s] in Z_D to
every (party, setting) pair.  A perfect correlation with eigenvalue
omega**(-gamma) forces sum_k x[k, s_k] == -gamma (mod D); the model exists iff
the resulting linear congruence system is solvable.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from . import kernels, snf
from .exactnum import format_phase
from .paradox import ParadoxInstance

Variable = tuple[int, str]  # (1-based party, setting label)

DEFAULT_CAP = 10**7
CAP_ENV = "GHZPARADOX_BRUTE_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


def var_name(v: Variable) -> str:
    return f"x[{v[0]},{v[1]}]"


@dataclass(frozen=True)
class CongruenceSystem:
    modulus: int
    variables: tuple[Variable, ...]
    coeffs: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "variables", tuple((int(p), str(s)) for p, s in self.variables))
        object.__setattr__(self, "coeffs", tuple(tuple(int(c) for c in row) for row in self.coeffs))
        object.__setattr__(self, "rhs", tuple(int(r) % self.modulus for r in self.rhs))
        if len(self.coeffs) != len(self.rhs):
            raise ValueError("one rhs per equation required")
        if any(len(row) != len(self.variables) for row in self.coeffs):
            raise ValueError("coefficient rows must match the variable count")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variables")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"E{i + 1}" for i in range(len(self.rhs))))

    @property
    def n_equations(self) -> int:
        return len(self.rhs)

    def coeff_array(self) -> np.ndarray:
        arr = np.array(self.coeffs, dtype=np.int64).reshape(self.n_equations, len(self.variables))
        return arr % self.modulus

    def assignment_count(self) -> int:
        return self.modulus ** len(self.variables)

    def satisfied_by(self, assignment: Mapping[Variable, int]) -> bool:
        for row, r in zip(self.coeffs, self.rhs):
            lhs = sum(c * assignment[v] for c, v in zip(row, self.variables))
            if (lhs - r) % self.modulus:
                return False
        return True

    def with_rhs(self, overrides: Mapping[int, int]) -> "CongruenceSystem":
        rhs = list(self.rhs)
        for i, val in overrides.items():
            if not 0 <= i < len(rhs):
                raise IndexError(f"no equation with index {i}")
            rhs[i] = val
        return replace(self, rhs=tuple(rhs))

    def subsystem(self, rows: Sequence[int]) -> "CongruenceSystem":
        """Keep ``rows`` and only the variables that still occur."""
        rows = list(rows)
        used = [j for j in range(len(self.variables)) if any(self.coeffs[i][j] % self.modulus for i in rows)]
        return CongruenceSystem(
            self.modulus,
            tuple(self.variables[j] for j in used),
            tuple(tuple(self.coeffs[i][j] for j in used) for i in rows),
            tuple(self.rhs[i] for i in rows),
            tuple(self.labels[i] for i in rows),
        )

    def occurrences(self, var: Variable) -> list[int]:
        j = self.variables.index(var)
        return [i for i, row in enumerate(self.coeffs) if row[j] % self.modulus]

    def to_text(self) -> str:
        lines = []
        for row, r in zip(self.coeffs, self.rhs):
            parts = []
            for c, v in zip(row, self.variables):
                c %= self.modulus
                if c:
                    parts.append(var_name(v) if c == 1 else f"{c}*{var_name(v)}")
            lines.append(f"{' + '.join(parts) or '0'} = {r} (mod {self.modulus})")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver: ``status`` is "sat", "unsat" or "too_large"."""

    status: str
    method: str
    witness: Optional[dict[Variable, int]] = None
    checked: int = 0

    @property
    def sat(self) -> bool:
        return self.status == "sat"


_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?x\[\s*(\d+)\s*,\s*([^\]]+?)\s*\]$")
_LINE = re.compile(r"^(.*)=\s*(-?\d+)\s*\(\s*mod\s+(\d+)\s*\)\s*$")


class SystemParseError(ValueError):
    pass


def parse_text(text: str) -> CongruenceSystem:
    """Parse lines ``x[p,s] + 2*x[q,t] + ... = r (mod D)``; ``#`` starts a comment."""
    variables: list[Variable] = []
    index: dict[Variable, int] = {}
    rows: list[dict[int, int]] = []
    rhs: list[int] = []
    modulus = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise SystemParseError(f"line {lineno}: expected '<terms> = r (mod D)', got {raw!r}")
        lhs, r, mod = m.group(1), int(m.group(2)), int(m.group(3))
        if modulus is None:
            modulus = mod
        elif mod != modulus:
            raise SystemParseError(f"line {lineno}: modulus {mod} differs from {modulus}")
        row: dict[int, int] = {}
        for term in lhs.split("+"):
            term = term.strip()
            if term == "0":
                continue
            t = _TERM.match(term)
            if not t:
                raise SystemParseError(f"line {lineno}: bad term {term!r}")
            coef = int(t.group(1) or 1)
            v = (int(t.group(2)), t.group(3))
            if v not in index:
                index[v] = len(variables)
                variables.append(v)
            row[index[v]] = row.get(index[v], 0) + coef
        rows.append(row)
        rhs.append(r)
    if modulus is None:
        raise SystemParseError("no equations found")
    coeffs = tuple(tuple(row.get(j, 0) for j in range(len(variables))) for row in rows)
    return CongruenceSystem(modulus, tuple(variables), coeffs, tuple(rhs))


def extract_system(p: ParadoxInstance) -> CongruenceSystem:
    """One congruence per composite: sum_k x[k, phase_k] == -gamma (mod D)."""
    variables: list[Variable] = []
    for k, phases in enumerate(p.settings, 1):
        variables.extend((k, format_phase(ph)) for ph in phases)
    col = {v: j for j, v in enumerate(variables)}
    coeffs, rhs = [], []
    for c in p.composites:
        row = [0] * len(variables)
        for k, ph in enumerate(c.phases, 1):
            row[col[(k, format_phase(ph))]] += 1
        coeffs.append(tuple(row))
        rhs.append(-c.gamma)
    return CongruenceSystem(p.dim, tuple(variables), tuple(coeffs), tuple(rhs), tuple(c.label for c in p.composites))


def mermin_system() -> CongruenceSystem:
    """Mermin's three-qubit argument: outcomes (-1)**x, last product equals -1."""
    variables = tuple((k, s) for k in (1, 2, 3) for s in ("x", "y"))
    pattern = [("x", "y", "y"), ("y", "x", "y"), ("y", "y", "x"), ("x", "x", "x")]
    coeffs = tuple(
        tuple(int(s == pat[k - 1]) for k, s in variables) for pat in pattern
    )
    return CongruenceSystem(2, variables, coeffs, (0, 0, 0, 1), ("v1", "v2", "v3", "v4"))


def brute_force_solve(s: CongruenceSystem, cap: Optional[int] = None, backend: Optional[str] = None) -> SolveResult:
    """Enumerate all D**V assignments; returns the lexicographically smallest witness."""
    cap = default_cap() if cap is None else cap
    total = s.assignment_count()
    if total > cap:
        return SolveResult("too_large", "brute", checked=0)
    if not s.variables:
        ok = all(r == 0 for r in s.rhs)
        return SolveResult("sat" if ok else "unsat", "brute", {} if ok else None, 1)
    coeffs = s.coeff_array()
    rhs = np.array(s.rhs, dtype=np.int64)
    if backend is None:
        fn = kernels.first_solution
    else:
        fn = {"numba": kernels.first_solution_nb, "numpy": kernels.first_solution_np}[backend]
    idx, checked = fn(coeffs, rhs, np.int64(s.modulus), np.int64(total))
    idx, checked = int(idx), int(checked)
    if idx < 0:
        return SolveResult("unsat", "brute", checked=checked)
    digits = kernels.decode_index(idx, len(s.variables), s.modulus)
    return SolveResult("sat", "brute", dict(zip(s.variables, digits)), checked)


def snf_solve(s: CongruenceSystem) -> SolveResult:
    """Exact decision via the Smith normal form of the coefficient matrix."""
    if not s.variables:
        ok = all(r == 0 for r in s.rhs)
        return SolveResult("sat" if ok else "unsat", "snf", {} if ok else None)
    x = snf.solve_mod(s.coeffs, s.rhs, s.modulus)
    if x is None:
        return SolveResult("unsat", "snf")
    return SolveResult("sat", "snf", dict(zip(s.variables, x)))


def solve(s: CongruenceSystem, cap: Optional[int] = None) -> SolveResult:
    """Brute force when within ``cap``, otherwise the Smith-form solver."""
    res = brute_force_solve(s, cap)
    return snf_solve(s) if res.status == "too_large" else res


@dataclass(frozen=True)
class LrCondition:
    """a * xi == eta (mod modulus) with xi = x[N, lo] - x[N, hi]."""

    a: int
    eta: int
    modulus: int
    solvable: bool
    witness_xi: Optional[int]
    xi_vars: tuple[Variable, Variable] = field(default=((0, ""), (0, "")))


def solve_linear_congruence(a: int, b: int, modulus: int) -> Optional[int]:
    """Smallest xi in [0, modulus) with a*xi == b (mod modulus), or None."""
    g = math.gcd(a, modulus)
    if b % g:
        return None
    m = modulus // g
    if m == 1:
        return 0
    return (b // g) * pow(a // g, -1, m) % m


def lr_condition(a: int, eta: int, modulus: int, xi_vars=((0, ""), (0, ""))) -> LrCondition:
    xi = solve_linear_congruence(a, eta, modulus)
    return LrCondition(a, eta, modulus, xi is not None, xi, tuple(xi_vars))


class DerivationError(ValueError):
    pass


def lr_congruence(p: ParadoxInstance, system: Optional[CongruenceSystem] = None) -> LrCondition:
    """Collapse the system to one congruence on the last party's two variables.

    The rows whose last-party setting is the smaller phase are added and the
    other rows subtracted (the product of A_r times the conjugate of B_r).  All
    free-party variables must cancel over the integers; what remains is
    a * (x[N, lo] - x[N, hi]) == eta (mod D).
    """
    s = extract_system(p) if system is None else system
    lo, hi = sorted(p.pair)
    v_lo, v_hi = (p.n_parties, format_phase(lo)), (p.n_parties, format_phase(hi))
    total = [0] * len(s.variables)
    r = 0
    for comp, row, b in zip(p.composites, s.coeffs, s.rhs):
        sign = 1 if comp.phases[-1] == lo else -1
        total = [t + sign * c for t, c in zip(total, row)]
        r += sign * b
    leftover = {v: c for v, c in zip(s.variables, total) if c}
    a = leftover.get(v_lo, 0)
    if set(leftover) - {v_lo, v_hi} or leftover.get(v_hi, 0) != -a or a <= 0:
        raise DerivationError(f"free-party variables do not cancel: {leftover}")
    return lr_condition(a, r % s.modulus, s.modulus, (v_lo, v_hi))
