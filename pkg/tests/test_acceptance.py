"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary; ``python tests/test_acceptance.py`` runs them standalone.
"""

import time
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, QUTRIT_TABLE
from ghzparadox.analysis import (
    OverlapQuery,
    direct_overlap_grid,
    eigenvector_overlap,
    genuine_in_parties,
    irreducibility_scan,
    prime_reduction,
)
from ghzparadox.cli import main
from ghzparadox.fileio import load_instance
from ghzparadox.lhv import (
    CongruenceSystem,
    brute_force_solve,
    extract_system,
    lr_condition,
    mermin_system,
    snf_solve,
)
from ghzparadox.operators import build_composite
from ghzparadox.paradox import generate, invariance_gamma, verify_concurrency
from ghzparadox.states import build_ghz, eigenvalue_of


class Criterion:
    def __init__(self, tag, title):
        self.tag, self.title = tag, title

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {self.tag} {self.title} ({self.elapsed:.3f} s)")
        return False

    def within(self, seconds):
        elapsed = time.perf_counter() - self.t0
        assert elapsed < seconds, f"took {elapsed:.3f} s, limit {seconds} s"


def test_c01_qutrit_table(tmp_path, capsys):
    with Criterion("C1", "qutrit table reproduced, eigenvalues exact by two paths") as c:
        path = tmp_path / "q.json"
        assert main(["generate", "--parties", "3", "--settings", "3", "--dim-factor", "1", "--out", str(path)]) == 0
        p = load_instance(path)
        got = {comp.phases: comp.gamma for comp in p.composites}
        assert got == QUTRIT_TABLE
        ghz = build_ghz(3, p.dim, p.order)
        for comp in p.composites:
            gamma = invariance_gamma(comp.phases)
            ev = eigenvalue_of(build_composite(comp.phases, p.dim, p.order), ghz)
            assert gamma == QUTRIT_TABLE[comp.phases]
            assert ev.omega_power(p.dim) % p.dim == (-gamma) % p.dim
        eig = sorted(-c_.gamma % 3 for c_ in p.composites)
        assert eig == [0, 2, 2, 2, 2, 2]  # 1 and five times omega^-1
        c.within(1.0)
    capsys.readouterr()


def test_c02_qutrit_system():
    with Criterion("C2", "a=0 Unsat by brute force (6561) and SNF; a=2 Sat with the known witness") as c:
        s = extract_system(generate(3, 3, 1))
        brute = brute_force_solve(s)
        assert brute.status == "unsat" and brute.checked == 6561
        assert snf_solve(s).status == "unsat"
        s2 = s.with_rhs({0: 2})
        for res in (brute_force_solve(s2), snf_solve(s2)):
            assert res.sat and s2.satisfied_by(res.witness)
        witness = {v: 0 for v in s2.variables}
        witness[(3, "0/1")] = witness[(3, "1/3")] = 2
        assert s2.satisfied_by(witness)
        c.within(1.0)


def test_c03_mermin():
    with Criterion("C3", "Mermin mod-2 system Unsat by both solvers over 64 assignments") as c:
        s = mermin_system()
        assert s.rhs == (0, 0, 0, 1) and s.modulus == 2
        brute = brute_force_solve(s)
        assert brute.status == "unsat" and brute.checked == 64
        assert snf_solve(s).status == "unsat"
        c.within(0.1)


def test_c04_lr_congruence():
    with Criterion("C4", "LR congruences decided exactly"):
        for a, eta, dim in [(3, 1, 3), (3, 1, 6), (3, 1, 9), (5, 1, 5), (5, 4, 5)]:
            cond = lr_condition(a, eta, dim)
            assert not cond.solvable and cond.witness_xi is None
        cond = lr_condition(3, 1, 4)
        assert cond.solvable and (3 * cond.witness_xi - 1) % 4 == 0


def test_c05_irreducibility():
    with Criterion("C5", "prime-M instances irreducible, lone variables present") as c:
        for n, d in [(3, 1), (3, 2), (3, 3), (5, 1)]:
            p = generate(n, n, d)
            scan = irreducibility_scan(p)
            for rep in scan.removals:
                assert rep.solvable, f"removal of {rep.removed} stays Unsat for N={n}, d={d}"
                if rep.removed[0] < n:
                    assert len(rep.lone_variables) >= 1
            last = [r for r in scan.removals if r.removed[0] == n]
            assert len(last) == 2
            assert scan.irreducible
        c.within(10.0)


def test_c06_nonprime_reduction():
    with Criterion("C6", "nonprime M reduces to prime divisors") as c:
        red = prime_reduction(generate(3, 4, 1), 2)
        assert red.reducible
        assert {ph for comp in red.sub_instance.composites for ph in comp.phases} == {F(0), F(1, 2)}
        assert snf_solve(extract_system(red.sub_instance)).status == "unsat"
        for q in (2, 3):
            red = prime_reduction(generate(3, 6, 1), q)
            assert red.reducible
            assert snf_solve(extract_system(red.sub_instance)).status == "unsat"
        c.within(5.0)


def test_c07_genuine_in_parties():
    with Criterion("C7", "dropping any party destroys the common GHZ eigenstate"):
        for n, d in product([3, 5], [1, 2]):
            genuine, reports = genuine_in_parties(generate(n, n, d))
            assert genuine
            assert all(any(e is None for e in r.eigenvalues) for r in reports)


def test_c08_overlaps():
    with Criterion("C8", "overlap closed form vs inner products, positivity, completeness"):
        q = OverlapQuery(0, 0, F(0), F(1, 3), 3)
        assert abs(eigenvector_overlap(q) - 0.712384) <= 1e-5
        for n, d in [(3, 1), (3, 2), (3, 3), (5, 2)]:
            p = generate(n, n, d)
            dim = p.dim
            phases = sorted({ph for s in p.settings for ph in s})
            for a, b in product(phases, repeat=2):
                direct = direct_overlap_grid(a, b, dim)
                closed = np.array(
                    [[eigenvector_overlap(OverlapQuery(i, j, a, b, dim)) for j in range(dim)] for i in range(dim)]
                )
                assert np.abs(closed - direct).max() <= 1e-10
                assert np.abs(closed.sum(axis=1) - 1).max() <= 1e-9
                if (b - a).denominator != 1:
                    assert closed.min() > 1e-12


def _random_system(rng):
    dim = int(rng.choice([2, 3, 4]))
    n_var = int(rng.integers(1, 10))
    n_eq = int(rng.integers(1, 13))
    coeffs = rng.integers(0, dim, size=(n_eq, n_var)) * (rng.random((n_eq, n_var)) < 0.5)
    rhs = rng.integers(0, dim, size=n_eq)
    return CongruenceSystem(dim, tuple((1, f"v{j}") for j in range(n_var)), coeffs.tolist(), rhs.tolist())


def test_c09_solver_equivalence():
    with Criterion("C9", "SNF and brute force agree on 200 random systems") as c:
        rng = np.random.default_rng(20240611)
        statuses = []
        for _ in range(200):
            s = _random_system(rng)
            a, b = snf_solve(s), brute_force_solve(s)
            assert a.status == b.status
            for r in (a, b):
                if r.sat:
                    assert s.satisfied_by(r.witness)
            statuses.append(a.status)
        assert {"sat", "unsat"} <= set(statuses)
        c.within(30.0)


def test_c10_concurrency():
    with Criterion("C10", "generated instances are concurrent"):
        for n, d in [(3, 1), (3, 2), (5, 1)]:
            rep = verify_concurrency(generate(n, n, d))
            assert rep.common_eigenstate and not rep.all_commute


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
