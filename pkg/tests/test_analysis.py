from fractions import Fraction as F

import numpy as np
import pytest

from ghzparadox.analysis import (
    OverlapQuery,
    closed_form_grid,
    dimensional_irreducibility_check,
    direct_overlap_grid,
    eigenbasis,
    eigenvector_overlap,
    genuine_in_parties,
    irreducibility_scan,
    party_removal_check,
    prime_reduction,
)
from ghzparadox.lhv import brute_force_solve, extract_system, snf_solve
from ghzparadox.operators import build_local_observable
from ghzparadox.paradox import InstanceError, generate, generate_tripartite, instance_from_composites


def _removal(scan, var):
    return next(r for r in scan.removals if r.removed == var)


def test_qutrit_removal_of_party1_y(qutrit):
    scan = irreducibility_scan(qutrit)
    rep = _removal(scan, (1, "1/3"))
    assert rep.surviving == (0, 2, 3, 5)  # rows 2 and 5 of the table are gone
    assert rep.solvable
    assert {(2, "1/3"), (2, "2/3")} <= set(rep.lone_variables)
    assert rep.brute_checked is not None


def test_qutrit_removal_of_last_party_setting(qutrit):
    scan = irreducibility_scan(qutrit)
    rep = _removal(scan, (3, "1/3"))
    assert rep.surviving == (0, 1, 2) and rep.solvable
    assert scan.irreducible


def test_compensation_argument(qutrit):
    """Start from the a=2 witness, lower x1 and x3, raise the lone y2 and z2."""
    s = extract_system(qutrit)
    w = {v: 0 for v in s.variables}
    w[(3, "0/1")] = w[(3, "1/3")] = 2
    w[(1, "0/1")] -= 1
    w[(3, "0/1")] -= 1
    w[(2, "1/3")] += 1
    w[(2, "2/3")] += 1
    keep = [0, 2, 3, 5]
    sub = s.subsystem(keep)
    assert sub.satisfied_by({v: w[v] % 3 for v in sub.variables})


def test_scan_requires_contradiction():
    p = generate_tripartite(3)
    sat = instance_from_composites(3, 3, 1, [(c.label, c.group, c.phases) for c in p.obs_a])
    with pytest.raises(InstanceError):
        irreducibility_scan(sat)


@pytest.mark.parametrize("n, d", [(3, 1), (3, 2), (3, 3), (5, 1)])
def test_prime_instances_irreducible(n, d):
    p = generate(n, n, d)
    scan = irreducibility_scan(p)
    assert scan.irreducible
    for rep in scan.removals:
        if rep.removed[0] < n:
            assert rep.lone_variables


def test_m4_is_reducible():
    scan = irreducibility_scan(generate_tripartite(4))
    assert scan.all_removals_sat
    assert not scan.irreducible
    assert [x.prime for x in scan.prime_reductions if x.reducible] == [2]


def test_prime_reduction_m4():
    red = prime_reduction(generate_tripartite(4), 2)
    assert red.reducible
    phases = {ph for c in red.sub_instance.composites for ph in c.phases}
    assert phases == {F(0), F(1, 2)}
    s = extract_system(red.sub_instance)
    assert s.modulus == 4
    assert snf_solve(s).status == brute_force_solve(s).status == "unsat"


def test_prime_reduction_m3_not_reducible():
    red = prime_reduction(generate_tripartite(3), 3)
    assert not red.reducible and red.sub_instance is None


@pytest.mark.parametrize("q", [2, 3])
def test_prime_reduction_m6(q):
    red = prime_reduction(generate_tripartite(6), q)
    assert red.reducible
    assert all((ph * q).denominator == 1 for c in red.sub_instance.composites for ph in c.phases)


def test_prime_reduction_keeps_compatible_pair():
    red = prime_reduction(generate_tripartite(4, 1, (0, F(1, 2))), 2)
    assert red.sub_instance.pair == (F(0), F(1, 2))


def test_prime_reduction_npartite_composite():
    red = prime_reduction(generate(9, 9, 1), 3)
    assert red.reducible and red.sub_instance.n_parties == 9


@pytest.mark.parametrize("q, m", [(4, 4), (5, 4)])
def test_prime_reduction_errors(q, m):
    with pytest.raises(ValueError):
        prime_reduction(generate_tripartite(m), q)


def test_party_removal_examples(qutrit):
    rep = party_removal_check(qutrit, 3)
    labels = [c.phases for c in qutrit.composites]
    by_phase = dict(zip(labels, rep.eigenvalues))
    assert by_phase[(0, F(2, 3), F(1, 3))] is None  # X (x) Z keeps phase sum 2/3
    assert by_phase[(0, 0, 0)] == 0
    assert not rep.common_eigenstate


@pytest.mark.parametrize("n, d", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_genuine_in_parties(n, d):
    genuine, reports = genuine_in_parties(generate(n, n, d))
    assert genuine and len(reports) == n


def test_overlap_examples():
    q = OverlapQuery(0, 0, F(0), F(1, 3), 3)
    assert q.xi == F(1, 3)
    direct = direct_overlap_grid(0, F(1, 3), 3)[0, 0]
    assert abs(eigenvector_overlap(q) - direct) < 1e-10
    assert abs(eigenvector_overlap(q) - 0.712384) < 1e-5
    assert eigenvector_overlap(OverlapQuery(1, 1, F(0), F(0), 3)) == 1.0
    assert eigenvector_overlap(OverlapQuery(1, 0, F(0), F(1), 3)) == 1.0
    assert eigenvector_overlap(OverlapQuery(0, 1, F(0), F(0), 3)) == 0.0


@pytest.mark.parametrize("alpha", [F(0), F(1, 3), F(3, 4)])
def test_eigenbasis_diagonalises_observable(alpha):
    dim = 6
    x = build_local_observable(alpha, dim, dim * alpha.denominator).to_dense()
    vecs = eigenbasis(alpha, dim)
    for n in range(dim):
        v = vecs[:, n]
        lam = v.conj() @ x @ v
        assert np.allclose(x @ v, lam * v, atol=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 5, 10])
@pytest.mark.parametrize("a, b", [(F(0), F(1, 3)), (F(1, 4), F(2, 3)), (F(0), F(2)), (F(1, 5), F(1, 5))])
def test_closed_form_vs_direct(dim, a, b):
    closed = closed_form_grid(a, b, dim)
    single = np.array([[eigenvector_overlap(OverlapQuery(n, m, a, b, dim)) for m in range(dim)] for n in range(dim)])
    direct = direct_overlap_grid(a, b, dim)
    assert np.abs(closed - direct).max() <= 1e-10
    assert np.abs(single - direct).max() <= 1e-10
    assert np.allclose(closed.sum(axis=1), 1, atol=1e-9)


@pytest.mark.parametrize("n, d", [(3, 1), (5, 2)])
def test_dimensional_check(n, d):
    rep = dimensional_irreducibility_check(generate(n, n, d))
    assert rep.passed and rep.pairs
    assert all(pr.min_overlap > 1e-12 for pr in rep.pairs)


def test_dimensional_check_vacuous():
    p = instance_from_composites(3, 3, 1, [("A1", "A", (F(0), F(0), F(0)))])
    rep = dimensional_irreducibility_check(p)
    assert rep.passed and rep.pairs == ()
