import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ghzparadox.snf import diagonal, smith_normal_form, solve_mod


def _mat(rows):
    return sympy.Matrix(rows)


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_decomposition(a):
    u, s, v = smith_normal_form(a)
    U, S, V, A = map(_mat, (u, s, v, a))
    assert U * A * V == S
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    d = diagonal(s)
    assert all(S[i, j] == 0 for i in range(S.rows) for j in range(S.cols) if i != j)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[: len(nz)] == nz  # zeros trail


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(a):
    ref = sympy_snf(_mat(a), domain=sympy.ZZ)
    ours = diagonal(smith_normal_form(a)[1])
    theirs = [abs(ref[i, i]) for i in range(min(ref.shape))]
    assert ours == theirs


def test_solve_mod_small():
    assert solve_mod([[3]], [1], 3) is None
    assert solve_mod([[3]], [1], 4) == [3]
    x = solve_mod([[2, 4], [1, 1]], [2, 3], 6)
    assert x is not None
    assert (2 * x[0] + 4 * x[1] - 2) % 6 == 0 and (x[0] + x[1] - 3) % 6 == 0
    assert solve_mod([[0, 0]], [1], 5) is None
