"""Integer Smith normal form with unimodular transforms, exact Python ints."""

from __future__ import annotations

import math
from typing import Optional, Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return ``(u, s, v)`` with ``u @ a @ v == s``.

    ``s`` is diagonal with nonnegative entries d_1 | d_2 | ... and ``u``, ``v``
    are unimodular.  All matrices are lists of lists of Python ints.
    """
    s = [[int(x) for x in row] for row in a]
    m = len(s)
    n = len(s[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
            if not nz:
                return u, s, v
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // p))
                    dirty |= s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // p))
                    dirty |= s[t][j] != 0
            if dirty:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return u, s, v


def diagonal(s: Sequence[Sequence[int]]) -> list[int]:
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def _matvec(a, x):
    return [sum(r * y for r, y in zip(row, x)) for row in a]


def solve_mod(a: Sequence[Sequence[int]], b: Sequence[int], modulus: int) -> Optional[list[int]]:
    """A solution of ``a @ x == b (mod modulus)`` with entries in [0, modulus), or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    u, s, v = smith_normal_form(a)
    c = [x % modulus for x in _matvec(u, b)]
    y = [0] * n
    for i in range(m):
        d = s[i][i] if i < n else 0
        g = math.gcd(d, modulus)
        if c[i] % g:
            return None
        if d == 0:
            continue
        mod_g = modulus // g
        y[i] = (c[i] // g) * pow(d // g, -1, mod_g) % mod_g if mod_g > 1 else 0
    return [x % modulus for x in _matvec(v, y)]
