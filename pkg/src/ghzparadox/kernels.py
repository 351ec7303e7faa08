"""Hot loops: exhaustive assignment search and overlap grids.

Each kernel exists twice, a numba version (``*_nb``) and a pure-numpy version
(``*_np``).  The public names dispatch on :data:`ghzparadox._accel.USE_NUMBA`.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# rows per block in the numpy enumerator; bounds peak memory to a few MB
_CHUNK = 1 << 15


@njit(cache=True)
def first_solution_nb(coeffs, rhs, modulus, total):
    """Scan assignments in lexicographic order, first variable most significant.

    Returns ``(index, checked)`` where ``index`` is the rank of the first
    satisfying assignment or -1, and ``checked`` counts visited assignments.
    """
    n_eq, n_var = coeffs.shape
    x = np.zeros(n_var, dtype=np.int64)
    res = np.zeros(n_eq, dtype=np.int64)
    for k in range(total):
        ok = True
        for e in range(n_eq):
            if res[e] != rhs[e]:
                ok = False
                break
        if ok:
            return k, k + 1
        # odometer step; a wrap D-1 -> 0 also shifts the residual by +col (mod D)
        v = n_var - 1
        while v >= 0:
            for e in range(n_eq):
                res[e] = (res[e] + coeffs[e, v]) % modulus
            x[v] += 1
            if x[v] < modulus:
                break
            x[v] = 0
            v -= 1
    return -1, total


def first_solution_np(coeffs, rhs, modulus, total):
    coeffs = np.asarray(coeffs, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    n_var = coeffs.shape[1]
    place = modulus ** np.arange(n_var - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = (idx[:, None] // place[None, :]) % modulus
        res = (digits @ coeffs.T) % modulus
        hit = np.flatnonzero(np.all(res == rhs[None, :], axis=1))
        if hit.size:
            k = int(idx[hit[0]])
            return k, k + 1
    return -1, total


@njit(cache=True)
def overlap_grid_nb(dim, delta):
    """Closed-form |<n|m>|^2 for all (n, m) with xi = m - n + delta.

    ``delta`` must be non-integer so that the denominator never vanishes.
    """
    out = np.empty((dim, dim), dtype=np.float64)
    for n in range(dim):
        for m in range(dim):
            xi = m - n + delta
            num = np.sin(np.pi * xi)
            den = dim * np.sin(np.pi * xi / dim)
            out[n, m] = (num * num) / (den * den)
    return out


def overlap_grid_np(dim, delta):
    n = np.arange(dim)
    xi = n[None, :] - n[:, None] + delta
    num = np.sin(np.pi * xi)
    den = dim * np.sin(np.pi * xi / dim)
    return (num * num) / (den * den)


def decode_index(index, n_var, modulus):
    """Digits of ``index`` in base ``modulus``, most significant first."""
    digits = [0] * n_var
    for j in range(n_var - 1, -1, -1):
        index, digits[j] = divmod(index, modulus)
    return digits


if USE_NUMBA:
    first_solution = first_solution_nb
    overlap_grid = overlap_grid_nb
else:
    first_solution = first_solution_np
    overlap_grid = overlap_grid_np

BACKEND = "numba" if USE_NUMBA else "numpy"
