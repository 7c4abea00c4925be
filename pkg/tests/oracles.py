"""Independent reference computations used by the tests.

Nothing here calls the projector code under test.
"""

import itertools

import numpy as np


def nearest_lexmax(x, candidates):
    """Brute-force nearest member; among exact ties the lexicographically largest.

    Preferring the lexicographic maximum is the same as letting the earliest
    position take the larger value, the tie rule of every finite-set
    projector in the package.
    """
    cands = np.asarray(candidates, dtype=np.float64)
    d = ((cands - np.asarray(x, dtype=np.float64)) ** 2).sum(axis=1)
    best = cands[d == d.min()]
    return np.array(max(map(tuple, best)))


def arrangements(values):
    return np.array(sorted(set(itertools.permutations(values))), dtype=np.float64)


def k_ones(m, k):
    out = []
    for pos in itertools.combinations(range(m), k):
        v = np.zeros(m)
        v[list(pos)] = 1.0
        out.append(v)
    return np.array(out)


def prefixes(L):
    return np.array([[1.0] * p + [0.0] * (L - p) for p in range(1, L + 1)])


def standard_basis(m):
    return np.eye(m)


# closed forms for the integer model, written out entry by entry

def magic_rows_closed(A, c):
    n = A.shape[0]
    out = A.copy()
    for i in range(n):
        s = sum(A[i, j] for j in range(n))
        for j in range(n):
            out[i, j] = A[i, j] + (c - s) / n
    return out


def magic_cols_closed(A, c):
    return magic_rows_closed(A.T.copy(), c).T


def magic_diag_closed(A, c):
    n = A.shape[0]
    s = sum(A[i, i] for i in range(n))
    return A + (c - s) / n * np.eye(n)


def magic_antidiag_closed(A, c):
    n = A.shape[0]
    s = sum(A[i, n - 1 - i] for i in range(n))
    return A + (c - s) / n * np.fliplr(np.eye(n))


# closed forms for the pillar cube, with the u_p / v_p correction vectors

def cube_rows_closed(B, c):
    n = B.shape[0]
    L = n * n
    out = B.copy()
    for p in range(n):
        u = np.full(L, c - B[p].sum())
        for j in range(n):
            out[p, j, :] += u / n**3
    return out


def cube_cols_closed(B, c):
    n = B.shape[0]
    L = n * n
    out = B.copy()
    for p in range(n):
        v = np.full(L, c - B[:, p, :].sum())
        for i in range(n):
            out[i, p, :] += v / n**3
    return out


def cube_diag_closed(B, c):
    n = B.shape[0]
    s = sum(B[i, i, :].sum() for i in range(n))
    E = np.zeros_like(B)
    for i in range(n):
        E[i, i, :] = 1.0
    return B + (c - s) / n**3 * E


def cube_antidiag_closed(B, c):
    n = B.shape[0]
    s = sum(B[i, n - 1 - i, :].sum() for i in range(n))
    E = np.zeros_like(B)
    for i in range(n):
        E[i, n - 1 - i, :] = 1.0
    return B + (c - s) / n**3 * E


def golden_section_min(f, lo, hi, tol=1e-10):
    g = (np.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    while b - a > tol:
        if f(c) < f(d):
            b, d = d, c
            c = b - g * (b - a)
        else:
            a, c = c, d
            d = a + g * (b - a)
    return 0.5 * (a + b)


def dyadic(rng, shape, lo=-1.0, hi=2.0, step=0.25):
    """Random values on a coarse dyadic grid, so ties are exact in floats."""
    k = rng.integers(0, int(round((hi - lo) / step)) + 1, size=shape)
    return lo + step * k
