"""Independent reference implementations used only by the tests.

None of these share code with the package's linear algebra.
"""
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np


def rational_rank(M) -> int:
    """Rank over Q by Fraction Gaussian elimination."""
    A = [[Fraction(int(v)) for v in row] for row in np.asarray(M).tolist()]
    if not A or not A[0]:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def _det(A):
    A = [[Fraction(v) for v in row] for row in A]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)


def determinantal_factors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    A = np.asarray(M).tolist()
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, _det([[A[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def rank_mod_p(M, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in np.nonzero(A[:, c])[0]:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
        if r == rows:
            break
    return r


def homology_profile(d_in, d_out, middle, primes=(2, 3, 5)):
    """Free rank and, per prime p, the number of torsion summands of order
    divisible by p, of ker d_out / im d_in (needs ker d_out saturated, true
    for a kernel)."""
    big = 1_000_003
    r_in = rank_mod_p(d_in, big)
    r_out = rank_mod_p(d_out, big) if d_out is not None else 0
    free = middle - r_out - r_in
    return free, {p: r_in - rank_mod_p(d_in, p) for p in primes}


def group_profile(g, primes=(2, 3, 5)):
    return g.free_rank, {p: sum(1 for d in g.torsion if d % p == 0) for p in primes}


def _int_rows(M):
    """Rows as Python ints; never routes big values through a float array."""
    if isinstance(M, np.ndarray):
        M = M.tolist()
    return [[int(v) for v in row] for row in M]


def is_unimodular(M) -> bool:
    return abs(_det(_int_rows(M))) == 1
