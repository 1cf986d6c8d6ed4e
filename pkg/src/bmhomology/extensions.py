"""Extensions ``(a, x) * (b, y) = (a * b + phi(x, y), xy)`` of a quasigroup
``X`` by an affine quasigroup ``A = Z/m``.

Pairs are indexed ``(a, x) -> a * n + x``.  A 2-cochain ``phi`` is an
``n x n`` grid over ``Z/m``; a 1-cochain ``alpha`` is a length-``n`` vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

from .affine import AffineSpec, affine_left_divide, affine_right_divide
from .boundary import d2_matrix, d3_matrix
from .errors import InternalInconsistency, TableError
from .homology import smith_normal_form, invariant_factors
from .identities import BmIdentity, satisfies
from .quasigroup import CayleyTable, left_divide, right_divide


@dataclass(frozen=True)
class Cochain2:
    """``phi: X x X -> Z/m``."""

    n: int
    m: int
    values: tuple

    def __init__(self, values, m: int):
        arr = np.asarray(values, dtype=np.int64) % m
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("a 2-cochain is a square grid")
        object.__setattr__(self, "n", arr.shape[0])
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "values", tuple(tuple(int(v) for v in row) for row in arr))

    def __call__(self, x: int, y: int) -> int:
        return self.values[x][y]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    @property
    def vector(self) -> np.ndarray:
        """Flattened in pair order ``x * n + y`` (the rows of ``d3``)."""
        return self.array.reshape(-1)

    @classmethod
    def zero(cls, n: int, m: int) -> "Cochain2":
        return cls(np.zeros((n, n), dtype=np.int64), m)

    @classmethod
    def random(cls, n: int, m: int, rng: np.random.Generator) -> "Cochain2":
        return cls(rng.integers(0, m, size=(n, n)), m)

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(self.array - other.array, self.m)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        return Cochain2(self.array + other.array, self.m)


@dataclass(frozen=True)
class Cochain1:
    """``alpha: X -> Z/m``."""

    n: int
    m: int
    values: tuple

    def __init__(self, values, m: int):
        vals = tuple(int(v) % m for v in values)
        object.__setattr__(self, "n", len(vals))
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "values", vals)

    def __call__(self, x: int) -> int:
        return self.values[x]


def parse_grid(text: str) -> list:
    """Whitespace separated integer grid; ``#`` starts a comment."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(v) for v in line.split()])
        except ValueError:
            raise TableError(f"non-integer entry in {line!r}", lineno) from None
    return rows


def _check(A: AffineSpec, X: CayleyTable, phi: Cochain2):
    if phi.n != X.order or phi.m != A.modulus:
        raise ValueError(f"cochain is {phi.n}x{phi.n} mod {phi.m}; need {X.order}x{X.order} mod {A.modulus}")


def extension_table(A: AffineSpec, X: CayleyTable, phi: Cochain2) -> CayleyTable:
    _check(A, X, phi)
    m, n = A.modulus, X.order
    a = np.arange(m * n) // n
    x = np.arange(m * n) % n
    first = (A.t * a[:, None] + A.s * a[None, :] + A.c0 + phi.array[x[:, None], x[None, :]]) % m
    second = X.array[x[:, None], x[None, :]]
    try:
        return CayleyTable((first * n + second).tolist())
    except TableError as exc:  # guaranteed Latin for quasigroup X; anything else is a bug
        raise InternalInconsistency(f"extension is not Latin: {exc}") from exc


def extension_right_divide(A: AffineSpec, X: CayleyTable, phi: Cochain2, p: int, q: int) -> int:
    """``(a, x) / (b, y) = (a/b - t^{-1} phi(x/y, y), x/y)``."""
    n, m = X.order, A.modulus
    (a, x), (b, y) = divmod(p, n), divmod(q, n)
    z = right_divide(X, x, y)
    c = (affine_right_divide(A, a, b) - pow(A.t, -1, m) * phi(z, y)) % m if m > 1 else 0
    return c * n + z


def extension_left_divide(A: AffineSpec, X: CayleyTable, phi: Cochain2, p: int, q: int) -> int:
    """``(a, x) \\ (b, y) = (a\\b - s^{-1} phi(x, x\\y), x\\y)``."""
    n, m = X.order, A.modulus
    (a, x), (b, y) = divmod(p, n), divmod(q, n)
    z = left_divide(X, x, y)
    c = (affine_left_divide(A, a, b) - pow(A.s, -1, m) * phi(x, z)) % m if m > 1 else 0
    return c * n + z


def cocycle_residual(X: CayleyTable, identity: BmIdentity, t: int, s: int, m: int,
                     phi: Cochain2) -> np.ndarray:
    """``phi`` applied to every column of ``d3``, reduced mod ``m``."""
    D3 = d3_matrix(X, identity, t, s, warn=False).entries
    return (phi.vector @ D3) % m


def cocycle_condition(X: CayleyTable, identity: BmIdentity, t: int, s: int, m: int,
                      phi: Cochain2) -> bool:
    """``phi o d3 == 0 (mod m)``, cross-checked against the extension (with
    ``A = Z/m``, ``c0 = 0``) satisfying the identity directly."""
    algebraic = not cocycle_residual(X, identity, t, s, m, phi).any()
    ext = extension_table(AffineSpec(m, t, s, 0), X, phi)
    direct = satisfies(ext, identity)
    if algebraic != direct:
        raise InternalInconsistency(
            f"cocycle test ({algebraic}) and extension check ({direct}) disagree")
    return algebraic


def coboundary(X: CayleyTable, t: int, s: int, alpha: Cochain1) -> Cochain2:
    """``phi(x, y) = alpha(t x + s y - xy) = t alpha(x) + s alpha(y) - alpha(xy)``."""
    a = np.array(alpha.values, dtype=np.int64)
    grid = t * a[:, None] + s * a[None, :] - a[X.array]
    return Cochain2(grid, alpha.m)


def solve_mod(M, b, m: int) -> Optional[list]:
    """Some ``v`` with ``M v = b (mod m)``, or None.  Uses the Smith form
    ``U M V = D``: solve ``D w = U b`` coordinatewise and set ``v = V w``."""
    M = [[int(v) for v in row] for row in np.asarray(M).tolist()]
    rows, cols = len(M), len(M[0])
    snf = smith_normal_form(M, transforms=True)
    Ub = [sum(u * int(bv) for u, bv in zip(row, b)) % m for row in snf.U]
    w = [0] * cols
    for i in range(rows):
        d = snf.factors[i] if i < len(snf.factors) else 0
        g = gcd(d, m)
        if Ub[i] % g:
            return None
        if i < cols and d % m:
            mg = m // g
            w[i] = (Ub[i] // g) * pow((d // g) % mg, -1, mg) % mg if mg > 1 else 0
    return [sum(vr * wj for vr, wj in zip(row, w)) % m for row in snf.V]


def are_equivalent(X: CayleyTable, A: AffineSpec, phi1: Cochain2, phi2: Cochain2) -> Optional[Cochain1]:
    """``alpha`` with ``phi1 - phi2 = alpha o d2`` if one exists.

    When found, ``(a, x) -> (a + alpha(x), x)`` is checked to carry the
    ``phi1`` extension isomorphically onto the ``phi2`` extension."""
    _check(A, X, phi1)
    _check(A, X, phi2)
    m = A.modulus
    D2 = d2_matrix(X, A.t, A.s).entries
    diff = (phi1 - phi2).vector
    sol = solve_mod(D2.T, diff.tolist(), m)
    if sol is None:
        return None
    alpha = Cochain1(sol, m)
    if coboundary(X, A.t, A.s, alpha) != phi1 - phi2:
        raise InternalInconsistency("modular solve returned a non-solution")
    E1 = extension_table(A, X, phi1)
    E2 = extension_table(A, X, phi2)
    n = X.order
    f = [((p // n + alpha(p % n)) % m) * n + p % n for p in range(m * n)]
    for p in range(m * n):
        for q in range(m * n):
            if f[E1.mul(p, q)] != E2.mul(f[p], f[q]):
                raise InternalInconsistency("alpha-hat is not an isomorphism")
    return alpha


def _kernel_count_mod(M, m: int) -> int:
    """``#{v in (Z/m)^cols : M v = 0 mod m}``."""
    M = np.asarray(M)
    cols = M.shape[1]
    factors = invariant_factors(M)
    count = m ** (cols - len(factors))
    for d in factors:
        count *= gcd(d, m)
    return count


def count_cocycles(X: CayleyTable, identity: BmIdentity, t: int, s: int, m: int) -> int:
    """Number of 2-cochains mod ``m`` with ``phi o d3 = 0``."""
    D3 = d3_matrix(X, identity, t, s, warn=False).entries
    return _kernel_count_mod(D3.T, m)


def count_coboundaries(X: CayleyTable, t: int, s: int, m: int) -> int:
    """Size of ``{alpha o d2}`` = ``m^n / #ker``."""
    D2 = d2_matrix(X, t, s).entries
    return m ** X.order // _kernel_count_mod(D2.T, m)
