"""Exact integer linear algebra and the H1 / H2 computations.

Matrices are lists of rows of Python ints (numpy arrays are accepted on
input).  Two Smith normal form routes are provided:

* :func:`smith_normal_form` is the classical dense algorithm (minimal
  absolute pivot, divisibility repair) and can return the unimodular
  transforms ``U, V`` with ``U M V = D``.
* :func:`invariant_factors` is the production route for the large boundary
  matrices.  It first removes unit pivots with sparse elimination (each
  contributes an invariant factor 1 and never changes the cokernel), then
  runs the dense algorithm on what is left.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import NotInKernel


# --------------------------------------------------------------------------
# Abelian groups


def _factorize(n: int) -> dict:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_chain(cyclic_orders) -> tuple:
    """Rewrite a direct sum of cyclic groups ``Z/d`` in invariant-factor
    form ``d1 | d2 | ...`` (orders 0 and 1 are ignored)."""
    powers: dict = {}
    for d in cyclic_orders:
        d = abs(int(d))
        if d <= 1:
            continue
        for p, k in _factorize(d).items():
            powers.setdefault(p, []).append(p ** k)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    chain = [1] * length
    for p, vals in powers.items():
        vals = sorted(vals)
        for i, v in enumerate(vals):
            chain[length - len(vals) + i] *= v
    return tuple(chain)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank (+) Z/d1 (+) ... (+) Z/dk`` with ``d1 | d2 | ... | dk``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tor = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tor)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for k, d in enumerate(tor):
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
            if k and d % tor[k - 1]:
                raise ValueError(f"torsion {tor} is not a divisibility chain")

    @classmethod
    def from_cyclics(cls, free_rank: int, cyclic_orders) -> "AbelianGroup":
        return cls(free_rank, invariant_chain(cyclic_orders))

    @classmethod
    def cokernel(cls, rows: int, factors: Sequence[int]) -> "AbelianGroup":
        """``Z^rows / L`` where ``L`` has the given nonzero invariant factors."""
        factors = [abs(d) for d in factors]
        return cls(rows - len(factors), tuple(d for d in factors if d > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(data["torsion"]))

    def __str__(self):
        return format_group(self)


def format_group(g: AbelianGroup) -> str:
    """``Z^6 (+) (Z/2)^2``; repeated factors are grouped; ``0`` if trivial."""
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    k = 0
    tor = list(g.torsion)
    while k < len(tor):
        d = tor[k]
        run = 1
        while k + run < len(tor) and tor[k + run] == d:
            run += 1
        parts.append(f"Z/{d}" if run == 1 else f"(Z/{d})^{run}")
        k += run
    return " (+) ".join(parts) if parts else "0"


_SUMMAND = re.compile(r"^(?:Z(?:\^(\d+))?|Z/(\d+)|\(Z/(\d+)\)\^(\d+))$")


def parse_group(text: str) -> AbelianGroup:
    """Inverse of :func:`format_group`; also accepts ``+`` or ``⊕`` as the
    separator and non-normalised summands such as ``Z/2 (+) Z/3``."""
    text = text.strip()
    if text in ("0", ""):
        return AbelianGroup()
    pieces = re.split(r"\s*(?:\(\+\)|⊕|\+)\s*", text)
    free, cyc = 0, []
    for p in pieces:
        m = _SUMMAND.match(p.replace(" ", ""))
        if not m:
            raise ValueError(f"cannot parse summand {p!r}")
        rank, d1, d2, k = m.groups()
        if d1:
            cyc.append(int(d1))
        elif d2:
            cyc.extend([int(d2)] * int(k))
        else:
            free += int(rank) if rank else 1
    return AbelianGroup.from_cyclics(free, cyc)


# --------------------------------------------------------------------------
# Dense Smith normal form


def _as_rows(M) -> List[List[int]]:
    if isinstance(M, np.ndarray):
        return [[int(v) for v in row] for row in M.tolist()]
    return [[int(v) for v in row] for row in M]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass
class SNFResult:
    """``factors``: nonzero diagonal ``d1 | d2 | ...`` (all positive).
    ``U``, ``V`` (when requested) are unimodular with ``U M V = D``."""

    factors: List[int]
    U: Optional[List[List[int]]] = None
    V: Optional[List[List[int]]] = None
    D: Optional[List[List[int]]] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_normal_form(M, transforms: bool = False) -> SNFResult:
    """Classical SNF by elementary operations.

    Pivot is the nonzero entry of least absolute value in the active block;
    after clearing its row and column, any entry not divisible by the pivot
    is added into the pivot row and the step repeats.
    """
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            rs, rd = A[src], A[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] += q * rs[k]
            if U is not None:
                us, ud = U[src], U[dst]
                for k in range(m):
                    if us[k]:
                        ud[k] += q * us[k]

    def add_col(dst, src, q):  # col dst += q * col src
        if q:
            for row in A:
                if row[src]:
                    row[dst] += q * row[src]
            if V is not None:
                for row in V:
                    if row[src]:
                        row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                # bring the smallest remainder in the pivot cross to (t, t)
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        t += 1
    factors = [A[k][k] for k in range(t)]
    if not transforms:
        return SNFResult(factors)
    return SNFResult(factors, U, V, A)


# --------------------------------------------------------------------------
# Sparse unit-pivot reduction + dense SNF


def _sparse_columns(M):
    """Column dicts ``{row: value}`` of a dense matrix, zero columns dropped
    and columns equal up to sign merged (the column lattice is unchanged)."""
    if isinstance(M, np.ndarray):
        arr = M
    else:
        arr = np.array(M, dtype=object) if len(M) else np.zeros((0, 0), dtype=np.int64)
    cols = []
    seen = set()
    if arr.size == 0:
        return cols
    nz_rows, nz_cols = np.nonzero(arr)
    by_col: dict = {}
    for r, c in zip(nz_rows.tolist(), nz_cols.tolist()):
        by_col.setdefault(c, {})[r] = int(arr[r, c])
    for c in sorted(by_col):
        col = by_col[c]
        key = _canon(col)
        if key not in seen:
            seen.add(key)
            cols.append(col)
    return cols


def _canon(col: dict):
    items = tuple(sorted(col.items()))
    if items and items[0][1] < 0:
        items = tuple((r, -v) for r, v in items)
    return items


def _unit_eliminate(cols: List[dict]):
    """Eliminate unit pivots (Markowitz order).  Returns ``(units, rest)``:
    the number of factors equal to 1 produced and the remaining columns
    (restricted to untouched rows)."""
    cols = [dict(c) for c in cols]
    alive = set(range(len(cols)))
    row_map: dict = {}
    for k, col in enumerate(cols):
        for r in col:
            row_map.setdefault(r, set()).add(k)
    units = 0
    while True:
        best = None
        for k in alive:
            col = cols[k]
            cn = len(col) - 1
            for r, v in col.items():
                if v == 1 or v == -1:
                    cost = cn * (len(row_map[r]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, k, r)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, k, r = best
        piv = cols[k]
        u = piv[r]
        for k2 in list(row_map[r]):
            if k2 == k:
                continue
            col = cols[k2]
            f = col[r] * u  # col -= (col[r] / u) * piv
            for rr, vv in piv.items():
                nv = col.get(rr, 0) - f * vv
                if nv:
                    if rr not in col:
                        row_map.setdefault(rr, set()).add(k2)
                    col[rr] = nv
                else:
                    if rr in col:
                        del col[rr]
                        row_map[rr].discard(k2)
            if not col:
                alive.discard(k2)
        # drop pivot row and pivot column
        for rr in piv:
            row_map[rr].discard(k)
        alive.discard(k)
        for k2 in row_map.pop(r, set()):
            # only the pivot column remained in row r
            cols[k2].pop(r, None)
        units += 1
    rest = []
    seen = set()
    for k in sorted(alive):
        col = cols[k]
        if not col:
            continue
        key = _canon(col)
        if key not in seen:
            seen.add(key)
            rest.append(col)
    return units, rest


def invariant_factors(M) -> List[int]:
    """Nonzero invariant factors of ``M`` (ascending divisibility chain)."""
    cols = _sparse_columns(M)
    units, rest = _unit_eliminate(cols)
    if not rest:
        return [1] * units
    rows = sorted({r for c in rest for r in c})
    index = {r: i for i, r in enumerate(rows)}
    dense = [[0] * len(rest) for _ in rows]
    for j, col in enumerate(rest):
        for r, v in col.items():
            dense[index[r]][j] = v
    # SNF is transpose invariant; eliminate along the shorter side
    if len(rest) < len(rows):
        dense = [list(r) for r in zip(*dense)]
    return [1] * units + smith_normal_form(dense).factors


def matrix_rank(M) -> int:
    return len(invariant_factors(M))


def cokernel(M, rows: Optional[int] = None) -> AbelianGroup:
    """``Z^rows / (column span of M)``."""
    if rows is None:
        rows = M.shape[0] if isinstance(M, np.ndarray) else len(M)
    return AbelianGroup.cokernel(rows, invariant_factors(M))


# --------------------------------------------------------------------------
# Kernel via column echelon form


@dataclass
class KernelData:
    """Column echelon data of ``M``: ``M V = [E | 0]`` with ``E`` of full
    column rank ``rank``.  ``basis`` holds the last ``n - rank`` columns of
    ``V`` (a Z-basis of ker M) and ``V_inv`` the inverse transform, so that
    ``V_inv @ v`` gives echelon coordinates of any vector ``v``."""

    rank: int
    basis: List[List[int]]
    V: List[List[int]]
    V_inv: List[List[int]]


def column_echelon(M) -> KernelData:
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    cols = [[A[i][j] for i in range(m)] for j in range(n)]  # column major
    V = [[int(i == j) for i in range(n)] for j in range(n)]  # V stored by columns
    Vinv = _identity(n)  # stored by rows

    def combine(a, b, x, y, p, q):
        # new_a = x*a + y*b, new_b = p*a + q*b   (det = x*q - y*p = 1)
        ca, cb = cols[a], cols[b]
        cols[a] = [x * u + y * v for u, v in zip(ca, cb)]
        cols[b] = [p * u + q * v for u, v in zip(ca, cb)]
        va, vb = V[a], V[b]
        V[a] = [x * u + y * v for u, v in zip(va, vb)]
        V[b] = [p * u + q * v for u, v in zip(va, vb)]
        # inverse of [[x, p], [y, q]] is [[q, -p], [-y, x]] acting on rows a, b
        ra, rb = Vinv[a], Vinv[b]
        Vinv[a] = [q * u - p * v for u, v in zip(ra, rb)]
        Vinv[b] = [-y * u + x * v for u, v in zip(ra, rb)]

    rank = 0
    for i in range(m):
        if rank == n:
            break
        for j in range(rank + 1, n):
            b = cols[j][i]
            if not b:
                continue
            a = cols[rank][i]
            if a == 0:
                _swap(cols, V, Vinv, rank, j)
                continue
            g, x, y = _xgcd(a, b)
            combine(rank, j, x, y, -b // g, a // g)
        if cols[rank][i]:
            rank += 1
    V_rows = [[V[j][i] for j in range(n)] for i in range(n)]
    basis = [row[rank:] for row in V_rows]
    return KernelData(rank, basis, V_rows, Vinv)


def _swap(cols, V, Vinv, a, b):
    cols[a], cols[b] = cols[b], cols[a]
    V[a], V[b] = V[b], V[a]
    Vinv[a], Vinv[b] = Vinv[b], Vinv[a]


def _xgcd(a: int, b: int):
    """``(g, x, y)`` with ``x a + y b = g = gcd(a, b) > 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(M) -> List[List[int]]:
    """Matrix whose columns form a Z-basis of ``{v : M v = 0}``."""
    return column_echelon(M).basis


# --------------------------------------------------------------------------
# Homology


def integer_matmul(A, B) -> np.ndarray:
    """Exact product; int64 when provably overflow-free, objects otherwise."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    mxa = max(abs(int(v)) for v in A.flat)
    mxb = max(abs(int(v)) for v in B.flat)
    if mxa * mxb * A.shape[1] < 2 ** 62:
        return A.astype(np.int64) @ B.astype(np.int64)
    return A.dot(B)


def chain_homology(d_in, d_out, middle: int) -> AbelianGroup:
    """Homology ``ker d_out / im d_in`` at a chain group of rank ``middle``.

    ``d_out`` maps the middle group onwards (``None`` means zero map) and
    ``d_in`` maps into it.  Image columns are rewritten in kernel
    coordinates ``Y`` before the SNF, so the torsion is exact.
    """
    if d_out is None or np.asarray(d_out).size == 0 or not np.any(np.asarray(d_out)):
        rank = 0
        Y = np.asarray(d_in)
        kernel_rank = middle
    else:
        data = column_echelon(d_out)
        rank = data.rank
        kernel_rank = middle - rank
        full = integer_matmul(data.V_inv, d_in)
        if rank and np.any(full[:rank]):
            rows, cols = np.nonzero(full[:rank])
            raise NotInKernel(f"boundary column {int(cols[0])} is not a cycle")
        Y = full[rank:]
    if kernel_rank == 0:
        return AbelianGroup()
    factors = invariant_factors(Y) if np.asarray(Y).size else []
    return AbelianGroup.cokernel(kernel_rank, factors)


def h1(q, t: int, s: int) -> AbelianGroup:
    """``H1(q; t, s) = Z^n / im d2``."""
    from .boundary import d2_matrix

    D2 = d2_matrix(q, t, s)
    return cokernel(D2.entries, D2.rows)


def h2(q, identity, t: int, s: int, check: bool = True) -> AbelianGroup:
    """``H2(q; Vij, t, s) = ker d2 / im d3``.

    When ``check`` is set, a warning is issued if ``q`` does not satisfy the
    identity or ``(t, s)`` is outside the registry's solution set.
    """
    from .boundary import d2_matrix, d3_matrix
    from .identities import satisfies, variety_of

    if check:
        if not satisfies(q, identity):
            warnings.warn(f"table does not satisfy {identity.name}", stacklevel=2)
        elif not identity.is_x and not variety_of(identity).admits(t, s):
            warnings.warn(f"(t, s) = ({t}, {s}) is not a registry solution for {identity.name}",
                          stacklevel=2)
    D2 = d2_matrix(q, t, s)
    D3 = d3_matrix(q, identity, t, s, warn=False)
    return chain_homology(D3.entries, D2.entries, D2.cols)


def quotient_map(M, rows: Optional[int] = None):
    """``(group, images)`` for ``Z^rows / (column span of M)``.

    ``images[i]`` is the coordinate tuple of the basis vector ``e_i`` in the
    decomposition ``Z/d1 (+) ... (+) Z/dk (+) Z^r``: torsion coordinates are
    reduced mod ``d``, free coordinates are integers.
    """
    A = _as_rows(M)
    if rows is None:
        rows = len(A)
    if not A or not A[0]:
        A = [[0] for _ in range(rows)]
    snf = smith_normal_form(A, transforms=True)
    factors = snf.factors + [0] * (rows - len(snf.factors))
    keep = [k for k, d in enumerate(factors) if d != 1]
    images = []
    for i in range(rows):
        coords = []
        for k in keep:
            v = snf.U[k][i]
            coords.append(v % factors[k] if factors[k] else v)
        images.append(tuple(coords))
    group = AbelianGroup.cokernel(rows, snf.factors)
    return group, images


def abelianization_map(q, t: int = 1, s: int = 1):
    """Quotient map ``Z q -> H1(q; t, s)`` as per-element coordinates."""
    from .boundary import d2_matrix

    D2 = d2_matrix(q, t, s)
    return quotient_map(D2.entries, D2.rows)
