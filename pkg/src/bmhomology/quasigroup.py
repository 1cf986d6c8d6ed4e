"""Finite quasigroups stored as Cayley tables (Latin squares).

Elements are always ``0..n-1``; entry ``table[x][y]`` is the product ``x*y``
(row index is the left factor).
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    InternalInconsistency,
    NonSquare,
    NotLatin,
    OutOfRange,
    SearchBudgetExceeded,
    TableError,
)


def _check_latin(rows, lines=None):
    n = len(rows)
    for r, row in enumerate(rows):
        if len(row) != n:
            raise NonSquare(f"row {r} has {len(row)} entries, expected {n}",
                            lines[r] if lines else None)
        for v in row:
            if not 0 <= v < n:
                raise OutOfRange(f"entry {v} in row {r} is outside 0..{n - 1}",
                                 lines[r] if lines else None)
    for r, row in enumerate(rows):
        if len(set(row)) != n:
            raise NotLatin("row", r, lines[r] if lines else None)
    for c in range(n):
        if len({rows[r][c] for r in range(n)}) != n:
            raise NotLatin("column", c)


@dataclass(frozen=True)
class CayleyTable:
    """A validated finite quasigroup."""

    table: tuple

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if not rows:
            raise NonSquare("empty table")
        _check_latin(rows)
        object.__setattr__(self, "table", rows)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only numpy view of the table (int64)."""
        a = np.array(self.table, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def _ldiv(self):
        n = self.order
        out = [[0] * n for _ in range(n)]
        for y in range(n):
            for z in range(n):
                out[y][self.table[y][z]] = z
        return tuple(tuple(r) for r in out)

    @cached_property
    def _rdiv(self):
        n = self.order
        out = [[0] * n for _ in range(n)]
        for z in range(n):
            for y in range(n):
                out[self.table[z][y]][y] = z
        return tuple(tuple(r) for r in out)

    def rows(self):
        return [list(r) for r in self.table]

    def __repr__(self):
        return f"CayleyTable({self.rows()!r})"


def parse_table(text: str) -> CayleyTable:
    """Parse the plain-text table format.

    Blank lines and lines starting with ``#`` are ignored; trailing ``#``
    comments are stripped.  An optional first content line ``order: n`` fixes
    the expected size.
    """
    rows, lines = [], []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("order"):
            if rows or declared is not None:
                raise TableError("'order:' header must precede the rows", lineno)
            try:
                declared = int(line.split(":", 1)[1])
            except (IndexError, ValueError):
                raise TableError(f"malformed header {line!r}", lineno) from None
            if declared < 1:
                raise TableError("order must be positive", lineno)
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise TableError(f"non-integer entry in {line!r}", lineno) from None
        lines.append(lineno)
    if not rows:
        raise NonSquare("no rows found")
    if declared is not None and declared != len(rows):
        raise NonSquare(f"header declares order {declared} but {len(rows)} rows given")
    rows_t = tuple(tuple(r) for r in rows)
    _check_latin(rows_t, lines)
    return CayleyTable(rows_t)


def format_table(q: CayleyTable, header: bool = False) -> str:
    """Render ``q`` in the format accepted by :func:`parse_table`."""
    width = len(str(q.order - 1))
    body = "\n".join(" ".join(str(v).rjust(width) for v in row) for row in q.table)
    if header:
        return f"order: {q.order}\n{body}\n"
    return body + "\n"


def left_divide(q: CayleyTable, y: int, x: int) -> int:
    """Return ``y \\ x``, the unique ``z`` with ``y*z = x``."""
    return q._ldiv[y][x]


def right_divide(q: CayleyTable, x: int, y: int) -> int:
    """Return ``x / y``, the unique ``z`` with ``z*y = x``."""
    return q._rdiv[x][y]


# ASCII spellings are accepted next to the symbolic names.
PARASTROPHE_KINDS = {
    "·": "·", "*": "·", "mul": "·",
    "/": "/", "rdiv": "/",
    "\\": "\\", "ldiv": "\\",
    "∘": "∘", "op": "∘", "transpose": "∘",
    "//": "//", "rdiv_op": "//",
    "\\\\": "\\\\", "ldiv_op": "\\\\",
}


def parastrophe(q: CayleyTable, kind: str) -> CayleyTable:
    """Cayley table of one of the six conjugate operations of ``q``.

    ``x/y = z  <=> z*y = x``;  ``x\\y = z <=> x*z = y``;  ``x∘y = y*x``;
    ``x//y = z <=> z*x = y``;  ``x\\\\y = z <=> y*z = x``.
    """
    try:
        k = PARASTROPHE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown parastrophe kind {kind!r}") from None
    n = q.order
    r = range(n)
    if k == "·":
        return q
    if k == "/":
        rows = [[right_divide(q, x, y) for y in r] for x in r]
    elif k == "\\":
        rows = [[left_divide(q, x, y) for y in r] for x in r]
    elif k == "∘":
        rows = [[q.table[y][x] for y in r] for x in r]
    elif k == "//":
        rows = [[right_divide(q, y, x) for y in r] for x in r]
    else:
        rows = [[left_divide(q, y, x) for y in r] for x in r]
    return CayleyTable(rows)


class LoopClass(enum.Enum):
    LOOP = "Loop"
    LEFT_LOOP_ONLY = "LeftLoopOnly"
    RIGHT_LOOP_ONLY = "RightLoopOnly"
    NEITHER = "Neither"


def left_neutral(q: CayleyTable):
    """Element ``e`` with ``e*x = x`` for all ``x``, or None."""
    ident = tuple(range(q.order))
    for e, row in enumerate(q.table):
        if row == ident:
            return e
    return None


def right_neutral(q: CayleyTable):
    ident = tuple(range(q.order))
    for e in range(q.order):
        if tuple(q.table[x][e] for x in range(q.order)) == ident:
            return e
    return None


def loop_class(q: CayleyTable) -> LoopClass:
    left, right = left_neutral(q) is not None, right_neutral(q) is not None
    if left and right:
        return LoopClass.LOOP
    if left:
        return LoopClass.LEFT_LOOP_ONLY
    if right:
        return LoopClass.RIGHT_LOOP_ONLY
    return LoopClass.NEITHER


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``0..n-1`` given by its image list."""

    image: tuple

    def __init__(self, image: Sequence[int]):
        image = tuple(int(v) for v in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation")
        object.__setattr__(self, "image", image)

    @property
    def order(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self.image[v] for v in other.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image):
            inv[v] = i
        return Permutation(inv)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))


@dataclass(frozen=True)
class FiniteMonoid:
    """A one-object category: composition table plus identity index.

    ``table[i][j]`` is the index of ``elements[i] ∘ elements[j]``.  The
    optional ``elements`` carry the concrete maps (image tuples).
    """

    table: tuple
    identity: int
    elements: tuple = field(default=(), compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        m = len(table)
        if any(len(row) != m for row in table):
            raise InternalInconsistency("monoid table is not square")
        for a in range(m):
            if table[self.identity][a] != a or table[a][self.identity] != a:
                raise InternalInconsistency("identity law fails")
        for a in range(m):
            ta = table[a]
            for b in range(m):
                tab, tb = ta[b], table[b]
                for c in range(m):
                    if table[tab][c] != ta[tb[c]]:
                        raise InternalInconsistency("composition is not associative")

    @property
    def size(self) -> int:
        return len(self.table)

    def compose(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_group(self) -> bool:
        return all(self.identity in row for row in self.table)


def monoid_from_maps(maps, identity_map) -> FiniteMonoid:
    """Build a FiniteMonoid from a closed collection of self-maps (tuples)."""
    maps = sorted(set(tuple(f) for f in maps))
    index = {f: i for i, f in enumerate(maps)}
    table = [[index[tuple(f[v] for v in g)] for g in maps] for f in maps]
    return FiniteMonoid(table, index[tuple(identity_map)], tuple(maps))


def translations(q: CayleyTable):
    """Left and right translation permutations ``L(a): x -> a*x``, ``R(a): x -> x*a``."""
    n = q.order
    left = [Permutation(q.table[a]) for a in range(n)]
    right = [Permutation([q.table[x][a] for x in range(n)]) for a in range(n)]
    return left, right


def multiplication_group(q: CayleyTable, cap: int = 10 ** 6) -> FiniteMonoid:
    """Closure of all translations under composition (hash-set BFS)."""
    left, right = translations(q)
    gens = sorted({p.image for p in left + right})
    ident = tuple(range(q.order))
    seen = {ident}
    queue = deque([ident])
    while queue:
        f = queue.popleft()
        for g in gens:
            h = tuple(g[v] for v in f)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise GroupTooLarge(f"Mlt exceeds {cap} elements")
                queue.append(h)
    return monoid_from_maps(seen, ident)


def endomorphisms(q: CayleyTable, budget: int = 10 ** 6) -> list:
    """All maps ``f`` with ``f(x*y) = f(x)*f(y)``, as image tuples (sorted).

    Backtracking over images of the smallest unassigned element; after each
    choice the forced values ``f(x*y) = f(x)*f(y)`` are propagated and any
    conflict prunes the branch.  ``budget`` caps the number of search nodes.
    """
    n = q.order
    T = q.table
    found = []
    nodes = 0

    def search(f, assigned):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"endomorphism search exceeded {budget} nodes")
        try:
            k = f.index(None)
        except ValueError:
            found.append(tuple(f))
            return
        for v in range(n):
            g = list(f)
            g[k] = v
            if _extend(g, assigned, k):
                search(g, [i for i in range(n) if g[i] is not None])

    def _extend(g, assigned, k):
        # propagate from the new element against everything already fixed
        stack = [k]
        fixed = list(assigned) + [k]
        fixed_set = set(fixed)
        while stack:
            a = stack.pop()
            for b in list(fixed):
                for x, y in ((a, b), (b, a)):
                    p, v = T[x][y], T[g[x]][g[y]]
                    if g[p] is None:
                        g[p] = v
                        if p not in fixed_set:
                            fixed_set.add(p)
                            fixed.append(p)
                            stack.append(p)
                    elif g[p] != v:
                        return False
        return True

    search([None] * n, [])
    return sorted(found)


def endomorphism_monoid(q: CayleyTable, budget: int = 10 ** 6):
    """Return ``(monoid, maps)``; maps are sorted image tuples, composition
    ``table[i][j] = maps[i] ∘ maps[j]``."""
    maps = endomorphisms(q, budget)
    monoid = monoid_from_maps(maps, tuple(range(q.order)))
    return monoid, list(monoid.elements)


def cyclic_group(n: int) -> CayleyTable:
    """Addition table of Z/n."""
    return CayleyTable([[(x + y) % n for y in range(n)] for x in range(n)])


def direct_product(p: CayleyTable, q: CayleyTable) -> CayleyTable:
    """Product quasigroup, pair ``(a, x)`` indexed ``a*|q| + x``."""
    m, n = p.order, q.order
    rows = [[0] * (m * n) for _ in range(m * n)]
    for a in range(m):
        for x in range(n):
            for b in range(m):
                for y in range(n):
                    rows[a * n + x][b * n + y] = p.table[a][b] * n + q.table[x][y]
    return CayleyTable(rows)


def abelianization(q: CayleyTable, t: int = 1, s: int = 1):
    """``Z q / (t a + s b - a*b)``; the abelianization when ``t = s = 1``.

    With ``(1, -1)`` and ``(-1, 1)`` this is the abelianization of the
    parastrophes ``(q, /)`` and ``(q, \\)`` respectively.
    """
    from .homology import h1

    return h1(q, t, s)
