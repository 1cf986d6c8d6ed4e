"""Boundary matrices of the complex ``0 -> C3 -> C2 -> C1 -> 0``.

``C_k`` is free on k-tuples of elements, indexed by :class:`TupleIndex`
(lexicographic, leftmost coordinate most significant).  For an X pattern
the degree-3 chains are quadruples.

* ``d2(x, y) = t x + s y - xy``
* ``d3`` sends an assignment of the identity's variables to the chain
  ``Q(T_i) - Q(T_j)`` evaluated in the quasigroup, with ``t, s`` commuting
  integers.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Tuple

import numpy as np

from .errors import NotAComplex, TranscriptionMismatch
from .identities import (BmIdentity, PATTERNS, all_assignments, evaluate_word,
                         parse_identity, satisfies)
from .quasigroup import CayleyTable
from .trees import identity_Q_difference


@dataclass(frozen=True)
class TupleIndex:
    """Bijection between k-tuples over ``0..n-1`` and ``0..n^k - 1``."""

    arity: int
    order: int

    @property
    def size(self) -> int:
        return self.order ** self.arity

    def index(self, tup) -> int:
        if len(tup) != self.arity:
            raise ValueError(f"expected a {self.arity}-tuple")
        k = 0
        for v in tup:
            if not 0 <= v < self.order:
                raise ValueError(f"coordinate {v} out of range")
            k = k * self.order + v
        return k

    def tuple(self, k: int) -> Tuple[int, ...]:
        if not 0 <= k < self.size:
            raise ValueError(f"index {k} out of range")
        out = []
        for _ in range(self.arity):
            k, r = divmod(k, self.order)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return product(range(self.order), repeat=self.arity)


@dataclass
class BoundaryMatrix:
    """Dense integer matrix with its domain/codomain tuple indices.

    ``satisfied`` is False when the matrix was built for a table that does
    not satisfy the identity (the matrix is still well defined).
    """

    rows: int
    cols: int
    entries: np.ndarray
    row_index: TupleIndex
    col_index: TupleIndex
    satisfied: bool = True

    def dump(self) -> str:
        """Header ``dims R C`` then one ``row col value`` line per nonzero."""
        lines = [f"dims {self.rows} {self.cols}"]
        for r, c in zip(*np.nonzero(self.entries)):
            lines.append(f"{r} {c} {int(self.entries[r, c])}")
        return "\n".join(lines) + "\n"

    def tolist(self):
        return [[int(v) for v in row] for row in self.entries.tolist()]


def parse_dump(text: str) -> np.ndarray:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "dims":
        raise ValueError("missing 'dims R C' header")
    out = np.zeros((int(lines[0][1]), int(lines[0][2])), dtype=np.int64)
    for r, c, v in lines[1:]:
        out[int(r), int(c)] = int(v)
    return out


def d2_matrix(q: CayleyTable, t: int, s: int) -> BoundaryMatrix:
    n = q.order
    M = np.zeros((n, n * n), dtype=np.int64)
    cols = np.arange(n * n)
    x, y = np.divmod(cols, n)
    np.add.at(M, (x, cols), t)
    np.add.at(M, (y, cols), s)
    np.add.at(M, (q.array[x, y], cols), -1)
    return BoundaryMatrix(n, n * n, M, TupleIndex(1, n), TupleIndex(2, n))


def d3_matrix(q: CayleyTable, identity: BmIdentity, t: int, s: int,
              warn: bool = True) -> BoundaryMatrix:
    """Column per assignment of the identity's variables (in order of first
    appearance in the pattern); rows are pairs ``(u, v)``."""
    n = q.order
    variables = identity.variables
    k = len(variables)
    env = all_assignments(n, variables)
    ncols = n ** k
    M = np.zeros((n * n, ncols), dtype=np.int64)
    cols = np.arange(ncols)
    for (left, right), poly in identity_Q_difference(identity).items():
        coef = poly.evaluate(t, s)
        if not coef:
            continue
        u = np.broadcast_to(evaluate_word(q, left, env), (ncols,))
        v = np.broadcast_to(evaluate_word(q, right, env), (ncols,))
        np.add.at(M, (u * n + v, cols), coef)
    ok = satisfies(q, identity)
    if warn and not ok:
        warnings.warn(f"table does not satisfy {identity.name}; d3 is not a boundary", stacklevel=2)
    return BoundaryMatrix(n * n, ncols, M, TupleIndex(2, n), TupleIndex(k, n), ok)


def verify_complex(q: CayleyTable, identity: BmIdentity, t: int, s: int) -> bool:
    """Check ``d2 @ d3 == 0``; raise :class:`NotAComplex` at the first
    nonzero entry."""
    D2 = d2_matrix(q, t, s).entries
    D3 = d3_matrix(q, identity, t, s, warn=False).entries
    prod = D2 @ D3
    nz = np.argwhere(prod)
    if len(nz):
        r, c = (int(v) for v in nz[0])
        raise NotAComplex(r, c, int(prod[r, c]))
    return True


def inclusion_matrix(identity: BmIdentity, n: int) -> np.ndarray:
    """Matrix ``F`` of the chain map ``C3(V) -> C3(X)`` that sends the
    assignment ``(x, y, z)`` to the quadruple read off the pattern word (for
    example ``(x, x, y, z)`` for pattern A).  ``d3(Vij) = d3(Xij) @ F``."""
    variables = identity.variables
    src = TupleIndex(len(variables), n)
    dst = TupleIndex(4, n)
    F = np.zeros((dst.size, src.size), dtype=np.int64)
    for col, tup in enumerate(src):
        val = dict(zip(variables, tup))
        F[dst.index(tuple(val[v] for v in PATTERNS[identity.pattern])), col] = 1
    return F


def symbolic_d3(identity: BmIdentity):
    """``Q(T_i) - Q(T_j)`` as a :class:`~bmhomology.trees.FormalChain`."""
    return identity_Q_difference(identity)


def formula_crosscheck(identity: BmIdentity, text: str = None) -> bool:
    """Compare ``Q(T_i) - Q(T_j)`` with a transcribed formula.

    Without ``text`` the bundled transcription is used.  Coefficients are
    compared in the commutative image Z[t, s], which is how the boundary
    matrices use them.  Raises :class:`TranscriptionMismatch` with the
    first differing pair.
    """
    from .corpus import formulas
    from .notation import parse_chain

    if text is None:
        table = formulas()["d3"]
        if identity.name not in table:
            raise KeyError(f"no transcribed formula for {identity.name}")
        text = table[identity.name]
    ours = symbolic_d3(identity).commutative()
    theirs = parse_chain(text).commutative()
    for pair in sorted(set(ours) | set(theirs), key=repr):
        if ours.get(pair) != theirs.get(pair):
            raise TranscriptionMismatch(
                f"{identity.name}: pair {pair} has {ours.get(pair)} computed, "
                f"{theirs.get(pair)} transcribed")
    return True


def transcribed_identities():
    from .corpus import formulas

    return [parse_identity(name) for name in formulas()["d3"]]
