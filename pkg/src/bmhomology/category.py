"""Nerve homology of a one-object category (a finite monoid) with the
constant functor to Z.

``C_k`` is free on k-tuples ``(g0, ..., g_{k-1})`` of morphisms, read as a
composable string ``g0`` then ``g1`` and so on.  Face maps:

* ``d_0`` drops ``g0``, ``d_k`` drops ``g_{k-1}``;
* ``d_i`` (``0 < i < k``) replaces ``g_{i-1}, g_i`` by ``g_i o g_{i-1}``.

``del_k = sum (-1)^i d_i``.  The complex is not normalised.  ``del_1`` is
``d_0 - d_1 = 0`` because ``C_0`` has a single generator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .boundary import TupleIndex
from .errors import BudgetExceeded
from .homology import AbelianGroup, chain_homology, cokernel
from .quasigroup import FiniteMonoid


def face(monoid: FiniteMonoid, i: int, tup: Tuple[int, ...]) -> Tuple[int, ...]:
    k = len(tup)
    if not 0 <= i <= k:
        raise ValueError(f"face index {i} out of range for a {k}-simplex")
    if i == 0:
        return tuple(tup[1:])
    if i == k:
        return tuple(tup[:-1])
    merged = monoid.compose(tup[i], tup[i - 1])
    return tuple(tup[: i - 1]) + (merged,) + tuple(tup[i + 1:])


def nerve_boundary(monoid: FiniteMonoid, k: int) -> np.ndarray:
    """Matrix of ``del_k: C_k -> C_{k-1}`` (``m^{k-1} x m^k``)."""
    m = monoid.size
    src, dst = TupleIndex(k, m), TupleIndex(k - 1, m)
    M = np.zeros((dst.size, src.size), dtype=np.int64)
    for col, tup in enumerate(src):
        for i in range(k + 1):
            M[dst.index(face(monoid, i, tup)), col] += (-1) ** i
    return M


@dataclass
class NerveComplex:
    monoid: FiniteMonoid
    degree: int
    boundaries: dict = field(default_factory=dict)  # k -> matrix of del_k

    def rank(self, k: int) -> int:
        return self.monoid.size ** k


def nerve_boundaries(monoid: FiniteMonoid, N: int = 3, budget: int = 10 ** 6) -> NerveComplex:
    if N < 1:
        raise ValueError("degree must be >= 1")
    if monoid.size ** N > budget:
        raise BudgetExceeded(f"{monoid.size}^{N} chains exceed the budget {budget}")
    return NerveComplex(monoid, N, {k: nerve_boundary(monoid, k) for k in range(1, N + 1)})


def verify_nerve(cx: NerveComplex) -> bool:
    for k in range(2, cx.degree + 1):
        if (cx.boundaries[k - 1] @ cx.boundaries[k]).any():
            return False
    return True


def category_h1_h2(monoid: FiniteMonoid, budget: int = 10 ** 6):
    """``(H1, H2)`` of the nerve with constant coefficients."""
    cx = nerve_boundaries(monoid, 3, budget)
    m = monoid.size
    # del_1 vanishes, so H1 = C1 / im del_2
    H1 = cokernel(cx.boundaries[2], m)
    H2 = chain_homology(cx.boundaries[3], cx.boundaries[2], m * m)
    return H1, H2


def group_homology_cyclic(n: int) -> Tuple[AbelianGroup, AbelianGroup]:
    """Reference values ``H1(Z/n) = Z/n`` and ``H2(Z/n) = 0``."""
    return (AbelianGroup(0, (n,)) if n > 1 else AbelianGroup()), AbelianGroup()
