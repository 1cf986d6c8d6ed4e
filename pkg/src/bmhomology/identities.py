"""Bol-Moufang word calculus: bracketings, letter patterns, identities,
duality, brute-force satisfaction and the registry of the 26 varieties.

A *tree* is either a leaf label (a string) or a pair ``(left, right)`` of
trees.  Shapes are the five bracketings of a four-letter word::

    1: o(o(oo))   2: o((oo)o)   3: (oo)(oo)   4: (o(oo))o   5: ((oo)o)o
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DualUndefined, InternalInconsistency
from .quasigroup import CayleyTable

# Skeletons over leaf positions 0..3.
SHAPES = {
    1: (0, (1, (2, 3))),
    2: (0, ((1, 2), 3)),
    3: ((0, 1), (2, 3)),
    4: ((0, (1, 2)), 3),
    5: (((0, 1), 2), 3),
}

PATTERNS = {
    "A": ("x", "x", "y", "z"),
    "B": ("x", "y", "x", "z"),
    "C": ("x", "y", "y", "z"),
    "D": ("x", "y", "z", "x"),
    "E": ("x", "y", "z", "y"),
    "F": ("x", "y", "z", "z"),
    "X": ("x", "y", "z", "w"),
}

DUAL_LETTER = {"A": "F", "B": "E", "C": "C", "D": "D", "E": "B", "F": "A", "X": "X"}
DUAL_SHAPE = {1: 5, 2: 4, 3: 3, 4: 2, 5: 1}

# Xij that do not collapse to associativity.
NONTRIVIAL_X = {(1, 4), (1, 5), (2, 5)}


def pattern_variables(letter: str) -> tuple:
    """Distinct variables of a pattern in order of first appearance."""
    out = []
    for v in PATTERNS[letter]:
        if v not in out:
            out.append(v)
    return tuple(out)


def _fill(skeleton, labels):
    if isinstance(skeleton, int):
        return labels[skeleton]
    return (_fill(skeleton[0], labels), _fill(skeleton[1], labels))


def word_tree(letter: str, shape: int, labels=None):
    """Tree of shape ``shape`` whose leaves, left to right, are the pattern's
    variables (or the given ``labels``)."""
    if labels is None:
        labels = PATTERNS[letter]
    return _fill(SHAPES[shape], labels)


def shape_tree(shape: int, labels=("x1", "x2", "x3", "x4")):
    """Tree of the given shape on four distinct labels."""
    return _fill(SHAPES[shape], labels)


def tree_leaves(tree) -> list:
    if isinstance(tree, tuple):
        return tree_leaves(tree[0]) + tree_leaves(tree[1])
    return [tree]


def mirror_tree(tree):
    if isinstance(tree, tuple):
        return (mirror_tree(tree[1]), mirror_tree(tree[0]))
    return tree


def tree_to_str(tree, top=True) -> str:
    """Juxtaposition notation, e.g. ``x((xy)z)``."""
    if not isinstance(tree, tuple):
        return str(tree)
    left, right = tree
    inner = tree_to_str(left, False) + tree_to_str(right, False)
    return inner if top else f"({inner})"


@dataclass(frozen=True, order=True)
class BmIdentity:
    """The identity ``V_i = V_j`` for letter pattern ``V`` and shapes ``i < j``."""

    pattern: str
    i: int
    j: int

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if not (1 <= self.i < self.j <= 5):
            raise ValueError(f"need 1 <= i < j <= 5, got {self.i}{self.j}")

    @property
    def name(self) -> str:
        return f"{self.pattern}{self.i}{self.j}"

    def __str__(self):
        return self.name

    @property
    def is_x(self) -> bool:
        return self.pattern == "X"

    @property
    def arity(self) -> int:
        """Number of distinct variables (3, or 4 for X patterns)."""
        return len(pattern_variables(self.pattern))

    @property
    def variables(self) -> tuple:
        return pattern_variables(self.pattern)

    @property
    def implies_associativity(self) -> bool:
        """True for the Xij that force a group (all but X14, X15, X25)."""
        return self.is_x and (self.i, self.j) not in NONTRIVIAL_X

    def left_tree(self):
        return word_tree(self.pattern, self.i)

    def right_tree(self):
        return word_tree(self.pattern, self.j)


_ID_RE = re.compile(r"^\s*([A-FX])([1-5])([1-5])\s*$")


def parse_identity(name: str) -> BmIdentity:
    m = _ID_RE.match(name.upper())
    if not m:
        raise ValueError(f"malformed identity name {name!r}")
    return BmIdentity(m.group(1), int(m.group(2)), int(m.group(3)))


def dual(identity: BmIdentity) -> BmIdentity:
    """``Vij -> V'j'i'`` with ``A'=F, B'=E, C'=C, D'=D`` and ``1'=5, 2'=4, 3'=3``."""
    if identity.is_x and (identity.i, identity.j) not in NONTRIVIAL_X:
        raise DualUndefined(f"dual of {identity.name} is not supported")
    i, j = DUAL_SHAPE[identity.j], DUAL_SHAPE[identity.i]
    return BmIdentity(DUAL_LETTER[identity.pattern], i, j)


def evaluate_word(q: CayleyTable, tree, assignment: dict):
    """Fold ``tree`` bottom-up in ``q``.

    ``assignment`` values may be ints or equally shaped numpy integer arrays;
    in the latter case the evaluation is vectorised.
    """
    if isinstance(tree, tuple):
        left = evaluate_word(q, tree[0], assignment)
        right = evaluate_word(q, tree[1], assignment)
        if isinstance(left, np.ndarray) or isinstance(right, np.ndarray):
            return q.array[left, right]
        return q.table[left][right]
    return assignment[tree]


def all_assignments(n: int, variables) -> dict:
    """Every assignment of ``variables`` into ``0..n-1`` as flat arrays, in
    lexicographic order with the first variable most significant."""
    k = len(variables)
    grids = np.indices((n,) * k).reshape(k, -1)
    return {v: grids[p] for p, v in enumerate(variables)}


def satisfies_trees(q: CayleyTable, left, right, variables) -> bool:
    env = all_assignments(q.order, variables)
    return bool(np.array_equal(evaluate_word(q, left, env), evaluate_word(q, right, env)))


def satisfies(q: CayleyTable, identity: BmIdentity) -> bool:
    """True iff both sides agree on all ``n^3`` (``n^4`` for X) assignments."""
    return satisfies_trees(q, identity.left_tree(), identity.right_tree(), identity.variables)


# --------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class SolutionFamily:
    """A family of admissible ``(t, s)`` over a ring without zero divisors.

    ``t``/``s`` set to an int fix that parameter; ``None`` leaves it free.
    ``relation`` (``"t=s"`` or ``"t+s=1"``) couples them; ``c0_free`` is
    False when the constant must vanish.
    """

    t: Optional[int] = None
    s: Optional[int] = None
    relation: Optional[str] = None
    c0_free: bool = True

    def contains(self, t: int, s: int, c0: int, modulus: int) -> bool:
        m = modulus
        if self.t is not None and (t - self.t) % m:
            return False
        if self.s is not None and (s - self.s) % m:
            return False
        if self.relation == "t=s" and (t - s) % m:
            return False
        if self.relation == "t+s=1" and (t + s - 1) % m:
            return False
        if not self.c0_free and c0 % m:
            return False
        return True

    def integer_points(self):
        """Integer substitutions used over Z: fixed values as given, free
        parameters replaced by 1 and -1, then the coupling relation applied."""
        ts = [self.t] if self.t is not None else [1, -1]
        ss = [self.s] if self.s is not None else [1, -1]
        return [(t, s) for t in ts for s in ss if self.contains(t, s, 0, 10 ** 9)]

    def describe(self) -> str:
        parts = []
        if self.t is not None:
            parts.append(f"t={self.t}")
        if self.s is not None:
            parts.append(f"s={self.s}")
        if self.relation:
            parts.append(self.relation)
        if not parts:
            parts.append("t,s free")
        parts.append("c0 free" if self.c0_free else "c0=0")
        return ", ".join(parts)


@dataclass(frozen=True)
class VarietyEntry:
    item: int
    name: str
    identities: tuple
    loop: str
    solutions: tuple
    dual: str

    def substitutions(self) -> list:
        """Integer ``(t, s)`` pairs admitted over Z, sorted descending."""
        pts = set()
        for fam in self.solutions:
            pts.update(fam.integer_points())
        return sorted(pts, reverse=True)

    def admits(self, t: int, s: int, c0: int = 0, modulus: int = 10 ** 9) -> bool:
        return any(f.contains(t, s, c0, modulus) for f in self.solutions)


def _fam(t=None, s=None, relation=None, c0_free=True):
    return SolutionFamily(t, s, relation, c0_free)


def _ids(*names):
    return tuple(parse_identity(n) for n in names)


ONE = (_fam(1, 1),)
PM_T = (_fam(1, 1), _fam(-1, 1))  # (t, s) = (±1, 1)
PM_S = (_fam(1, 1), _fam(1, -1))  # (t, s) = (1, ±1)

_LISTED = [
    (2, "RG1^L", ("A25", "D25"), "L", PM_T, "LG1^R"),
    (3, "LG1^R", ("F14", "D14"), "R", PM_S, "RG1^L"),
    (4, "RG2^L", ("A23",), "L", (_fam(s=1),), "LG2^R"),
    (5, "LG2^R", ("F34",), "R", (_fam(t=1),), "RG2^L"),
    (6, "RG3^L", ("B25",), "L", PM_T, "LG3^R"),
    (7, "LG3^R", ("E14",), "R", PM_S, "RG3^L"),
    (8, "EQ^2", ("B23", "D15", "E34"), "2", ONE, "EQ^2"),
    (9, "MQ^2", ("B15", "D23", "D34", "E15"), "2", ONE, "MQ^2"),
    (10, "LBQ^R", ("B14",), "R", PM_S, "RBQ^L"),
    (11, "RBQ^L", ("E25",), "L", PM_T, "LBQ^R"),
    (12, "CQ^0", ("C15",), "0", (_fam(1, 1), _fam(-1, -1)), "CQ^0"),
    (13, "LC1^2", ("A34",), "2", ONE, "RC1^2"),
    (14, "LC2^0", ("A14",), "0", (_fam(1, 1), _fam(s=-1)), "RC2^0"),
    (15, "LC3^L", ("A15",), "L", (_fam(1, 1), _fam(-2, 1)), "RC3^R"),
    (16, "LC4^R", ("C14",), "R", PM_S, "RC4^L"),
    (17, "RC1^2", ("F23",), "2", ONE, "LC1^2"),
    (18, "RC2^0", ("F25",), "0", (_fam(1, 1), _fam(t=-1)), "LC2^0"),
    (19, "RC3^R", ("F15",), "R", (_fam(1, 1), _fam(1, -2)), "LC3^L"),
    (20, "RC4^L", ("C25",), "L", PM_T, "LC4^R"),
    (21, "LAQ^L", ("A13", "A45", "C12"), "L", ONE, "RAQ^R"),
    (22, "RAQ^R", ("C45", "F12", "F35"), "R", ONE, "LAQ^L"),
    (23, "FQ^0", ("B45", "D24", "E12"), "0",
     (_fam(relation="t=s"), _fam(relation="t+s=1", c0_free=False)), "FQ^0"),
    (24, "LNQ^L", ("A35",), "L", PM_T, "RNQ^R"),
    (25, "MNQ^2", ("C24",), "2", ONE, "MNQ^2"),
    (26, "RNQ^R", ("F13",), "R", PM_S, "LNQ^L"),
]


def _all_vij():
    return [BmIdentity(p, i, j) for p in "ABCDEF" for i in range(1, 6) for j in range(i + 1, 6)]


def _build_registry():
    listed = {n for row in _LISTED for n in row[2]}
    # Every remaining Vij defines the variety of groups.
    group_ids = tuple(v for v in _all_vij() if v.name not in listed)
    entries = [VarietyEntry(1, "GR^2", group_ids, "2", ONE, "GR^2")]
    for item, name, ids, loop, sols, dual_name in _LISTED:
        entries.append(VarietyEntry(item, name, _ids(*ids), loop, sols, dual_name))
    return tuple(entries)


_REGISTRY = _build_registry()
_BY_NAME = {e.name: e for e in _REGISTRY}
_BY_IDENTITY = {v.name: e for e in _REGISTRY for v in e.identities}


def variety_registry() -> list:
    """The 26 Bol-Moufang varieties (item 1 collects the group identities)."""
    return list(_REGISTRY)


def variety(name: str) -> VarietyEntry:
    return _BY_NAME[name]


def variety_of(identity) -> VarietyEntry:
    """Registry entry whose defining list contains ``identity`` (any Vij)."""
    key = identity.name if isinstance(identity, BmIdentity) else str(identity).upper()
    return _BY_IDENTITY[key]


def registry_identities(include_groups: bool = False) -> list:
    """All named identities of items 2..26 (plus item 1 when asked)."""
    out = []
    for e in _REGISTRY:
        if e.item == 1 and not include_groups:
            continue
        out.extend(e.identities)
    return out


def classify(q: CayleyTable) -> list:
    """``[(entry, satisfied), ...]`` over the registry.

    Every listed identity of a variety is evaluated; they define the same
    variety, so disagreement raises :class:`InternalInconsistency`.
    """
    out = []
    for entry in _REGISTRY:
        results = {v.name: satisfies(q, v) for v in entry.identities}
        vals = set(results.values())
        if len(vals) != 1:
            raise InternalInconsistency(f"{entry.name}: identities disagree on this table: {results}")
        out.append((entry, vals.pop()))
    return out


def satisfied_identities(q: CayleyTable, include_groups: bool = False) -> list:
    """Names of registry identities (items 2..26 by default) that ``q`` satisfies."""
    return [v for v in registry_identities(include_groups) if satisfies(q, v)]


def substitutions_for(q: CayleyTable, identities=None) -> list:
    """Union of integer ``(t, s)`` substitutions over the satisfied identities."""
    if identities is None:
        identities = satisfied_identities(q)
    pts = set()
    for v in identities:
        pts.update(variety_of(v).substitutions())
    if not pts:
        pts.add((1, 1))
    return sorted(pts, reverse=True)


