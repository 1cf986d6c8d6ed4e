"""Tree invariants h, H, Q over the noncommuting alphabet {t, s}.

For a vertex ``v`` the word ``h_v`` records the root-to-``v`` path read left
to right, ``t`` for a left turn and ``s`` for a right turn.  Then

* ``h(T)``: sum of ``h_v`` over internal vertices,
* ``H(T)``: sum of ``h_v * a_v`` over leaves,
* ``Q(T)``: sum of ``h_v * (word(v_L), word(v_R))`` over internal vertices.

The path reading is exactly the operator composition produced by expanding
``w = t w_L + s w_R + c0`` with noncommuting ``t, s``.
"""
from __future__ import annotations

from typing import Dict, Mapping

from .identities import BmIdentity, SHAPES, shape_tree

_ORDER = {"t": 0, "s": 1}


def word_key(word: str):
    """Graded lexicographic key with ``t < s``."""
    return (len(word), [_ORDER[c] for c in word])


def render_word(word: str) -> str:
    """``"tts" -> "t^2 s"``, ``"stt" -> "st^2"``; empty word is ``"1"``."""
    if not word:
        return "1"
    runs = []
    for c in word:
        if runs and runs[-1][0] == c:
            runs[-1][1] += 1
        else:
            runs.append([c, 1])
    out = ""
    prev_power = False
    for c, k in runs:
        if prev_power:
            out += " "
        out += c if k == 1 else f"{c}^{k}"
        prev_power = k > 1
    return out


class TsPolynomial:
    """Integer combination of words over {t, s}; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[str, int] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            if any(ch not in "ts" for ch in w):
                raise ValueError(f"bad word {w!r}")
            c = int(c)
            if c:
                clean[w] = clean.get(w, 0) + c
                if not clean[w]:
                    del clean[w]
        self._terms = clean

    @classmethod
    def word(cls, w: str, c: int = 1) -> "TsPolynomial":
        return cls({w: c})

    @property
    def terms(self) -> Dict[str, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = TsPolynomial({"": other})
        if not isinstance(other, TsPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return TsPolynomial(out)

    def __neg__(self):
        return TsPolynomial({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TsPolynomial({w: c * other for w, c in self._terms.items()})
        out: Dict[str, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
        return TsPolynomial(out)

    __rmul__ = __mul__

    def evaluate(self, t: int, s: int, modulus: int | None = None) -> int:
        """Value under the commuting substitution ``t, s -> integers``."""
        total = 0
        for w, c in self._terms.items():
            total += c * t ** w.count("t") * s ** w.count("s")
        return total % modulus if modulus else total

    def commutative(self) -> Dict[tuple, int]:
        """Image in Z[t, s]: ``{(deg_t, deg_s): coefficient}``."""
        out: Dict[tuple, int] = {}
        for w, c in self._terms.items():
            k = (w.count("t"), w.count("s"))
            out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    def swap(self) -> "TsPolynomial":
        """Exchange ``t <-> s`` in every word.

        With root-to-vertex path words this is the effect of mirroring a
        tree: every left turn becomes a right turn and the order of the
        turns is kept.
        """
        tr = str.maketrans("ts", "st")
        return TsPolynomial({w.translate(tr): c for w, c in self._terms.items()})

    def swap_reverse(self) -> "TsPolynomial":
        """Exchange ``t <-> s`` and reverse every word.

        This is the mirror image when words are read from vertex to root;
        under the root-to-vertex reading used here it agrees with
        :meth:`swap` only after commuting ``t`` and ``s``.
        """
        tr = str.maketrans("ts", "st")
        return TsPolynomial({w.translate(tr)[::-1]: c for w, c in self._terms.items()})

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for k, (w, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = render_word(w)
            if w and mag == 1:
                piece = body
            elif w:
                piece = f"{mag}{body}"
            else:
                piece = str(mag)
            if k == 0:
                out = ("-" if c < 0 else "") + piece
            else:
                out += f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"TsPolynomial({str(self)!r})"


ZERO = TsPolynomial()
ONE = TsPolynomial({"": 1})


class LeafForm:
    """Map from leaf symbol to :class:`TsPolynomial` coefficient."""

    def __init__(self, coeffs: Mapping[str, TsPolynomial] | None = None):
        self._c = {k: v for k, v in (coeffs or {}).items() if v}

    def __getitem__(self, leaf):
        return self._c.get(leaf, ZERO)

    def keys(self):
        return self._c.keys()

    def items(self):
        return sorted(self._c.items())

    def __eq__(self, other):
        return isinstance(other, LeafForm) and self._c == other._c

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, ZERO) + v
        return LeafForm(out)

    def __neg__(self):
        return LeafForm({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self._c)

    def rename(self, mapping: Mapping[str, str]) -> "LeafForm":
        """Relabel leaves, summing coefficients that collide."""
        out: Dict[str, TsPolynomial] = {}
        for k, v in self._c.items():
            nk = mapping.get(k, k)
            out[nk] = out.get(nk, ZERO) + v
        return LeafForm(out)

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({v}){k}" for k, v in self.items())

    def __repr__(self):
        return f"LeafForm({str(self)!r})"


def _tree_key(tree):
    """Total order on trees for deterministic printing."""
    if isinstance(tree, tuple):
        return (1, _tree_key(tree[0]), _tree_key(tree[1]))
    return (0, str(tree))


class FormalChain:
    """Linear combination of pairs of bracketed words with TsPolynomial
    coefficients: ``{(left_tree, right_tree): TsPolynomial}``."""

    def __init__(self, terms: Mapping[tuple, TsPolynomial] | None = None):
        self._t: Dict[tuple, TsPolynomial] = {}
        for k, v in (terms or {}).items():
            acc = self._t.get(k, ZERO) + v
            if acc:
                self._t[k] = acc
            else:
                self._t.pop(k, None)

    def items(self):
        return sorted(self._t.items(), key=lambda kv: (_tree_key(kv[0][0]), _tree_key(kv[0][1])))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        return isinstance(other, FormalChain) and self._t == other._t

    def __add__(self, other):
        out = dict(self._t)
        for k, v in other._t.items():
            out[k] = out.get(k, ZERO) + v
        return FormalChain(out)

    def __neg__(self):
        return FormalChain({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def commutative(self) -> Dict[tuple, Dict[tuple, int]]:
        """Coefficients pushed to Z[t, s]; pairs with vanishing image dropped."""
        out: Dict[tuple, Dict[tuple, int]] = {}
        for pair, poly in self._t.items():
            acc = out.setdefault(pair, {})
            for mono, c in poly.commutative().items():
                acc[mono] = acc.get(mono, 0) + c
        return {k: {m: c for m, c in v.items() if c} for k, v in out.items()
                if any(v.values())}

    def __str__(self):
        from .identities import tree_to_str

        if not self._t:
            return "0"
        parts = []
        for (l, r), poly in self.items():
            pair = f"({tree_to_str(l)}, {tree_to_str(r)})"
            if len(poly.terms) == 1:
                (w, c), = poly.terms.items()
                coef = render_word(w) if w else ""
                if abs(c) != 1:
                    coef = f"{abs(c)}{coef}"
                parts.append(("-" if c < 0 else "+", f"{coef}{pair}"))
            else:
                parts.append(("+", f"({poly}){pair}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"FormalChain({str(self)!r})"


# --------------------------------------------------------------------------


def _walk(tree, path=""):
    """Yield ``(path, subtree)`` for every vertex, preorder."""
    yield path, tree
    if isinstance(tree, tuple):
        yield from _walk(tree[0], path + "t")
        yield from _walk(tree[1], path + "s")


def h_of(tree) -> TsPolynomial:
    """Sum of the path words of the internal vertices (0 for a single leaf)."""
    return TsPolynomial(_count(p for p, v in _walk(tree) if isinstance(v, tuple)))


def _count(words):
    out: Dict[str, int] = {}
    for w in words:
        out[w] = out.get(w, 0) + 1
    return out


def H_of(tree) -> LeafForm:
    """Leaf label -> sum of the path words of the leaves carrying it."""
    out: Dict[str, TsPolynomial] = {}
    for p, v in _walk(tree):
        if not isinstance(v, tuple):
            out[v] = out.get(v, ZERO) + TsPolynomial.word(p)
    return LeafForm(out)


def Q_of(tree) -> FormalChain:
    """``sum h_v (word(v_L), word(v_R))`` over internal vertices."""
    out: Dict[tuple, TsPolynomial] = {}
    for p, v in _walk(tree):
        if isinstance(v, tuple):
            out[v] = out.get(v, ZERO) + TsPolynomial.word(p)
    return FormalChain(out)


def hatH_of(tree):
    """``(H(T), h(T))``; the affine value of the word is ``H + h*c0``."""
    return H_of(tree), h_of(tree)


def H_difference(left, right):
    """``(H(left) - H(right), h(left) - h(right))``."""
    return H_of(left) - H_of(right), h_of(left) - h_of(right)


def Q_difference(left, right) -> FormalChain:
    return Q_of(left) - Q_of(right)


def identity_H_difference(identity: BmIdentity):
    """``H(Vi) - H(Vj)`` collapsed on the distinct variables, and ``h(Vi) - h(Vj)``."""
    return H_difference(identity.left_tree(), identity.right_tree())


def identity_Q_difference(identity: BmIdentity) -> FormalChain:
    """The symbolic ``d3`` column ``Q(Vi) - Q(Vj)``."""
    return Q_difference(identity.left_tree(), identity.right_tree())


def pairwise_tables():
    """The 5x5 skew-symmetric tables ``H(Ti) - H(Tj)`` (leaves ``a1..a4``) and
    ``Q(Ti) - Q(Tj)`` (leaves ``x1..x4``), indexed ``[i-1][j-1]``."""
    a_trees = {k: shape_tree(k, ("a1", "a2", "a3", "a4")) for k in SHAPES}
    x_trees = {k: shape_tree(k) for k in SHAPES}
    H = [[H_of(a_trees[i]) - H_of(a_trees[j]) for j in SHAPES] for i in SHAPES]
    Q = [[Q_of(x_trees[i]) - Q_of(x_trees[j]) for j in SHAPES] for i in SHAPES]
    return H, Q
