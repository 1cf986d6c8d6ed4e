"""Parsers for the printed notation of tree polynomials and chains.

Two small recursive-descent grammars:

* ``parse_leaf_form`` / ``parse_ts``: noncommutative expressions such as
  ``t(1-t^2)a + (st^2+s^2-t^2s-s)b + (s-1)ts c``.  Products concatenate words,
  so ``(s-1)t`` is ``st - t``.  Every monomial of a leaf form must end in
  exactly one leaf symbol.
* ``parse_chain``: sums such as ``st(x,y) + s(xy,z) - ((xx)y,z)`` whose terms
  are a coefficient word (before and/or after the pair) times a pair of
  bracketed words.  Juxtaposition of two subwords is their product.
"""
from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .errors import FormulaSyntaxError
from .trees import FormalChain, LeafForm, TsPolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z])(?:_?(\d+))?|(\^)|([()+\-,*]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    text = text.replace("−", "-").replace("\\cdot", "*")
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, letter, sub, caret, punct = m.groups()
        if num:
            toks.append(("int", num))
        elif letter:
            toks.append(("sym", letter + (sub or "")))
        elif caret:
            toks.append(("^", "^"))
        else:
            toks.append((punct, punct))
        pos = m.end()
    toks.append(("end", ""))
    return toks


class _Stream:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, got {tok[1]!r}")
        return tok


# ---- noncommutative polynomials in t, s and leaf symbols ------------------

Poly = Dict[Tuple[str, ...], int]


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            out[w1 + w2] = out.get(w1 + w2, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _padd(a: Poly, b: Poly, sign=1) -> Poly:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def _poly_expr(st: _Stream) -> Poly:
    total: Poly = {}
    sign = 1
    if st.peek()[0] in "+-":
        sign = -1 if st.next()[0] == "-" else 1
    total = _padd(total, _poly_term(st), sign)
    while st.peek()[0] in ("+", "-"):
        sign = -1 if st.next()[0] == "-" else 1
        total = _padd(total, _poly_term(st), sign)
    return total


def _poly_term(st: _Stream) -> Poly:
    acc: Poly = {(): 1}
    seen = False
    while st.peek()[0] in ("int", "sym", "(", "*"):
        if st.peek()[0] == "*":
            st.next()
            continue
        acc = _pmul(acc, _poly_factor(st))
        seen = True
    if not seen:
        raise FormulaSyntaxError(f"empty term before {st.peek()[1]!r}")
    return acc


def _poly_factor(st: _Stream) -> Poly:
    kind, val = st.next()
    if kind == "int":
        base: Poly = {(): int(val)} if int(val) else {}
    elif kind == "sym":
        base = {(val,): 1}
    elif kind == "(":
        base = _poly_expr(st)
        st.expect(")")
    else:
        raise FormulaSyntaxError(f"unexpected {val!r}")
    if st.peek()[0] == "^":
        st.next()
        k = int(st.expect("int")[1])
        out: Poly = {(): 1}
        for _ in range(k):
            out = _pmul(out, base)
        return out
    return base


def parse_ts(text: str) -> TsPolynomial:
    """Parse a polynomial in the noncommuting letters ``t`` and ``s``."""
    st = _Stream(text)
    poly = _poly_expr(st)
    st.expect("end")
    out = {}
    for w, c in poly.items():
        if any(sym not in ("t", "s") for sym in w):
            raise FormulaSyntaxError(f"unexpected symbol in {''.join(w)!r}")
        out["".join(w)] = out.get("".join(w), 0) + c
    return TsPolynomial(out)


def parse_leaf_form(text: str) -> LeafForm:
    """Parse ``sum (polynomial in t, s) * leaf``; leaves are any other letters
    (with optional index, ``a_2`` and ``a2`` are the same leaf)."""
    st = _Stream(text)
    poly = _poly_expr(st)
    st.expect("end")
    out: Dict[str, Dict[str, int]] = {}
    for w, c in poly.items():
        if not w or w[-1] in ("t", "s") or any(sym not in ("t", "s") for sym in w[:-1]):
            raise FormulaSyntaxError(f"monomial {''.join(w) or '1'!r} is not (word)*(leaf)")
        leaf, word = w[-1], "".join(w[:-1])
        acc = out.setdefault(leaf, {})
        acc[word] = acc.get(word, 0) + c
    return LeafForm({leaf: TsPolynomial(terms) for leaf, terms in out.items()})


# ---- chains ----------------------------------------------------------------


def _coef_word(st: _Stream) -> Tuple[str, int]:
    """Consume a run of ``t``, ``s`` (with powers) and integers."""
    word, mult = "", 1
    while True:
        kind, val = st.peek()
        if kind == "sym" and val in ("t", "s"):
            st.next()
            k = 1
            if st.peek()[0] == "^":
                st.next()
                k = int(st.expect("int")[1])
            word += val * k
        elif kind == "int":
            st.next()
            mult *= int(val)
        else:
            return word, mult


def _word(st: _Stream):
    units = []
    while True:
        kind, val = st.peek()
        if kind == "sym" and val not in ("t", "s"):
            st.next()
            units.append(val)
        elif kind == "(":
            st.next()
            units.append(_word(st))
            st.expect(")")
        else:
            break
    if len(units) == 1:
        return units[0]
    if len(units) == 2:
        return (units[0], units[1])
    raise FormulaSyntaxError(f"cannot bracket {len(units)} juxtaposed factors")


def _chain_term(st: _Stream):
    pre, m1 = _coef_word(st)
    st.expect("(")
    left = _word(st)
    st.expect(",")
    right = _word(st)
    st.expect(")")
    post, m2 = _coef_word(st)
    return (left, right), TsPolynomial({pre + post: m1 * m2})


def parse_chain(text: str) -> FormalChain:
    """Parse a printed chain into a :class:`FormalChain`.

    Variables ``x_1`` and ``x1`` are identified.  A coefficient written after
    the pair is appended to the one written before it.
    """
    st = _Stream(text.rstrip(". "))
    terms: Dict[tuple, TsPolynomial] = {}
    sign = 1
    if st.peek()[0] in "+-":
        sign = -1 if st.next()[0] == "-" else 1
    while True:
        pair, coef = _chain_term(st)
        terms[pair] = terms.get(pair, TsPolynomial()) + coef * sign
        kind = st.peek()[0]
        if kind == "end":
            break
        if kind not in ("+", "-"):
            raise FormulaSyntaxError(f"expected + or -, got {st.peek()[1]!r}")
        sign = -1 if st.next()[0] == "-" else 1
    return FormalChain(terms)
