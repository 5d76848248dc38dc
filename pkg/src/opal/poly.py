"""Linear combinations of words with exact rational coefficients.

A polynomial is a dict mapping word tuples to nonzero Fractions; the
zero polynomial is the empty dict.  All helpers return fresh dicts and
never store zero coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .words import substitute

ZERO = Fraction(0)
ONE = Fraction(1)


def poly(*terms):
    """Build a polynomial from (word, coefficient) pairs."""
    out = {}
    for w, c in terms:
        c = Fraction(c)
        acc = out.get(w, ZERO) + c
        if acc:
            out[w] = acc
        else:
            out.pop(w, None)
    return out


def monomial(w, c=ONE):
    c = Fraction(c)
    return {w: c} if c else {}


def add(f, g):
    out = dict(f)
    for w, c in g.items():
        acc = out.get(w, ZERO) + c
        if acc:
            out[w] = acc
        else:
            out.pop(w, None)
    return out


def sub(f, g):
    return add(f, scale(g, -1))


def scale(f, c):
    c = Fraction(c)
    if not c:
        return {}
    return {w: c * cf for w, cf in f.items()}


def mul_word(f, u, side):
    """Multiply every monomial by the word u on the given side."""
    if side == "right":
        return {w + u: c for w, c in f.items()}
    if side == "left":
        return {u + w: c for w, c in f.items()}
    raise ValueError(side)


def substitute_poly(q, f):
    """Linear extension of context substitution: q|_f."""
    out = {}
    for w, c in f.items():
        v = substitute(q, w)
        acc = out.get(v, ZERO) + c
        if acc:
            out[v] = acc
        else:
            out.pop(v, None)
    return out


def support(f):
    return set(f)


def equal(f, g):
    return f == g
