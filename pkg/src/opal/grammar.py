"""Text grammar for words and polynomials.

word := factor (('*' | whitespace) factor)*
factor := IDENT | '1' | ('D'|'P') '(' word ')'
poly := sign? term (sign term)*
term := rational ('*' word)? | word
rational := integer | integer '/' integer

Identifiers match [a-zA-Z][a-zA-Z0-9_]*, excluding the reserved D, P
and 1.  Templates additionally allow metavariables $1, $2, ... and the
coefficient tokens L and L^-1 standing for the weight and its inverse.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .words import OPS, is_bracket, is_gen


class SyntaxError_(ValueError):
    """Syntax error carrying the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<meta>\$[0-9]+)"
    r"|(?P<lam>L\^-1|L)(?![a-zA-Z0-9_])"
    r"|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)"
    r"|(?P<num>[0-9]+(?:/[0-9]+)?)"
    r"|(?P<sym>[()*+-]))"
)


def _tokenize(text, template=False):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start(0) == pos and not m.group(0).strip():
            break
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        val = m.group(kind)
        start = m.end() - len(val)
        if not template:
            if kind == "meta":
                raise SyntaxError_(f"unexpected token {val!r}", start)
            if kind == "lam":
                # outside templates L is an ordinary identifier
                if val != "L":
                    raise SyntaxError_(f"unexpected token {val!r}", start)
                kind = "ident"
        toks.append((kind, val, start))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        raise SyntaxError_(f"unexpected character {rest[0]!r}", text.index(rest[0], pos))
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, unital, template=False):
        self.text = text
        self.unital = unital
        self.toks = _tokenize(text, template)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_sym(self, s):
        kind, val, pos = self.next()
        if kind != "sym" or val != s:
            raise SyntaxError_(f"expected {s!r}", pos)

    def parse_factor(self):
        kind, val, pos = self.next()
        if kind == "num" and val == "1":
            if not self.unital:
                raise SyntaxError_("'1' is not a word in nonunital mode", pos)
            return ()
        if kind == "meta":
            return (val,)
        if kind == "ident":
            if val in OPS:
                self.expect_sym("(")
                k2, v2, p2 = self.peek()
                if k2 == "sym" and v2 == ")":
                    if not self.unital:
                        raise SyntaxError_("empty bracket content in nonunital mode", p2)
                    inner = ()
                    self.next()
                else:
                    inner = self.parse_word()
                    self.expect_sym(")")
                return ((val, inner),)
            return (val,)
        raise SyntaxError_(f"expected a word factor, got {val!r}", pos)

    def at_factor(self):
        kind, val, _ = self.peek()
        if kind in ("ident", "meta"):
            return True
        if kind == "num" and val == "1":
            return True
        return False

    def parse_word(self):
        out = list(self.parse_factor())
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.next()
                out.extend(self.parse_factor())
            elif self.at_factor():
                out.extend(self.parse_factor())
            else:
                return tuple(out)

    def parse_coeff(self):
        """Optional leading rational (or L / L^-1) followed by '*' or a word."""
        kind, val, pos = self.peek()
        if kind == "lam":
            self.next()
            c = ("L", -1) if val == "L^-1" else ("L", 1)
        elif kind == "num" and val != "1":
            self.next()
            c = Fraction(val)
        elif kind == "num" and val == "1":
            # "1" starts a word unless followed by '*' or '/', so treat a
            # bare 1 at term end as the unit word, not a coefficient
            nk, nv, _ = self.toks[self.i + 1]
            if nk == "sym" and nv == "*":
                self.next()
                c = Fraction(1)
            else:
                return None
        else:
            return None
        kind, val, _ = self.peek()
        if kind == "sym" and val == "*":
            self.next()
        return c

    def parse_poly(self):
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        while True:
            c = self.parse_coeff()
            if c is None:
                w = self.parse_word()
                coeff = Fraction(sign)
            elif self.at_factor():
                w = self.parse_word()
                coeff = _scale_coeff(c, sign)
            else:
                w = ()
                if not self.unital:
                    kind, _, pos = self.peek()
                    raise SyntaxError_("constant term needs unital mode", pos)
                coeff = _scale_coeff(c, sign)
            terms.append((w, coeff))
            kind, val, pos = self.next()
            if kind == "end":
                return terms
            if kind != "sym" or val not in "+-":
                raise SyntaxError_(f"expected '+' or '-', got {val!r}", pos)
            sign = -1 if val == "-" else 1


def _scale_coeff(c, sign):
    if isinstance(c, tuple):
        return (c[0], c[1], Fraction(sign))
    return c * sign


def parse_word(text, unital=False, template=False):
    p = _Parser(text, unital, template)
    w = p.parse_word()
    kind, val, pos = p.peek()
    if kind != "end":
        raise SyntaxError_(f"trailing input {val!r}", pos)
    return w


def parse_poly(text, unital=False):
    """Parse a polynomial; coefficients are exact rationals."""
    terms = _Parser(text, unital).parse_poly()
    out = {}
    for w, c in terms:
        acc = out.get(w, Fraction(0)) + c
        if acc:
            out[w] = acc
        else:
            out.pop(w, None)
    return out


def parse_template(text):
    """Parse a rule template: metavariables $1.. allowed, coefficients may
    be L or L^-1.  Returns a list of (word, coeff) pairs where coeff is a
    Fraction or a triple ("L", exponent, scalar)."""
    return _Parser(text, unital=True, template=True).parse_poly()


def print_word(w, unital=False):
    if not w:
        return "1"
    parts = []
    for letter in w:
        if is_gen(letter):
            parts.append(letter)
        else:
            parts.append(f"{letter[0]}({print_word(letter[1])})")
    return "*".join(parts)


def print_poly(f, order_key=None):
    """Render a polynomial; terms sorted descending by order_key when
    given, else by the printed form for determinism."""
    if not f:
        return "0"
    items = list(f.items())
    if order_key is not None:
        items.sort(key=lambda wc: order_key(wc[0]), reverse=True)
    else:
        items.sort(key=lambda wc: print_word(wc[0]))
    parts = []
    for i, (w, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = print_word(w)
        if w == ():
            chunk = str(mag)
        elif mag == 1:
            chunk = body
        else:
            chunk = f"{mag}*{body}"
        if i == 0:
            parts.append(chunk if sign == "+" else f"-{chunk}")
        else:
            parts.append(f" {sign} {chunk}")
    return "".join(parts)
