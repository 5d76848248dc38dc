"""Monomial orders on bracketed words.

Three order kinds are provided:

- "dlex": degree-lexicographic order on bracket-free words.
- "pd": the order on nonunital words that cascades through the degree
  vector (deg_D, deg_P, deg_Z, deg_GD, deg_GP) and breaks ties with the
  structural degree-lexicographic comparison (breadth first, then the
  leftmost differing letter, generators below D-brackets below
  P-brackets, bracket contents compared recursively).
- "upd": the unital variant; the empty word 1 is strictly minimal and
  every other word is read over the extended alphabet where the letters
  P(1) and D(1) become opaque generators ranked above and below the
  ordinary alphabet respectively, with P(1) still counting 1 toward the
  P-degree and acting in the GP degree as a bracket around one element.

Each order is exposed as a total sort key, so comparisons reduce to
tuple comparisons and keys can be cached per word.
"""

from __future__ import annotations

from .words import DAG_D, DAG_P, is_gen, substitute

LT, EQ, GT = "LT", "EQ", "GT"


def _degree_vector(w, unital):
    """All five cascade degrees of a word in one recursive pass; matches
    deg(w, kind) for each kind.  In unital mode the letters P(1) and D(1)
    act as the dagger generators of Z'.

    Uses the identities GD = sum over D-brackets of (n - gens seen when
    the bracket closes) and GP = sum over P-brackets of (n - gens inside),
    with n the total generator count, so only running tallies are needed.
    """
    # state: [dd, dp, dz, gens_at_d_close_total, p_inside_total, dagp]
    st = [0, 0, 0, 0, 0, 0]

    def walk(letters, pdepth):
        for letter in letters:
            if isinstance(letter, str):
                st[2] += 1
                st[4] += pdepth
            elif unital and not letter[1]:
                # P(1) / D(1) read as a generator of Z'
                st[2] += 1
                st[4] += pdepth
                if letter[0] == "P":
                    st[1] += 1
                    st[5] += 1
            elif letter[0] == "D":
                st[0] += 1
                walk(letter[1], pdepth)
                st[3] += st[2]
            else:
                st[1] += 1
                walk(letter[1], pdepth + 1)

    walk(w, 0)
    dd, dp, dz, closes, inside, dagp = st
    gd = dd * dz - closes
    gp = (dp - dagp) * dz - inside + dagp * (dz - 1)
    return dd, dp, dz, gd, gp


class WordOrder:
    """A total order on words, usable as a sort key factory."""

    def __init__(self, kind, alphabet, unital=False):
        if kind not in ("pd", "upd", "dlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "upd" and not unital:
            raise ValueError("upd order requires unital mode")
        if kind == "pd" and unital:
            raise ValueError("pd order is nonunital; use upd")
        self.kind = kind
        self.alphabet = tuple(alphabet)
        self.unital = unital
        self._rank = {z: i for i, z in enumerate(self.alphabet)}
        self._rank[DAG_D] = -1
        self._rank[DAG_P] = len(self.alphabet)
        self._cache = {}
        self._letter_cache = {}

    def _letter_key(self, letter):
        k = self._letter_cache.get(letter)
        if k is not None:
            return k
        if is_gen(letter):
            k = (0, self._rank[letter])
        elif self.unital and not letter[1]:
            # the letters P(1) and D(1) rank as the dagger generators
            k = (0, self._rank[DAG_P if letter[0] == "P" else DAG_D])
        elif letter[0] == "D":
            k = (1,) + self._dlex_key(letter[1])
        else:
            k = (2,) + self._dlex_key(letter[1])
        self._letter_cache[letter] = k
        return k

    def _dlex_key(self, w):
        return (len(w), tuple(self._letter_key(l) for l in w))

    def key(self, w):
        k = self._cache.get(w)
        if k is not None:
            return k
        if self.kind == "dlex":
            k = (len(w), tuple(self._rank[l] for l in w))
        elif self.kind == "pd":
            k = _degree_vector(w, False) + (self._dlex_key(w),)
        else:
            if not w:
                k = (0, 0, 0, 0, 0, (0, ()))
            else:
                k = _degree_vector(w, True) + (self._dlex_key(w),)
        self._cache[w] = k
        return k

    def compare(self, u, v):
        if u == v:
            return EQ
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return LT
        if ku > kv:
            return GT
        # distinct words must never share a key
        raise AssertionError(f"order key collision: {u!r} vs {v!r}")

    def less(self, u, v):
        return u != v and self.key(u) < self.key(v)

    def max_word(self, words):
        return max(words, key=self.key)


def order_for(alphabet, unital):
    """The default monomial order for the given mode."""
    return WordOrder("upd" if unital else "pd", alphabet, unital)


def check_monomial_order_properties(order, words, contexts=None, multipliers=None):
    """Check total-order and compatibility properties on a finite sample.

    Verifies totality, antisymmetry and transitivity over all pairs and
    triples of ``words``, then bracket, left, right and full context
    compatibility of the strict order against the supplied multiplier
    words and star contexts.  Returns a dict with ``ok`` and, on
    failure, a ``counterexample`` entry.
    """
    import numpy as np

    words = list(dict.fromkeys(words))
    n = len(words)
    keys = [order.key(w) for w in words]

    for i in range(n):
        for j in range(n):
            if (words[i] == words[j]) != (keys[i] == keys[j]):
                return {"ok": False, "counterexample": ("totality", words[i], words[j])}

    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            less[i, j] = keys[i] < keys[j]
    for i in range(n):
        for j in range(n):
            if i != j and less[i, j] == less[j, i]:
                return {"ok": False, "counterexample": ("antisymmetry", words[i], words[j])}
    # transitivity: a < b and b < c must imply a < c, i.e. the boolean
    # product less @ less stays inside less
    closure = less @ less
    bad = closure & ~less
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        k = int(np.flatnonzero(less[i] & less[:, j])[0])
        return {"ok": False, "counterexample": ("transitivity", words[i], words[k], words[j])}

    pairs = [(words[i], words[j]) for i in range(n) for j in range(n) if less[i, j]]
    unital = getattr(order, "unital", False)
    for u, v in pairs:
        for op in ("D", "P"):
            bu, bv = ((op, u),), ((op, v),)
            if not u and not unital:
                continue
            if not order.less(bu, bv):
                return {"ok": False, "counterexample": ("bracket", op, u, v)}
    if multipliers:
        for u, v in pairs:
            for m in multipliers:
                if not order.less(m + u, m + v):
                    return {"ok": False, "counterexample": ("left", m, u, v)}
                if not order.less(u + m, v + m):
                    return {"ok": False, "counterexample": ("right", m, u, v)}
    if contexts:
        for u, v in pairs:
            for q in contexts:
                qu, qv = substitute(q, u), substitute(q, v)
                if not (qu and qv) and not unital:
                    continue
                if not order.less(qu, qv):
                    return {"ok": False, "counterexample": ("context", q, u, v)}
    return {"ok": True, "pairs": len(pairs)}
