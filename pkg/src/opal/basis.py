"""Word enumeration by weight, irreducible-word bases and span checks.

The weight of a word counts its generators and brackets at every depth;
it is the size notion bounding all enumerations.  Irreducible words of a
confluent system form a linear basis of the quotient, which the span
check certifies slice by slice with exact rational elimination.
"""

from __future__ import annotations

from fractions import Fraction

from .words import OPS, weight

_word_cache = {}


def words_of_weight(alphabet, n, unital=False):
    """All words of weight exactly n, as a tuple."""
    alphabet = tuple(alphabet)
    key = (alphabet, n, unital)
    cached = _word_cache.get(key)
    if cached is not None:
        return cached
    if n == 0:
        out = ((),) if unital else ()
        _word_cache[key] = out
        return out
    out = []
    for k in range(1, n + 1):
        for letter in _letters_of_weight(alphabet, k, unital):
            if k == n:
                out.append((letter,))
            else:
                for rest in words_of_weight(alphabet, n - k, unital):
                    if rest:
                        out.append((letter,) + rest)
    out = tuple(out)
    _word_cache[key] = out
    return out


def _letters_of_weight(alphabet, k, unital):
    out = []
    if k == 1:
        out.extend(alphabet)
        if unital:
            out.extend((op, ()) for op in OPS)
    if k >= 2:
        for inner in words_of_weight(alphabet, k - 1, unital):
            if inner:
                out.extend((op, inner) for op in OPS)
    return out


def words_upto(alphabet, bound, unital=False):
    """All words of weight <= bound (including 1 when unital)."""
    out = []
    for n in range(0 if unital else 1, bound + 1):
        out.extend(words_of_weight(alphabet, n, unital))
    return out


def count_words(alphabet_size, n, unital=False):
    """Number of words of weight exactly n, by a direct recurrence
    independent of the generator; used as an enumeration oracle."""
    key = ("count", alphabet_size, n, unital)
    cached = _word_cache.get(cached_key := key)
    if cached is not None:
        return cached

    def letters(k):
        total = 0
        if k == 1:
            total += alphabet_size + (2 if unital else 0)
        if k >= 2:
            total += 2 * count_words(alphabet_size, k - 1, unital)
        return total

    if n == 0:
        result = 1 if unital else 0
    else:
        result = 0
        for k in range(1, n + 1):
            lk = letters(k)
            if k == n:
                result += lk
            else:
                # the remainder must be a nonempty word
                rest = count_words(alphabet_size, n - k, unital)
                if n - k == 0:
                    rest = 0
                result += lk * rest
    _word_cache[cached_key] = result
    return result


def irr_enumerate(rs, alphabet, bound, unital=False):
    """Irreducible words of weight <= bound, grouped by weight and sorted
    by the system's order inside each group."""
    by_weight = {}
    for n in range(0 if unital else 1, bound + 1):
        group = [w for w in words_of_weight(alphabet, n, unital)
                 if rs.is_irreducible(w)]
        group.sort(key=rs.order.key)
        by_weight[n] = group
    return {
        "bound": bound,
        "words": by_weight,
        "counts": {n: len(g) for n, g in by_weight.items()},
    }


def dimension_series(rs, alphabet, bound, unital=False):
    report = irr_enumerate(rs, alphabet, bound, unital)
    return report["counts"]


def _rank(vectors):
    """Rank of a list of dict-vectors over the rationals, by exact
    Gaussian elimination with dict columns."""
    pivots = {}
    rank = 0
    for vec in vectors:
        v = dict(vec)
        while v:
            col = next(iter(sorted(v)))
            pivot = pivots.get(col)
            if pivot is None:
                c = v[col]
                pivots[col] = {k: val / c for k, val in v.items()}
                rank += 1
                break
            c = v[col]
            for k, val in pivot.items():
                acc = v.get(k, Fraction(0)) - c * val
                if acc:
                    v[k] = acc
                else:
                    v.pop(k, None)
    return rank


def span_check(rs, alphabet, bound, unital=False):
    """Certify the direct-sum decomposition on the weight bounded slice:
    normal forms are supported on irreducible words, and the reduction
    differences together with the irreducible words span the slice."""
    words = words_upto(alphabet, bound, unital)
    nf = {w: rs.normal_form({w: Fraction(1)}) for w in words}
    support = set(words)
    for f in nf.values():
        support.update(f)
    bad_support = []
    for w, f in nf.items():
        for u in f:
            if not rs.is_irreducible(u):
                bad_support.append((w, u))
    irr = sorted((u for u in support if rs.is_irreducible(u)),
                 key=rs.order.key)
    # sort keys for elimination: the order key, tagged to keep distinct
    colkey = {u: rs.order.key(u) for u in support}
    vectors = []
    for w in words:
        diff = dict(nf[w])
        diff[w] = diff.get(w, Fraction(0)) - 1
        diff = {colkey[u]: -c for u, c in diff.items() if c}
        if diff:
            vectors.append(diff)
    for u in irr:
        vectors.append({colkey[u]: Fraction(1)})
    rank = _rank(vectors)
    ok = not bad_support and rank == len(support)
    return {
        "ok": ok,
        "words": len(words),
        "support": len(support),
        "rank": rank,
        "irreducible": len(irr),
        "bad_support": bad_support,
    }
