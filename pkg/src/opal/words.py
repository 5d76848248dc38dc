"""Bracketed words over a finite alphabet with unary operators D and P.

A word is a plain tuple of letters.  A letter is either a generator name
(a ``str``) or a pair ``(op, word)`` with ``op`` in ``OPS``, representing
the bracket ``op(...)`` around a nested word.  The empty tuple is the
monoid unit 1, which is legal only in unital mode; ``("P", ())`` and
``("D", ())`` are the unital letters P(1) and D(1).

One-hole contexts are words containing the reserved letter STAR exactly
once, possibly nested inside brackets.
"""

from __future__ import annotations

OPS = ("D", "P")
STAR = "★"

# Z' letter names used by the unital order layer for P(1) and D(1).
DAG_P = "†P"
DAG_D = "†D"

Letter = object
Word = tuple


def is_gen(letter):
    return isinstance(letter, str)


def is_bracket(letter):
    return isinstance(letter, tuple)


def bracket(op, w, unital=False):
    """The one-letter word op(w)."""
    if op not in OPS:
        raise ValueError(f"unknown operator {op!r}")
    if not w and not unital:
        raise ValueError("empty content: brackets need nonempty content in nonunital mode")
    return ((op, tuple(w)),)


def concat(u, v):
    return tuple(u) + tuple(v)


def gens(*names):
    """The word whose letters are the given generator names."""
    return tuple(names)


def breadth(w):
    return len(w)


def contains_star(w):
    for letter in w:
        if letter == STAR:
            return True
        if is_bracket(letter) and contains_star(letter[1]):
            return True
    return False


def substitute(q, u):
    """Replace the unique STAR of context q by the letters of word u."""
    out = []
    for letter in q:
        if letter == STAR:
            out.extend(u)
        elif is_bracket(letter) and contains_star(letter[1]):
            out.append((letter[0], substitute(letter[1], u)))
        else:
            out.append(letter)
    return tuple(out)


def compose_contexts(q1, q2):
    """Context obtained by splicing q2 into the hole of q1."""
    return substitute(q1, q2)


def subwords(w):
    """All pairs (context, subword) with context|_subword == w.

    Enumerated outermost-leftmost: top-level spans of the whole word
    first (by start, longest first), then recursively inside each
    bracket letter from left to right.
    """
    n = len(w)
    for i in range(n):
        for j in range(n, i, -1):
            yield w[:i] + (STAR,) + w[j:], w[i:j]
    for k, letter in enumerate(w):
        if is_bracket(letter):
            op = letter[0]
            for inner_ctx, sub in subwords(letter[1]):
                yield w[:k] + ((op, inner_ctx),) + w[k + 1:], sub


def zprime(w):
    """Rewrite a unital word over the extended alphabet Z': the letters
    P(1) and D(1) become the opaque generators DAG_P and DAG_D."""
    out = []
    for letter in w:
        if is_bracket(letter):
            if not letter[1]:
                out.append(DAG_P if letter[0] == "P" else DAG_D)
            else:
                out.append((letter[0], zprime(letter[1])))
        else:
            out.append(letter)
    return tuple(out)


def _tokens(w, out):
    # flatten to a stream of ("g", name) / ("[", op) / ("]", op) tokens
    for letter in w:
        if is_gen(letter):
            out.append(("g", letter))
        else:
            out.append(("[", letter[0]))
            _tokens(letter[1], out)
            out.append(("]", letter[0]))
    return out


def deg(w, kind, unital=False):
    """Degree of a word: number of D-brackets, P-brackets or generator
    occurrences, or the positional GD/GP degrees.

    With ``unital=True`` the word is read over Z' (letters P(1)/D(1)
    become opaque generators), with the convention that DAG_P still
    counts 1 toward the P-degree and acts in GP as a bracket around
    a single element.
    """
    if unital:
        w = zprime(w)
    toks = _tokens(w, [])
    if kind == "D":
        return sum(1 for t in toks if t == ("[", "D"))
    if kind == "P":
        n = sum(1 for t in toks if t == ("[", "P"))
        if unital:
            n += sum(1 for t in toks if t == ("g", DAG_P))
        return n
    if kind == "Z":
        return sum(1 for t in toks if t[0] == "g")
    if kind == "GD":
        total = 0
        seen_right = 0
        for t in reversed(toks):
            if t[0] == "g":
                seen_right += 1
            elif t == ("]", "D"):
                total += seen_right
        return total
    if kind == "GP":
        # the letter P(1) acts as both a generator of Z' and a P-bracket
        # containing exactly that one element, so it contributes n - 1;
        # a standalone P(1) therefore has GP-degree 0
        n = sum(1 for t in toks if t[0] == "g")
        total = 0
        depth_stack = []
        for t in toks:
            if t == ("[", "P"):
                depth_stack.append(0)
            elif t == ("]", "P"):
                inside = depth_stack.pop()
                total += n - inside
                if depth_stack:
                    depth_stack[-1] += inside
            elif t[0] == "g":
                if t[1] == DAG_P:
                    total += n - 1
                if depth_stack:
                    depth_stack[-1] += 1
        return total
    raise ValueError(f"unknown degree kind {kind!r}")


def weight(w):
    """Structural size: generators plus brackets, counted at all depths.

    This is the bound parameter used everywhere for enumeration; the
    letters P(1) and D(1) weigh 1 each.
    """
    total = 0
    for letter in w:
        if is_gen(letter):
            total += 1
        else:
            total += 1 + weight(letter[1])
    return total


def validate(w, alphabet, unital=False, _top=True):
    """Check that a word only uses the given generators and respects the
    nonunital restrictions.  Raises ValueError on violation."""
    if _top and not w and not unital:
        raise ValueError("the empty word 1 is not allowed in nonunital mode")
    for letter in w:
        if is_gen(letter):
            if letter == STAR:
                continue
            if letter not in alphabet:
                raise ValueError(f"unknown generator {letter!r}")
        else:
            if letter[0] not in OPS:
                raise ValueError(f"unknown operator {letter[0]!r}")
            if not letter[1] and not unital:
                raise ValueError("empty bracket content in nonunital mode")
            validate(letter[1], alphabet, unital, _top=False)
