"""Structure-level checks for bracketed words and degrees."""

import pytest

from opal.basis import words_of_weight, words_upto
from opal.words import (DAG_D, DAG_P, STAR, bracket, compose_contexts, concat,
                        contains_star, deg, gens, is_bracket, subwords,
                        substitute, validate, weight, zprime)

X = "x"
Y = "y"


def test_bracket_and_concat():
    w = bracket("P", (X,))
    assert w == (("P", ("x",)),)
    assert concat(w, (Y,)) == (("P", ("x",)), "y")
    with pytest.raises(ValueError):
        bracket("Q", (X,))
    with pytest.raises(ValueError):
        bracket("P", ())
    assert bracket("P", (), unital=True) == (("P", ()),)


def test_validate():
    validate((("P", ("x",)), "y"), ("x", "y"))
    with pytest.raises(ValueError):
        validate(("z",), ("x", "y"))
    with pytest.raises(ValueError):
        validate((), ("x",))
    validate((), ("x",), unital=True)
    with pytest.raises(ValueError):
        validate((("D", ()),), ("x",))
    validate((("D", ()),), ("x",), unital=True)


def test_subwords_flat():
    pairs = list(subwords(("x", "y")))
    assert pairs == [
        ((STAR,), ("x", "y")),
        ((STAR, "y"), ("x",)),
        (("x", STAR), ("y",)),
    ]
    for q, s in pairs:
        assert substitute(q, s) == ("x", "y")


def test_subwords_nested_roundtrip():
    for w in words_upto(("x", "y"), 3):
        for q, s in subwords(w):
            assert contains_star(q)
            assert substitute(q, s) == w


def test_subwords_outermost_first():
    w = (("P", (("D", ("x",)),)),)
    pairs = list(subwords(w))
    # the whole word comes before anything inside the brackets
    assert pairs[0] == ((STAR,), w)
    subs = [s for _, s in pairs]
    assert (("D", ("x",)),) in subs
    assert ("x",) in subs


def test_compose_contexts():
    q1 = (("P", (STAR,)),)
    q2 = ("x", STAR)
    q = compose_contexts(q1, q2)
    assert q == (("P", ("x", STAR)),)
    assert substitute(q, ("y",)) == (("P", ("x", "y")),)


def _gd_oracle(w):
    # flatten, then for each closing D-bracket count generators after it
    toks = []

    def flat(u):
        for letter in u:
            if is_bracket(letter):
                toks.append(("[", letter[0]))
                flat(letter[1])
                toks.append(("]", letter[0]))
            else:
                toks.append(("g", letter))

    flat(w)
    total = 0
    for i, t in enumerate(toks):
        if t == ("]", "D"):
            total += sum(1 for s in toks[i + 1:] if s[0] == "g")
    return total


def _gp_oracle(w):
    # for each P-bracket count generators outside it
    toks = []

    def flat(u):
        for letter in u:
            if is_bracket(letter):
                toks.append(("[", letter[0]))
                flat(letter[1])
                toks.append(("]", letter[0]))
            else:
                toks.append(("g", letter))

    flat(w)
    n = sum(1 for t in toks if t[0] == "g")
    total = 0
    depth = 0
    opens = []
    for i, t in enumerate(toks):
        if t == ("[", "P"):
            opens.append(0)
        elif t == ("]", "P"):
            total += n - opens.pop()
        elif t[0] == "g":
            for j in range(len(opens)):
                opens[j] += 1
    return total


def test_degrees_against_oracles():
    for w in words_upto(("x", "y"), 4):
        assert deg(w, "GD") == _gd_oracle(w)
        assert deg(w, "GP") == _gp_oracle(w)
        assert deg(w, "Z") == sum(1 for _ in _gens(w))


def _gens(w):
    for letter in w:
        if is_bracket(letter):
            yield from _gens(letter[1])
        else:
            yield letter


def test_degrees_basic():
    w = (("P", ("x",)), ("D", ("y",)))
    assert deg(w, "D") == 1
    assert deg(w, "P") == 1
    assert deg(w, "Z") == 2
    # D(y) closes with no generator after it
    assert deg(w, "GD") == 0
    # P(x) has one generator (y) outside
    assert deg(w, "GP") == 1


def test_unital_degrees():
    p1 = ("P", ())
    d1 = ("D", ())
    assert deg((p1,), "P", unital=True) == 1
    assert deg((p1,), "Z", unital=True) == 1
    assert deg((p1,), "GP", unital=True) == 0
    # one more letter outside the P(1) bracket
    assert deg((p1, "x"), "GP", unital=True) == 1
    assert deg((d1,), "D", unital=True) == 0
    assert deg((d1,), "Z", unital=True) == 1
    assert deg(((("P", ("x",))), p1), "Z", unital=True) == 1 + 1


def test_zprime():
    w = (("P", ()), ("D", ()), ("P", (("D", ()),)))
    assert zprime(w) == (DAG_P, DAG_D, ("P", (DAG_D,)))


def test_weight():
    assert weight(("x",)) == 1
    assert weight((("P", ("x", "y")),)) == 3
    assert weight((("P", ()),)) == 1
    assert weight((("P", (("D", ("x",)),)), "y")) == 4


def test_enumeration_weights():
    for n in range(1, 5):
        for w in words_of_weight(("x", "y"), n):
            assert weight(w) == n
        for w in words_of_weight(("x",), n, unital=True):
            assert weight(w) == n
