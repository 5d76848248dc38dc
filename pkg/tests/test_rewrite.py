"""Template matching, redex search and normal forms."""

import random
from fractions import Fraction

import pytest

from opal import poly as P
from opal.grammar import parse_word
from opal.orders import WordOrder, order_for
from opal.rewrite import (BudgetExceeded, Rule, leading, match_template,
                          monicize, substitute_metavars, template_metavars)
from opal.systems import catalog
from opal.basis import words_upto


def w(text, unital=False, template=False):
    return parse_word(text, unital=unital, template=template)


def tmpl(text):
    return w(text, unital=True, template=True)


def test_template_metavars():
    t = tmpl("P($1)*D($2)*$1")
    assert template_metavars(t) == ["$1", "$2"]
    assert substitute_metavars(t, {"$1": ("x",), "$2": ("y", "y")}) == \
        w("P(x) D(y y) x")


def test_match_simple():
    t = tmpl("P($1)*D($2)")
    target = w("P(x y) D(P(x))")
    out = match_template(t, target)
    assert out == [{"$1": ("x", "y"), "$2": ((("P", ("x",))),)}]
    assert match_template(t, w("P(x) y")) == []


def test_match_trailing_metavar_empty():
    # a trailing metavariable may bind the empty word only in unital mode
    t = tmpl("D($1)*$2")
    target = w("D(x)")
    assert match_template(t, target, unital=True) == [
        {"$1": ("x",), "$2": ()}]
    assert match_template(t, target, unital=False) == []


def test_match_repeated_metavar():
    t = ("$1", "$1")
    assert match_template(t, ("x", "x")) == [{"$1": ("x",)}]
    assert match_template(t, ("x", "y")) == []
    assert match_template(t, ("x", "y", "x", "y")) == [{"$1": ("x", "y")}]


def test_match_multiple_bindings():
    # adjacent metavariables admit every split
    t = ("$1", "$2")
    outs = match_template(t, ("x", "y", "z"))
    assert len(outs) == 2
    assert {"$1": ("x",), "$2": ("y", "z")} in outs
    assert {"$1": ("x", "y"), "$2": ("z",)} in outs


def test_rule_instantiate_drop_d1():
    sys_ = catalog("uDRB")
    phi2 = next(r for r in sys_.opis if r.origin == "phi2")
    inst = phi2.instantiate({"$1": (), "$2": ("x",)}, drop_d1=True)
    # terms containing the letter D(1) are removed
    for word in inst:
        assert ("D", ()) not in word


def test_monicize_and_leading():
    order = WordOrder("pd", ("x", "y"))
    f = P.poly((w("P(x)"), Fraction(2)), (w("x"), Fraction(1)))
    rules = monicize([f, {}], order)
    assert len(rules) == 1
    r = rules[0]
    assert r.lm == w("P(x)")
    assert r.ground_poly()[w("x")] == Fraction(1, 2)
    assert leading(f, order) == (w("P(x)"), Fraction(2))
    assert leading({}, order) == (None, Fraction(0))
    assert leading({}, order, unital=True) == ((), Fraction(0))
    with pytest.raises(ValueError):
        monicize([{(): Fraction(1)}], order, unital=True)


def _drb(alphabet=("x", "y")):
    sys_ = catalog("DRB")
    order = order_for(alphabet, False)
    return sys_.rewrite_system(order, step_budget=10**6), order


def test_normal_form_phi3():
    rs, _ = _drb()
    nf = rs.nf_word(w("D(P(x))"))
    assert nf == {w("x"): Fraction(1)}
    assert rs.is_irreducible(w("x"))
    assert not rs.is_irreducible(w("D(P(x))"))


def test_normal_form_linearity():
    rs, _ = _drb()
    f = P.poly((w("D(P(x)) y"), Fraction(2)), (w("x y"), Fraction(-2)))
    assert rs.normal_form(f) == {}


def test_normal_form_strategies_agree():
    rs, _ = _drb()
    rng = random.Random(7)
    for text in ("P(x) P(y)", "D(x) D(y)", "P(x) D(y)", "D(P(x y))",
                 "P(D(x) P(y))"):
        f = {w(text): Fraction(1)}
        nf = rs.normal_form(f)
        nf2, steps = rs.normal_form_steps(f)
        assert nf == nf2
        if steps:
            assert all(len(s) == 4 for s in steps)
        for _ in range(5):
            assert rs.normal_form_random(f, rng) == nf


def test_reduce_once_none_on_irreducible():
    rs, _ = _drb()
    assert rs.reduce_once({w("x y"): Fraction(1)}) is None


def test_budget():
    sys_ = catalog("DRB")
    order = order_for(("x", "y"), False)
    rs = sys_.rewrite_system(order, step_budget=1)
    with pytest.raises(BudgetExceeded):
        rs.nf_word(w("P(x) P(y) P(x) P(y)"))


def test_add_ground_rule_invalidation():
    rs, order = _drb()
    target = w("x y")
    assert rs.nf_word(target) == {target: Fraction(1)}
    rule = Rule(target, ((target, Fraction(1)), (w("y"), Fraction(-1))),
                "extra")
    rs.add_ground_rule(rule)
    assert rs.nf_word(target) == {w("y"): Fraction(1)}
    # words untouched by the new rule keep their cached normal forms
    assert rs.nf_word(w("D(P(x))")) == {w("x"): Fraction(1)}


def test_unital_extras():
    sys_ = catalog("uDRB")
    order = order_for(("x", "y"), True)
    rs = sys_.rewrite_system(order)
    assert rs.nf_word(w("D()", unital=True)) == {}
    assert rs.nf_word(w("D(P(x))", unital=True)) == {("x",): Fraction(1)}
    # P(x)*D(1) falls to zero through phi4 degeneration and D(1) -> 0
    assert rs.normal_form({w("P(x) D()", unital=True): Fraction(1)}) == {}


def test_nf_idempotent_on_sample():
    rs, _ = _drb()
    for word in words_upto(("x", "y"), 3):
        nf = rs.nf_word(word)
        again = rs.normal_form(nf)
        assert again == nf
        for u in nf:
            assert rs.is_irreducible(u)
