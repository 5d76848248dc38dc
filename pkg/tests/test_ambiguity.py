"""Composition machinery and bounded completion on small systems."""

from fractions import Fraction

from opal.ambiguity import (all_compositions, complete, gs_check,
                            inclusion_compositions, instantiated_rules,
                            intersection_compositions)
from opal.basis import words_upto
from opal.grammar import parse_word
from opal.orders import WordOrder, order_for
from opal.rewrite import Rule
from opal.systems import OPISystem, catalog
from opal.words import STAR


def _rule(lm_text, rest):
    lm = parse_word(lm_text)
    terms = [(lm, Fraction(1))] + [(parse_word(t), c) for t, c in rest]
    return Rule(lm, terms, lm_text)


def test_intersection_compositions():
    f = _rule("x y", [("x", Fraction(-1))])
    g = _rule("y x", [("y", Fraction(-1))])
    comps = intersection_compositions(f, g)
    assert len(comps) == 1
    comp = comps[0]
    assert comp["p"] == parse_word("x y x")
    # (xy - x)x - x(yx - y) = -xx + xy
    assert comp["value"] == {parse_word("x x"): Fraction(-1),
                             parse_word("x y"): Fraction(1)}
    # no overlap in the other direction
    assert intersection_compositions(g, f) == [
        c for c in intersection_compositions(g, f)]
    assert len(intersection_compositions(g, f)) == 1


def test_inclusion_compositions():
    f = _rule("P(x y)", [("P(x)", Fraction(-1))])
    g = _rule("x y", [("x", Fraction(-1))])
    comps = inclusion_compositions(f, g)
    assert len(comps) == 1
    comp = comps[0]
    assert comp["p"] == f.lm
    assert comp["witness"] == (("P", (STAR,)),)
    # (P(xy) - P(x)) - P(xy - x) = 0
    assert comp["value"] == {}
    # the trivial self-pair is excluded
    assert inclusion_compositions(f, f) == []


def test_all_compositions_matches_pairwise():
    rules = [_rule("x y", [("x", Fraction(-1))]),
             _rule("y x", [("y", Fraction(-1))]),
             _rule("P(x y)", [("P(x)", Fraction(-1))])]
    got = all_compositions(rules)
    expected = []
    for f in rules:
        for g in rules:
            expected.extend(intersection_compositions(f, g))
            expected.extend(inclusion_compositions(f, g))
    key = lambda c: (c["kind"], c["left"].origin, c["right"].origin, c["p"])
    assert sorted((key(c) for c in got)) == sorted((key(c) for c in expected))


def _toy_system():
    rules = [_rule("x y", [("x", Fraction(-1))]),
             _rule("y x", [("y", Fraction(-1))])]
    return OPISystem("toy", rules, Fraction(1), False, [])


def test_toy_completion():
    sys_ = _toy_system()
    order = WordOrder("dlex", ("x", "y"))
    args = words_upto(("x", "y"), 1)
    rep = gs_check(sys_, order, args)
    assert not rep["ok"]
    new_rules, log, completed = complete(sys_, order, args)
    assert completed
    lms = {r.lm for r in new_rules}
    assert parse_word("x x") in lms or parse_word("y y") in lms
    assert all(entry["new_lm"] in lms for entry in log)
    # the completed set is confluent
    sys2 = OPISystem("toy+", sys_.opis + new_rules, Fraction(1), False, [])
    assert gs_check(sys2, order, args)["ok"]


def test_instantiated_rules_dedup():
    sys_ = catalog("DRB")
    order = order_for(("x", "y"), False)
    args = words_upto(("x", "y"), 1)
    rules = instantiated_rules(sys_, order, args)
    # phi1 and phi2 contribute 4 instances each, phi4 and phi5 likewise,
    # phi3 contributes 2: all distinct at this bound
    assert len(rules) == 18
    seen = set()
    for r in rules:
        assert r.terms not in seen
        seen.add(r.terms)


def test_gs_check_rb():
    sys_ = catalog("rb")
    order = order_for(("x", "y"), False)
    args = words_upto(("x", "y"), 1)
    rep = gs_check(sys_, order, args)
    assert rep["ok"], rep["failures"]
    assert rep["compositions"] > 0
