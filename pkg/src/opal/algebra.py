"""Presented associative base algebras and checks over them.

A presentation is an ordered alphabet plus bracket-free relations.  The
relations are checked to be confluent under the degree-lexicographic
order; the combined system then adjoins them as ground rules next to an
operator rule system, giving normal forms in the free operated algebra
over the presented algebra.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .ambiguity import all_compositions, gs_check
from .grammar import parse_poly
from .orders import WordOrder, order_for
from .rewrite import RewriteSystem, monicize
from .systems import check_shape_hypothesis
from .words import is_bracket


class AlgebraPresentation:
    def __init__(self, alphabet, relations, unital=False):
        self.alphabet = tuple(alphabet)
        self.unital = unital
        for f in relations:
            for w in f:
                if any(is_bracket(l) for l in w):
                    raise ValueError("relations must be bracket-free")
        self.relations = [dict(f) for f in relations if f]

    def relation_rules(self, order):
        return monicize(self.relations, order, self.unital, origin="relation")


def parse_presentation(text):
    """Presentation file: a header line
    ``generators: x < y; unital: true|false;`` followed by one relation
    per line in the term grammar.  '#' starts a comment."""
    alphabet = None
    unital = False
    relations = []
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("generators:"):
            for part in line.split(";"):
                part = part.strip().rstrip(";")
                if part.startswith("generators:"):
                    names = [g.strip() for g in
                             part[len("generators:"):].split("<")]
                    alphabet = tuple(n for n in names if n)
                elif part.startswith("unital:"):
                    unital = part[len("unital:"):].strip().lower() == "true"
            continue
        if alphabet is None:
            raise ValueError(f"line {i}: relations before the generators header")
        relations.append(parse_poly(line, unital=unital))
    if alphabet is None:
        raise ValueError("missing 'generators:' header")
    return AlgebraPresentation(alphabet, relations, unital)


def assoc_gs_check(pres):
    """Composition check for the bracket-free relations under the
    degree-lexicographic order."""
    order = WordOrder("dlex", pres.alphabet)
    rules = pres.relation_rules(order)
    rs = RewriteSystem(rules, order, unital=pres.unital)
    failures = []
    comps = all_compositions(rules)
    for comp in comps:
        residual = rs.normal_form(comp["value"])
        if residual:
            failures.append({
                "kind": comp["kind"],
                "left": comp["left"].origin,
                "right": comp["right"].origin,
                "p": comp["p"],
                "residual": residual,
            })
    return {"ok": not failures, "compositions": len(comps),
            "failures": failures}


def combined_system(pres, system, order=None, step_budget=10**6):
    """Operator rules plus relation ground rules, monicized under the
    main order.  Requires the relations to pass their own check and
    every identity's leading shape to satisfy the adjacency hypothesis."""
    if system.unital != pres.unital:
        raise ValueError("presentation and system disagree on unitality")
    assoc = assoc_gs_check(pres)
    if not assoc["ok"]:
        raise ValueError("relations are not confluent under dlex")
    for opi in system.opis:
        if not check_shape_hypothesis(opi):
            raise ValueError(
                f"identity {opi.origin} violates the leading-shape hypothesis")
    if order is None:
        order = order_for(pres.alphabet, pres.unital)
    rel_rules = pres.relation_rules(order)
    rs = system.rewrite_system(order, step_budget=step_budget)
    for r in rel_rules:
        rs.rules.append(r)
        rs.ground[r.lm] = r
    return rs, rel_rules


def mixed_gs_check(pres, system, arg_words, order=None, step_budget=10**7,
                   keep_failures=20):
    """Composition check of the combined system: identity instantiations
    at the given argument words, the system's ground extras, and the
    relation rules, all against each other."""
    if order is None:
        order = order_for(pres.alphabet, pres.unital)
    _, rel_rules = combined_system(pres, system, order)
    return gs_check(system, order, arg_words, extra_ground=rel_rules,
                    step_budget=step_budget, keep_failures=keep_failures)
