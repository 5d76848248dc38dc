"""Critical pairs between monic ground rules and bounded completion.

Two species of compositions exist between ground rules f and g:

- intersection: the leading monomials overlap at the top level,
  p = f.lm ++ tail = head ++ g.lm with the overlap shorter than either
  leading monomial; the value is f*tail - head*g.
- inclusion: g.lm occurs as a subword of f.lm via a context q, so
  p = f.lm = q|_{g.lm}; the value is f - q|_g.

A rule set is confluent at a bound when every composition between its
bounded instantiations reduces to zero under the set itself.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .rewrite import Rule, RewriteSystem, leading
from .words import STAR, subwords


def intersection_compositions(f, g):
    """All top-level overlaps p = f.lm u = v g.lm with
    max(|f.lm|, |g.lm|) < |p| < |f.lm| + |g.lm|."""
    out = []
    lf, lg = f.lm, g.lm
    for k in range(1, min(len(lf), len(lg))):
        if lf[len(lf) - k:] == lg[:k]:
            u = lg[k:]
            v = lf[:len(lf) - k]
            p = lf + u
            value = P.sub(P.mul_word(f.ground_poly(), u, "right"),
                          P.mul_word(g.ground_poly(), v, "left"))
            out.append({
                "kind": "intersection", "left": f, "right": g,
                "p": p, "witness": (u, v), "value": value,
            })
    return out


def inclusion_compositions(f, g):
    """All containments p = f.lm = q|_{g.lm}, excluding the trivial
    self-pair with the empty context."""
    out = []
    for q, s in subwords(f.lm):
        if s != g.lm:
            continue
        if f is g and q == (STAR,):
            continue
        value = P.sub(f.ground_poly(), P.substitute_poly(q, g.ground_poly()))
        out.append({
            "kind": "inclusion", "left": f, "right": g,
            "p": f.lm, "witness": q, "value": value,
        })
    return out


def instantiated_rules(system, order, arg_words):
    """Monic ground rules from instantiating each identity of the system
    at every tuple of the given argument words, plus its ground extras.
    Degenerate instances whose leading monomial collapses are kept after
    re-monicizing; zero instances are dropped."""
    from itertools import product

    seen = {}
    rules = []

    def push(poly, origin):
        if not poly:
            return
        lm, c = leading(poly, order, system.unital)
        if lm == () or lm is None:
            raise ValueError(f"{origin}: instantiation is a nonzero constant")
        monic = P.scale(poly, 1 / c)
        terms = tuple(sorted(monic.items(), key=lambda wc: order.key(wc[0]),
                             reverse=True))
        # drop exact duplicates only; distinct polynomials sharing a
        # leading monomial must both stay in the composition pool
        if terms in seen.setdefault(lm, set()):
            return
        seen[lm].add(terms)
        rules.append(Rule(lm, terms, origin))

    for opi in system.opis:
        n = len(opi.metavars)
        for args in product(arg_words, repeat=n):
            binding = dict(zip(opi.metavars, args))
            inst = opi.instantiate(binding, system.drop_d1)
            push(inst, f"{opi.origin}{tuple(map(str, args))}")
    for w in system.extra_rules:
        push({w: Fraction(1)}, "extra")
    return rules


def all_compositions(ground_rules, extra_pool=()):
    """Compositions over all ordered pairs from the pool.  Inclusion
    pairs are found through a leading-monomial index instead of a
    pairwise scan."""
    pool = list(ground_rules) + list(extra_pool)
    by_lm = {}
    for r in pool:
        by_lm.setdefault(r.lm, []).append(r)
    by_first = {}
    for r in pool:
        by_first.setdefault(r.lm[0], []).append(r)
    out = []
    for f in pool:
        for k in range(1, len(f.lm)):
            suffix_start = f.lm[len(f.lm) - k]
            for g in by_first.get(suffix_start, ()):
                if k < len(g.lm) and f.lm[len(f.lm) - k:] == g.lm[:k]:
                    u = g.lm[k:]
                    v = f.lm[:len(f.lm) - k]
                    value = P.sub(P.mul_word(f.ground_poly(), u, "right"),
                                  P.mul_word(g.ground_poly(), v, "left"))
                    out.append({
                        "kind": "intersection", "left": f, "right": g,
                        "p": f.lm + u, "witness": (u, v), "value": value,
                    })
        for q, s in subwords(f.lm):
            for g in by_lm.get(s, ()):
                if f is g and q == (STAR,):
                    continue
                value = P.sub(f.ground_poly(),
                              P.substitute_poly(q, g.ground_poly()))
                out.append({
                    "kind": "inclusion", "left": f, "right": g,
                    "p": f.lm, "witness": q, "value": value,
                })
    return out


def gs_check(system, order, arg_words, extra_ground=(), step_budget=10**7,
             keep_failures=20):
    """Check that every composition between bounded instantiations of the
    system (plus optional ground relation rules) reduces to zero."""
    rs = system.rewrite_system(order, step_budget=step_budget)
    for r in extra_ground:
        rs.rules.append(r)
        rs.ground[r.lm] = r
    ground = instantiated_rules(system, order, arg_words)
    comps = all_compositions(ground, extra_pool=extra_ground)
    failures = []
    checked = 0
    for comp in comps:
        checked += 1
        residual = rs.normal_form(comp["value"])
        if residual:
            if len(failures) < keep_failures:
                failures.append({
                    "kind": comp["kind"],
                    "left": comp["left"].origin,
                    "right": comp["right"].origin,
                    "p": comp["p"],
                    "residual": residual,
                })
    return {
        "ok": not failures,
        "system": system.name,
        "compositions": checked,
        "rules": len(ground) + len(extra_ground),
        "failures": failures,
    }


def complete(system, order, arg_words, max_new_rules=200, step_budget=10**7):
    """Bounded ground completion: repeatedly adjoin reduced nonzero
    composition residuals as new rules until all compositions at the
    bound are trivial or the rule budget runs out.

    Returns (new_rules, log, completed_flag).  Each log entry records
    the pair, the ambiguity word p and the new rule's leading monomial.
    """
    rs = system.rewrite_system(order, step_budget=step_budget)
    ground = instantiated_rules(system, order, arg_words)
    new_rules = []
    log = []
    completed = False
    for round_no in range(1, 100):
        comps = all_compositions(ground)
        comps.sort(key=lambda c: (order.key(c["p"]), c["kind"],
                                  c["left"].origin, c["right"].origin))
        added_this_round = 0
        for comp in comps:
            residual = rs.normal_form(comp["value"])
            if not residual:
                continue
            lm, c = leading(residual, order, system.unital)
            monic = P.scale(residual, 1 / c)
            terms = sorted(monic.items(), key=lambda wc: order.key(wc[0]),
                           reverse=True)
            rule = Rule(lm, terms, f"completion:{len(new_rules) + 1}")
            new_rules.append(rule)
            ground.append(rule)
            rs.add_ground_rule(rule)
            log.append({
                "round": round_no,
                "kind": comp["kind"],
                "left": comp["left"].origin,
                "right": comp["right"].origin,
                "p": comp["p"],
                "new_lm": lm,
            })
            added_this_round += 1
            if len(new_rules) >= max_new_rules:
                return new_rules, log, False
        if not added_this_round:
            completed = True
            break
    return new_rules, log, completed
