"""Built-in verification suite: order laws, leading shapes, confluence
of the named systems, completion rediscovery, linear-basis facts, and
the over-algebra construction.  Each check returns a JSON-serializable
dict with an "ok" flag; the suite report is deterministic for a fixed
seed and set of bounds.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import poly as P
from .algebra import AlgebraPresentation, mixed_gs_check
from .ambiguity import complete, gs_check
from .basis import span_check, words_of_weight, words_upto
from .grammar import print_word
from .orders import WordOrder, check_monomial_order_properties, order_for
from .systems import (build_opi, catalog, identify_shape,
                      verify_leading_shape)
from .words import STAR

DAG_P_LETTER = ("P", ())
DAG_D_LETTER = ("D", ())

GS_CATALOGS = ("DRB", "DRB0", "uDRB", "uDRB0", "ID", "ID0", "uID", "uID0")


def _contexts(unital):
    x = "x"
    ctxs = [
        (STAR,),
        (x, STAR),
        (STAR, x),
        (("D", (STAR,)),),
        (("P", (STAR,)),),
        (x, STAR, "y"),
        (("P", (("D", (STAR,)),)),),
        (STAR, ("P", (x,))),
    ]
    if unital:
        ctxs.append((DAG_P_LETTER, STAR))
    return ctxs


def _multipliers(unital):
    mult = [("x",), ("y",), ("x", "y"), (("P", ("x",)),), (("D", ("x",)),)]
    if unital:
        mult.append((DAG_D_LETTER,))
    return mult


def check_orders(alphabet=("x", "y"), bound=3):
    """Totality, antisymmetry, transitivity and compatibility of both
    main orders over all words up to the weight bound."""
    results = {}
    ok = True
    for kind, unital in (("pd", False), ("upd", True)):
        order = WordOrder(kind, alphabet, unital)
        words = words_upto(alphabet, bound, unital)
        rep = check_monomial_order_properties(
            order, words, contexts=_contexts(unital),
            multipliers=_multipliers(unital))
        rep["words"] = len(words)
        if not rep["ok"]:
            rep["counterexample"] = repr(rep["counterexample"])
            ok = False
        results[kind] = rep
    return {"name": "order-laws", "ok": ok, "details": results}


def check_unit_chains(alphabet=("x", "y"), bound=3):
    """The five inequality chains relating P(1)- and D(1)-letters to
    nested brackets, for all nonunit words up to the weight bound."""
    order = WordOrder("upd", alphabet, unital=True)
    gt = lambda a, b: order.less(b, a)
    ge = lambda a, b: a == b or order.less(b, a)
    dP, dD = DAG_P_LETTER, DAG_D_LETTER
    Pb = lambda w: (("P", w),)
    Db = lambda w: (("D", w),)
    words = [w for w in words_upto(alphabet, bound, unital=True) if w]
    failures = []

    def expect(label, cond, *ws):
        if not cond:
            failures.append({"chain": label,
                             "words": [print_word(w) for w in ws]})

    for u in words:
        expect("a1", gt(Pb(u) + (dP,), Pb(u + (dP,))), u)
        expect("a2", ge(Pb(u + (dP,)), Pb(Pb(u))), u)
        expect("b1", gt((dP,) + Pb(u), Pb((dP,) + u)), u)
        expect("b2", ge(Pb((dP,) + u), Pb(Pb(u))), u)
        expect("d", gt((dP,) + Db(u), Db((dP,) + u)), u)
        expect("e", gt(Db(u) + (dP,), Db(u + (dP,))), u)
    expect("c", gt((dP, dP), Pb((dP,))))
    return {"name": "unit-chains", "ok": not failures,
            "details": {"words": len(words), "failures": failures[:10]}}


def check_leading_shapes(alphabet=("x", "y"), bound=3, unital_bound=2,
                         lams=(1, 2, Fraction(1, 2))):
    """Every identity keeps its declared leading shape on all argument
    tuples up to the bound; unital argument grids may only vanish or
    degenerate when an argument is the unit."""
    details = []
    ok = True
    nonunital_args = words_upto(alphabet, bound, unital=False)
    unital_args = words_upto(alphabet, unital_bound, unital=True)
    pd = WordOrder("pd", alphabet)
    upd = WordOrder("upd", alphabet, unital=True)
    weighted = [f"phi{i}" for i in range(1, 10)]
    zero = [f"phi{i}_0" for i in (1, 2, 3, 4, 6, 7, 8, 9)]

    def grid(args, n):
        from itertools import product
        return product(args, repeat=n)

    def run(name, lam):
        nonlocal ok
        rule = build_opi(name, lam)
        n = len(rule.metavars)
        rep = verify_leading_shape(rule, pd, grid(nonunital_args, n))
        rep["lambda"] = str(lam)
        rep["mode"] = "nonunital"
        ok = ok and rep["ok"] and rep["degenerate"] == 0
        details.append(rep)
        urep = verify_leading_shape(rule, upd, grid(unital_args, n),
                                    unital=True)
        urep["lambda"] = str(lam)
        urep["mode"] = "unital"
        ok = ok and urep["ok"]
        details.append(urep)

    for lam in [Fraction(l) for l in lams]:
        for name in weighted:
            run(name, lam)
    for name in zero:
        run(name, Fraction(0))
    for d in details:
        d["failures"] = [
            {"args": [print_word(a) for a in f["args"]],
             "leading": print_word(f["leading"]),
             "expected": print_word(f["expected"])}
            for f in d["failures"][:3]]
    return {"name": "leading-shapes", "ok": ok, "details": details}


def _system_order(system, alphabet):
    return order_for(alphabet, system.unital)


# catalogs whose published rule set already closes all compositions;
# the ID family needs a finite batch of corrective ground rules at each
# bound (see the shape T(D(P(u)v)s) with T(w) = P(D(w)) - w), so for
# those the check is that bounded completion terminates with closure
DIRECTLY_CLOSED = ("DRB", "DRB0", "uDRB", "uDRB0")


def check_gs_catalogs(alphabet=("x", "y"), bound=2, lam=Fraction(1),
                      names=GS_CATALOGS, step_budget=10**8,
                      max_new_rules=400):
    """Bounded confluence of every named system.

    Runs bounded completion for each catalog; a system passes when the
    completion closes at the bound.  The four differential Rota-Baxter
    catalogs must additionally close without any corrective rules."""
    details = []
    ok = True
    for name in names:
        sys_ = catalog(name, lam)
        order = _system_order(sys_, alphabet)
        args = words_upto(alphabet, bound, sys_.unital)
        new_rules, log, completed = complete(
            sys_, order, args, max_new_rules=max_new_rules,
            step_budget=step_budget)
        direct = not new_rules
        sys_ok = completed and (direct or name not in DIRECTLY_CLOSED)
        ok = ok and sys_ok
        details.append({
            "system": name,
            "ok": sys_ok,
            "closed": completed,
            "direct": direct,
            "corrective_rules": len(new_rules),
            "sample_lm": print_word(new_rules[0].lm) if new_rules else None,
        })
    return {"name": "gs-catalogs", "ok": ok, "details": details}


def check_negative_controls(alphabet=("x", "y"), bound=2, lam=Fraction(1)):
    """The two defining subsystems are not confluent, and bounded
    completion from them rediscovers the known missing identities."""
    expectations = {
        "DRB'": {"phi4", "phi5"},
        "ID'": {"phi1", "phi4", "phi5", "phi8", "phi9"},
    }
    details = []
    ok = True
    for name, expected in expectations.items():
        sys_ = catalog(name, lam)
        order = _system_order(sys_, alphabet)
        args = words_upto(alphabet, bound, sys_.unital)
        rep = gs_check(sys_, order, args)
        failed_as_expected = not rep["ok"]
        new_rules, log, _completed = complete(sys_, order, args,
                                              max_new_rules=600)
        found = set()
        for r in new_rules:
            ident = identify_shape(r, lam, sys_.unital)
            if ident:
                found.add(ident)
        discovered = expected <= found
        ok = ok and failed_as_expected and discovered
        details.append({
            "system": name,
            "gs_fails": failed_as_expected,
            "expected": sorted(expected),
            "identified": sorted(found),
            "new_rules": len(new_rules),
            "ok": failed_as_expected and discovered,
        })
    return {"name": "negative-controls", "ok": ok, "details": details}


def check_confluence(seed=0, lam=Fraction(1), names=GS_CATALOGS,
                     strategies=20, bound_single=4, bound_pair=3):
    """Strategy independence of normal forms for each confluent system,
    and agreement of the irreducible set with the fixed points."""
    details = []
    ok = True
    for name in names:
        sys_ = catalog(name, lam)
        rng = random.Random(seed)
        sys_ok = True
        for alphabet, bound in ((("x",), bound_single), (("x", "y"), bound_pair)):
            order = _system_order(sys_, alphabet)
            rs = sys_.rewrite_system(order, step_budget=10**8)
            words = words_upto(alphabet, bound, sys_.unital)
            for w in words:
                f = {w: Fraction(1)}
                nf = rs.normal_form(f)
                fixed = nf == f
                if fixed != rs.is_irreducible(w):
                    sys_ok = False
                for _ in range(strategies):
                    if rs.normal_form_random(f, rng) != nf:
                        sys_ok = False
                        break
        ok = ok and sys_ok
        details.append({"system": name, "ok": sys_ok})
    return {"name": "confluence", "ok": ok, "details": details}


def check_span(alphabet=("x", "y"), bound=3, lam=Fraction(1),
               names=("DRB", "ID0")):
    """Exact-rank certification of the irreducible-word decomposition."""
    details = []
    ok = True
    for name in names:
        sys_ = catalog(name, lam)
        order = _system_order(sys_, alphabet)
        rs = sys_.rewrite_system(order, step_budget=10**8)
        rep = span_check(rs, alphabet, bound, sys_.unital)
        rep["system"] = name
        rep["bad_support"] = [
            (print_word(a), print_word(b)) for a, b in rep["bad_support"][:5]]
        ok = ok and rep["ok"]
        details.append(rep)
    return {"name": "span", "ok": ok, "details": details}


def check_over_algebra(bound=2, lam=Fraction(1)):
    """The commuting-variables algebra stays compatible when combined
    with each main system.

    The DRB family must pass the mixed composition check outright.  The
    ID family carries its documented operator-level obstruction into the
    mixed setting, so there the requirement is that every failing
    composition is a pure operator pair already accounted for at the
    catalog level: no failure may involve a relation rule."""
    details = []
    ok = True
    runs = [("DRB", False), ("DRB0", False), ("ID", False), ("ID0", False),
            ("uDRB", True), ("uDRB0", True), ("uID", True), ("uID0", True)]
    for name, unital in runs:
        pres = AlgebraPresentation(
            ("x", "y"), [{("y", "x"): Fraction(1), ("x", "y"): Fraction(-1)}],
            unital=unital)
        sys_ = catalog(name, lam)
        args = words_upto(pres.alphabet, bound, unital)
        direct = name in DIRECTLY_CLOSED
        rep = mixed_gs_check(pres, sys_, args, step_budget=10**8,
                             keep_failures=20 if direct else 10**9)
        relation_involved = sum(
            1 for f in rep["failures"]
            if "relation" in (f["left"], f["right"]))
        sys_ok = rep["ok"] if direct else relation_involved == 0
        rep["failures"] = [
            {"kind": f["kind"], "left": f["left"], "right": f["right"],
             "p": print_word(f["p"])}
            for f in rep["failures"][:5]]
        rep["mode"] = "unital" if unital else "nonunital"
        rep["relation_involved"] = relation_involved
        rep["ok"] = sys_ok
        ok = ok and sys_ok
        details.append(rep)
    return {"name": "over-algebra", "ok": ok, "details": details}


def check_id_vs_drb(alphabet=("x", "y"), bound=4, lam=Fraction(1),
                    witness_bound=5):
    """The integro-differential irreducible words sit strictly inside the
    differential Rota-Baxter ones; a strictness witness is reported."""
    order = WordOrder("pd", alphabet)
    drb = catalog("DRB", lam).rewrite_system(order)
    idsys = catalog("ID", lam).rewrite_system(order)
    subset_ok = True
    for n in range(1, bound + 1):
        for w in words_of_weight(alphabet, n):
            if idsys.is_irreducible(w) and not drb.is_irreducible(w):
                subset_ok = False
    witness = None
    for n in range(1, witness_bound + 1):
        for w in words_of_weight(alphabet, n):
            if drb.is_irreducible(w) and not idsys.is_irreducible(w):
                witness = print_word(w)
                break
        if witness:
            break
    return {"name": "id-vs-drb", "ok": subset_ok and witness is not None,
            "details": {"subset": subset_ok, "witness": witness}}


def assemble_report(seed=0, lam=Fraction(1), order_bound=3, gs_bound=2,
                    shape_bound=3, span_bound=3, irr_bound=4,
                    confluence_single=4, confluence_pair=3, neg_bound=2):
    """Run the whole suite and return a deterministic report dict."""
    checks = [
        check_orders(bound=order_bound),
        check_unit_chains(bound=order_bound),
        check_leading_shapes(bound=shape_bound),
        check_gs_catalogs(bound=gs_bound, lam=lam),
        check_negative_controls(bound=neg_bound, lam=lam),
        check_confluence(seed=seed, lam=lam, bound_single=confluence_single,
                         bound_pair=confluence_pair),
        check_span(bound=span_bound, lam=lam),
        check_over_algebra(bound=gs_bound, lam=lam),
        check_id_vs_drb(bound=irr_bound, lam=lam),
    ]
    return {
        "config": {
            "seed": seed,
            "lambda": str(Fraction(lam)),
            "order_bound": order_bound,
            "gs_bound": gs_bound,
            "shape_bound": shape_bound,
            "span_bound": span_bound,
            "irr_bound": irr_bound,
            "neg_bound": neg_bound,
        },
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
    }
