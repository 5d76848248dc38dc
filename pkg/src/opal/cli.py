"""Command-line interface.

Exit codes: 0 success / check passed, 1 usage error, 2 check failed,
3 step or rule budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import verify
from .algebra import assoc_gs_check, mixed_gs_check, parse_presentation
from .ambiguity import complete, gs_check
from .basis import irr_enumerate, words_upto
from .grammar import SyntaxError_, parse_poly, print_poly, print_word
from .orders import WordOrder, order_for
from .rewrite import BudgetExceeded
from .systems import CATALOGS, catalog, identify_shape, parse_catalog_file


def _alphabet(s):
    return tuple(a.strip() for a in s.split(",") if a.strip())


def _load_system(name, lam, unital_flag):
    import os

    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return parse_catalog_file(fh.read(), lam, unital=unital_flag,
                                      name=name)
    return catalog(name, lam)


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_parse(args):
    f = parse_poly(args.term, unital=args.unital)
    print(print_poly(f))
    return 0


def cmd_order_compare(args):
    alphabet = _alphabet(args.alphabet)
    order = WordOrder(args.order, alphabet, unital=(args.order == "upd"))
    from .grammar import parse_word
    u = parse_word(args.term1, unital=(args.order == "upd"))
    v = parse_word(args.term2, unital=(args.order == "upd"))
    print(order.compare(u, v))
    return 0


def cmd_nf(args):
    lam = Fraction(args.lam)
    sys_ = _load_system(args.system, lam, args.unital)
    alphabet = _alphabet(args.alphabet)
    order = order_for(alphabet, sys_.unital)
    rs = sys_.rewrite_system(order, step_budget=args.step_budget)
    f = parse_poly(args.poly, unital=sys_.unital)
    nf = rs.normal_form(f)
    print(print_poly(nf, order_key=order.key))
    return 0


def cmd_gs_check(args):
    lam = Fraction(args.lam)
    sys_ = _load_system(args.system, lam, args.unital)
    alphabet = _alphabet(args.alphabet)
    order = order_for(alphabet, sys_.unital)
    arg_words = words_upto(alphabet, args.bound, sys_.unital)
    rep = gs_check(sys_, order, arg_words, step_budget=args.step_budget)
    payload = {
        "system": rep["system"],
        "ok": rep["ok"],
        "compositions": rep["compositions"],
        "rules": rep["rules"],
        "failures": [
            {"kind": f["kind"], "left": f["left"], "right": f["right"],
             "p": print_word(f["p"]),
             "residual": print_poly(f["residual"], order_key=order.key)}
            for f in rep["failures"]],
    }
    _emit(args, payload,
          f"{rep['system']}: {'pass' if rep['ok'] else 'FAIL'} "
          f"({rep['compositions']} compositions, {rep['rules']} rules)")
    if not args.json:
        for f in payload["failures"]:
            print(f"  {f['kind']} {f['left']} vs {f['right']} at {f['p']}: "
                  f"residual {f['residual']}")
    return 0 if rep["ok"] else 2


def cmd_complete(args):
    lam = Fraction(args.lam)
    sys_ = _load_system(args.system, lam, args.unital)
    alphabet = _alphabet(args.alphabet)
    order = order_for(alphabet, sys_.unital)
    arg_words = words_upto(alphabet, args.bound, sys_.unital)
    new_rules, log, completed = complete(sys_, order, arg_words,
                                         max_new_rules=args.max_rules,
                                         step_budget=args.step_budget)
    payload = {"system": sys_.name, "completed": completed,
               "new_rules": [], "log": []}
    for r in new_rules:
        ident = identify_shape(r, lam, sys_.unital)
        payload["new_rules"].append({
            "poly": print_poly(r.ground_poly(), order_key=order.key),
            "identified": ident,
        })
    for entry in log:
        payload["log"].append({
            "round": entry["round"], "kind": entry["kind"],
            "left": entry["left"], "right": entry["right"],
            "p": print_word(entry["p"]),
            "new_lm": print_word(entry["new_lm"]),
        })
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for r in payload["new_rules"]:
            tag = f"  # {r['identified']}" if r["identified"] else ""
            print(r["poly"] + tag)
        print(f"# {'completed' if completed else 'rule budget exhausted'} "
              f"with {len(new_rules)} new rules")
    return 0 if completed else 3


def cmd_basis(args):
    lam = Fraction(args.lam)
    sys_ = _load_system(args.system, lam, args.unital)
    alphabet = _alphabet(args.alphabet)
    order = order_for(alphabet, sys_.unital)
    rs = sys_.rewrite_system(order, step_budget=args.step_budget)
    rep = irr_enumerate(rs, alphabet, args.bound, sys_.unital)
    payload = {
        "system": sys_.name,
        "bound": args.bound,
        "counts": {str(n): c for n, c in rep["counts"].items()},
    }
    if not args.counts_only:
        payload["words"] = {str(n): [print_word(w) for w in g]
                            for n, g in rep["words"].items()}
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for n in sorted(rep["counts"]):
            print(f"weight {n}: {rep['counts'][n]}")
            if not args.counts_only:
                for w in rep["words"][n]:
                    print(f"  {print_word(w)}")
    return 0


def cmd_algebra_check(args):
    with open(args.presentation, encoding="utf-8") as fh:
        pres = parse_presentation(fh.read())
    rep = assoc_gs_check(pres)
    if args.system is None:
        _emit(args, {"ok": rep["ok"], "compositions": rep["compositions"]},
              f"relations: {'pass' if rep['ok'] else 'FAIL'} "
              f"({rep['compositions']} compositions)")
        return 0 if rep["ok"] else 2
    lam = Fraction(args.lam)
    sys_ = _load_system(args.system, lam, pres.unital)
    arg_words = words_upto(pres.alphabet, args.bound, pres.unital)
    mrep = mixed_gs_check(pres, sys_, arg_words, step_budget=args.step_budget)
    _emit(args, {"ok": mrep["ok"], "compositions": mrep["compositions"]},
          f"{sys_.name} over presented algebra: "
          f"{'pass' if mrep['ok'] else 'FAIL'} "
          f"({mrep['compositions']} compositions)")
    return 0 if rep["ok"] and mrep["ok"] else 2


def cmd_verify_paper(args):
    lam = Fraction(args.lam)
    report = verify.assemble_report(
        seed=args.seed, lam=lam, order_bound=args.bound_order,
        gs_bound=args.bound_gs, shape_bound=args.bound_shapes,
        span_bound=args.bound_span, irr_bound=args.bound_irr,
        confluence_single=args.bound_confluence_single,
        confluence_pair=args.bound_confluence_pair,
        neg_bound=args.bound_negative)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for check in report["checks"]:
            print(f"{check['name']}: {'pass' if check['ok'] else 'FAIL'}")
        print(f"overall: {'pass' if report['ok'] else 'FAIL'}")
    return 0 if report["ok"] else 2


def build_parser():
    p = argparse.ArgumentParser(prog="opal",
                                description="rule systems for words with two "
                                            "unary operators D and P")
    sub = p.add_subparsers(dest="cmd")

    def common(sp, system=True, bound=None):
        sp.add_argument("--lambda", dest="lam", default="1",
                        help="weight as an exact rational, e.g. 1 or 1/2")
        sp.add_argument("--unital", action="store_true")
        sp.add_argument("--alphabet", default="x,y")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--step-budget", type=int, default=10**7)
        if system:
            sp.add_argument("--system", required=True,
                            help="a named system (%s) or a catalog file"
                                 % ", ".join(sorted(CATALOGS)))
        if bound is not None:
            sp.add_argument("--bound", type=int, default=bound)

    sp = sub.add_parser("parse", help="parse and reprint a polynomial")
    sp.add_argument("--unital", action="store_true")
    sp.add_argument("term")
    sp.set_defaults(fn=cmd_parse)

    sp = sub.add_parser("order", help="order utilities")
    osub = sp.add_subparsers(dest="order_cmd")
    oc = osub.add_parser("compare", help="compare two words")
    oc.add_argument("--order", choices=("pd", "upd", "dlex"), default="pd")
    oc.add_argument("--alphabet", default="x,y")
    oc.add_argument("term1")
    oc.add_argument("term2")
    oc.set_defaults(fn=cmd_order_compare)

    sp = sub.add_parser("nf", help="normal form of a polynomial")
    common(sp)
    sp.add_argument("poly")
    sp.set_defaults(fn=cmd_nf)

    sp = sub.add_parser("gs-check", help="bounded composition check")
    common(sp, bound=2)
    sp.set_defaults(fn=cmd_gs_check)

    sp = sub.add_parser("complete", help="bounded completion")
    common(sp, bound=2)
    sp.add_argument("--max-rules", type=int, default=600)
    sp.set_defaults(fn=cmd_complete)

    sp = sub.add_parser("basis", help="irreducible words up to a weight")
    common(sp, bound=3)
    sp.add_argument("--counts-only", action="store_true")
    sp.set_defaults(fn=cmd_basis)

    sp = sub.add_parser("algebra", help="presented base algebras")
    asub = sp.add_subparsers(dest="algebra_cmd")
    ac = asub.add_parser("check", help="check relations, optionally with a system")
    ac.add_argument("--presentation", required=True)
    ac.add_argument("--system", default=None)
    ac.add_argument("--lambda", dest="lam", default="1")
    ac.add_argument("--bound", type=int, default=2)
    ac.add_argument("--json", action="store_true")
    ac.add_argument("--step-budget", type=int, default=10**7)
    ac.set_defaults(fn=cmd_algebra_check)

    sp = sub.add_parser("verify-paper",
                        help="run the built-in verification suite")
    sp.add_argument("--lambda", dest="lam", default="1")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--bound-order", type=int, default=3)
    sp.add_argument("--bound-gs", type=int, default=1)
    sp.add_argument("--bound-shapes", type=int, default=2)
    sp.add_argument("--bound-span", type=int, default=3)
    sp.add_argument("--bound-irr", type=int, default=4)
    sp.add_argument("--bound-confluence-single", type=int, default=3)
    sp.add_argument("--bound-confluence-pair", type=int, default=2)
    sp.add_argument("--bound-negative", type=int, default=2)
    sp.set_defaults(fn=cmd_verify_paper)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "fn"):
        parser.print_help()
        return 1
    try:
        return args.fn(args)
    except SyntaxError_ as e:
        print(f"syntax error: {e}", file=sys.stderr)
        return 1
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
