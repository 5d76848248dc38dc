"""Named rule systems for differential Rota-Baxter and integro-differential
operators, plus user-defined systems from catalog files.

Each identity is stored as a template polynomial over metavariables
$1, $2, ... together with its declared leading-shape template.  The
weight lambda is an exact rational fixed when a system is built; the
token L in a template stands for lambda and L^-1 for its inverse.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .grammar import parse_template, parse_word
from .orders import WordOrder, order_for
from .rewrite import (Rule, RewriteSystem, leading, match_template,
                      substitute_metavars, template_metavars)
from .words import is_bracket, is_gen

D1 = ("D", ())

# name -> (polynomial template, leading shape, needs invertible lambda)
TEMPLATES = {
    "phi1": ("P($1)*P($2) - P($1*P($2)) - P(P($1)*$2) - L*P($1*$2)",
             "P($1)*P($2)", False),
    "phi2": ("D($1)*D($2) + L^-1*D($1)*$2 + L^-1*$1*D($2) - L^-1*D($1*$2)",
             "D($1)*D($2)", True),
    "phi3": ("D(P($1)) - $1", "D(P($1))", False),
    "phi4": ("P($1)*D($2) - D(P($1)*$2) + $1*$2 + L*$1*D($2)",
             "P($1)*D($2)", False),
    "phi5": ("D($1)*P($2) - D($1*P($2)) + $1*$2 + L*D($1)*$2",
             "D($1)*P($2)", False),
    "phi6": ("P(D($1)*P($2)) - $1*P($2) + P($1*$2) + L*P(D($1)*$2)",
             "P(D($1)*P($2))", False),
    "phi7": ("P(P($1)*D($2)) - P($1)*$2 + P($1*$2) + L*P($1*D($2))",
             "P(P($1)*D($2))", False),
    "phi8": ("P(D(P($1)*$2)) - P($1)*$2", "P(D(P($1)*$2))", False),
    "phi9": ("P(D($1*P($2))) - $1*P($2)", "P(D($1*P($2)))", False),
    "phi10": ("P(D($1)) - $1", "P(D($1))", False),
    "phi2_0": ("D($1)*$2 + $1*D($2) - D($1*$2)", "D($1)*$2", False),
}

# names that are another template evaluated at lambda = 0
ZERO_WEIGHT_ALIASES = {
    "phi1_0": "phi1",
    "phi3_0": "phi3",
    "phi4_0": "phi4",
    "phi6_0": "phi6",
    "phi7_0": "phi7",
    "phi8_0": "phi8",
    "phi9_0": "phi9",
}

# catalog -> (identity names, unital, extra ground rules, lambda handling)
# lambda handling: "free" (use the configured value, must be nonzero when
# an identity carries L^-1), or "zero" (identities are weight-0 forms)
CATALOGS = {
    "rb": (("phi1",), False, (), "free"),
    "diff": (("phi2",), False, (), "free"),
    "diff0": (("phi2_0",), False, (), "zero"),
    "DRB": (("phi1", "phi2", "phi3", "phi4", "phi5"), False, (), "free"),
    "DRB0": (("phi1_0", "phi2_0", "phi3_0", "phi4_0"), False, (), "zero"),
    "uDRB": (("phi1", "phi2", "phi3", "phi4", "phi5"), True, ("D(1)",), "free"),
    "uDRB0": (("phi1_0", "phi2_0", "phi3_0", "phi4_0"), True, (), "zero"),
    "ID": (("phi1", "phi2", "phi3", "phi4", "phi5", "phi8", "phi9"),
           False, (), "free"),
    "ID0": (("phi1_0", "phi2_0", "phi3_0", "phi4_0", "phi8_0", "phi9_0"),
            False, (), "zero"),
    "uID": (("phi1", "phi2", "phi3", "phi4", "phi5", "phi8", "phi9"),
            True, ("D(1)",), "free"),
    "uID0": (("phi1_0", "phi2_0", "phi3_0", "phi4_0", "phi8_0", "phi9_0"),
             True, (), "zero"),
    "DRB'": (("phi1", "phi2", "phi3"), False, (), "free"),
    "ID'": (("phi2", "phi3", "phi6", "phi7"), False, (), "free"),
    "ID0'": (("phi2_0", "phi3_0", "phi6_0", "phi7_0"), False, (), "zero"),
    "IID": (("phi1", "phi2", "phi3", "phi10"), False, (), "free"),
    "IID-GS": (("phi1", "phi2", "phi3", "phi10", "phi4", "phi5"),
               False, (), "free"),
}

CATALOG_ALIASES = {
    "DRBprime": "DRB'",
    "IDprime": "ID'",
    "ID0prime": "ID0'",
}


def _eval_coeff(c, lam):
    if isinstance(c, tuple):
        exp = c[1]
        scalar = c[2] if len(c) == 3 else Fraction(1)
        if exp < 0:
            if lam == 0:
                raise ValueError("lambda = 0 is not allowed: the system needs 1/lambda")
            return scalar / lam
        return scalar * lam
    return c


def build_opi(name, lam):
    """A shape rule for the named identity at the given weight."""
    base = ZERO_WEIGHT_ALIASES.get(name)
    if base is not None:
        body, shape, needs_inv = TEMPLATES[base]
        lam = Fraction(0)
    elif name in TEMPLATES:
        body, shape, needs_inv = TEMPLATES[name]
        if needs_inv and lam == 0:
            raise ValueError(f"{name} needs lambda != 0")
    else:
        raise ValueError(f"unknown identity {name!r}")
    raw = parse_template(body)
    terms = {}
    for w, c in raw:
        v = _eval_coeff(c, lam)
        acc = terms.get(w, Fraction(0)) + v
        if acc:
            terms[w] = acc
        else:
            terms.pop(w, None)
    lm = parse_word(shape, unital=True, template=True)
    if lm not in terms or terms[lm] != 1:
        raise ValueError(f"{name}: declared shape is not the monic leading term")
    ordered = [(lm, terms[lm])] + sorted(
        ((w, c) for w, c in terms.items() if w != lm), key=lambda wc: str(wc[0]))
    return Rule(lm, ordered, name)


class OPISystem:
    """A named set of identities with weight, mode and extra ground rules."""

    def __init__(self, name, opis, lam, unital, extra_rules):
        self.name = name
        self.opis = list(opis)
        self.lam = Fraction(lam)
        self.unital = unital
        self.extra_rules = list(extra_rules)  # ground words rewritten to 0
        self.drop_d1 = any(w == (D1,) for w in self.extra_rules)

    def all_rules(self):
        out = list(self.opis)
        for w in self.extra_rules:
            out.append(Rule(w, ((w, Fraction(1)),), "extra"))
        return out

    def rewrite_system(self, order, step_budget=10**6):
        return RewriteSystem(self.all_rules(), order, unital=self.unital,
                             drop_d1=self.drop_d1, step_budget=step_budget)


def catalog(name, lam=Fraction(1)):
    """Build a named system at the given weight."""
    name = CATALOG_ALIASES.get(name, name)
    if name not in CATALOGS:
        raise ValueError(f"unknown system {name!r}")
    ids, unital, extras, lam_mode = CATALOGS[name]
    lam = Fraction(lam)
    if lam_mode == "zero":
        lam = Fraction(0)
    opis = [build_opi(n, lam) for n in ids]
    extra_words = [parse_word(e, unital=True) for e in extras]
    return OPISystem(name, opis, lam, unital, extra_words)


def instantiate(rule, args, unital=False, drop_d1=False):
    """The identity's polynomial at concrete argument words."""
    if len(args) != len(rule.metavars):
        raise ValueError(
            f"{rule.origin} takes {len(rule.metavars)} arguments, got {len(args)}")
    for a in args:
        if not a and not unital:
            raise ValueError("empty argument word in nonunital mode")
    binding = dict(zip(rule.metavars, args))
    return rule.instantiate(binding, drop_d1)


def shape_instance(rule, args):
    binding = dict(zip(rule.metavars, args))
    return substitute_metavars(rule.lm, binding)


def verify_leading_shape(rule, order, arg_tuples, unital=False):
    """Check that each instantiation either vanishes, keeps the declared
    leading shape, or is a recognized unital degeneration (an argument is
    the empty word).  Returns a report dict."""
    shape_ok = vanished = degenerate = 0
    failures = []
    for args in arg_tuples:
        inst = instantiate(rule, args, unital)
        expected = shape_instance(rule, args)
        if not inst:
            vanished += 1
            continue
        lm, c = leading(inst, order, unital)
        if lm == expected and c == 1:
            shape_ok += 1
        elif unital and any(not a for a in args):
            degenerate += 1
        else:
            failures.append({"args": args, "leading": lm, "expected": expected})
    return {
        "ok": not failures,
        "identity": rule.origin,
        "shape": shape_ok,
        "vanished": vanished,
        "degenerate": degenerate,
        "failures": failures,
    }


def check_shape_hypothesis(rule):
    """Static check used by the over-algebra construction: each
    metavariable occurs exactly once in the leading shape, and no two
    metavariables are adjacent in any letter sequence of it."""

    def count(w, name):
        total = 0
        for letter in w:
            if letter == name:
                total += 1
            elif is_bracket(letter):
                total += count(letter[1], name)
        return total

    for m in rule.metavars:
        if count(rule.lm, m) != 1:
            return False

    def no_adjacent(w):
        for a, b in zip(w, w[1:]):
            if is_gen(a) and a.startswith("$") and is_gen(b) and b.startswith("$"):
                return False
        return all(no_adjacent(l[1]) for l in w if is_bracket(l))

    return no_adjacent(rule.lm)


def identify_shape(ground_rule, lam, unital=False, order=None, alphabet=None):
    """Name the known identity (if any) whose instantiation at some
    binding equals the given ground rule, up to monic scaling."""
    target = ground_rule.ground_poly()
    names = list(TEMPLATES) + list(ZERO_WEIGHT_ALIASES)
    for name in names:
        try:
            cand = build_opi(name, lam)
        except ValueError:
            continue
        for binding in match_template(cand.lm, ground_rule.lm, unital):
            inst = cand.instantiate(binding)
            if inst == target:
                return name
    return None


def parse_catalog_file(text, lam, unital=False, name="user"):
    """User-defined system: one identity per line in the term grammar
    with metavariables $1..$n and L for the weight; the leading shape is
    declared after '|'.  Lines starting with '#' are comments; a line of
    the form 'extra: <word>' adds a ground rule <word> -> 0."""
    lam = Fraction(lam)
    opis = []
    extras = []
    for i, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("extra:"):
            extras.append(parse_word(line[len("extra:"):].strip(), unital=True))
            continue
        if "|" not in line:
            raise ValueError(f"line {i}: missing '|' before the leading shape")
        body, shape = line.rsplit("|", 1)
        raw = parse_template(body.strip())
        terms = {}
        for w, c in raw:
            v = _eval_coeff(c, lam)
            acc = terms.get(w, Fraction(0)) + v
            if acc:
                terms[w] = acc
            else:
                terms.pop(w, None)
        lm = parse_word(shape.strip(), unital=True, template=True)
        if lm not in terms or terms[lm] != 1:
            raise ValueError(f"line {i}: declared shape is not the monic leading term")
        ordered = [(lm, terms[lm])] + sorted(
            ((w, c) for w, c in terms.items() if w != lm), key=lambda wc: str(wc[0]))
        opis.append(Rule(lm, ordered, f"{name}:{i}"))
    return OPISystem(name, opis, lam, unital, extras)
