"""Rules, redex matching and normal forms under a monomial order.

A rule stores its leading monomial as a template word that may contain
metavariable letters "$1", "$2", ...; a template without metavariables
is a ground rule.  Matching a template against a concrete word binds
each metavariable to a subword (nonempty unless the system is unital).
A matched occurrence is only a redex if the fully instantiated rule
polynomial still has the matched word as its leading monomial; this
guards against degenerate unital instances whose leading term collapses.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .words import is_bracket, is_gen, subwords, substitute

D1 = ("D", ())


def is_metavar(letter):
    return is_gen(letter) and letter.startswith("$")


def template_metavars(w, acc=None):
    """Metavariable names occurring in a template word, in first-seen order."""
    if acc is None:
        acc = []
    for letter in w:
        if is_metavar(letter):
            if letter not in acc:
                acc.append(letter)
        elif is_bracket(letter):
            template_metavars(letter[1], acc)
    return acc


def substitute_metavars(w, binding):
    """Replace each metavariable letter by the letters of its bound word."""
    out = []
    for letter in w:
        if is_metavar(letter):
            out.extend(binding[letter])
        elif is_bracket(letter):
            out.append((letter[0], substitute_metavars(letter[1], binding)))
        else:
            out.append(letter)
    return tuple(out)


def _match_seq(tmpl, conc, binding, unital, out):
    if not tmpl:
        if not conc:
            out.append(dict(binding))
        return
    head, rest = tmpl[0], tmpl[1:]
    if is_metavar(head):
        bound = binding.get(head)
        if bound is not None:
            if conc[:len(bound)] == bound:
                _match_seq(rest, conc[len(bound):], binding, unital, out)
            return
        lo = 0 if unital else 1
        for take in range(lo, len(conc) + 1):
            binding[head] = conc[:take]
            _match_seq(rest, conc[take:], binding, unital, out)
        binding.pop(head, None)
        return
    if not conc:
        return
    c0 = conc[0]
    if is_bracket(head):
        if is_bracket(c0) and c0[0] == head[0]:
            inner = []
            _match_seq(head[1], c0[1], binding, unital, inner)
            for b in inner:
                _match_seq(rest, conc[1:], b, unital, out)
        return
    if head == c0:
        _match_seq(rest, conc[1:], binding, unital, out)


def match_template(template, word, unital=False):
    """All bindings under which the template instantiates to exactly the
    given word.  Metavariables bind whole subwords, nonempty unless
    unital.  The leading shapes in use never put two metavariables side
    by side in one letter sequence, so in practice a match is unique."""
    out = []
    _match_seq(template, word, {}, unital, out)
    return out


class Rule:
    """A monic rewrite rule lm -> lm - poly.

    ``terms`` is the full polynomial as a tuple of (template word,
    coefficient) pairs with the leading template carrying coefficient 1;
    ``lm`` is that leading template.
    """

    __slots__ = ("lm", "terms", "origin", "metavars", "is_ground", "_gp")

    def __init__(self, lm, terms, origin):
        self.lm = lm
        self.terms = tuple(terms)
        self.origin = origin
        self.metavars = template_metavars(lm)
        self.is_ground = not self.metavars
        self._gp = None

    def instantiate(self, binding, drop_d1=False):
        """The rule polynomial at the given metavariable binding, with
        like terms combined; monomials containing the letter D(1) are
        dropped when the system carries D(1) -> 0 as a rule."""
        out = {}
        for w, c in self.terms:
            v = substitute_metavars(w, binding) if self.metavars else w
            if drop_d1 and _contains_d1(v):
                continue
            acc = out.get(v, Fraction(0)) + c
            if acc:
                out[v] = acc
            else:
                out.pop(v, None)
        return out

    def ground_poly(self):
        if self._gp is None:
            self._gp = P.poly(*self.terms)
        return self._gp

    def __repr__(self):
        return f"Rule({self.origin})"


def _contains_d1(w):
    for letter in w:
        if is_bracket(letter):
            if letter == D1:
                return True
            if _contains_d1(letter[1]):
                return True
    return False


def leading(f, order, unital=False):
    """Leading monomial and coefficient of f.

    Returns ((), coeff) for constants in unital mode; in nonunital mode
    the zero polynomial returns the marker (None, 0).
    """
    if not f:
        return ((), Fraction(0)) if unital else (None, Fraction(0))
    w = order.max_word(f)
    return w, f[w]


def monicize(polys, order, unital=False, origin="relation"):
    """Scale each nonzero polynomial to leading coefficient 1 and wrap it
    as a ground rule; zeros are dropped, nonzero constants rejected."""
    rules = []
    for f in polys:
        if not f:
            continue
        w, c = leading(f, order, unital)
        if w == () or w is None:
            raise ValueError("inconsistent system: nonzero constant polynomial")
        g = P.scale(f, 1 / c)
        terms = sorted(g.items(), key=lambda wc: order.key(wc[0]), reverse=True)
        rules.append(Rule(w, terms, origin))
    return rules


class BudgetExceeded(RuntimeError):
    pass


class RewriteSystem:
    """A set of monic rules plus the order and mode they operate under."""

    def __init__(self, rules, order, unital=False, drop_d1=False, step_budget=10**6):
        self.rules = list(rules)
        self.order = order
        self.unital = unital
        self.drop_d1 = drop_d1
        self.step_budget = step_budget
        self.ground = {}
        self.shapes = []
        for r in self.rules:
            if r.is_ground:
                self.ground[r.lm] = r
            else:
                self.shapes.append(r)
        # cheap prefilter per shape: every leading template here starts
        # with a bracket letter, and a match needs at least this breadth
        self._shape_filters = []
        for r in self.shapes:
            first = r.lm[0]
            op = first[0] if is_bracket(first) else None
            concrete = sum(1 for l in r.lm if not is_metavar(l))
            minlen = concrete if unital else len(r.lm)
            self._shape_filters.append((r, op, minlen))
        self._nf_cache = {}  # word -> (generation, normal form poly)
        self._site_cache = {}
        self._gen = 0
        self.steps = 0

    def clear_caches(self):
        """Forget memoized results; call after mutating the rule set."""
        self._nf_cache.clear()
        self._site_cache.clear()
        self._gen = 0

    def add_ground_rule(self, rule):
        """Adjoin a ground rule without discarding memoized work.  Only
        the match site equal to the new leading monomial changes, so the
        site cache stays valid except there; cached normal forms are
        revalidated lazily against the new generation."""
        self.rules.append(rule)
        self.ground[rule.lm] = rule
        self._site_cache.pop(rule.lm, None)
        self._gen += 1

    def _fresh_nf(self, w):
        """The cached normal form of w if still valid, else None.  A
        stale entry is refreshed when its support is still irreducible,
        dropped otherwise."""
        entry = self._nf_cache.get(w)
        if entry is None:
            return None
        gen, poly = entry
        if gen == self._gen:
            return poly
        for u in poly:
            if self.first_redex(u) is not None:
                del self._nf_cache[w]
                return None
        self._nf_cache[w] = (self._gen, poly)
        return poly

    def _matches_at(self, s):
        """Guarded matches of any rule against the exact word s, as a
        tuple of (rule, instantiated polynomial) pairs, memoized."""
        cached = self._site_cache.get(s)
        if cached is not None:
            return cached
        out = []
        r = self.ground.get(s)
        if r is not None:
            # ground rules are already concrete; the D(1) degeneration
            # only applies while instantiating metavariable shapes
            out.append((r, r.instantiate({})))
        s0 = s[0] if s else None
        for rule, op, minlen in self._shape_filters:
            if len(s) < minlen:
                continue
            if op is not None and (not is_bracket(s0) or s0[0] != op):
                continue
            for binding in match_template(rule.lm, s, self.unital):
                inst = rule.instantiate(binding, self.drop_d1)
                if not inst:
                    continue
                lm = self.order.max_word(inst)
                if lm == s and inst[lm] == 1:
                    out.append((rule, inst))
        out = tuple(out)
        self._site_cache[s] = out
        return out

    def find_redexes(self, w):
        """All (context, rule, instantiated poly) triples with the
        instantiation's leading monomial sitting at the context's hole,
        in outermost-leftmost order."""
        out = []
        for q, s in subwords(w):
            for rule, inst in self._matches_at(s):
                out.append((q, rule, inst))
        return out

    def first_redex(self, w):
        for q, s in subwords(w):
            for rule, inst in self._matches_at(s):
                return q, rule, inst
        return None

    def is_irreducible(self, w):
        return self.first_redex(w) is None

    def nf_word(self, w):
        """Normal form of a single word, memoized per system."""
        cached = self._fresh_nf(w)
        if cached is not None:
            return cached
        stack = [w]
        repls = {}
        while stack:
            top = stack[-1]
            if self._fresh_nf(top) is not None:
                stack.pop()
                continue
            repl = repls.get(top)
            if repl is None:
                red = self.first_redex(top)
                if red is None:
                    self._nf_cache[top] = (self._gen, {top: Fraction(1)})
                    stack.pop()
                    continue
                q, rule, inst = red
                self.steps += 1
                if self.steps > self.step_budget:
                    raise BudgetExceeded("step budget exceeded during normal form")
                # top rewrites to q|_(lm - inst) = top - q|_inst
                repl = P.sub({top: Fraction(1)}, P.substitute_poly(q, inst))
                repls[top] = repl
            pending = [u for u in repl if self._fresh_nf(u) is None]
            if pending:
                stack.extend(pending)
                continue
            out = {}
            for u, c in repl.items():
                for v, c2 in self._nf_cache[u][1].items():
                    acc = out.get(v)
                    acc = c * c2 if acc is None else acc + c * c2
                    if acc:
                        out[v] = acc
                    else:
                        out.pop(v, None)
            self._nf_cache[top] = (self._gen, out)
            del repls[top]
            stack.pop()
        return self._nf_cache[w][1]

    def normal_form(self, f):
        out = {}
        for w, c in f.items():
            for v, c2 in self.nf_word(w).items():
                acc = out.get(v)
                acc = c * c2 if acc is None else acc + c * c2
                if acc:
                    out[v] = acc
                else:
                    out.pop(v, None)
        return out

    def reduce_once(self, f):
        """One deterministic step on the largest reducible monomial of f;
        returns None when f is in normal form.  Not memoized; used for
        step-by-step certificates."""
        for w in sorted(f, key=self.order.key, reverse=True):
            red = self.first_redex(w)
            if red is None:
                continue
            q, rule, inst = red
            c = f[w]
            step = P.scale(P.substitute_poly(q, inst), c)
            return P.sub(f, step), (q, rule, inst, c)
        return None

    def normal_form_steps(self, f, budget=None):
        """Fixpoint of reduce_once with the list of applied steps."""
        budget = budget or self.step_budget
        steps = []
        cur = f
        for _ in range(budget):
            nxt = self.reduce_once(cur)
            if nxt is None:
                return cur, steps
            cur, info = nxt
            steps.append(info)
        raise BudgetExceeded("step budget exceeded during normal form")

    def normal_form_random(self, f, rng, budget=None):
        """Normal form under a randomized redex-choice strategy."""
        budget = budget or self.step_budget
        cur = f
        for _ in range(budget):
            reducible = []
            for w in cur:
                reds = self.find_redexes(w)
                if reds:
                    reducible.append((w, reds))
            if not reducible:
                return cur
            reducible.sort(key=lambda wr: self.order.key(wr[0]))
            w, reds = reducible[rng.randrange(len(reducible))]
            q, rule, inst = reds[rng.randrange(len(reds))]
            cur = P.sub(cur, P.scale(P.substitute_poly(q, inst), cur[w]))
        raise BudgetExceeded("step budget exceeded during randomized normal form")
