"""Free noncommutative polynomials and a bounded-degree rewriting engine.

Words are tuples of generator ids; polynomials are dicts word -> RatV with no
stored zeros.  A RewriteSystem carries an oriented rule list compatible with a
weight-lex monomial order (positive integer letter weights, ties broken by
tuple comparison of the id sequences, ids listed in ascending precedence).
Reduction is exhaustive leftmost-innermost replacement; order compatibility of
every rule makes it terminate.  Completion adds oriented consequences of
unresolved overlap ambiguities up to a degree (word length) bound, in the
style of Knuth-Bendix, and the confluence checker reports any ambiguity whose
two reductions disagree.
"""

from __future__ import annotations

from .qcoeff import LaurentV, RatV, format_ratv

EMPTY = ()


class GeneratorSymbol:
    """Named generator with a sort tag and optional weight metadata."""

    __slots__ = ("name", "sort", "meta")

    def __init__(self, name, sort="", meta=None):
        self.name = name
        self.sort = sort
        self.meta = meta or {}

    def __repr__(self):
        return "GeneratorSymbol(%r)" % self.name


class NCPoly:
    """Finitely supported map from words to RatV coefficients."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.t[w] = c

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def unit(coeff=None):
        return NCPoly({EMPTY: coeff if coeff is not None else RatV.one()})

    @staticmethod
    def word(w, coeff=None):
        return NCPoly({tuple(w): coeff if coeff is not None else RatV.one()})

    def is_zero(self):
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.t == other.t

    def __add__(self, other):
        t = dict(self.t)
        for w, c in other.t.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        r = NCPoly()
        r.t = t
        return r

    def __neg__(self):
        r = NCPoly()
        r.t = {w: -c for w, c in self.t.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        if coeff.is_zero():
            return NCPoly()
        r = NCPoly()
        r.t = {w: c * coeff for w, c in self.t.items()}
        return r

    def concat(self, other):
        """Free product, no reduction."""
        r = NCPoly()
        t = r.t
        for w1, c1 in self.t.items():
            for w2, c2 in other.t.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    t.pop(w, None)
                else:
                    t[w] = s
        return r

    def max_degree(self):
        return max((len(w) for w in self.t), default=0)

    def __repr__(self):
        return "NCPoly(%d terms)" % len(self.t)


class MonomialOrder:
    """Weight-graded order with tuple-lex tie break.

    ``weights[g]`` must be a positive integer for every generator id; ids are
    assumed listed in ascending precedence, so plain tuple comparison of the
    word gives the lexicographic tie break.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        if any(w <= 0 for w in weights):
            raise ValueError("letter weights must be positive")
        self.weights = tuple(weights)

    def weight(self, word):
        w = self.weights
        return sum(w[g] for g in word)

    def key(self, word):
        return (self.weight(word), word)

    def less(self, a, b):
        return self.key(a) < self.key(b)


class RewriteRule:
    """Oriented rule lhs -> rhs with every rhs word strictly below lhs."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs, order):
        lhs = tuple(lhs)
        kl = order.key(lhs)
        for w in rhs.t:
            if not order.key(w) < kl:
                raise ValueError("rule is not order-compatible: %r -> %r" % (lhs, w))
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self):
        return "RewriteRule(%r)" % (self.lhs,)


class RewriteSystem:
    """Generators, a monomial order, and an oriented rule list."""

    def __init__(self, name, gen_names, order, rules=(), completed_degree=0):
        self.name = name
        self.gen_names = list(gen_names)
        self.gen_ids = {n: i for i, n in enumerate(self.gen_names)}
        self.order = order
        self.rules = []
        self.rule_map = {}
        self.rule_lengths = set()
        self._sorted_lengths = []
        self.completed_degree = completed_degree
        self._nf_cache = {}
        for r in rules:
            self.add_rule(r)

    def add_rule(self, rule):
        self.rules.append(rule)
        # first rule for a redex wins during reduction (determinism)
        self.rule_map.setdefault(rule.lhs, rule)
        self.rule_lengths.add(len(rule.lhs))
        self._sorted_lengths = sorted(self.rule_lengths)
        self._nf_cache = {}

    def gen(self, name):
        return self.gen_ids[name]

    def word_of_names(self, names):
        return tuple(self.gen_ids[n] for n in names)

    def names_of_word(self, word):
        return tuple(self.gen_names[g] for g in word)

    # -- reduction ----------------------------------------------------------

    def first_redex(self, word):
        """Leftmost position, shortest redex there; None when irreducible."""
        lengths = self._sorted_lengths
        n = len(word)
        for pos in range(n):
            for L in lengths:
                if pos + L > n:
                    break
                rule = self.rule_map.get(word[pos:pos + L])
                if rule is not None:
                    return pos, rule
        return None

    def is_normal_word(self, word):
        return self.first_redex(word) is None

    def normal_form_word(self, word):
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        acc = {}
        agenda = [(word, RatV.one())]
        while agenda:
            u, c = agenda.pop()
            if u != word:
                got = cache.get(u)
                if got is not None:
                    for w, x in got.items():
                        s = acc.get(w)
                        s = c * x if s is None else s + c * x
                        if s.is_zero():
                            acc.pop(w, None)
                        else:
                            acc[w] = s
                    continue
            hitpos = self.first_redex(u)
            if hitpos is None:
                s = acc.get(u)
                s = c if s is None else s + c
                if s.is_zero():
                    acc.pop(u, None)
                else:
                    acc[u] = s
                continue
            pos, rule = hitpos
            pre, suf = u[:pos], u[pos + len(rule.lhs):]
            for t, ct in rule.rhs.t.items():
                agenda.append((pre + t + suf, c * ct))
        cache[word] = acc
        return acc

    def normal_form(self, poly):
        out = {}
        for w, c in poly.t.items():
            for u, x in self.normal_form_word(w).items():
                s = out.get(u)
                s = c * x if s is None else s + c * x
                if s.is_zero():
                    out.pop(u, None)
                else:
                    out[u] = s
        r = NCPoly()
        r.t = out
        return r

    def multiply(self, p, q):
        return self.normal_form(p.concat(q))

    def star(self, poly, star_table):
        """Anti-multiplicative involution given per-generator star images.

        ``star_table[g]`` is the NCPoly image of generator g.  Coefficients
        are real, so coefficient conjugation is the identity.  The result is
        reduced.
        """
        out = NCPoly()
        for w, c in poly.t.items():
            img = NCPoly.unit(c)
            for g in reversed(w):
                img = img.concat(star_table[g])
            out = out + self.normal_form(img)
        return out

    # -- ambiguities ----------------------------------------------------------

    def _reduce_at(self, word, pos, rule):
        pre, suf = word[:pos], word[pos + len(rule.lhs):]
        out = NCPoly()
        for t, ct in rule.rhs.t.items():
            out = out + NCPoly.word(pre + t + suf, ct)
        return self.normal_form(out)

    def ambiguities(self, degree_bound):
        """All overlap/inclusion ambiguities among redexes up to the bound.

        Yields (word, pos1, rule1, pos2, rule2) where the two rules fire at
        the given positions of the shared word.
        """
        seen = set()
        for r1 in self.rules:
            a = r1.lhs
            for r2 in self.rules:
                b = r2.lhs
                # proper overlap: suffix of a = prefix of b
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        w = a + b[k:]
                        if len(w) <= degree_bound:
                            key = (w, 0, id(r1), len(a) - k, id(r2))
                            if key not in seen:
                                seen.add(key)
                                yield w, 0, r1, len(a) - k, r2
                # inclusion: b inside a (proper, or same redex from two rules)
                if len(b) < len(a) or (len(b) == len(a) and r1 is not r2):
                    for p in range(0, len(a) - len(b) + 1):
                        if a[p:p + len(b)] == b:
                            if len(a) <= degree_bound:
                                key = (a, 0, id(r1), p, id(r2))
                                if key not in seen:
                                    seen.add(key)
                                    yield a, 0, r1, p, r2

    def check_local_confluence(self, degree_bound):
        """Reduce every ambiguity both ways; list the unresolved ones."""
        if degree_bound < max(self.rule_lengths, default=0):
            raise ValueError("degree_bound below maximal rule degree")
        unresolved = []
        total = 0
        for w, p1, r1, p2, r2 in self.ambiguities(degree_bound):
            total = total + 1
            d = self._reduce_at(w, p1, r1) - self._reduce_at(w, p2, r2)
            d = self.normal_form(d)
            if not d.is_zero():
                unresolved.append((w, d))
        return ConfluenceReport(self.name, degree_bound, total, unresolved)

    def serialize(self):
        """Canonical text encoding; reload reproduces identical normal forms."""
        lines = [
            "qcp2-rewrite-cache 1",
            "presentation %s" % self.name,
            "generators %s" % " ".join(self.gen_names),
            "weights %s" % " ".join(str(w) for w in self.order.weights),
            "completed_degree %d" % self.completed_degree,
            "rules %d" % len(self.rules),
        ]
        for rule in sorted(self.rules, key=lambda r: self.order.key(r.lhs)):
            terms = sorted(rule.rhs.t.items(), key=lambda wc: self.order.key(wc[0]))
            body = ";".join(
                "%s|%s" % (",".join(map(str, w)), _coeff_text(c)) for w, c in terms)
            lines.append("%s -> %s" % (",".join(map(str, rule.lhs)), body))
        return "\n".join(lines) + "\n"

    @staticmethod
    def deserialize(text):
        lines = text.strip().split("\n")
        if lines[0] != "qcp2-rewrite-cache 1":
            raise ValueError("unknown cache format: %r" % lines[0])
        name = lines[1].split(" ", 1)[1]
        gen_names = lines[2].split()[1:]
        weights = [int(x) for x in lines[3].split()[1:]]
        completed = int(lines[4].split()[1])
        nrules = int(lines[5].split()[1])
        order = MonomialOrder(weights)
        sys = RewriteSystem(name, gen_names, order, completed_degree=completed)
        for line in lines[6:6 + nrules]:
            lhs_text, body = line.split(" -> ")
            lhs = tuple(int(x) for x in lhs_text.split(",")) if lhs_text else EMPTY
            rhs = NCPoly()
            if body:
                for item in body.split(";"):
                    wtext, ctext = item.split("|")
                    w = tuple(int(x) for x in wtext.split(",")) if wtext else EMPTY
                    rhs = rhs + NCPoly.word(w, _coeff_parse(ctext))
            sys.add_rule(RewriteRule(lhs, rhs, order))
        return sys


class ConfluenceReport:
    def __init__(self, name, degree_bound, ambiguity_count, unresolved):
        self.name = name
        self.degree_bound = degree_bound
        self.ambiguity_count = ambiguity_count
        self.unresolved = unresolved

    @property
    def confluent(self):
        return not self.unresolved

    def __repr__(self):
        return ("ConfluenceReport(%s, degree<=%d: %d ambiguities, %d unresolved)"
                % (self.name, self.degree_bound, self.ambiguity_count,
                   len(self.unresolved)))


def complete(system, degree_bound, max_passes=50):
    """Bounded-degree Knuth-Bendix completion.

    Repeatedly reduces all ambiguities up to ``degree_bound`` and orients any
    nonzero difference into a new rule (leading word rewrites to the rest).
    Idempotent once locally confluent at the bound.  Raises if a consequence
    cannot be oriented, which cannot happen for a total order but guards
    against coefficient bugs.
    """
    sys = RewriteSystem(system.name, system.gen_names, system.order,
                        completed_degree=degree_bound)
    for rule in system.rules:
        sys.add_rule(rule)
    for _ in range(max_passes):
        new_rules = []
        seen_lhs = set(r.lhs for r in sys.rules)
        for w, p1, r1, p2, r2 in sys.ambiguities(degree_bound):
            d = sys.normal_form(sys._reduce_at(w, p1, r1) - sys._reduce_at(w, p2, r2))
            if d.is_zero():
                continue
            lead = max(d.t, key=sys.order.key)
            c = d.t[lead]
            rest = NCPoly({u: x for u, x in d.t.items() if u != lead})
            rhs = rest.scale(-(c.inv()))
            if lead in seen_lhs:
                continue
            seen_lhs.add(lead)
            new_rules.append(RewriteRule(lead, rhs, sys.order))
        if not new_rules:
            break
        for r in new_rules:
            sys.add_rule(r)
    else:
        raise RuntimeError("completion did not stabilize within %d passes" % max_passes)
    return _interreduce(sys, degree_bound)


def _interreduce(sys, degree_bound):
    """Drop rules whose redex is reducible by another rule; renormalize rhs."""
    keep = []
    for rule in sys.rules:
        reducible = False
        for other in sys.rules:
            if other is rule:
                continue
            b = other.lhs
            if len(b) <= len(rule.lhs):
                if any(rule.lhs[p:p + len(b)] == b for p in range(len(rule.lhs) - len(b) + 1)):
                    if b != rule.lhs or sys.rule_map[b] is not rule:
                        reducible = True
                        break
        if not reducible:
            keep.append(rule)
    out = RewriteSystem(sys.name, sys.gen_names, sys.order,
                        completed_degree=degree_bound)
    for rule in keep:
        out.add_rule(rule)
    final = RewriteSystem(sys.name, sys.gen_names, sys.order,
                          completed_degree=degree_bound)
    for rule in keep:
        rhs = out.normal_form(rule.rhs)
        final.add_rule(RewriteRule(rule.lhs, rhs, sys.order))
    return final


def graded_basis(system, weight_fn, target, degree_bound):
    """All normal words whose letter-weight sum equals ``target``.

    ``weight_fn(gen_id)`` returns a tuple of non-negative ints, added
    componentwise; enumeration prunes on any component exceeding the target
    and on words longer than ``degree_bound``.
    """
    ngen = len(system.gen_names)
    target = tuple(target)
    dim = len(target)
    out = []
    lengths = sorted(system.rule_lengths)

    def suffix_ok(word):
        n = len(word)
        for L in lengths:
            if L <= n and word[n - L:] in system.rule_map:
                return False
        return True

    def rec(word, wt):
        if wt == target:
            out.append(word)
        if len(word) >= degree_bound:
            return
        for g in range(ngen):
            gw = weight_fn(g)
            nwt = tuple(a + b for a, b in zip(wt, gw))
            if any(a > t for a, t in zip(nwt, target)):
                continue
            nw = word + (g,)
            if suffix_ok(nw):
                rec(nw, nwt)

    rec(EMPTY, (0,) * dim)
    return out


def _coeff_text(c):
    num = ",".join("%d:%s" % (e, x) for e, x in sorted(c.num.c.items()))
    den = ",".join("%d:%s" % (e, x) for e, x in sorted(c.den.c.items()))
    return "%s/%s" % (num, den)


def _coeff_parse(text):
    from fractions import Fraction

    def side(s):
        if not s:
            return LaurentV.zero()
        return LaurentV({int(e): Fraction(x)
                         for e, x in (item.split(":") for item in s.split(","))})

    ntext, dtext = text.split("/")
    return RatV(side(ntext), side(dtext))


def format_poly(poly, system, order_terms=True):
    """Human-readable rendering with generator names."""
    if poly.is_zero():
        return "0"
    items = list(poly.t.items())
    if order_terms:
        items.sort(key=lambda wc: system.order.key(wc[0]))
    parts = []
    for w, c in items:
        cs = format_ratv(c)
        mono = " ".join(system.gen_names[g] for g in w) if w else "1"
        if cs == "1" and w:
            parts.append(mono)
        elif cs == "-1" and w:
            parts.append("-%s" % mono)
        elif not w:
            parts.append(cs if ("+" not in cs[1:] and "- " not in cs) else "(%s)" % cs)
        else:
            parts.append("%s %s" % (cs if ("+" not in cs[1:] and "- " not in cs) else "(%s)" % cs, mono))
    return " + ".join(parts).replace("+ -", "- ")
