"""Presented algebras: the quantum group of 3x3 unitary type ("suq3"), the
odd quantum 5-sphere ("s5q"), their star structures, the enveloping-algebra
bimodule actions, membership predicates, filtered operator matrices and the
matrix-coefficient (Peter-Weyl) elements.

Home of all actions is the suq3 presentation; s5q is the cheaper presentation
for products and normal forms, bridged by ``embed_s5``.  The s5q generator
action tables that stay inside the sphere algebra are certified against the
suq3 route by the test suite.

Conventions:
  suq3 generators u^i_j (row i, column j), ids 3(i-1)+(j-1), precedence
  ascending in (row, col), letter weight i*j; the cubic determinant rule
  rewrites the identity-permutation word.
  s5q generators z1 z2 z3 z3* z2* z1*, degree-lex; normal monomials are
  z1^a z2^b z3^c z3*^f z2*^e z1*^d with min(c, f) = 0.
"""

from __future__ import annotations

from functools import lru_cache

from .exactla import SparseMatrix
from .ncpoly import (EMPTY, MonomialOrder, NCPoly, RewriteRule, RewriteSystem,
                     complete, format_poly, graded_basis)
from .qcoeff import LaurentV, Radical, RatV, sqrt_factored
from .uqsu3 import UqElement, rep_basis, rep_matrix_of_element, theta

_RADONE = LaurentV.one()

COMPLETION_DEGREE = 6


def _rv_q(e4):
    return RatV.v_pow(e4)


def _one():
    return RatV.one()


# ---------------------------------------------------------------------------
# presentations


class Presentation:
    """A presented *-algebra: completed rewrite system plus star table."""

    def __init__(self, name, system, star_table):
        self.name = name
        self.system = system
        self.star_table = star_table
        self._embed_cache = {}
        self._pw_cache = {}

    def gen(self, name):
        return self.system.gen(name)

    def format(self, poly):
        return format_poly(poly, self.system)


def _su_id(i, j):
    return 3 * (i - 1) + (j - 1)


_SU_NAMES = tuple("u%d%d" % (i, j) for i in (1, 2, 3) for j in (1, 2, 3))
_SU_ROW = tuple(1 + g // 3 for g in range(9))
_SU_COL = tuple(1 + g % 3 for g in range(9))

_S5_NAMES = ("z1", "z2", "z3", "z3*", "z2*", "z1*")
# z index 1..3 and star flag per s5q generator id
_S5_Z = (1, 2, 3, 3, 2, 1)
_S5_STAR = (False, False, False, True, True, True)


def _suq3_raw_rules(order):
    rules = []
    one = _one()
    qinv = _rv_q(-4)
    qdiff = _rv_q(4) - _rv_q(-4)        # q - q^-1

    def W(*pairs):
        return tuple(_su_id(i, j) for i, j in pairs)

    for k in (1, 2, 3):
        for i in (1, 2, 3):
            for j in (i + 1, i + 2):
                if j > 3:
                    continue
                # same column: u^j_k u^i_k -> q^-1 u^i_k u^j_k
                rules.append(RewriteRule(W((j, k), (i, k)),
                                         NCPoly.word(W((i, k), (j, k)), qinv), order))
                # same row: u^k_j u^k_i -> q^-1 u^k_i u^k_j
                rules.append(RewriteRule(W((k, j), (k, i)),
                                         NCPoly.word(W((k, i), (k, j)), qinv), order))
    for i in (1, 2, 3):
        for j in range(i + 1, 4):
            for k in (1, 2, 3):
                for l in range(k + 1, 4):
                    # antidiagonal pair commutes: u^j_k u^i_l -> u^i_l u^j_k
                    rules.append(RewriteRule(W((j, k), (i, l)),
                                             NCPoly.word(W((i, l), (j, k)), one), order))
                    # diagonal pair: u^j_l u^i_k -> u^i_k u^j_l - (q-q^-1) u^i_l u^j_k
                    rhs = (NCPoly.word(W((i, k), (j, l)), one)
                           + NCPoly.word(W((i, l), (j, k)), -qdiff))
                    rules.append(RewriteRule(W((j, l), (i, k)), rhs, order))
    # cubic determinant: the identity-permutation word rewrites
    perms = [((1, 2, 3), 0), ((2, 1, 3), 1), ((1, 3, 2), 1),
             ((2, 3, 1), 2), ((3, 1, 2), 2), ((3, 2, 1), 3)]
    rhs = NCPoly.unit(one)
    for sigma, ell in perms:
        if sigma == (1, 2, 3):
            continue
        c = _rv_q(4 * ell).scale((-1) ** (ell + 1))   # -(-q)^ell
        rhs = rhs + NCPoly.word(W((1, sigma[0]), (2, sigma[1]), (3, sigma[2])), c)
    rules.append(RewriteRule(W((1, 1), (2, 2), (3, 3)), rhs, order))
    return rules


def _suq3_star_table():
    """(u^i_j)* = (-q)^(j-i) (u^k1_l1 u^k2_l2 - q u^k1_l2 u^k2_l1)."""
    table = {}
    for i in (1, 2, 3):
        k1, k2 = [r for r in (1, 2, 3) if r != i]
        for j in (1, 2, 3):
            l1, l2 = [c for c in (1, 2, 3) if c != j]
            sign = _rv_q(4 * (j - i)).scale((-1) ** ((j - i) % 2))
            poly = (NCPoly.word((_su_id(k1, l1), _su_id(k2, l2)), sign)
                    + NCPoly.word((_su_id(k1, l2), _su_id(k2, l1)),
                                  sign * _rv_q(4).scale(-1)))
            table[_su_id(i, j)] = poly
    return table


def _s5q_raw_rules(order):
    rules = []
    g = {n: i for i, n in enumerate(_S5_NAMES)}
    q = _rv_q(4)
    qinv = _rv_q(-4)
    one = _one()

    def rule(lhs, terms):
        rhs = NCPoly()
        for words, coeff in terms:
            rhs = rhs + NCPoly.word(tuple(g[n] for n in words), coeff)
        rules.append(RewriteRule(tuple(g[n] for n in lhs), rhs, order))

    zs = ("z1", "z2", "z3")
    for a in range(3):
        for b in range(a + 1, 3):
            # z_b z_a -> q^-1 z_a z_b  (a < b)
            rule((zs[b], zs[a]), [((zs[a], zs[b]), qinv)])
            # z_a* z_b* -> q^-1 z_b* z_a*
            rule((zs[a] + "*", zs[b] + "*"), [((zs[b] + "*", zs[a] + "*"), qinv)])
    for a in range(3):
        for b in range(3):
            if a != b:
                # z_a* z_b -> q z_b z_a*
                rule((zs[a] + "*", zs[b]), [((zs[b], zs[a] + "*"), q)])
    cq = one - _rv_q(8)                  # 1 - q^2
    rule(("z1*", "z1"), [(("z1", "z1*"), one)])
    rule(("z2*", "z2"), [(("z2", "z2*"), one), (("z1", "z1*"), cq)])
    # z3* z3 -> 1 - q^2 z1 z1* - q^2 z2 z2*   (sphere-reduced form)
    rule(("z3*", "z3"), [((), one),
                         (("z1", "z1*"), -_rv_q(8)),
                         (("z2", "z2*"), -_rv_q(8))])
    rule(("z3", "z3*"), [((), one),
                         (("z1", "z1*"), -one),
                         (("z2", "z2*"), -one)])
    return rules


@lru_cache(maxsize=None)
def suq3():
    order = MonomialOrder([_SU_ROW[g] * _SU_COL[g] for g in range(9)])
    raw = RewriteSystem("suq3", _SU_NAMES, order, _suq3_raw_rules(order))
    done = complete(raw, COMPLETION_DEGREE)
    return Presentation("suq3", done, _suq3_star_table())


@lru_cache(maxsize=None)
def s5q():
    order = MonomialOrder([1] * 6)
    raw = RewriteSystem("s5q", _S5_NAMES, order, _s5q_raw_rules(order))
    done = complete(raw, COMPLETION_DEGREE)
    star = {i: NCPoly.word((5 - i,)) for i in range(6)}
    return Presentation("s5q", done, star)


def presentation(name):
    if name == "suq3":
        return suq3()
    if name == "s5q":
        return s5q()
    raise ValueError("unknown presentation %r" % name)


# ---------------------------------------------------------------------------
# algebra elements with radical-class coefficients


class AlgebraElement:
    """Reduced element of a presented algebra.

    Stored as a map  canonical radicand -> NCPoly , i.e. the element is
    sum_r sqrt(r) * p_r with rational-function polynomials p_r.  Rewrite
    rules never carry radicals, so reduction acts classwise.
    """

    __slots__ = ("pres", "parts")

    def __init__(self, pres, parts=None, _reduced=False):
        self.pres = pres
        self.parts = {}
        if parts:
            for key, poly in parts.items():
                if not _reduced:
                    poly = pres.system.normal_form(poly)
                if not poly.is_zero():
                    self.parts[key] = poly

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(pres):
        return AlgebraElement(pres, {}, _reduced=True)

    @staticmethod
    def one(pres):
        return AlgebraElement(pres, {_RADONE: NCPoly.unit()}, _reduced=True)

    @staticmethod
    def from_poly(pres, poly, reduced=False):
        return AlgebraElement(pres, {_RADONE: poly}, _reduced=reduced)

    @staticmethod
    def from_word(pres, names, coeff=None):
        w = pres.system.word_of_names(names)
        return AlgebraElement(pres, {_RADONE: NCPoly.word(w, coeff)})

    @staticmethod
    def generator(pres, name):
        return AlgebraElement.from_word(pres, (name,))

    # -- structure ----------------------------------------------------------
    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.pres is other.pres
                and self.parts == other.parts)

    def rational_poly(self):
        """The NCPoly when no genuine radical class is present."""
        if not self.parts:
            return NCPoly.zero()
        if set(self.parts) != {_RADONE}:
            raise ValueError("element carries irrational radical coefficients")
        return self.parts[_RADONE]

    def max_degree(self):
        return max((p.max_degree() for p in self.parts.values()), default=0)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        parts = dict(self.parts)
        for key, poly in other.parts.items():
            cur = parts.get(key)
            cur = poly if cur is None else cur + poly
            if cur.is_zero():
                parts.pop(key, None)
            else:
                parts[key] = cur
        return AlgebraElement(self.pres, parts, _reduced=True)

    def __neg__(self):
        return AlgebraElement(self.pres, {k: -p for k, p in self.parts.items()},
                              _reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        sysm = self.pres.system
        out = {}
        for k1, p1 in self.parts.items():
            for k2, p2 in other.parts.items():
                if k1 == _RADONE:
                    key, extra = k2, None
                elif k2 == _RADONE:
                    key, extra = k1, None
                else:
                    merged = Radical({k1: RatV.one()}) * Radical({k2: RatV.one()})
                    (key, mult), = merged.parts.items()
                    extra = mult
                poly = sysm.normal_form(p1.concat(p2))
                if extra is not None:
                    poly = poly.scale(extra)
                cur = out.get(key)
                cur = poly if cur is None else cur + poly
                if cur.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = cur
        return AlgebraElement(self.pres, out, _reduced=True)

    def scale(self, coeff):
        """Scale by RatV or Radical."""
        if isinstance(coeff, RatV):
            coeff = Radical.from_ratv(coeff)
        out = {}
        for k1, p1 in self.parts.items():
            for k2, mult in coeff.parts.items():
                if k1 == _RADONE:
                    key, extra = k2, mult
                elif k2 == _RADONE:
                    key, extra = k1, mult
                else:
                    merged = Radical({k1: RatV.one()}) * Radical({k2: mult})
                    (key, extra), = merged.parts.items()
                poly = p1.scale(extra)
                cur = out.get(key)
                cur = poly if cur is None else cur + poly
                if cur.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = cur
        return AlgebraElement(self.pres, out, _reduced=True)

    def star(self):
        sysm = self.pres.system
        table = self.pres.star_table
        out = {}
        for key, poly in self.parts.items():
            out[key] = sysm.star(poly, table)   # coefficients are real
        return AlgebraElement(self.pres, out, _reduced=True)

    def _check(self, other):
        if self.pres is not other.pres:
            raise ValueError("presentation mismatch: %s vs %s"
                             % (self.pres.name, other.pres.name))

    def __repr__(self):
        bits = []
        for key, poly in sorted(self.parts.items(),
                                key=lambda kp: tuple(sorted(kp[0].c.items()))):
            txt = self.pres.format(poly)
            if key == _RADONE:
                bits.append(txt)
            else:
                bits.append("sqrt{%r}*(%s)" % (sorted(key.c.items()), txt))
        return "<%s: %s>" % (self.pres.name, " + ".join(bits) or "0")


def star_u(i, j):
    """The quantum-minor expansion of (u^i_j)*, reduced."""
    pres = suq3()
    return AlgebraElement(pres, {_RADONE: pres.star_table[_su_id(i, j)]})


@lru_cache(maxsize=None)
def _embed_table():
    """s5q generator id -> reduced suq3 NCPoly."""
    pres = suq3()
    table = {}
    for g in range(6):
        zi = _S5_Z[g]
        if _S5_STAR[g]:
            table[g] = pres.system.normal_form(pres.star_table[_su_id(3, zi)])
        else:
            table[g] = NCPoly.word((_su_id(3, zi),))
    return table


def embed_s5(elem):
    """Algebra embedding of the sphere into the quantum group: z_j -> u^3_j."""
    if elem.pres.name == "suq3":
        return elem
    target = suq3()
    table = _embed_table()
    cache = elem.pres._embed_cache
    out = {}
    for key, poly in elem.parts.items():
        acc = NCPoly()
        for w, c in poly.t.items():
            img = cache.get(w)
            if img is None:
                img = NCPoly.unit()
                for g in w:
                    img = target.system.normal_form(img.concat(table[g]))
                cache[w] = img
            acc = acc + img.scale(c)
        if not acc.is_zero():
            out[key] = acc
    return AlgebraElement(target, out, _reduced=True)


# ---------------------------------------------------------------------------
# bimodule actions of the enveloping algebra

# per-letter right/left K weights in quarter powers of q (v exponents)
_R_K1 = tuple(2 * ((1 if _SU_ROW[g] == 2 else 0) - (1 if _SU_ROW[g] == 1 else 0))
              for g in range(9))
_R_K2 = tuple(2 * ((1 if _SU_ROW[g] == 3 else 0) - (1 if _SU_ROW[g] == 2 else 0))
              for g in range(9))
_L_K1 = tuple(2 * ((1 if _SU_COL[g] == 2 else 0) - (1 if _SU_COL[g] == 1 else 0))
              for g in range(9))
_L_K2 = tuple(2 * ((1 if _SU_COL[g] == 3 else 0) - (1 if _SU_COL[g] == 2 else 0))
              for g in range(9))

# s5q letters: right weights (E1/F1/E2-on-star/F2-on-plain act as zero there)
_S5_R_K1 = (0, 0, 0, 0, 0, 0)
_S5_R_K2 = tuple(-2 if _S5_STAR[g] else 2 for g in range(6))
_S5_L_K1 = tuple((-1 if _S5_STAR[g] else 1)
                 * (2 * ((1 if _S5_Z[g] == 2 else 0) - (1 if _S5_Z[g] == 1 else 0)))
                 for g in range(6))
_S5_L_K2 = tuple((-1 if _S5_STAR[g] else 1)
                 * (2 * ((1 if _S5_Z[g] == 3 else 0) - (1 if _S5_Z[g] == 2 else 0)))
                 for g in range(6))


def _letter_right_image(g, hname):
    """suq3 letter image under a right E/F generator; [] when killed."""
    row, col = _SU_ROW[g], _SU_COL[g]
    if hname == "E1" and row == 2:
        return [(_su_id(1, col), _one())]
    if hname == "E2" and row == 3:
        return [(_su_id(2, col), _one())]
    if hname == "F1" and row == 1:
        return [(_su_id(2, col), _one())]
    if hname == "F2" and row == 2:
        return [(_su_id(3, col), _one())]
    return []


def _letter_left_image(g, hname):
    """suq3 letter image under a left E/F generator."""
    row, col = _SU_ROW[g], _SU_COL[g]
    if hname == "E1" and col == 1:
        return [(_su_id(row, 2), _one())]
    if hname == "E2" and col == 2:
        return [(_su_id(row, 3), _one())]
    if hname == "F1" and col == 2:
        return [(_su_id(row, 1), _one())]
    if hname == "F2" and col == 3:
        return [(_su_id(row, 2), _one())]
    return []


# derived sphere-internal letter tables (certified against suq3 in tests)
_S5_LEFT = {
    "E1": {0: [(1, _one())], 4: [(5, _rv_q(4).scale(-1))]},
    "F1": {1: [(0, _one())], 5: [(4, _rv_q(-4).scale(-1))]},
    "E2": {1: [(2, _one())], 3: [(4, _rv_q(4).scale(-1))]},
    "F2": {2: [(1, _one())], 4: [(3, _rv_q(-4).scale(-1))]},
}
_S5_RIGHT_INTERNAL = ("K1", "K1i", "K2", "K2i", "E1", "F1")


def _act_word_leibniz(system, word, coeff, hname, kplus, kminus, letter_image):
    """One E/F generator through a word: prefix K^-1 weights, suffix K weights."""
    out = NCPoly()
    n = len(word)
    pre = 0
    suffix = [0] * (n + 1)
    for p in range(n - 1, -1, -1):
        suffix[p] = suffix[p + 1] + kplus[word[p]]
    for p in range(n):
        g = word[p]
        for g2, c in letter_image(g, hname):
            e = pre + suffix[p + 1]
            out = out + NCPoly.word(word[:p] + (g2,) + word[p + 1:],
                                    coeff * c * _rv_q(e))
        pre += kminus[g]
    return out


def _act_generator_poly(pres, poly, hname, side):
    """Image of a reduced NCPoly under one enveloping generator; reduced."""
    sysm = pres.system
    if pres.name == "suq3":
        k1, k2 = (_R_K1, _R_K2) if side == "right" else (_L_K1, _L_K2)
        letter_image = _letter_right_image if side == "right" else _letter_left_image
    else:
        k1, k2 = (_S5_R_K1, _S5_R_K2) if side == "right" else (_S5_L_K1, _S5_L_K2)
        if side == "right":
            def letter_image(g, h):
                if h in ("E1", "F1"):
                    return []
                raise _EscapeError(h)
        else:
            def letter_image(g, h):
                return _S5_LEFT[h].get(g, [])
    if hname in ("K1", "K1i", "K2", "K2i"):
        table = k1 if hname.startswith("K1") else k2
        sign = -1 if hname.endswith("i") else 1
        out = NCPoly()
        for w, c in poly.t.items():
            e = sign * sum(table[g] for g in w)
            out = out + NCPoly.word(w, c * _rv_q(e))
        return out
    which = k1 if hname in ("E1", "F1") else k2
    raw = NCPoly()
    for w, c in poly.t.items():
        raw = raw + _act_word_leibniz(sysm, w, c, hname, which,
                                      tuple(-x for x in which), letter_image)
    return sysm.normal_form(raw)


class _EscapeError(Exception):
    """An s5q right action left the sphere subalgebra."""


def _apply_word(elem, names, side):
    parts = elem.parts
    pres = elem.pres
    seq = names if side == "right" else tuple(reversed(names))
    for hname in seq:
        new = {}
        for key, poly in parts.items():
            img = _act_generator_poly(pres, poly, hname, side)
            if not img.is_zero():
                new[key] = img
        parts = new
        if not parts:
            break
    return AlgebraElement(pres, parts, _reduced=True)


def act_right(elem, h):
    """Right Hopf action a <| h; s5q inputs are embedded into suq3 if needed.

    ``h`` is a UqElement; words act generator by generator,
    a <| (h1 h2) = (a <| h1) <| h2, and the unit acts by the counit.
    """
    if isinstance(h, str):
        h = UqElement.generator(h)
    if elem.pres.name == "s5q":
        if not all(n in _S5_RIGHT_INTERNAL for w, _ in h.words() for n in w):
            elem = embed_s5(elem)
    out = AlgebraElement.zero(elem.pres)
    for names, coeff in h.words():
        out = out + _apply_word(elem, names, "right").scale(coeff)
    return out


def act_left(h, elem):
    """Left Hopf action h |> a; words act as h1 |> (h2 |> a)."""
    if isinstance(h, str):
        h = UqElement.generator(h)
    out = AlgebraElement.zero(elem.pres)
    for names, coeff in h.words():
        out = out + _apply_word(elem, names, "left").scale(coeff)
    return out


# ---------------------------------------------------------------------------
# weights and membership predicates


def kk2_weight(elem):
    """The K1 K2^2 right-action exponent (in quarter powers of q).

    Returns the common exponent when the element is homogeneous, else None;
    the zero element returns 0.
    """
    if elem.is_zero():
        return 0
    if elem.pres.name == "s5q":
        k1, k2 = _S5_R_K1, _S5_R_K2
    else:
        k1, k2 = _R_K1, _R_K2
    expo = None
    for poly in elem.parts.values():
        for w in poly.t:
            e = sum(k1[g] + 2 * k2[g] for g in w)
            if expo is None:
                expo = e
            elif expo != e:
                return None
    return expo


def is_in_LN(elem, N):
    """Membership in the line-bundle eigenspace: a <| K1 K2^2 = q^N a."""
    if elem.is_zero():
        return True
    if not is_in_S5(elem):
        return False
    return kk2_weight(elem) == 4 * N


def is_in_S5(elem):
    """Invariance under the right su(2) copy: <|E1 = <|F1 = 0, <|K1 = id."""
    if elem.pres.name == "s5q":
        return True
    e1 = act_right(elem, UqElement.generator("E1"))
    f1 = act_right(elem, UqElement.generator("F1"))
    k1 = act_right(elem, UqElement.generator("K1"))
    return e1.is_zero() and f1.is_zero() and k1 == elem


def is_in_CP2(elem, N=0):
    return is_in_LN(elem, N) if N else (is_in_S5(elem) and kk2_weight(elem) == 0)


# ---------------------------------------------------------------------------
# filtered monomial slices and operator matrices


def s5_slice(a, b):
    """Normal sphere monomials of z-bidegree exactly (a, b), as words."""
    pres = s5q()

    def wt(g):
        return (0 if _S5_STAR[g] else 1, 1 if _S5_STAR[g] else 0)

    return graded_basis(pres.system, wt, (a, b), a + b)


def ln_slice_words(N, D):
    """Normal monomials spanning the filtered line-bundle slice.

    All (a, b) with a - b = N and a + b <= D, ordered by (a+b, word).
    """
    out = []
    lo = max(N, 0)
    for a in range(lo, D + 1):
        b = a - N
        if b < 0 or a + b > D:
            continue
        for w in sorted(s5_slice(a, b)):
            out.append(w)
    return out


def ln_slice_elements(N, D):
    pres = s5q()
    return [AlgebraElement.from_poly(pres, NCPoly.word(w), reduced=True)
            for w in ln_slice_words(N, D)]


def dim_VnN(n, N):
    """dim V(n, n+N) for N >= 0 and V(n-N, n) for N < 0."""
    if N >= 0:
        n1, n2 = n, n + N
    else:
        n1, n2 = n - N, n
    return (n1 + 1) * (n2 + 1) * (n1 + n2 + 2) // 2


def operator_matrix(h, domain, side="right", ambient=None):
    """Exact matrix of the action of ``h`` on a filtered monomial basis.

    ``domain`` is a list of AlgebraElements with rational coefficients; the
    images are expanded over suq3 normal words.  When ``ambient`` (a list of
    words) is given, an image word outside it raises with the witness word;
    otherwise the ambient is collected from the images.  Returns
    (SparseMatrix, ambient word list); kernel vectors of the matrix are
    coordinate vectors over ``domain``.
    """
    if isinstance(h, str):
        h = UqElement.generator(h)
    images = []
    for elem in domain:
        img = act_right(elem, h) if side == "right" else act_left(h, elem)
        if img.pres.name == "s5q":
            img = embed_s5(img)
        images.append(img.rational_poly())
    if ambient is None:
        seen = set()
        ambient = []
        for img in images:
            for w in img.t:
                if w not in seen:
                    seen.add(w)
                    ambient.append(w)
        ambient.sort()
    index = {w: i for i, w in enumerate(ambient)}
    m = SparseMatrix(len(ambient), len(domain))
    for j, img in enumerate(images):
        for w, c in img.t.items():
            i = index.get(w)
            if i is None:
                raise ValueError("image escapes the ambient space at word %r" % (w,))
            m.set(i, j, c)
    return m, ambient


# ---------------------------------------------------------------------------
# Peter-Weyl elements


def _fact_indices(n):
    """Factored q-factorial [n]! as (index, +1) pairs."""
    return [(i, 1) for i in range(2, n + 1)]


def _neg(factors):
    return [(i, -m) for i, m in factors]


def _pw_normalizer(n1, n2, j1, j2, mm):
    """The X-operator normalization coefficient, as a canonical Radical."""
    s = j1 + j2
    factors = [(s + 1, 1)] if s + 1 >= 2 else []
    for n in ((s + mm) // 2, n2 - j2, j1, n1 + j2 + 1, n2 + j1 + 1):
        factors += _fact_indices(n)
    for n in ((s - mm) // 2, n1 - j1, j2, n1, n2, n1 + n2 + 1):
        factors += _neg(_fact_indices(n))
    return sqrt_factored(factors)


def _q_commutator_F2F1():
    return (UqElement.from_word(("F2", "F1"))
            - UqElement.from_word(("F1", "F2")).scale(_rv_q(-4)))


def _pw_x_word_part(n1, n2, j1, j2, mm):
    """The rational-coefficient word part of the X operator (normalizer split off)."""
    from .qcoeff import q_binomial, q_factorial

    s = j1 + j2
    C = _q_commutator_F2F1()
    total = UqElement.zero()
    for k in range(0, n1 - j1 + 1):
        coeff = (_rv_q(-4 * k * (s + k + 1))
                 * q_binomial(n1 - j1, k) / q_factorial(s + k + 1))
        r = (s - mm) // 2 + k
        assert r >= 0, "negative F1 exponent in the X operator"
        word = UqElement.unit()
        for _ in range(r):
            word = word * UqElement.generator("F1")
        for _ in range(n1 - j1 - k):
            word = word * C
        for _ in range(j2 + k):
            word = word * UqElement.generator("F2")
        total = total + word.scale(coeff)
    return total


@lru_cache(maxsize=None)
def _pw_seed(n1, n2):
    """{(u^1_1)*}^n1 (u^3_3)^n2, reduced in suq3."""
    pres = suq3()
    out = AlgebraElement.one(pres)
    for _ in range(n1):
        out = out * star_u(1, 1)
    for _ in range(n2):
        out = out * AlgebraElement.generator(pres, "u33")
    return out


def pw_element(n1, n2, lower, upper):
    """The matrix-coefficient basis element t(n1,n2)^upper_lower.

    Labels are (j1, j2, mm) with mm = 2m.  Computed by driving the seed with
    the lowering-word operator on the left and the starred operator on the
    right; the two radical normalizers multiply the result.
    """
    pres = suq3()
    keyt = (n1, n2, tuple(lower), tuple(upper))
    hit = pres._pw_cache.get(keyt)
    if hit is not None:
        return hit
    for lab in (lower, upper):
        if lab not in set(rep_basis(n1, n2)):
            raise ValueError("label %r invalid for V(%d,%d)" % (lab, n1, n2))
    from .uqsu3 import star_uq

    xj = _pw_x_word_part(n1, n2, *lower)
    xl = _pw_x_word_part(n1, n2, *upper)
    out = act_left(xj, _pw_seed(n1, n2))
    out = act_right(out, star_uq(xl))
    norm = _pw_normalizer(n1, n2, *lower) * _pw_normalizer(n1, n2, *upper)
    out = out.scale(norm)
    pres._pw_cache[keyt] = out
    return out


def q_equivariance_check(n1, n2, lower, upper, h):
    """Equivariance of the matrix-coefficient basis under both actions.

    Right action: t <| h expands with the theta(h) matrix column of the upper
    label; left action: h |> t with the h matrix column of the lower label.
    Exact comparison; returns (right_ok, left_ok).
    """
    if isinstance(h, str):
        h = UqElement.generator(h)
    basis = rep_basis(n1, n2)
    t = pw_element(n1, n2, lower, upper)

    got_r = act_right(t, h)
    mat = rep_matrix_of_element(theta(h), n1, n2)
    idx = {lab: i for i, lab in enumerate(basis)}
    want_r = AlgebraElement.zero(suq3())
    for i, c in mat.column(idx[tuple(upper)]).items():
        want_r = want_r + pw_element(n1, n2, lower, basis[i]).scale(c)
    right_ok = got_r == want_r

    got_l = act_left(h, t)
    mat_l = rep_matrix_of_element(h, n1, n2)
    want_l = AlgebraElement.zero(suq3())
    for i, c in mat_l.column(idx[tuple(lower)]).items():
        want_l = want_l + pw_element(n1, n2, basis[i], upper).scale(c)
    left_ok = got_l == want_l
    return right_ok, left_ok
