"""The quantized enveloping algebra of su(3) and its irreducible representations.

Generators E1, E2, F1, F2, K1, K2 and the K inverses act on the weight basis
|n1,n2,j1,j2,m> of the irrep V(n1,n2); all matrix entries are exact Radicals.
Only the raising operators and the K eigenvalues come from closed formulas;
F1, F2 are the transposes of E1, E2 in the orthonormal weight basis, and
``verify_relations`` certifies every defining relation on every basis vector.

Half-integers are stored doubled: a label is (j1, j2, mm) with mm = 2m.
"""

from __future__ import annotations

from functools import lru_cache

from .ncpoly import NCPoly
from .qcoeff import Radical, RatV, sqrt_qint_ratio

# generator letters of the enveloping algebra, id order fixed for words
UQ_GENS = ("E1", "E2", "F1", "F2", "K1", "K1i", "K2", "K2i")
_UQ_ID = {n: i for i, n in enumerate(UQ_GENS)}
_K_PAIRS = {("K1", "K1i"), ("K1i", "K1"), ("K2", "K2i"), ("K2i", "K2")}


def dim_rep(n1, n2):
    return (n1 + 1) * (n2 + 1) * (n1 + n2 + 2) // 2


@lru_cache(maxsize=None)
def rep_basis(n1, n2):
    """All labels (j1, j2, mm) of V(n1,n2), ordered lexicographically."""
    if n1 < 0 or n2 < 0:
        raise ValueError("rep labels must be non-negative")
    out = []
    for j1 in range(n1 + 1):
        for j2 in range(n2 + 1):
            s = j1 + j2
            for mm in range(-s, s + 1, 2):
                out.append((j1, j2, mm))
    assert len(out) == dim_rep(n1, n2)
    return tuple(out)


def label_valid(n1, n2, label):
    j1, j2, mm = label
    if not (0 <= j1 <= n1 and 0 <= j2 <= n2):
        return False
    s = j1 + j2
    return abs(mm) <= s and (s - mm) % 2 == 0


def _coeff_A(n1, n2, j1, j2):
    return sqrt_qint_ratio([n1 - j1, n2 + j1 + 2, j1 + 1],
                           [j1 + j2 + 1, j1 + j2 + 2])


def _coeff_B(n1, n2, j1, j2):
    if j1 + j2 == 0:
        return Radical.one()
    return sqrt_qint_ratio([n1 + j2 + 1, n2 - j2 + 1, j2],
                           [j1 + j2, j1 + j2 + 1])


def act_generator(gen, n1, n2, label):
    """Image of a basis label under one generator, as [(label, Radical)].

    Out-of-range targets always come with vanishing coefficients and are
    dropped; a nonzero coefficient on an invalid target raises.
    """
    if not label_valid(n1, n2, label):
        raise ValueError("invalid label %r for V(%d,%d)" % (label, n1, n2))
    j1, j2, mm = label
    s = j1 + j2
    out = []
    if gen == "K1":
        out.append((label, Radical.from_ratv(RatV.v_pow(2 * mm))))
    elif gen == "K1i":
        out.append((label, Radical.from_ratv(RatV.v_pow(-2 * mm))))
    elif gen == "K2":
        e = 3 * (j1 - j2) + 2 * (n2 - n1) - mm
        out.append((label, Radical.from_ratv(RatV.v_pow(e))))
    elif gen == "K2i":
        e = 3 * (j1 - j2) + 2 * (n2 - n1) - mm
        out.append((label, Radical.from_ratv(RatV.v_pow(-e))))
    elif gen == "E1":
        a = (s - mm) // 2
        b = (s + mm) // 2 + 1
        coeff = sqrt_qint_ratio([a, b], [])
        out.append(((j1, j2, mm + 2), coeff))
    elif gen == "E2":
        up = (s - mm) // 2 + 1
        coeff_a = sqrt_qint_ratio([up], []) * _coeff_A(n1, n2, j1, j2)
        out.append(((j1 + 1, j2, mm - 1), coeff_a))
        down = (s + mm) // 2
        coeff_b = sqrt_qint_ratio([down], []) * _coeff_B(n1, n2, j1, j2)
        out.append(((j1, j2 - 1, mm - 1), coeff_b))
    elif gen in ("F1", "F2"):
        # transpose of the raising matrix: collect sources mapping onto label
        egen = "E1" if gen == "F1" else "E2"
        for src in rep_basis(n1, n2):
            for tgt, c in act_generator(egen, n1, n2, src):
                if tgt == label and not c.is_zero():
                    out.append((src, c))
        return out
    else:
        raise ValueError("unknown generator %r" % gen)
    cleaned = []
    for tgt, c in out:
        if c.is_zero():
            continue
        if not label_valid(n1, n2, tgt):
            raise AssertionError(
                "nonzero coefficient on invalid target %r in V(%d,%d)" % (tgt, n1, n2))
        cleaned.append((tgt, c))
    return cleaned


class RepMatrix:
    """Sparse operator on the weight basis of V(n1,n2) with Radical entries."""

    __slots__ = ("n1", "n2", "entries")

    def __init__(self, n1, n2, entries=None):
        self.n1 = n1
        self.n2 = n2
        self.entries = dict(entries or {})

    @staticmethod
    def identity(n1, n2):
        basis = rep_basis(n1, n2)
        one = Radical.one()
        return RepMatrix(n1, n2, {(i, i): one for i in range(len(basis))})

    def __mul__(self, other):
        by_row = {}
        for (i, k), x in self.entries.items():
            by_row.setdefault(k, []).append((i, x))
        out = {}
        for (k, j), y in other.entries.items():
            for i, x in by_row.get(k, ()):
                c = x * y
                cur = out.get((i, j))
                cur = c if cur is None else cur + c
                if cur.is_zero():
                    out.pop((i, j), None)
                else:
                    out[(i, j)] = cur
        return RepMatrix(self.n1, self.n2, out)

    def __add__(self, other):
        out = dict(self.entries)
        for key, x in other.entries.items():
            cur = out.get(key)
            cur = x if cur is None else cur + x
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
        return RepMatrix(self.n1, self.n2, out)

    def __sub__(self, other):
        return self + other.scale_rational(-1)

    def scale(self, coeff):
        return RepMatrix(self.n1, self.n2,
                         {k: x * coeff for k, x in self.entries.items()})

    def scale_rational(self, r):
        return RepMatrix(self.n1, self.n2,
                         {k: x.scale(r) for k, x in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return RepMatrix(self.n1, self.n2,
                         {(j, i): x for (i, j), x in self.entries.items()})

    def __eq__(self, other):
        return (isinstance(other, RepMatrix) and self.n1 == other.n1
                and self.n2 == other.n2 and self.entries == other.entries)

    def column(self, j):
        return {i: x for (i, jj), x in self.entries.items() if jj == j}


@lru_cache(maxsize=None)
def rep_matrix(gen, n1, n2):
    """Exact matrix of one generator on V(n1,n2); cached immutably."""
    basis = rep_basis(n1, n2)
    index = {lab: i for i, lab in enumerate(basis)}
    entries = {}
    for j, lab in enumerate(basis):
        for tgt, c in act_generator(gen, n1, n2, lab):
            entries[(index[tgt], j)] = c
    return RepMatrix(n1, n2, entries)


def rep_matrix_of_word(word, n1, n2):
    """Matrix of a product of generator names, leftmost acting last outward.

    A word (h1, h2, ..., hn) represents the product h1 h2 ... hn, acting on
    vectors as h1(h2(...(hn v))), i.e. the matrix product of the factors.
    """
    m = RepMatrix.identity(n1, n2)
    for gen in word:
        m = m * rep_matrix(gen, n1, n2)
    return m


def rep_matrix_of_element(elem, n1, n2):
    """Matrix of a UqElement (linear combination of words)."""
    out = RepMatrix(n1, n2, {})
    for w, c in elem.poly.t.items():
        names = tuple(UQ_GENS[g] for g in w)
        out = out + rep_matrix_of_word(names, n1, n2).scale(Radical.from_ratv(c))
    return out


# ---------------------------------------------------------------------------
# relation suite


def _q_scalar(e4):
    return Radical.from_ratv(RatV.v_pow(e4))


def verify_relations(n1, n2):
    """Check every defining relation exactly on V(n1,n2).

    Returns a list of (name, ok, witness) triples; witness is None on success
    and the offending matrix otherwise.
    """
    E1 = rep_matrix("E1", n1, n2)
    E2 = rep_matrix("E2", n1, n2)
    F1 = rep_matrix("F1", n1, n2)
    F2 = rep_matrix("F2", n1, n2)
    K1 = rep_matrix("K1", n1, n2)
    K2 = rep_matrix("K2", n1, n2)
    K1i = rep_matrix("K1i", n1, n2)
    K2i = rep_matrix("K2i", n1, n2)
    I = RepMatrix.identity(n1, n2)
    K = {1: (K1, K1i), 2: (K2, K2i)}
    E = {1: E1, 2: E2}
    F = {1: F1, 2: F2}

    checks = []

    def record(name, mat):
        checks.append((name, mat.is_zero(), None if mat.is_zero() else mat))

    record("K1 K2 = K2 K1", K1 * K2 - K2 * K1)
    for i in (1, 2):
        Ki, Kii = K[i]
        record("K%d K%d^-1 = 1" % (i, i), Ki * Kii - I)
        record("K%d E%d = q E%d K%d" % (i, i, i, i),
               Ki * E[i] - (E[i] * Ki).scale(_q_scalar(4)))
        record("K%d F%d = q^-1 F%d K%d" % (i, i, i, i),
               Ki * F[i] - (F[i] * Ki).scale(_q_scalar(-4)))
        j = 3 - i
        record("K%d E%d = q^-1/2 E%d K%d" % (i, j, j, i),
               Ki * E[j] - (E[j] * Ki).scale(_q_scalar(-2)))
        record("K%d F%d = q^1/2 F%d K%d" % (i, j, j, i),
               Ki * F[j] - (F[j] * Ki).scale(_q_scalar(2)))
        # [E_i, F_i] = (K_i^2 - K_i^-2)/(q - q^-1)
        lhs = E[i] * F[i] - F[i] * E[i]
        rhs = (Ki * Ki - Kii * Kii).scale(
            Radical.from_ratv((RatV.v_pow(4) - RatV.v_pow(-4)).inv()))
        record("[E%d, F%d] = (K%d^2-K%d^-2)/(q-q^-1)" % (i, i, i, i), lhs - rhs)
        record("[E%d, F%d] = 0" % (i, j), E[i] * F[j] - F[j] * E[i])
        # Serre relations
        qq = _q_scalar(4) + _q_scalar(-4)
        record("E%d^2 E%d + E%d E%d^2 = [2] E%d E%d E%d" % (i, j, j, i, i, j, i),
               E[i] * E[i] * E[j] + E[j] * E[i] * E[i]
               - (E[i] * E[j] * E[i]).scale(qq))
        record("F%d^2 F%d + F%d F%d^2 = [2] F%d F%d F%d" % (i, j, j, i, i, j, i),
               F[i] * F[i] * F[j] + F[j] * F[i] * F[i]
               - (F[i] * F[j] * F[i]).scale(qq))
    # adjointness F_i = E_i^T holds by construction; assert it anyway
    record("F1 = E1^T", F1 - E1.transpose())
    record("F2 = E2^T", F2 - E2.transpose())
    return checks


# ---------------------------------------------------------------------------
# abstract elements, theta and star


class UqElement:
    """Linear combination of words in the generators, K-cancelled.

    No normal form beyond cancelling adjacent K_i K_i^-1 pairs: elements act
    through representations or Hopf actions, never compared abstractly.
    """

    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = _cancel_k(poly)

    @staticmethod
    def generator(name):
        return UqElement(NCPoly.word((_UQ_ID[name],)))

    @staticmethod
    def from_word(names, coeff=None):
        return UqElement(NCPoly.word(tuple(_UQ_ID[n] for n in names), coeff))

    @staticmethod
    def unit(coeff=None):
        return UqElement(NCPoly.unit(coeff))

    @staticmethod
    def zero():
        return UqElement(NCPoly.zero())

    def words(self):
        """Pairs (generator-name tuple, RatV coefficient)."""
        return [(tuple(UQ_GENS[g] for g in w), c) for w, c in self.poly.t.items()]

    def __add__(self, other):
        return UqElement(self.poly + other.poly)

    def __sub__(self, other):
        return UqElement(self.poly - other.poly)

    def __neg__(self):
        return UqElement(-self.poly)

    def __mul__(self, other):
        return UqElement(self.poly.concat(other.poly))

    def scale(self, coeff):
        return UqElement(self.poly.scale(coeff))

    def __eq__(self, other):
        return isinstance(other, UqElement) and self.poly == other.poly

    def is_zero(self):
        return self.poly.is_zero()

    def __repr__(self):
        terms = ["%s" % (".".join(w) or "1") for w, _ in self.words()]
        return "UqElement(%s)" % " + ".join(terms or ["0"])


def _cancel_k(poly):
    out = NCPoly()
    for w, c in poly.t.items():
        names = [UQ_GENS[g] for g in w]
        changed = True
        while changed:
            changed = False
            for i in range(len(names) - 1):
                if (names[i], names[i + 1]) in _K_PAIRS:
                    del names[i:i + 2]
                    changed = True
                    break
        out = out + NCPoly.word(tuple(_UQ_ID[n] for n in names), c)
    return out


_THETA = {"E1": "F1", "E2": "F2", "F1": "E1", "F2": "E2",
          "K1": "K1", "K1i": "K1i", "K2": "K2", "K2i": "K2i"}
_STAR = {"E1": "F1", "E2": "F2", "F1": "E1", "F2": "E2",
         "K1": "K1", "K1i": "K1i", "K2": "K2", "K2i": "K2i"}


def _anti_map(elem, table):
    out = NCPoly()
    for w, c in elem.poly.t.items():
        img = tuple(_UQ_ID[table[UQ_GENS[g]]] for g in reversed(w))
        out = out + NCPoly.word(img, c)
    return UqElement(out)


def theta(elem):
    """Hopf isomorphism onto the opposite algebra: swaps E and F, reverses words."""
    return _anti_map(elem, _THETA)


def star_uq(elem):
    """The *-involution: anti-linear, anti-multiplicative, E* = F, K* = K."""
    return _anti_map(elem, _STAR)
