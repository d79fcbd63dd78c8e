"""Exact coefficient arithmetic in the deformation parameter.

Everything is expressed over the base variable v with q = v**4, so that all
quarter- and half-integer powers of q occurring in the representation formulas
become integer powers of v.  Three layers:

* ``LaurentV`` -- Laurent polynomials in v with Fraction coefficients.
* ``RatV``     -- reduced fractions of Laurent polynomials (the ground field).
* ``Radical``  -- finite sums  sum_r  m_r * sqrt(r)  with canonical square-free
  radicands r and RatV multipliers m_r; zero test is exact because distinct
  canonical radicands are linearly independent over the rational functions.

Radicands are only ever constructed from factored positive data (q-integers,
q-factorials, positive rationals, even powers of v), so positivity on
0 < q < 1 holds by construction and never needs real-root analysis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LaurentV:
    """Immutable Laurent polynomial in v over the rationals."""

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, x in coeffs.items():
                if x:
                    c[e] = Fraction(x)
        self.c = c
        self._hash = None

    @staticmethod
    def zero():
        return LaurentV()

    @staticmethod
    def one():
        return LaurentV({0: 1})

    @staticmethod
    def v_pow(e):
        return LaurentV({e: 1})

    @staticmethod
    def from_rational(x):
        return LaurentV({0: Fraction(x)})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, LaurentV) and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.c.items())))
        return self._hash

    def __add__(self, other):
        c = dict(self.c)
        for e, x in other.c.items():
            y = c.get(e, _ZERO) + x
            if y:
                c[e] = y
            else:
                c.pop(e, None)
        r = LaurentV()
        r.c = c
        return r

    def __neg__(self):
        r = LaurentV()
        r.c = {e: -x for e, x in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.c or not other.c:
            return LaurentV()
        c = {}
        for e1, x1 in self.c.items():
            for e2, x2 in other.c.items():
                e = e1 + e2
                y = c.get(e, _ZERO) + x1 * x2
                if y:
                    c[e] = y
                else:
                    c.pop(e, None)
        r = LaurentV()
        r.c = c
        return r

    def scale(self, x):
        x = Fraction(x)
        if not x:
            return LaurentV()
        r = LaurentV()
        r.c = {e: v * x for e, v in self.c.items()}
        return r

    def shift(self, k):
        """Multiply by v**k."""
        r = LaurentV()
        r.c = {e + k: x for e, x in self.c.items()}
        return r

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    def span(self):
        return self.max_exp() - self.min_exp() if self.c else 0

    def eval_v(self, v0):
        return float(sum(float(x) * v0 ** e for e, x in self.c.items()))

    def __repr__(self):
        return "LaurentV(%r)" % (dict(sorted(self.c.items())),)


# ---------------------------------------------------------------------------
# dense univariate helpers (plain polynomials, coefficient lists, Fraction)

def _dense(lv):
    """LaurentV -> (shift, coefficient list) with nonzero trailing entry."""
    if not lv.c:
        return 0, []
    lo = min(lv.c)
    hi = max(lv.c)
    out = [lv.c.get(e, _ZERO) for e in range(lo, hi + 1)]
    return lo, out


def _from_dense(shift, cs):
    return LaurentV({shift + i: x for i, x in enumerate(cs) if x})


def _trim(cs):
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        d = len(a) - len(b)
        f = a[-1] * inv
        q[d] = f
        for i, y in enumerate(b):
            a[d + i] -= f * y
        a.pop()
    return _trim(q), _trim(a)


def _poly_monic(a):
    if not a:
        return a
    inv = 1 / a[-1]
    return [x * inv for x in a]


def _poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return _poly_monic(a)


def _poly_deriv(a):
    return _trim([i * x for i, x in enumerate(a)][1:])


def _sqfree_extract(p):
    """p = s**2 * r with r square-free; p monic, returns (s, r) monic."""
    if len(p) <= 1:
        return [_ONE], list(p)
    g = _poly_gcd(p, _poly_deriv(p))
    if len(g) == 1:
        return [_ONE], list(p)
    y = _poly_divmod(p, g)[0]
    sg, rg = _sqfree_extract(g)
    s = _poly_mul(sg, rg)
    r = _poly_divmod(y, rg)[0]
    return s, r


def _int_sqfree(n):
    """n = s*s * m with m square-free, n positive; returns (s, m)."""
    s, m = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            m *= d
        d += 1
    return s, m * n


def _content_primitive(cs):
    """Rational content c > 0 and primitive integer list p with cs = c*p."""
    from math import gcd

    num = 0
    den = 1
    for x in cs:
        num = gcd(num, x.numerator)
        den = den * x.denominator // gcd(den, x.denominator)
    if num == 0:
        return Fraction(1), []
    c = Fraction(num, den)
    p = [x / c for x in cs]
    return c, [int(x) for x in p]


class RatV:
    """Reduced fraction of Laurent polynomials in v.

    Canonical form: the denominator is a primitive integer polynomial with
    nonzero constant term and positive leading coefficient.  Equality is
    plain structural equality of the canonical form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = LaurentV.one()
        if den.is_zero():
            raise ZeroDivisionError("RatV denominator is zero")
        if _reduced:
            self.num = num
            self.den = den
            return
        self.num, self.den = _ratv_reduce(num, den)

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero():
        return RatV(LaurentV.zero(), LaurentV.one(), _reduced=True)

    @staticmethod
    def one():
        return RatV(LaurentV.one(), LaurentV.one(), _reduced=True)

    @staticmethod
    def from_rational(x):
        return RatV(LaurentV.from_rational(x), LaurentV.one(), _reduced=True)

    @staticmethod
    def v_pow(e):
        return RatV(LaurentV.v_pow(e), LaurentV.one(), _reduced=True)

    @staticmethod
    def q_pow_quarters(e4):
        """q**(e4/4) as an exact monomial v**e4."""
        return RatV.v_pow(e4)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den == LaurentV.one()

    def __eq__(self, other):
        if not isinstance(other, RatV):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if self.den == other.den:
            if self.den == _LUNIT:
                return RatV(self.num + other.num, _LUNIT, _reduced=True)
            return RatV(self.num + other.num, self.den)
        return RatV(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __neg__(self):
        return RatV(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return RatV.zero()
        if self.den == _LUNIT and other.den == _LUNIT:
            return RatV(self.num * other.num, _LUNIT, _reduced=True)
        return RatV(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero RatV")
        return RatV(self.num * other.den, self.den * other.num)

    def inv(self):
        return RatV.one() / self

    def scale(self, x):
        return RatV(self.num.scale(x), self.den, _reduced=True) if x else RatV.zero()

    def eval_q(self, q0):
        """Evaluate at a numeric q0 in (0,1); v0 = q0**(1/4)."""
        v0 = float(q0) ** 0.25
        den = self.den.eval_v(v0)
        if den == 0.0:
            raise ZeroDivisionError("denominator vanishes at q0=%r" % (q0,))
        return self.num.eval_v(v0) / den

    def degree_size(self):
        """Crude size measure used for pivot selection."""
        return self.num.span() + self.den.span() + len(self.num.c) + len(self.den.c)

    def __repr__(self):
        return "RatV(%s)" % format_ratv(self)


def _ratv_reduce(num, den):
    if num.is_zero():
        return LaurentV.zero(), LaurentV.one()
    if den == _LUNIT:
        return num, den
    if len(den.c) == 1:
        (e, x), = den.c.items()
        return num.shift(-e).scale(1 / x), LaurentV.one()
    nshift, ncs = _dense(num)
    dshift, dcs = _dense(den)
    g = _poly_gcd(ncs, dcs)
    if len(g) > 1:
        ncs = _poly_divmod(ncs, g)[0]
        dcs = _poly_divmod(dcs, g)[0]
    # shift all v powers into the numerator
    shift = nshift - dshift
    cd, dprim = _content_primitive(dcs)
    if dprim[-1] < 0:
        dprim = [-x for x in dprim]
        cd = -cd
    ncs = [x / cd for x in ncs]
    return _from_dense(shift, ncs), _from_dense(0, [Fraction(x) for x in dprim])


_LUNIT = LaurentV.one()


# ---------------------------------------------------------------------------
# q-combinatorics

@lru_cache(maxsize=None)
def q_int(z):
    """The balanced q-integer [z] = (q^z - q^-z)/(q - q^-1), exact in v."""
    if z < 0:
        return -q_int(-z)
    if z == 0:
        return RatV.zero()
    # [z] = q^(z-1) + q^(z-3) + ... + q^(1-z), i.e. v exponents 4(z-1-2k)
    return RatV(LaurentV({4 * (z - 1 - 2 * k): 1 for k in range(z)}))


@lru_cache(maxsize=None)
def q_factorial(n):
    """[n]! = [1][2]...[n] with [0]! = 1."""
    if n < 0:
        raise ValueError("q_factorial of negative %d" % n)
    if n == 0:
        return RatV.one()
    return q_factorial(n - 1) * q_int(n)


def q_binomial(n, m):
    """Gaussian binomial [n]!/([m]![n-m]!); always a Laurent polynomial."""
    if not (0 <= m <= n):
        raise ValueError("q_binomial out of range: (%d, %d)" % (n, m))
    r = q_factorial(n) / (q_factorial(m) * q_factorial(n - m))
    assert r.is_laurent(), "q_binomial failed to reduce to a Laurent polynomial"
    return r


def q_trinomial(j, k, l):
    """[j,k,l]! = q^-(jk+kl+lj) [j+k+l]!/([j]![k]![l]!)."""
    if j < 0 or k < 0 or l < 0:
        raise ValueError("q_trinomial needs non-negative arguments")
    s = j * k + k * l + l * j
    r = q_factorial(j + k + l) / (q_factorial(j) * q_factorial(k) * q_factorial(l))
    return RatV.v_pow(-4 * s) * r


# ---------------------------------------------------------------------------
# radicals


class UnsupportedRadicalRatio(ArithmeticError):
    """Raised when a ratio of unlike radicals would be needed."""


class Radical:
    """Finite sum of RatV multiples of square roots of canonical radicands.

    The radicand key ``LaurentV`` is a primitive integer polynomial times a
    square-free positive integer, with v-exponent parity 0 or 1; the key for
    the rational part is the unit polynomial.  Distinct keys are linearly
    independent over RatV, so the zero test is exact.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        self.parts = {}
        if parts:
            for key, m in parts.items():
                if not m.is_zero():
                    self.parts[key] = m

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero():
        return Radical()

    @staticmethod
    def one():
        return Radical({_RADONE: RatV.one()})

    @staticmethod
    def from_ratv(x):
        return Radical({_RADONE: x}) if not x.is_zero() else Radical()

    @staticmethod
    def from_rational(x):
        return Radical.from_ratv(RatV.from_rational(x))

    # -- predicates -----------------------------------------------------------
    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def is_rational_part_only(self):
        return not self.parts or set(self.parts) == {_RADONE}

    def ratv(self):
        """The rational part; raises if a genuine radical is present."""
        if not self.parts:
            return RatV.zero()
        if set(self.parts) != {_RADONE}:
            raise UnsupportedRadicalRatio("value has an irrational radical part")
        return self.parts[_RADONE]

    def __eq__(self, other):
        if isinstance(other, RatV):
            other = Radical.from_ratv(other)
        if not isinstance(other, Radical):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        parts = dict(self.parts)
        for key, m in other.parts.items():
            s = parts.get(key)
            s = m if s is None else s + m
            if s.is_zero():
                parts.pop(key, None)
            else:
                parts[key] = s
        r = Radical()
        r.parts = parts
        return r

    def __neg__(self):
        r = Radical()
        r.parts = {key: -m for key, m in self.parts.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RatV):
            other = Radical.from_ratv(other)
        out = Radical()
        for k1, m1 in self.parts.items():
            for k2, m2 in other.parts.items():
                m = m1 * m2
                if k1 == _RADONE:
                    key, extra = k2, RatV.one()
                elif k2 == _RADONE:
                    key, extra = k1, RatV.one()
                else:
                    extra, key = _radicand_merge(k1, k2)
                cur = out.parts.get(key)
                add = m * extra
                cur = add if cur is None else cur + add
                if cur.is_zero():
                    out.parts.pop(key, None)
                else:
                    out.parts[key] = cur
        return out

    def scale(self, x):
        r = Radical()
        if x:
            r.parts = {key: m.scale(x) for key, m in self.parts.items()}
        return r

    def scale_ratv(self, x):
        r = Radical()
        if not x.is_zero():
            r.parts = {key: m * x for key, m in self.parts.items()}
        return r

    def inv(self):
        """Inverse of a single-term radical; unlike sums are unsupported."""
        if len(self.parts) != 1:
            raise UnsupportedRadicalRatio(
                "inverse of a %d-term radical is not supported" % len(self.parts))
        (key, m), = self.parts.items()
        if key == _RADONE:
            return Radical.from_ratv(m.inv())
        # 1/(m sqrt(r)) = (1/(m r)) sqrt(r)
        r = RatV(key)
        return Radical({key: (m * r).inv()})

    def __truediv__(self, other):
        if isinstance(other, RatV):
            other = Radical.from_ratv(other)
        return self * other.inv()

    def conjugate(self):
        # q is real, all coefficients are real: conjugation is the identity.
        return self

    def eval_q(self, q0):
        if not 0 < float(q0) < 1:
            raise ValueError("q0 must lie in (0,1)")
        v0 = float(q0) ** 0.25
        total = 0.0
        for key, m in self.parts.items():
            rad = key.eval_v(v0)
            assert rad > 0, "radicand evaluated non-positive at q0=%r" % (q0,)
            total += m.eval_q(q0) * rad ** 0.5
        return total

    def __repr__(self):
        return "Radical(%s)" % format_radical(self)


_RADONE = LaurentV.one()


def _canonical_radicand(poly):
    """Split sqrt(poly) into (multiplier RatV, canonical radicand LaurentV).

    ``poly`` is a nonzero LaurentV known positive on 0 < v < 1.
    """
    shift, cs = _dense(poly)
    half, parity = divmod(shift, 2)
    mult = RatV.v_pow(half)
    c, prim = _content_primitive(cs)
    assert prim[-1] > 0 and c > 0, "radicand must be positive"
    # rational content: sqrt(a/b) = sqrt(a*b)/b
    ab = c.numerator * c.denominator
    si, sf = _int_sqfree(ab)
    mult = mult.scale(Fraction(si, c.denominator))
    # polynomial part
    mon = Fraction(prim[-1])
    monic = [Fraction(x) / mon for x in prim]
    s, r = _sqfree_extract(monic)
    # fold the leading rational of the square-free part back to integers
    cr, rprim = _content_primitive(r)
    if rprim[-1] < 0:
        rprim = [-x for x in rprim]
        cr = -cr
    # poly = c * mon * s^2 * r,  r = cr * rprim
    scal = mon * cr
    s2i, s2f = _int_sqfree(scal.numerator * scal.denominator)
    mult = mult * RatV(_from_dense(0, s)).scale(Fraction(s2i, scal.denominator))
    nint = sf * s2f
    g = _int_sqfree(nint)[0]
    mult = mult.scale(g)
    nint //= g * g
    key = _from_dense(parity, [Fraction(nint * x) for x in rprim])
    if key == _RADONE:
        return mult, _RADONE
    return mult, key


def _radicand_merge(k1, k2):
    return _canonical_radicand(k1 * k2)


def sqrt_factored(factors, vexp=0):
    """Square root of a positive product given in factored form.

    ``factors`` is an iterable of (item, multiplicity) pairs where item is
    either an int (the q-integer index of [n], n > 0) or a positive rational;
    negative multiplicities put the factor in the denominator.  ``vexp`` adds
    an explicit factor v**vexp.  Returns the canonical Radical.
    """
    num = LaurentV.one()
    den = LaurentV.one()
    for item, mult in factors:
        if mult == 0:
            continue
        if isinstance(item, int) and not isinstance(item, bool):
            if item <= 0:
                raise ValueError("q-integer index must be positive, got %d" % item)
            base = q_int(item)
            assert base.is_laurent()
            piece = base.num
        else:
            x = Fraction(item)
            if x <= 0:
                raise ValueError("rational radicand factor must be positive")
            piece = LaurentV.from_rational(x)
        for _ in range(abs(mult)):
            if mult > 0:
                num = num * piece
            else:
                den = den * piece
    # sqrt(num/den * v^vexp) = sqrt(num*den*v^vexp)/den
    mult, key = _canonical_radicand((num * den).shift(vexp))
    return Radical({key: mult / RatV(den)})


def sqrt_q_trinomial(j, k, l):
    """sqrt([j,k,l]!) in canonical radical form."""
    s = j * k + k * l + l * j
    factors = [(i, 1) for i in range(2, j + k + l + 1)]
    factors += [(i, -1) for i in range(2, j + 1)]
    factors += [(i, -1) for i in range(2, k + 1)]
    factors += [(i, -1) for i in range(2, l + 1)]
    return sqrt_factored(factors, vexp=-4 * s)


def sqrt_qint_ratio(num_indices, den_indices, rational=1):
    """sqrt( rational * prod [n] / prod [d] ); zero indices give zero."""
    if any(n == 0 for n in num_indices):
        return Radical.zero()
    factors = [(n, 1) for n in num_indices] + [(d, -1) for d in den_indices]
    if rational != 1:
        factors.append((Fraction(rational), 1))
    return sqrt_factored(factors)


def eval_numeric(x, q0):
    """Numeric value of a RatV or Radical at rational q0 in (0,1)."""
    if not 0 < float(q0) < 1:
        raise ValueError("q0 must lie in (0,1)")
    if isinstance(x, RatV):
        return x.eval_q(q0)
    if isinstance(x, Radical):
        return x.eval_q(q0)
    raise TypeError("eval_numeric expects RatV or Radical")


# ---------------------------------------------------------------------------
# formatting

def _format_q_power(e4):
    """Render v**e4 as a q power with quarter-integer exponent."""
    if e4 == 0:
        return "1"
    f = Fraction(e4, 4)
    if f.denominator == 1:
        return "q" if f == 1 else "q^%d" % f
    return "q^%s" % f


def format_laurent(lv):
    if not lv.c:
        return "0"
    out = []
    for e in sorted(lv.c, reverse=True):
        x = lv.c[e]
        mono = _format_q_power(e)
        if x == 1 and e != 0:
            term = mono
        elif x == -1 and e != 0:
            term = "-" + mono
        elif e == 0:
            term = str(x)
        else:
            term = "%s %s" % (x, mono)
        out.append(term)
    s = " + ".join(out)
    return s.replace("+ -", "- ")


def format_ratv(r):
    if r.is_zero():
        return "0"
    if r.is_laurent():
        return format_laurent(r.num)
    return "(%s)/(%s)" % (format_laurent(r.num), format_laurent(r.den))


def format_radical(r):
    if r.is_zero():
        return "0"
    out = []
    for key in sorted(r.parts, key=lambda k: tuple(sorted(k.c.items()))):
        m = r.parts[key]
        if key == _RADONE:
            out.append(format_ratv(m))
        else:
            out.append("(%s)*sqrt(%s)" % (format_ratv(m), format_laurent(key)))
    return " + ".join(out)
