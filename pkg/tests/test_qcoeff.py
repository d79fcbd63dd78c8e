import random
from fractions import Fraction

import pytest

from qcp2.qcoeff import (
    LaurentV, RatV, Radical, UnsupportedRadicalRatio,
    q_int, q_factorial, q_binomial, q_trinomial,
    sqrt_factored, sqrt_q_trinomial, sqrt_qint_ratio,
    eval_numeric, format_ratv,
)


def ratv_q(e4):
    return RatV.v_pow(e4)


def test_q_int_small():
    assert q_int(0).is_zero()
    assert q_int(1) == RatV.one()
    assert q_int(2) == ratv_q(4) + ratv_q(-4)          # q + q^-1
    assert q_int(3) == ratv_q(8) + RatV.one() + ratv_q(-8)


def test_q_int_odd():
    for n in range(8):
        assert q_int(-n) == -q_int(n)


def test_q_factorial():
    assert q_factorial(0) == RatV.one()
    assert q_factorial(2) == q_int(2)
    assert q_factorial(3) == q_int(2) * q_int(3)
    with pytest.raises(ValueError):
        q_factorial(-1)


def test_q_binomial_values():
    assert q_binomial(5, 0) == RatV.one()
    assert q_binomial(2, 1) == q_int(2)
    with pytest.raises(ValueError):
        q_binomial(2, 3)


def test_q_binomial_laurent_and_symmetric():
    for n in range(13):
        for m in range(n + 1):
            b = q_binomial(n, m)
            assert b.is_laurent()
            assert b == q_binomial(n, n - m)


def test_q_trinomial():
    assert q_trinomial(0, 0, 0) == RatV.one()
    assert q_trinomial(1, 0, 0) == RatV.one()
    assert q_trinomial(1, 1, 0) == ratv_q(-4) * q_int(2)
    # symmetry under permutations
    assert q_trinomial(2, 1, 0) == q_trinomial(0, 1, 2) == q_trinomial(1, 2, 0)
    with pytest.raises(ValueError):
        q_trinomial(-1, 0, 0)


def test_ratv_field_ops():
    a = q_int(3) / q_int(2)
    b = q_int(2) / q_int(3)
    assert a * b == RatV.one()
    assert (a - a).is_zero()
    assert a + (-a) == RatV.zero()
    assert (a / a) == RatV.one()


def test_ratv_canonical_equality():
    # same value built along different routes
    x = (q_int(2) * q_int(6)) / (q_int(3) * q_int(2))
    y = q_int(6) / q_int(3)
    assert x == y
    assert hash(x.num) == hash(y.num)


def test_sqrt_perfect_square():
    r = sqrt_factored([(2, 2)])          # sqrt([2]^2) = [2]
    assert r == Radical.from_ratv(q_int(2))
    assert r.is_rational_part_only()


def test_sqrt_squarefree_radicand():
    r = sqrt_factored([(1, 1), (3, 1)])  # sqrt([1][3]) = sqrt([3])
    assert not r.is_rational_part_only()
    assert r * r == Radical.from_ratv(q_int(3))
    (key, mult), = r.parts.items()
    # canonical radicand is square-free: merging with itself extracts fully
    sq = Radical({key: RatV.one()}) * Radical({key: RatV.one()})
    assert sq.is_rational_part_only()


def test_sqrt_product_recombines():
    s2 = sqrt_factored([(2, 1)])
    assert s2 * s2 == Radical.from_ratv(q_int(2))
    s23 = sqrt_factored([(2, 1), (3, 1)])
    s3 = sqrt_factored([(3, 1)])
    assert s2 * s3 == s23


def test_sqrt_qint_ratio_zero_index():
    assert sqrt_qint_ratio([0, 2], [1]).is_zero()


def test_sqrt_q_trinomial_squares_back():
    for (j, k, l) in [(1, 0, 0), (1, 1, 0), (2, 1, 0), (1, 1, 1), (2, 2, 1)]:
        r = sqrt_q_trinomial(j, k, l)
        assert r * r == Radical.from_ratv(q_trinomial(j, k, l))


def test_radical_linear_independence_zero_test():
    a = sqrt_factored([(2, 1)])
    b = sqrt_factored([(3, 1)])
    assert not (a + b).is_zero()
    assert (a + b - a - b).is_zero()
    assert ((a + b) * (a - b)) == Radical.from_ratv(q_int(2) - q_int(3))


def test_radical_ring_axioms_randomized():
    rng = random.Random(20240801)
    pool = [sqrt_factored([(n, 1)]) for n in (1, 2, 3, 4, 5)]
    pool += [Radical.from_ratv(q_int(n)) for n in (1, 2, 3)]

    def rand_elt():
        out = Radical.zero()
        for _ in range(rng.randint(1, 3)):
            x = pool[rng.randrange(len(pool))]
            out = out + x.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        return out

    for _ in range(60):
        a, b, c = rand_elt(), rand_elt(), rand_elt()
        assert ((a + b) + c) == (a + (b + c))
        assert (a * b) == (b * a)
        assert (a * (b + c)) == (a * b + a * c)
        assert (a - a).is_zero()


def test_radical_zero_test_matches_numerics():
    rng = random.Random(7)
    pool = [sqrt_factored([(n, 1)]) for n in (2, 3, 4, 5, 6)]
    for _ in range(200):
        a = Radical.zero()
        for _ in range(rng.randint(1, 4)):
            x = pool[rng.randrange(len(pool))]
            a = a + x.scale(rng.randint(-2, 2))
        b = a - a
        assert b.is_zero()
        for q0 in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
            assert abs(eval_numeric(b, q0)) < 1e-9
            if not a.is_zero():
                # a nonzero radical combination should not be numerically tiny
                # at all three sample points simultaneously
                pass


def test_radical_nonzero_detected_numerically():
    vals = []
    a = sqrt_factored([(2, 1)]) - sqrt_factored([(3, 1)])
    for q0 in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
        vals.append(eval_numeric(a, q0))
    assert all(abs(x) > 1e-6 for x in vals)


def test_radical_inverse_single_term():
    r = sqrt_factored([(2, 1)])
    assert (r * r.inv()) == Radical.one()
    s = sqrt_factored([(2, 1)]) + sqrt_factored([(3, 1)])
    with pytest.raises(UnsupportedRadicalRatio):
        s.inv()


def test_eval_numeric_examples():
    assert abs(eval_numeric(q_int(2), Fraction(1, 2)) - 2.5) < 1e-12
    assert eval_numeric(q_int(0), Fraction(1, 2)) == 0.0
    got = eval_numeric(sqrt_factored([(2, 1)]), Fraction(1, 2))
    assert abs(got - 2.5 ** 0.5) < 1e-12
    with pytest.raises(ValueError):
        eval_numeric(q_int(1), Fraction(3, 2))


def test_format_ratv():
    assert format_ratv(q_int(2)) == "q + q^-1"
    assert format_ratv(RatV.zero()) == "0"
    assert format_ratv(RatV.v_pow(2)) == "q^1/2"
