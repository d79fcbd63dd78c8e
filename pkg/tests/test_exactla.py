import random
from fractions import Fraction

import pytest

from qcp2.exactla import SparseMatrix, Subspace, kernel, rank, solve, subspace_equal
from qcp2.qcoeff import RatV, q_int


def rv(x):
    return RatV.from_rational(x)


def test_kernel_identity():
    m = SparseMatrix(3, 3, {(i, i): RatV.one() for i in range(3)})
    assert kernel(m).dim == 0
    assert rank(m) == 3


def test_kernel_zero_matrix():
    m = SparseMatrix(2, 3)
    k = kernel(m)
    assert k.dim == 3


def test_kernel_single_equation():
    m = SparseMatrix(1, 2, {(0, 0): q_int(1), (0, 1): -q_int(1)})
    k = kernel(m)
    assert k.dim == 1
    assert k.contains([RatV.one(), RatV.one()])


def test_kernel_vectors_annihilate():
    rng = random.Random(20240801)
    for trial in range(15):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        m = SparseMatrix(nr, nc)
        for _ in range(rng.randint(0, nr * nc)):
            i, j = rng.randrange(nr), rng.randrange(nc)
            e = rng.randint(-4, 4)
            m.set(i, j, RatV.v_pow(4 * e).scale(Fraction(rng.randint(-3, 3))))
        k = kernel(m)
        assert rank(m) + k.dim == nc
        for row in k.basis:
            vec = [row.get(j, RatV.zero()) for j in range(nc)]
            assert all(x.is_zero() for x in m.apply(vec))


def test_solve_simple():
    m = SparseMatrix(1, 1, {(0, 0): q_int(2)})
    x = solve(m, [q_int(2)])
    assert x == [RatV.one()]


def test_solve_inconsistent():
    m = SparseMatrix(2, 1, {(0, 0): RatV.one()})
    assert solve(m, [RatV.zero(), RatV.one()]) is None


def test_solve_rectangular():
    # x + y = [2], y = 1  -> x = [2]-1
    m = SparseMatrix(2, 2, {(0, 0): rv(1), (0, 1): rv(1), (1, 1): rv(1)})
    x = solve(m, [q_int(2), RatV.one()])
    assert x[0] == q_int(2) - RatV.one()
    assert x[1] == RatV.one()


def test_subspace_equal_plane():
    a = Subspace(2, [[rv(1), rv(0)], [rv(0), rv(1)]])
    b = Subspace(2, [[rv(1), rv(1)], [rv(1), rv(-1)]])
    assert subspace_equal(a, b)
    c = Subspace(2, [[rv(1), rv(1)]])
    assert not subspace_equal(a, c)
    assert a.contains([q_int(5), q_int(3)])


def test_subspace_equal_reflexive_symmetric_and_containment():
    rng = random.Random(99)
    for _ in range(10):
        n = rng.randint(2, 6)
        vecs1 = [[rv(rng.randint(-2, 2)) for _ in range(n)] for _ in range(rng.randint(1, n))]
        s1 = Subspace(n, vecs1)
        # same span, different generating set
        vecs2 = []
        for _ in range(len(vecs1) + 1):
            acc = [RatV.zero()] * n
            for v in vecs1:
                c = rng.randint(-2, 2)
                acc = [a + x.scale(c) for a, x in zip(acc, v)]
            vecs2.append(acc)
        s2 = Subspace(n, vecs2)
        assert subspace_equal(s1, s1)
        assert subspace_equal(s2, s1) == subspace_equal(s1, s2)
        if subspace_equal(s1, s2):
            assert all(s1.contains(v) for v in vecs2)
            assert all(s2.contains(v) for v in vecs1)
        else:
            assert s2.dim < s1.dim
            assert all(s1.contains(v) for v in vecs2)


def test_rank_nullity_with_rational_function_entries():
    rng = random.Random(5)
    for _ in range(8):
        nr, nc = rng.randint(2, 6), rng.randint(2, 6)
        m = SparseMatrix(nr, nc)
        for _ in range(rng.randint(2, nr * nc)):
            i, j = rng.randrange(nr), rng.randrange(nc)
            num = q_int(rng.randint(1, 4))
            den = q_int(rng.randint(1, 3))
            m.set(i, j, num / den)
        assert rank(m) + kernel(m).dim == nc


def test_dimension_mismatch_errors():
    m = SparseMatrix(2, 2)
    with pytest.raises(ValueError):
        m.apply([RatV.one()])
    with pytest.raises(ValueError):
        solve(m, [RatV.one()])
    with pytest.raises(IndexError):
        m.set(5, 0, RatV.one())
