import random

import pytest

from qcp2.exactla import kernel
from qcp2.ncpoly import NCPoly
from qcp2.qcoeff import RatV, q_int
from qcp2.qalgebras import (
    AlgebraElement, act_left, act_right, dim_VnN, embed_s5, is_in_CP2,
    is_in_LN, is_in_S5, kk2_weight, ln_slice_elements, ln_slice_words,
    operator_matrix, pw_element, q_equivariance_check, s5q, s5_slice, star_u,
    suq3,
)
from qcp2.uqsu3 import UqElement


def q(e4):
    return RatV.v_pow(e4)


def zgen(j):
    return AlgebraElement.generator(suq3(), "u3%d" % j)


def s5_monomial(word):
    return AlgebraElement.from_poly(s5q(), NCPoly.word(word), reduced=True)


def rand_s5_element(rng, max_deg=3, terms=2):
    words = []
    for a in range(max_deg + 1):
        for b in range(max_deg + 1 - a):
            words.extend(s5_slice(a, b))
    out = AlgebraElement.zero(s5q())
    for _ in range(terms):
        w = words[rng.randrange(len(words))]
        out = out + s5_monomial(w).scale(q(4 * rng.randint(-1, 1)).scale(rng.randint(1, 3)))
    return out


def test_confluence_certified():
    assert s5q().system.check_local_confluence(6).confluent
    assert suq3().system.check_local_confluence(6).confluent


def test_s5_normal_form_examples():
    p5 = s5q()
    z2z1 = NCPoly.word(p5.system.word_of_names(("z2", "z1")))
    nf = p5.system.normal_form(z2z1)
    want = NCPoly.word(p5.system.word_of_names(("z1", "z2")), q(-4))
    assert nf == want
    z3z3s = NCPoly.word(p5.system.word_of_names(("z3", "z3*")))
    nf = p5.system.normal_form(z3z3s)
    w11 = p5.system.word_of_names(("z1", "z1*"))
    w22 = p5.system.word_of_names(("z2", "z2*"))
    assert nf == (NCPoly.unit() + NCPoly.word(w11, -RatV.one())
                  + NCPoly.word(w22, -RatV.one()))


def test_s5_star_example():
    # (z1 z2)* = z2* z1*, already normal; equals q z1* z2* after reduction
    p5 = s5q()
    z1z2 = s5_monomial(p5.system.word_of_names(("z1", "z2")))
    starred = z1z2.star()
    assert starred == s5_monomial(p5.system.word_of_names(("z2*", "z1*")))
    other = s5_monomial(p5.system.word_of_names(("z1*", "z2*"))).scale(q(4))
    assert starred == other


def test_star_u_minors():
    u33s = star_u(3, 3)
    pres = suq3()
    w1 = pres.system.word_of_names(("u11", "u22"))
    w2 = pres.system.word_of_names(("u12", "u21"))
    assert u33s == AlgebraElement(pres, {  # u11 u22 - q u12 u21
        list(u33s.parts)[0]: NCPoly.word(w1) + NCPoly.word(w2, -q(4))})
    u11s = star_u(1, 1)
    w1 = pres.system.word_of_names(("u22", "u33"))
    w2 = pres.system.word_of_names(("u23", "u32"))
    want = AlgebraElement.from_poly(pres, NCPoly.word(w1) + NCPoly.word(w2, -q(4)))
    assert u11s == want


def test_star_star_identity_all_generators():
    pres = suq3()
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            g = AlgebraElement.generator(pres, "u%d%d" % (i, j))
            assert g.star().star() == g
    p5 = s5q()
    for name in ("z1", "z2", "z3", "z1*", "z2*", "z3*"):
        g = AlgebraElement.generator(p5, name)
        assert g.star().star() == g


def test_sphere_relations_embed_to_zero():
    pres = suq3()
    one = RatV.one()
    qq = q(4)
    c = one - q(8)
    Z = zgen
    Zs = lambda j: star_u(3, j)
    rels = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i < j:
                rels.append(Z(i) * Z(j) - (Z(j) * Z(i)).scale(qq))
            if i != j:
                rels.append(Zs(i) * Z(j) - (Z(j) * Zs(i)).scale(qq))
    rels.append(Zs(1) * Z(1) - Z(1) * Zs(1))
    rels.append(Zs(2) * Z(2) - Z(2) * Zs(2) - (Z(1) * Zs(1)).scale(c))
    rels.append(Zs(3) * Z(3) - Z(3) * Zs(3)
                - (Z(1) * Zs(1) + Z(2) * Zs(2)).scale(c))
    rels.append(Z(1) * Zs(1) + Z(2) * Zs(2) + Z(3) * Zs(3) - AlgebraElement.one(pres))
    assert len(rels) == 13
    for k, r in enumerate(rels):
        assert r.is_zero(), "sphere relation %d nonzero in suq3" % k


def test_embed_is_homomorphism_on_samples():
    rng = random.Random(20240801)
    for _ in range(20):
        a = rand_s5_element(rng, max_deg=2)
        b = rand_s5_element(rng, max_deg=2)
        assert embed_s5(a * b) == embed_s5(a) * embed_s5(b)
        assert embed_s5(a.star()) == embed_s5(a).star()


def test_right_action_examples():
    for k in (1, 2, 3):
        zk = zgen(k)
        assert act_right(zk, "E2") == AlgebraElement.generator(suq3(), "u2%d" % k)
        assert act_right(zk, "F2").is_zero()
        kw = UqElement.from_word(("K1", "K2", "K2"))
        assert act_right(zk, kw) == zk.scale(q(4))


def test_unit_acts_by_counit():
    z1 = zgen(1)
    assert act_right(z1, UqElement.unit()) == z1
    assert act_right(z1, UqElement.zero()).is_zero()


def test_module_algebra_law_randomized():
    # (a b) <| h = (a <| h)(b <| K) + (a <| K^-1)(b <| h) for E/F generators
    rng = random.Random(20240801)
    pairs = {"E1": "K1", "F1": "K1", "E2": "K2", "F2": "K2"}
    for trial in range(60):
        a = embed_s5(rand_s5_element(rng, max_deg=2, terms=1))
        b = embed_s5(rand_s5_element(rng, max_deg=1, terms=2))
        h = ("E1", "F1", "E2", "F2")[rng.randrange(4)]
        kname = pairs[h]
        lhs = act_right(a * b, h)
        rhs = (act_right(a, h) * act_right(b, kname)
               + act_right(a, kname + "i") * act_right(b, h))
        assert lhs == rhs, (trial, h)


def test_left_right_actions_commute():
    rng = random.Random(7)
    gens = ("E1", "E2", "F1", "F2", "K1", "K2")
    for _ in range(30):
        a = embed_s5(rand_s5_element(rng, max_deg=2, terms=2))
        g = gens[rng.randrange(6)]
        h = gens[rng.randrange(6)]
        assert act_right(act_left(g, a), h) == act_left(g, act_right(a, h))


def test_membership_examples():
    assert is_in_LN(zgen(1), 1)
    assert is_in_CP2(star_u(3, 1) * zgen(2))
    assert is_in_LN(star_u(3, 1), -1)
    assert not is_in_LN(zgen(1), 0)
    # a non-invariant element of suq3 is not in the sphere subalgebra
    assert not is_in_S5(AlgebraElement.generator(suq3(), "u21"))


def test_star_flips_line_bundle_index():
    rng = random.Random(11)
    for _ in range(12):
        a = rand_s5_element(rng, max_deg=2, terms=1)
        w = kk2_weight(a)
        assert w is not None and w % 4 == 0
        N = w // 4
        assert is_in_LN(embed_s5(a), N)
        assert is_in_LN(embed_s5(a.star()), -N)


def test_ln_product_grading():
    rng = random.Random(13)
    for _ in range(12):
        a = rand_s5_element(rng, max_deg=2, terms=1)
        b = rand_s5_element(rng, max_deg=2, terms=1)
        na, nb = kk2_weight(a) // 4, kk2_weight(b) // 4
        ab = a * b
        if not ab.is_zero():
            assert is_in_LN(embed_s5(ab), na + nb)


def test_slice_counts_match_representation_dimensions():
    # sum over the filtered slices equals the Peter-Weyl multiplicities
    for N in (0, 1, 2):
        D = N + 6
        count = len(ln_slice_words(N, D))
        want = sum(dim_VnN(n, N) for n in range((D - N) // 2 + 1))
        assert count == want
    # the spec's worked instance: N=0, D=2 gives 1 + 8 = 9
    assert len(ln_slice_words(0, 2)) == 9


def test_s5_slice_examples():
    assert len(s5_slice(1, 0)) == 3
    assert len(s5_slice(1, 1)) == 8
    assert len(s5_slice(2, 0)) == 6


def test_operator_matrix_examples():
    domain = ln_slice_elements(1, 1)     # bidegree (1,0): z1, z2, z3
    kw = UqElement.from_word(("K1", "K2", "K2"))
    m, ambient = operator_matrix(kw, domain)
    assert m.nrows == 3 and m.ncols == 3
    for j in range(3):
        col = [m.get(i, j) for i in range(3)]
        nz = [c for c in col if not c.is_zero()]
        assert len(nz) == 1 and nz[0] == q(4)
    mf, amb = operator_matrix("F2", domain)
    assert not mf.entries
    me, amb = operator_matrix("E1", [AlgebraElement.generator(suq3(), "u1%d" % k)
                                     for k in (1, 2, 3)])
    assert not me.entries


def test_pw_elements_n01():
    pres = suq3()
    assert pw_element(0, 0, (0, 0, 0), (0, 0, 0)) == AlgebraElement.one(pres)
    assert pw_element(0, 1, (0, 0, 0), (0, 0, 0)) == zgen(3)
    assert pw_element(0, 1, (0, 1, 1), (0, 0, 0)) == zgen(2)
    assert pw_element(0, 1, (0, 1, -1), (0, 0, 0)) == zgen(1)


def test_pw_outputs_live_in_line_bundles():
    for (n1, n2) in [(0, 1), (0, 2), (1, 1), (1, 2)]:
        N = n2 - n1
        t = pw_element(n1, n2, (0, 0, 0), (0, 0, 0))
        assert is_in_LN(t, N)


def test_pw_equivariance():
    for h in ("E1", "F1", "E2", "F2", "K1", "K2"):
        r_ok, l_ok = q_equivariance_check(0, 1, (0, 1, 1), (0, 0, 0), h)
        assert r_ok and l_ok, h
    for h in ("F2", "K2"):
        r_ok, l_ok = q_equivariance_check(1, 1, (0, 0, 0), (0, 0, 0), h)
        assert r_ok and l_ok, h


def test_pw_f2_action_gamma():
    # t(n,n)^0_0 <| F2 = gamma_n t(n,n)^(1,0,-1/2)_0 with gamma_n = sqrt([n][n+2]/[2])
    from qcp2.qcoeff import sqrt_qint_ratio

    for n in (1, 2):
        t = pw_element(n, n, (0, 0, 0), (0, 0, 0))
        got = act_right(t, "F2")
        gamma = sqrt_qint_ratio([n, n + 2], [2])
        want = pw_element(n, n, (0, 0, 0), (1, 0, -1)).scale(gamma)
        assert got == want, n


def test_homomorphism_to_normal_forms_randomized():
    rng = random.Random(20240801)
    p5 = s5q()
    pres = suq3()
    for sysname, pres_ in (("s5q", p5), ("suq3", pres)):
        sysm = pres_.system
        ngen = len(sysm.gen_names)
        for _ in range(150):
            w1 = tuple(rng.randrange(ngen) for _ in range(rng.randint(0, 4)))
            w2 = tuple(rng.randrange(ngen) for _ in range(rng.randint(0, 4)))
            p = NCPoly.word(w1)
            r = NCPoly.word(w2, q(4 * rng.randint(-1, 1)))
            lhs = sysm.normal_form(p.concat(r))
            rhs = sysm.multiply(sysm.normal_form(p), sysm.normal_form(r))
            assert lhs == rhs
