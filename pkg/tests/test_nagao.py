import random

import pytest

from nagaolab.amalgam import Letter
from nagaolab.gl2 import Gen, Mat2, diag, e12, e21, identity, parse_matrix, w
from nagaolab.nagao import (
    e2zt_normal_form,
    e2zt_structure,
    e2zt_word_from_gens,
    letters_from_gens,
    nagao_normal_form,
    nagao_structure,
    phi_p,
    sl2fpt_elementary_factor,
    sl2z_factor,
)
from nagaolab.ring import Poly
from nagaolab.witnesses import make_witness

from helpers import (
    evaluate_word,
    rand_fp_gen,
    rand_fp_matrix,
    rand_sl2_const,
    rand_word,
)


def _product(gens, mod=None):
    m = identity(mod)
    for g in gens:
        m = m * g.matrix()
    return m


# -- SL2(Z) factorization ------------------------------------------------


def test_sl2z_factor_transvection():
    gens = sl2z_factor(Mat2.of_ints(1, 5, 0, 1))
    assert [str(g) for g in gens] == ["E12(5)"]


def test_sl2z_factor_w():
    gens = sl2z_factor(Mat2.of_ints(0, -1, 1, 0))
    assert [str(g) for g in gens] == ["W"]


def test_sl2z_factor_small_example():
    m = Mat2.of_ints(2, 1, 1, 1)
    assert _product(sl2z_factor(m)) == m


def test_sl2z_factor_roundtrip_random():
    rng = random.Random(2001)
    for _ in range(200):
        m = rand_sl2_const(rng, None)
        assert _product(sl2z_factor(m)) == m


def test_sl2z_factor_rejects_bad_input():
    with pytest.raises(ValueError):
        sl2z_factor(Mat2.of_ints(2, 0, 0, 1))
    with pytest.raises(ValueError):
        sl2z_factor(e12(Poly.parse("t")))
    with pytest.raises(ValueError):
        sl2z_factor(identity(5))


# -- SL2(F_p[t]) factorization -------------------------------------------


def test_fpt_factor_pinned_example():
    m = parse_matrix("[[1 + t^2, t],[t, 1]]", 5)
    gens = sl2fpt_elementary_factor(m)
    assert [str(g) for g in gens] == ["E12(t)", "E21(t)"]
    assert _product(gens, 5) == m


def test_fpt_factor_transvection_passthrough():
    rng = random.Random(2002)
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        f = Poly([rng.randrange(p) for _ in range(rng.randint(1, 6))], p)
        gens = sl2fpt_elementary_factor(e12(f))
        if f.is_zero:
            assert gens == []
        else:
            assert [g.kind for g in gens] == ["E12"] and gens[0].arg == f


def test_fpt_factor_roundtrip_random():
    rng = random.Random(2003)
    for p in (2, 3, 5):
        for _ in range(150):
            m = rand_fp_matrix(rng, p, 6, 6)
            assert _product(sl2fpt_elementary_factor(m), p) == m


def test_fpt_factor_rejects_nonunimodular():
    with pytest.raises(ValueError):
        sl2fpt_elementary_factor(Mat2.of_ints(1, 0, 0, 2, 5))
    with pytest.raises(ValueError):
        sl2fpt_elementary_factor(identity())


# -- Nagao normal form -----------------------------------------------------


def test_nagao_nf_identity():
    for p in (2, 3, 5):
        nf = nagao_normal_form(p, identity(p))
        assert nf.length == 0 and nf.head == identity(p)


def test_nagao_nf_canonical_transvection():
    nf = nagao_normal_form(3, e12(Poly.parse("t", 3)))
    assert nf.head == identity(3)
    assert nf.tags == (2,)
    assert nf.tail[0].mat == e12(Poly.parse("t", 3))


def test_nagao_nf_lower_transvection():
    m = e21(Poly.parse("t", 2))
    nf = nagao_normal_form(2, m)
    assert nf.length == 3
    assert nf.tags == (1, 2, 1)
    assert nagao_structure(2).nf_evaluate(nf) == m


def test_nagao_nf_cross_validation_random():
    rng = random.Random(2004)
    for p in (2, 3, 5):
        for _ in range(150):
            m = rand_fp_matrix(rng, p, 6, 6)
            nf = nagao_normal_form(p, m)
            assert nagao_structure(p).nf_evaluate(nf) == m


def test_nagao_nf_decides_equality():
    rng = random.Random(2005)
    s = nagao_structure(3)
    for _ in range(80):
        gens_a = [rand_fp_gen(rng, 3, 4) for _ in range(rng.randint(0, 5))]
        gens_b = [rand_fp_gen(rng, 3, 4) for _ in range(rng.randint(0, 5))]
        ma, mb = _product(gens_a, 3), _product(gens_b, 3)
        same_nf = nagao_normal_form(3, ma) == nagao_normal_form(3, mb)
        assert same_nf == (ma == mb)


def test_nagao_nf_length_zero_iff_upper_constant():
    rng = random.Random(2006)
    for p in (2, 5):
        for u in range(1, p):
            for x in range(p):
                b = Mat2.of_ints(u, x, 0, pow(u, -1, p), p)
                assert nagao_normal_form(p, b).length == 0
        for _ in range(50):
            m = rand_fp_matrix(rng, p, 5, 4)
            nf = nagao_normal_form(p, m)
            assert (nf.length == 0) == (m.is_upper_triangular and m.is_constant)


def test_nagao_nf_rejects_wrong_ring_or_det():
    with pytest.raises(ValueError):
        nagao_normal_form(3, identity(2))
    with pytest.raises(ValueError):
        nagao_normal_form(3, Mat2.of_ints(1, 0, 0, 2, 3))


# -- E2(Z[t]) words --------------------------------------------------------


def test_e2zt_single_transvection():
    for k in (1, 2, 3):
        nf = e2zt_normal_form([Letter(2, e12(Poly.monomial(k)))])
        assert nf.head == identity()
        assert nf.tags == (2,)
        assert nf.tail[0].mat == e12(Poly.monomial(k))


def test_e2zt_w_squared_is_central():
    nf = e2zt_normal_form([Letter(1, w()), Letter(1, w())])
    assert nf.length == 0
    assert nf.head == Mat2.of_ints(-1, 0, 0, -1)


def test_e2zt_random_word_evaluation():
    rng = random.Random(2007)
    s = e2zt_structure()
    for _ in range(100):
        word = rand_word(rng, None, 6, 4)
        nf = s.normalize(word)
        assert s.nf_evaluate(nf) == evaluate_word(word, None)


def test_e2zt_rejects_bad_letter():
    with pytest.raises(ValueError, match="membership"):
        e2zt_normal_form([Letter(1, e12(Poly.parse("t")))])


def test_letters_from_gens_expands_e21():
    letters = letters_from_gens([Gen("E21", Poly.parse("t"), None)], None)
    assert [l.factor for l in letters] == [1, 2, 1]
    assert evaluate_word(letters, None) == e21(Poly.parse("t"))


# -- reduction mod p -------------------------------------------------------


def test_phi_p_on_witness_word():
    # g(p,k) = E21(-p) E12(-t^k), a two-factor word
    for p in (2, 3):
        for k in (1, 2):
            word = e2zt_word_from_gens(
                [Gen("E21", Poly.constant(-p), None), Gen("E12", -Poly.monomial(k), None)]
            )
            assert evaluate_word(word, None) == make_witness("g", p, k)
            mat, nf = phi_p(word, p)
            x_k = e12(Poly.monomial(k, mod=p))
            assert mat == x_k.inv()
            assert nf.length == 1 and nf.tail[0].mat == e12(-Poly.monomial(k, mod=p))


def test_phi_p_on_canonical_transvection():
    word = [Letter(2, e12(Poly.monomial(2)))]
    mat, nf = phi_p(word, 5)
    assert mat == e12(Poly.monomial(2, mod=5))
    assert nf.tags == (2,)


def test_phi_p_of_h_via_matrix_side():
    # no two-factor word for h(2,1) is supplied; reduce the matrix instead
    h = make_witness("h", 2, 1)
    hp = h.reduce_mod_p(2)
    assert hp == parse_matrix("[[1, t^3],[0, 1]]", 2)
    nf = nagao_normal_form(2, hp)
    assert nf.tags == (2,)


def test_phi_p_is_homomorphism():
    rng = random.Random(2008)
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        s = nagao_structure(p)
        wx = rand_word(rng, None, 4, 3)
        wy = rand_word(rng, None, 4, 3)
        _, nfx = phi_p(wx, p)
        _, nfy = phi_p(wy, p)
        _, nfxy = phi_p(wx + wy, p)
        assert s.nf_multiply(nfx, nfy) == nfxy


def test_phi_p_hits_generators():
    # every elementary generator of SL2(F_p[t]) has a two-factor preimage word
    rng = random.Random(2009)
    for p in (2, 3, 5):
        for _ in range(20):
            f_p = Poly([rng.randrange(p) for _ in range(rng.randint(1, 5))], p)
            lift = Poly(f_p.coeffs)  # coefficients lifted to {0..p-1} in Z
            mat, _ = phi_p(e2zt_word_from_gens([Gen("E12", lift, None)]), p)
            assert mat == e12(f_p)
            mat, _ = phi_p(e2zt_word_from_gens([Gen("E21", lift, None)]), p)
            assert mat == e21(f_p)


def test_phi_p_rejects_invalid_words():
    with pytest.raises(ValueError):
        phi_p([Letter(1, e12(Poly.parse("t")))], 3)
    with pytest.raises(ValueError):
        phi_p([], 6)
