"""Completed lamplighter groups: the semidirect law, the projection from the
free group, the iterated-commutator anchor that pins the action convention,
and the weight filtration."""

import random
from fractions import Fraction

import pytest

from nilwitness import lamplighter as lp
from nilwitness import magnus as mg
from nilwitness import words as wd
from nilwitness.series import QQ, TruncatedSeries

Z = lp.variant_from_tag("Z")
Q = lp.variant_from_tag("Q")
Z5 = lp.variant_from_tag("Zp:5")


def rand_lamp(variant, trunc, rng):
    if variant.rational_exponents:
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(trunc)]
        e = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    else:
        coeffs = [rng.randint(-4, 4) for _ in range(trunc)]
        e = rng.randint(-3, 3)
    return lp.LampElement(
        variant, TruncatedSeries.from_coeffs(variant.ring, trunc, coeffs), e
    )


# --- group structure ---------------------------------------------------------


def test_generators():
    a = lp.phi_word("a", Z, 6)
    assert list(a.f.coeffs) == [1, 0, 0, 0, 0, 0] and a.e == 0
    b = lp.phi_word("b", Z, 6)
    assert b.f.is_zero() and b.e == 1


def test_kernel_subgroup_is_abelian():
    rng = random.Random(0)
    for variant in (Z, Q, Z5):
        for _ in range(10):
            u = rand_lamp(variant, 6, rng)
            v = rand_lamp(variant, 6, rng)
            u0 = lp.LampElement(variant, u.f, variant.coerce_exponent(0))
            v0 = lp.LampElement(variant, v.f, variant.coerce_exponent(0))
            assert (u0 * v0).f == u.f + v.f
            assert lp.lamp_comm(u0, v0).is_identity()


@pytest.mark.parametrize("variant", [Z, Q, Z5])
def test_group_axioms(variant):
    rng = random.Random(1)
    for _ in range(25):
        u, v, w = (rand_lamp(variant, 6, rng) for _ in range(3))
        assert ((u * v) * w).f == (u * (v * w)).f
        assert ((u * v) * w).e == (u * (v * w)).e
        assert (u * u.inverse()).is_identity()
        assert (u.inverse() * u).is_identity()


def test_variant_mismatch_rejected():
    rng = random.Random(2)
    with pytest.raises(ValueError):
        rand_lamp(Z, 6, rng) * rand_lamp(Q, 6, rng)


def test_rational_exponent_conjugation_uses_rational_powers():
    # conjugating a lamp series by a half-integer shift scales by (1+x)^(1/2)
    f = TruncatedSeries.monomial(QQ, 6, 1)
    u = lp.LampElement(Q, f, Fraction(0))
    s = lp.LampElement(Q, TruncatedSeries.zero(QQ, 6), Fraction(1, 2))
    conj = s.inverse() * u * s
    from nilwitness.series import rat_pow

    expected = rat_pow(TruncatedSeries.from_coeffs(QQ, 6, (1, 1)), Fraction(1, 2)) * f
    assert conj.e == 0 and conj.f == expected


# --- the projection from the free group -------------------------------------


def test_phi_word_examples():
    assert lp.phi_word("a", Z, 5).to_json() == {"f": ["1", "0", "0", "0", "0"], "e": "0"}
    assert not lp.phi_word("[a,b]", Z, 5).is_identity()
    # commutators of two lamp-kernel elements collapse
    assert lp.phi_word("[a,[b,a,b,a]]", Z, 5).is_identity()


def test_phi_kills_defining_relators():
    for i in range(-3, 4):
        conj = wd.product(wd.power(wd.B, -i), wd.A, wd.power(wd.B, i))
        rel = wd.commutator(wd.A, conj)
        assert lp.phi_word(rel, Z, 8).is_identity()


def test_phi_engel_anchor():
    for K in (6, 11):
        for k in range(1, K):
            img = lp.phi_word(wd.engel(k), Z, K)
            assert img.e == 0
            assert img.f == TruncatedSeries.monomial(lp.ZZ, K, k)


def test_phi_is_homomorphism():
    rng = random.Random(3)
    for _ in range(40):
        u = wd.GroupWord.from_letters(
            rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 10))
        )
        v = wd.GroupWord.from_letters(
            rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 10))
        )
        lhs = lp.phi_word(u * v, Z, 7)
        rhs = lp.phi_word(u, Z, 7) * lp.phi_word(v, Z, 7)
        assert lhs.f == rhs.f and lhs.e == rhs.e


def test_phi_expr_matches_letterwise():
    for text in ("[a,b]", "[a,_3 b]", "[a,b,a]^-2 b", "a [b,a] B"):
        expr = wd.parse_word_expr(text)
        lhs = lp.phi_word(expr, Z, 7)
        rhs = lp.phi_word(expr.to_group_word(), Z, 7)
        assert lhs.f == rhs.f and lhs.e == rhs.e


def test_q_variant_is_coefficientwise_coercion():
    rng = random.Random(4)
    for _ in range(20):
        w = wd.GroupWord.from_letters(
            rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 10))
        )
        zimg = lp.phi_word(w, Z, 6)
        qimg = lp.phi_word(w, Q, 6)
        assert lp.to_rational(zimg).f == qimg.f
        assert Fraction(zimg.e) == qimg.e


def test_phi_compatible_with_free_group_filtration():
    rng = random.Random(5)
    pool = ["a", "b", "[a,b]", "[a,b,b]", "[a,[a,b]]", "[a,_3 b] a", "[b,a]^2"]
    for _ in range(50):
        expr = wd.parse_word_expr(" ".join(rng.sample(pool, rng.randint(1, 3))))
        wf = mg.gamma_weight(mg.eval_word(expr, 8))
        wl = lp.gamma_weight_lamp(lp.phi_word(expr, Z, 8))
        if wf is mg.INFINITE_WEIGHT:
            continue
        assert wl >= wf or wl == lp.INFINITE_WEIGHT


# --- the weight filtration ----------------------------------------------------


def test_gamma_weight_lamp_examples():
    x3 = lp.LampElement(Z, TruncatedSeries.monomial(lp.ZZ, 6, 3), 0)
    assert lp.gamma_weight_lamp(x3) == 4
    assert lp.gamma_weight_lamp(lp.phi_word("b", Z, 6)) == 1
    ident = lp.phi_word("", Z, 6)
    assert ident.is_identity()
    assert lp.gamma_weight_lamp(ident) == lp.INFINITE_WEIGHT


def test_json_shape():
    u = lp.phi_word("[a,_2 b]", Q, 4)
    assert u.to_json() == {"f": ["0", "0", "1", "0"], "e": "0"}
