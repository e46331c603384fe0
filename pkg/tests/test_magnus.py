"""Tests of the truncated-series model of the free group: the embedding is a
homomorphism, the lower-central weight reads off degrees, leading terms are
Lie elements, and the group-level alternating identity holds."""

import random

import pytest

from nilwitness import freelie as fl
from nilwitness import magnus as mg
from nilwitness import words as wd


# --- independent oracle: direct polynomial arithmetic over word dicts -------


def poly_mul(p, q, trunc):
    out = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            if len(w1) + len(w2) <= trunc:
                key = w1 + w2
                out[key] = out.get(key, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


def poly_inverse(p, trunc):
    # geometric series in (p - 1)
    u = {w: c for w, c in p.items() if w}
    out = {"": 1}
    term = {"": 1}
    for _ in range(trunc):
        term = poly_mul({w: -c for w, c in u.items()}, term, trunc)
        for w, c in term.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def oracle_eval(word: str, trunc: int):
    """Literal evaluation of a plain letter word, independent arithmetic."""
    gens = {
        "a": {"": 1, "A": 1},
        "b": {"": 1, "B": 1},
    }
    gens["A"] = poly_inverse(gens["a"], trunc)
    gens["B"] = poly_inverse(gens["b"], trunc)
    out = {"": 1}
    for ch in word:
        out = poly_mul(out, gens[ch], trunc)
    return out


def as_dict(g: mg.MagnusElement):
    out = {"": 1}
    for d in range(1, g.trunc + 1):
        for w, c in g.degree_terms(d).items():
            out[w.upper()] = c
    return out


# --- evaluation ------------------------------------------------------------


def test_eval_empty_and_cancelling_words():
    assert mg.eval_word(wd.GroupWord.parse("aA"), 5).is_one()
    assert mg.eval_word(wd.GroupWord.identity(), 5).is_one()


def test_eval_ab_expansion():
    g = mg.eval_word(wd.GroupWord.parse("ab"), 4)
    assert as_dict(g) == {"": 1, "A": 1, "B": 1, "AB": 1}


def test_eval_commutator_against_oracle():
    g = mg.eval_word("[a,b]", 5)
    assert as_dict(g) == oracle_eval("ABab", 5)
    assert g.coefficient("AB") == 1 and g.coefficient("BA") == -1


def test_expr_eval_matches_letterwise_eval():
    rng = random.Random(3)
    exprs = [
        "[a,b]",
        "[a,b,b] a^2",
        "[a,[a,b]]^-2 [a,_3 b]",
        "[b,a] B [a,b]^3",
    ]
    for text in exprs:
        expr = wd.parse_word_expr(text)
        assert mg.eval_word(expr, 7) == mg.eval_word(expr.to_group_word(), 7)


def test_eval_is_homomorphism_on_random_words():
    rng = random.Random(4)
    for _ in range(40):
        u = wd.GroupWord.from_letters(
            rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 12))
        )
        v = wd.GroupWord.from_letters(
            rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 12))
        )
        assert mg.eval_word(u * v, 6) == mg.eval_word(u, 6) * mg.eval_word(v, 6)


# --- group laws ------------------------------------------------------------


def _random_elements(trunc, rng, count):
    ev = mg.MagnusEvaluator(trunc)
    pool = ["[a,b]", "a", "b^-1 a", "[a,b,b]", "a b a", "[a,[a,b]] b"]
    out = []
    for _ in range(count):
        text = " ".join(rng.sample(pool, rng.randint(1, 3)))
        out.append(ev.eval(wd.parse_word_expr(text)))
    return out


@pytest.mark.parametrize("trunc", range(1, 13))
def test_group_axioms_at_each_truncation(trunc):
    rng = random.Random(trunc)
    one = mg.MagnusElement.one(trunc)
    for g, h, k in zip(*[_random_elements(trunc, rng, 4)] * 3):
        assert (g * h) * k == g * (h * k)
        assert g * g.inverse() == one and g.inverse() * g == one
        assert g * one == g and one * g == g


def test_mismatched_truncations_rejected():
    g = mg.eval_word("a", 4)
    h = mg.eval_word("b", 5)
    with pytest.raises(ValueError):
        g * h


def test_commutator_of_element_with_itself():
    g = mg.eval_word("[a,b] a", 6)
    assert mg.commutator(g, g).is_one()


def test_commutator_word_vs_elements():
    ga = mg.eval_word(wd.GroupWord.parse("a"), 6)
    gb = mg.eval_word(wd.GroupWord.parse("b"), 6)
    assert mg.commutator(ga, gb) == mg.eval_word("[a,b]", 6)


# --- gamma weight ----------------------------------------------------------


def test_gamma_weight_of_identity_is_sentinel():
    assert mg.gamma_weight(mg.MagnusElement.one(6)) == mg.INFINITE_WEIGHT


def test_gamma_weight_examples():
    assert mg.gamma_weight(mg.eval_word("[a,b]", 6)) == 2
    assert mg.gamma_weight(mg.eval_word(wd.engel(5), 7)) == 6


def test_gamma_weight_superadditive_on_commutators():
    rng = random.Random(9)
    ev = mg.MagnusEvaluator(10)
    pool = ["a", "b", "[a,b]", "[a,b,b]", "[a,[a,b]]", "[a,_3 b]"]
    for _ in range(100):
        g = ev.eval(wd.parse_word_expr(rng.choice(pool)))
        h = ev.eval(wd.parse_word_expr(rng.choice(pool)))
        c = mg.commutator(g, h)
        assert mg.gamma_weight(c) >= min(
            mg.gamma_weight(g) + mg.gamma_weight(h), mg.INFINITE_WEIGHT
        )


# --- leading Lie terms -----------------------------------------------------


def test_leading_lie_of_basic_words():
    basis = fl.hall_basis(6)
    assert mg.leading_lie(mg.eval_word("[a,b]", 6), basis) == basis.from_words(
        {"ab": 1}
    )
    assert mg.leading_lie(mg.eval_word("[a,b,b]", 6), basis) == basis.from_words(
        {"abb": 1}
    )


def test_leading_lie_additive_in_lowest_degree():
    basis = fl.hall_basis(6)
    u = mg.eval_word("[a,b,b]", 6)
    v = mg.eval_word("[a,[a,b]]^2", 6)
    got = mg.leading_lie(u * v, basis)
    assert got == mg.leading_lie(u, basis) + mg.leading_lie(v, basis).scale(1)


def test_leading_lie_of_commutator_is_bracket_of_leading_terms():
    basis = fl.hall_basis(9)
    rng = random.Random(13)
    ev = mg.MagnusEvaluator(9)
    pool = ["a", "b", "[a,b]", "[a,b,b]", "[a,[a,b]]"]
    for _ in range(50):
        g = ev.eval(wd.parse_word_expr(rng.choice(pool)))
        h = ev.eval(wd.parse_word_expr(rng.choice(pool)))
        wg, wh = mg.gamma_weight(g), mg.gamma_weight(h)
        if wg is mg.INFINITE_WEIGHT or wh is mg.INFINITE_WEIGHT or wg + wh > 9:
            continue
        expected = fl.bracket(mg.leading_lie(g, basis), mg.leading_lie(h, basis))
        if expected.is_zero():
            continue
        assert mg.leading_lie(mg.commutator(g, h), basis) == expected


def test_leading_lie_rejects_non_lie_data():
    basis = fl.hall_basis(4)
    g = mg.eval_word("a", 4)
    h = mg.eval_word("b", 4)
    bad = g * h  # degree-1 part a + b is fine, but degree-2 part AB is not
    deeper = mg.MagnusElement(4, [None, None, bad._deg[2], None, None])
    with pytest.raises(ValueError):
        mg.leading_lie(deeper, basis)


# --- the group-level alternating identity -----------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_group_identity(n):
    assert mg.check_group_identity(n)


def test_group_identity_needs_enough_truncation():
    with pytest.raises(ValueError):
        mg.check_group_identity(2, trunc=5)


# --- parser and word canonical form ----------------------------------------


def test_parser_roundtrip():
    for text in ("[a,b,b]", "[a,_4 b]", "a^-3 [b,a]^2 B", "[a,[a,b]]"):
        expr = wd.parse_word_expr(text)
        assert wd.parse_word_expr(str(expr)) == expr


def test_parser_engel_equivalence():
    assert wd.parse_word_expr("[a,_2 b]") == wd.parse_word_expr("[a,b,b]")
    assert wd.parse_word_expr("[a,_1 b]") == wd.parse_word_expr("[a,b]")


def test_words_reduce():
    w = wd.GroupWord.parse("aAbBba")
    assert str(w) == "ba"
    assert (w * w.inverse()).is_identity()


def test_parser_rejects_garbage():
    for text in ("[a,b", "a^", "[,]", "c"):
        with pytest.raises(ValueError):
            wd.parse_word_expr(text)


def test_truncation_must_be_positive():
    with pytest.raises(ValueError):
        mg.MagnusElement.one(0)
