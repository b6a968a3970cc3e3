"""Closed-form families: integers, supernaturals, 2x2 matrices, a^k = b^l."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from monoid_topos import InputError
from monoid_topos.families import (IntMatrix2, SupernaturalNumber,
                                   adjugate_check, factorize, is_prime,
                                   mat_in_M_y_e11, mat_in_M_y_zero,
                                   mat_prime_membership, parse_matrix2,
                                   parse_supernatural, smith_normal_form,
                                   sn_divides, sn_in_A_y, sn_in_M_y,
                                   tk_class, tk_degree, tk_delta,
                                   tk_element_key, tk_normal_form,
                                   tk_words_equal, valuation)
from monoid_topos.presentation import Word


# -- integers ----------------------------------------------------------------


def test_is_prime_small():
    primes = [n for n in range(2, 30) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=10 ** 6))
def test_factorize_reconstructs(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p) and e >= 1
        prod *= p ** e
    assert prod == n


def test_valuation():
    assert valuation(24, 2) == 3
    assert valuation(24, 3) == 1
    assert valuation(24, 5) == 0


# -- supernatural numbers ----------------------------------------------------


def test_parse_supernatural():
    y = parse_supernatural("2,3,5", "2:inf,3:1")
    assert y.primes == (2, 3, 5)
    assert y.exponents == (None, 1, 0)
    assert str(y) == "2:inf,3:1"
    assert y.sigma == (3, 5)  # finite-exponent primes
    assert y.exponent(7) == 0


def test_parse_supernatural_errors():
    with pytest.raises(InputError):
        parse_supernatural("2,4", "2:1")  # 4 not prime
    with pytest.raises(InputError):
        parse_supernatural("2,3", "5:1")  # undeclared prime
    with pytest.raises(InputError):
        parse_supernatural("2,3", "2:1,2:2")  # duplicate
    with pytest.raises(InputError):
        parse_supernatural("2,3", "2:-1")  # negative exponent


def test_sn_divides():
    y = parse_supernatural("2,3", "2:inf,3:1")
    assert sn_divides(8, y)
    assert sn_divides(12, y)
    assert not sn_divides(9, y)
    assert not sn_divides(5, y)
    assert sn_divides(1, y)


SAMPLE_RATIONALS = [
    Fraction(t) for t in (
        "1", "2", "3", "5", "1/2", "1/3", "1/4", "1/5", "1/6", "1/8",
        "1/9", "1/12", "2/3", "3/4", "5/4", "4/5", "9/8", "8/9", "5/18",
        "35/16")
]

SAMPLE_YS = {
    "2:inf": {2: None},
    "2:inf,3:1": {2: None, 3: 1},
    "3:inf,5:2": {3: None, 5: 2},
}


def test_membership_matches_valuation_oracle():
    for y_text, exps in SAMPLE_YS.items():
        y = parse_supernatural("2,3,5", y_text)
        for q in SAMPLE_RATIONALS:
            assert sn_in_A_y(q, y) == oracles.rational_in_A(q, exps), (
                y_text, q, "A")
            assert sn_in_M_y(q, y) == oracles.rational_in_M(q, exps), (
                y_text, q, "M")


def test_membership_nesting_and_positivity():
    y = parse_supernatural("2,3", "2:inf,3:1")
    for q in SAMPLE_RATIONALS:
        if sn_in_M_y(q, y):
            assert sn_in_A_y(q, y)  # fixers embed in the flat module
    with pytest.raises(InputError):
        sn_in_A_y(Fraction(-1, 2), y)


# -- 2x2 matrices ------------------------------------------------------------


def test_parse_matrix2():
    m = parse_matrix2("2 0; 0 3")
    assert (m.a, m.b, m.c, m.d) == (2, 0, 0, 3)
    g = parse_matrix2("1/2 3; 0 5", rational=True)
    assert g.a == Fraction(1, 2)
    with pytest.raises(InputError):
        parse_matrix2("1 2 3; 4 5 6")
    with pytest.raises(InputError):
        parse_matrix2("1 2")
    with pytest.raises(InputError):
        parse_matrix2("1 x; 2 3")


def test_snf_worked_example():
    u, d, v = smith_normal_form(IntMatrix2(2, 0, 0, 3))
    assert (d.a, d.b, d.c, d.d) == (1, 0, 0, 6)
    assert u * d * v == IntMatrix2(2, 0, 0, 3)
    assert abs(u.det) == 1 and abs(v.det) == 1


def _snf_identities(m):
    u, d, v = smith_normal_form(m)
    assert abs(u.det) == 1, m
    assert abs(v.det) == 1, m
    assert d.b == 0 and d.c == 0, m
    assert d.a >= 0 and d.d >= 0, m
    if d.a:
        assert d.d % d.a == 0, m
    assert u * d * v == m, m
    assert d.a * d.d == abs(m.det), m
    assert adjugate_check(m), m


def test_snf_random_matrices():
    rng = random.Random(20260823)
    done = 0
    while done < 300:
        m = IntMatrix2(*(rng.randint(-9, 9) for _ in range(4)))
        if m.det == 0:
            continue
        _snf_identities(m)
        done += 1


def test_snf_degenerate_and_extreme():
    for m in (IntMatrix2(1, 0, 0, 1), IntMatrix2(0, 1, 1, 0),
              IntMatrix2(-1, 0, 0, -1), IntMatrix2(6, 4, 2, 8),
              IntMatrix2(9, -9, -9, 8)):
        _snf_identities(m)


def test_mat_prime_membership():
    m = IntMatrix2(2, 1, 3, 4)  # det 5
    assert mat_prime_membership(m, [5])
    assert mat_prime_membership(m, [2, 5])
    assert not mat_prime_membership(m, [2, 3])
    with pytest.raises(InputError):
        mat_prime_membership(IntMatrix2(1, 2, 2, 4), [2])  # det 0
    with pytest.raises(InputError):
        mat_prime_membership(m, [6])  # composite sigma entry


def test_mat_point_stabilizers():
    ok = parse_matrix2("3 7/2; 0 1/5", rational=True)
    assert mat_in_M_y_e11(ok)
    assert not mat_in_M_y_e11(parse_matrix2("1/2 0; 0 1", rational=True))
    assert not mat_in_M_y_e11(parse_matrix2("1 0; 2 1", rational=True))
    assert mat_in_M_y_zero(ok)
    with pytest.raises(InputError):
        mat_in_M_y_e11(parse_matrix2("1 1; 1 1", rational=True))


# -- the a^k = b^l family ----------------------------------------------------


def test_tk_degree_and_delta():
    # degree: a counts l, b counts k
    assert tk_degree("ab", 2, 3) == 5
    assert tk_degree("aa", 2, 3) == 6
    assert tk_degree("bbb", 2, 3) == 6
    # the central element has empty class, niveau 0, level 1
    assert tk_delta("aa", 2, 3) == 0
    assert tk_delta("ab", 2, 3) == 5


def test_tk_normal_form_cases():
    assert tk_normal_form("aa", 2, 3) == (1, Word(()))
    assert tk_normal_form("bbb", 2, 3) == (1, Word(()))
    assert tk_normal_form("bbbb", 2, 3) == (1, Word(("b",)))
    assert tk_normal_form("ab", 2, 3) == (0, Word(("a", "b")))
    assert tk_normal_form("", 2, 3) == (0, Word(()))


def test_tk_equal_basic():
    assert tk_words_equal("aa", "bbb", 2, 3)
    assert tk_words_equal("baa", "aab", 2, 3)
    assert not tk_words_equal("ab", "ba", 2, 3)
    assert not tk_words_equal("a", "b", 2, 3)
    assert tk_words_equal("aaa", "abbb", 2, 3)


def test_tk_validation():
    with pytest.raises(InputError):
        tk_words_equal("a", "a", 1, 3)
    with pytest.raises(InputError):
        tk_normal_form("c", 2, 3)


def _all_words(max_len):
    words = [""]
    out = [""]
    for _ in range(max_len):
        words = [w + g for w in words for g in "ab"]
        out.extend(words)
    return out


def test_tk_equal_matches_swap_closure():
    classes = oracles.swap_closure_classes(2, 3, max_word_len=6, cap=10)
    words = _all_words(6)
    for w1 in words:
        for w2 in words:
            assert tk_words_equal(w1, w2, 2, 3) == (
                classes[w1] == classes[w2]), (w1, w2)


def test_tk_degree_equation():
    # degree = niveau + level * k * l on every word
    classes = oracles.swap_closure_classes(2, 3, max_word_len=6, cap=10)
    for w in _all_words(6):
        level, tail = tk_normal_form(w, 2, 3)
        assert tk_degree(w, 2, 3) == tk_delta(w, 2, 3) + level * 6
        assert tk_delta(w, 2, 3) == oracles.delta_by_search(
            w, classes, 2, 3, cap=10)


def test_tk_key_injective_on_small_ball():
    classes = oracles.swap_closure_classes(2, 3, max_word_len=5, cap=9)
    words = _all_words(5)
    for w1 in words:
        for w2 in words:
            assert (tk_element_key(w1, 2, 3) == tk_element_key(w2, 2, 3)) == (
                classes[w1] == classes[w2]), (w1, w2)


def test_tk_central_element_commutes():
    for w in _all_words(5):
        assert tk_words_equal("aa" + w, w + "aa", 2, 3), w


def test_tk_other_parameters():
    classes = oracles.swap_closure_classes(3, 5, max_word_len=5, cap=10)
    for w1 in _all_words(5):
        for w2 in _all_words(5):
            assert tk_words_equal(w1, w2, 3, 5) == (
                classes[w1] == classes[w2]), (w1, w2)
