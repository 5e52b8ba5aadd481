from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hermdens.symb import (
    SignedLaurent,
    SignedRational,
    geometric_sum,
    npq,
    qpow,
    sl_eval,
    sr_arith,
    sr_solve_linear,
)

S = SignedLaurent.monomial(1)
ONE = SignedLaurent.one()

coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=7)
exponents = st.integers(min_value=-6, max_value=6)
laurents = st.dictionaries(exponents, coeffs, max_size=5).map(SignedLaurent)
eval_points = st.sampled_from([3, 5, 7, 9, 11, 13])


def test_zero_coefficients_dropped():
    p = SignedLaurent({2: Fraction(0), 1: 3, -4: Fraction(1, 2), 0: 0})
    assert set(p.coeffs) == {1, -4}
    assert SignedLaurent({0: 0}).is_zero()


def test_monomial_and_range():
    m = SignedLaurent.monomial(-3, 7)
    assert m.is_monomial() and m.min_exp() == m.max_exp() == -3
    with pytest.raises(ValueError):
        SignedLaurent.zero().min_exp()


def test_sign_convention():
    # q = -s, so q^k = (-1)^k s^k and (-q)^k = s^k
    assert sl_eval(npq(3), 3) == -27
    assert sl_eval(qpow(3), 3) == 27
    assert sl_eval(qpow(-2), 3) == Fraction(1, 9)


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == SignedLaurent.zero()


@given(laurents, laurents, eval_points)
def test_evaluation_is_ring_hom(a, b, q):
    assert sl_eval(a * b, q) == sl_eval(a, q) * sl_eval(b, q)
    assert sl_eval(a + b, q) == sl_eval(a, q) + sl_eval(b, q)


def test_negative_power_requires_monomial():
    assert (S ** -3) == SignedLaurent.monomial(-3)
    with pytest.raises(ValueError):
        (ONE + S) ** -1


def test_rational_canonical_form():
    # common polynomial factors cancel, denominator gets constant term 1
    g = ONE - S
    a = SignedRational((ONE + S) * g, (S ** 2) * g)
    b = SignedRational(ONE + S, S ** 2)
    assert a == b
    assert a.den.min_exp() == 0
    assert a.den.coeffs.get(0) in (None, Fraction(1)) or a.den == ONE
    # denominator constant coefficient is exactly 1
    r = SignedRational(ONE, SignedLaurent({0: 3, 1: 5}))
    assert r.den.coeffs[0] == 1


def test_rational_q_plus_one_squared_over_q5():
    Q = SignedRational(qpow(1))
    v = (Q + 1) ** 2 / Q ** 5
    assert v.evaluate(3) == Fraction(16, 243)
    assert v == SignedRational(SignedLaurent({-3: -1, -4: 2, -5: -1}))


@given(laurents, laurents)
def test_rational_cross_multiplication_consistency(a, b):
    # canonical equality agrees with cross multiplication
    if b.is_zero():
        return
    x = SignedRational(a, b)
    assert x.num * b == a * x.den


@given(laurents, laurents, eval_points)
def test_rational_eval(a, b, q):
    if b.is_zero() or sl_eval(b, q) == 0:
        return
    x = SignedRational(a, b)
    assert x.evaluate(q) == sl_eval(a, q) / sl_eval(b, q)


def test_sr_arith_dispatch():
    a = SignedRational(S)
    b = SignedRational(ONE + S)
    assert sr_arith(a, b, "add") == SignedRational(ONE + S.scaled(2))
    assert sr_arith(a, b, "sub") == SignedRational(-ONE)
    assert sr_arith(a, b, "mul") == SignedRational(S * (ONE + S))
    assert sr_arith(a, b, "div") == SignedRational(S, ONE + S)
    with pytest.raises(ValueError):
        sr_arith(a, b, "mod")


@given(laurents)
def test_json_round_trip(a):
    p = SignedRational(a, ONE + S ** 2)
    assert SignedRational.from_json(p.to_json()) == p


def test_geometric_sum_infinite_examples():
    # sum over e >= 0 of q^-5 (q-1) q^-e
    first = qpow(-4) - qpow(-5)
    assert geometric_sum(first, qpow(-1), "infinite") == SignedRational(S ** -4)
    # sum over e >= 0 of q^-5 (q^2-1) (-q)^-4e
    first = qpow(-3) - qpow(-5)
    Q = SignedRational(qpow(1))
    target = SignedRational(qpow(-1)) / (Q ** 2 + 1)
    assert geometric_sum(first, npq(-4), "infinite") == target


def test_geometric_sum_finite_matches_term_sum():
    first = npq(2, 3)
    ratio = npq(-1, Fraction(1, 2))
    total = SignedRational(0)
    acc = SignedLaurent(first.coeffs)
    for _ in range(5):
        total = total + acc
        acc = acc * ratio
    assert geometric_sum(first, ratio, 5) == total


def test_geometric_sum_ratio_one():
    assert geometric_sum(npq(1), ONE, 4) == SignedRational(npq(1, 4))
    with pytest.raises(ValueError):
        geometric_sum(npq(1), ONE, "infinite")


def test_geometric_sum_errors():
    with pytest.raises(ValueError):
        geometric_sum(npq(0), npq(1), "infinite")  # expanding ratio
    with pytest.raises(ValueError):
        geometric_sum(npq(0), npq(-1), 0)
    with pytest.raises(ValueError):
        geometric_sum(SignedLaurent.zero(), npq(-1), 2)


@given(laurents, st.integers(min_value=-5, max_value=-1), st.fractions(min_value=-4, max_value=4, max_denominator=3))
def test_geometric_sum_functional_identity(first, rexp, rc):
    if first.is_zero() or rc == 0:
        return
    ratio = SignedLaurent.monomial(rexp, rc)
    total = geometric_sum(first, ratio, "infinite")
    assert total * SignedRational(ONE - ratio) == SignedRational(first)


def test_solve_linear_2x2():
    M = [[S, ONE], [ONE, S]]
    rhs = [S * S + 1, S.scaled(2)]
    x = sr_solve_linear(M, rhs)
    assert x[0] == SignedRational(S)
    assert x[1] == SignedRational(1)


def test_solve_linear_singular_names_column():
    M = [[S, S], [S, S]]
    with pytest.raises(ValueError, match="column 1"):
        sr_solve_linear(M, [ONE, ONE])
    M = [[SignedLaurent.zero(), ONE], [SignedLaurent.zero(), S]]
    with pytest.raises(ValueError, match="column 0"):
        sr_solve_linear(M, [ONE, ONE])


@settings(max_examples=25)
@given(st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_solve_linear_random_systems(rows):
    M = [[SignedLaurent.monomial(v, 1) if v else ONE for v in row] for row in rows]
    rhs = [ONE, S, S ** 2]
    try:
        x = sr_solve_linear(M, rhs)
    except ValueError:
        return
    for i in range(3):
        acc = SignedRational(0)
        for j in range(3):
            acc = acc + SignedRational(M[i][j]) * x[j]
        assert acc == SignedRational(rhs[i])
