import random
from fractions import Fraction

import pytest

from hermdens.locint import norm_integral
from hermdens.reps import (
    WeightProfile,
    a_t,
    classify,
    diagonal,
    dual_vee,
    dual_wedge,
    enumerate_reps,
    is_in_Rh,
    make_monomial,
)
from hermdens.symb import SL_ONE, SignedLaurent, SignedRational, npq
from hermdens.whit import (
    alpha_iwahori_brute,
    alpha_iwahori_n1,
    dual_slope,
    f_plain,
    gram_fingerprint,
    gram_g,
    profile_f,
    profile_f_prime,
    profile_statement,
    slope_of,
    w_density_n1,
    w_density_truncated,
)

A1 = a_t(1, 1)


def anti(e):
    return make_monomial((2, 1), (e, e))


def n1_forms(lo, hi):
    out = [diagonal((m1, m2)) for m1 in range(lo, hi + 1) for m2 in range(lo, hi + 1)]
    out += [anti(e) for e in range(lo, hi + 1)]
    return out


def test_gram_size_mismatch():
    with pytest.raises(ValueError):
        gram_g(diagonal((0, 0)), diagonal((0, 0, 0, 0)))


def test_gram_diag_factorization():
    # diagonal Y against A_1 splits into two unit integrals and two
    # off-diagonal monomial factors
    for m1 in range(-3, 4):
        for m2 in range(-3, 4):
            want = (norm_integral("O_unit", m1) * norm_integral("O_unit", m2 - 1)
                    * SignedRational(npq(min(0, m2) + min(0, m1 + 1) - 2)))
            assert gram_g(diagonal((m1, m2)), A1) == want


def test_gram_fingerprint_tracks_value_equality():
    rng = random.Random(3)
    ys = list(enumerate_reps(2, -2, 2))
    bs = list(enumerate_reps(2, -1, 2))
    for _ in range(250):
        a = (rng.choice(ys), rng.choice(bs))
        b = (rng.choice(ys), rng.choice(bs))
        assert ((gram_fingerprint(*a) == gram_fingerprint(*b))
                == (gram_g(*a) == gram_g(*b)))
    for Y in n1_forms(-3, 1):
        for B in n1_forms(-2, 1):
            assert (gram_fingerprint(Y, B) == (0, 0)) == gram_g(Y, B).is_zero()


def test_gram_antidiag_value():
    unit_vol = SignedRational(SL_ONE - npq(-2))
    want = SignedRational(npq(-2)) * unit_vol * unit_vol
    for e in range(0, 3):
        assert gram_g(anti(e), A1) == want
    for e in range(-3, 0):
        assert gram_g(anti(e), A1) == SignedRational(0)
    assert want.evaluate(3) == Fraction(64, 729)


def test_gram_duality_n1_full():
    ys = n1_forms(-2, 2)
    for h in (0, 1, 2):
        bs = [diagonal((l1, l2)) for l1 in range(-1, 3) for l2 in range(-1, 3)]
        bs += [anti(l) for l in range(-1, 3) if is_in_Rh(anti(l), h)[0]]
        for Y in ys:
            for B in bs:
                assert gram_g(Y, B) == gram_g(dual_wedge(Y, h), dual_vee(B, h)), (h, Y, B)


def test_gram_duality_n2_sample():
    random.seed(11)
    ys = list(enumerate_reps(2, -1, 1))
    for h in (1, 2, 3):
        bs = [diagonal(tuple(random.randint(-1, 2) for _ in range(4))) for _ in range(4)]
        for Y in random.sample(ys, 25):
            for B in bs:
                assert gram_g(Y, B) == gram_g(dual_wedge(Y, h), dual_vee(B, h))


def test_profile_forms_agree():
    for h in (0, 1, 2):
        for t in (0, 1):
            prof = WeightProfile(1, h, t, 0)
            for Y in n1_forms(-2, 2):
                f_base, slope, value = profile_f(Y, prof)
                assert f_base == value
                assert value == profile_statement(Y, prof), (h, t, Y)


def test_profile_forms_agree_n2():
    random.seed(3)
    ys = random.sample(list(enumerate_reps(2, -2, 1)), 30)
    for h in (0, 2, 3):
        for t in (0, 1, 2):
            prof = WeightProfile(2, h, t, 0)
            for Y in ys:
                _, _, value = profile_f(Y, prof)
                assert value == profile_statement(Y, prof)


def test_profile_r_scaling():
    for Y in n1_forms(-2, 1):
        for r in (1, 2):
            prof0 = WeightProfile(1, 1, 1, 0)
            prof = WeightProfile(1, 1, 1, r)
            f_base, slope, _ = profile_f(Y, prof0)
            _, _, value = profile_f(Y, prof)
            assert value == f_base * SignedRational(npq(2 * r * slope))


def test_slope_and_dual_slope():
    for h in (0, 1, 2):
        for Y in n1_forms(-2, 2):
            cls = classify(Y, h)
            assert dual_slope(Y, h) == slope_of(Y) - (cls.frak_c - cls.frak_a)
            assert slope_of(dual_wedge(Y, h)) == dual_slope(Y, h)


def test_profile_prime():
    prof = WeightProfile(1, 1, 1, 0)
    for Y in n1_forms(-2, 1):
        _, slope, value = profile_f(Y, prof)
        assert profile_f_prime(Y, prof) == SignedRational(slope) * value
    with pytest.raises(ValueError):
        profile_f_prime(A1, WeightProfile(1, 1, 1, 1))


def test_prime_difference_identity_n1():
    # prime(Y)/alpha(Y) - prime(dual)/alpha(dual) collapses to the class
    # counter difference times the plain profile
    for h in (0, 1, 2):
        for Y in n1_forms(-2, 2):
            Yd = dual_wedge(Y, h)
            cls = classify(Y, h)
            lhs = (profile_f_prime(Y, WeightProfile(1, h, 1, 0)) / alpha_iwahori_n1(Y)
                   - profile_f_prime(Yd, WeightProfile(1, 2 - h, 1, 0)) / alpha_iwahori_n1(Yd))
            rhs = (SignedRational(cls.frak_c - cls.frak_a) * f_plain(Y, h)
                   * SignedRational(npq(-2 * (2 - h))) / alpha_iwahori_n1(Y))
            assert lhs == rhs, (h, Y)


ALPHA_CASES = [
    (diagonal((0, 0)), Fraction(16, 81)),
    (diagonal((1, 0)), Fraction(16, 27)),
    (diagonal((0, 1)), Fraction(16, 3)),
    (diagonal((1, 1)), Fraction(16)),
    (anti(0), Fraction(8, 27)),
    (anti(1), Fraction(24)),
]


@pytest.mark.parametrize("Y,value", ALPHA_CASES)
def test_alpha_closed_forms_q3(Y, value):
    assert alpha_iwahori_n1(Y).evaluate(3) == value


def test_alpha_brute_matches_closed():
    for Y in (diagonal((0, 0)), diagonal((1, 0)), anti(0)):
        assert alpha_iwahori_brute(Y, 3, 2) == alpha_iwahori_n1(Y).evaluate(3)
    # already stable at depth 1 for the unimodular ones
    assert alpha_iwahori_brute(diagonal((0, 0)), 3, 1) == Fraction(16, 81)
    assert alpha_iwahori_brute(anti(0), 3, 1) == Fraction(8, 27)


def test_alpha_brute_guards():
    with pytest.raises(ValueError):
        alpha_iwahori_brute(diagonal((0, 0)), 3, 3)
    with pytest.raises(ValueError):
        alpha_iwahori_brute(diagonal((0, 0)), 7, 1)
    with pytest.raises(ValueError):
        alpha_iwahori_brute(diagonal((-1, 0)), 3, 1)


def test_density_unimodular_anchor():
    value, prime = w_density_n1(A1, 1, 1)
    assert value == SignedRational(SignedLaurent({-3: -1, -4: 2, -5: -1}))
    assert value.evaluate(3) == Fraction(16, 243)
    # regression pin for the prime at the same point
    assert prime == SignedRational(SignedLaurent({-4: -1, -5: 1}))
    assert prime.evaluate(3) == Fraction(-4, 243)


def test_density_vanishes_at_t0():
    value, prime = w_density_n1(A1, 1, 0)
    assert value == SignedRational(0)


def test_density_kink_pad_invariance():
    for B, h, t in ((A1, 1, 1), (diagonal((2, -1)), 1, 1), (diagonal((0, 1)), 2, 1)):
        assert w_density_n1(B, h, t, kink_pad=4) == w_density_n1(B, h, t, kink_pad=6)


def test_density_truncated_report():
    rep = w_density_truncated(A1, WeightProfile(1, 1, 1, 0), 3, 20)
    assert abs(rep["value"] - Fraction(16, 243)) < Fraction(1, 10 ** 9)
    assert rep["tail_report"]["window"] == 20
    assert rep["tail_report"]["value_shift"] < 1e-9
