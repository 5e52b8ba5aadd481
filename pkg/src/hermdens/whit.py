"""Weighted representation densities for hermitian monomial forms.

The density W_{h,t}(B, r) is an infinite sum over monomial hermitian forms Y
of a product of three factors:

    gram_g(Y, B)       local character integrals over the entry slots
    profile value      a pure power of s = -q controlled by the index classes
    1 / alpha(Y)       the Iwahori stabilizer density of Y

Everything stays exact: terms are SignedRational, the tails beyond the finite
kink region are geometric and get summed in closed form after the code checks
the progression really is geometric.

Derivatives are taken against the lattice scaling variable X = s^{-2r} with
the sign convention  prime = -d/dX at X = 1,  so a monomial c X^m has prime
-m c.  Profile values are c X^{-S} with S the slope, hence prime = S c.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import BudgetError
from .locint import norm_integral, trace_pair_integral
from .reps import MonomialHermitian, WeightProfile, classify, diagonal, dual_vee, dual_wedge, make_monomial
from .symb import SL_ONE, SR_ONE, SR_ZERO, SignedLaurent, SignedRational, npq, qpow


def _min0(x: int) -> int:
    return x if x < 0 else 0


def _slot_region(k: int, j: int) -> str:
    if k < j:
        return "O"
    if k == j:
        return "O_unit"
    return "piO"


@lru_cache(maxsize=None)
def _slot_integral(fixed: bool, r1: str, r2: str, exp: int):
    """Slot table value as a plain exponent -> int dict, None when zero.

    Every table value is a polynomial in s with integer coefficients; the
    gram product convolves those dicts and wraps the result once.
    """
    fac = norm_integral(r1, exp) if fixed else trace_pair_integral(r1, r2, exp)
    assert fac.den == SignedLaurent.one()
    if fac.num.is_zero():
        return None
    out = {}
    for e, c in fac.num.coeffs.items():
        assert c.denominator == 1
        out[e] = c.numerator
    return out


# The gram product multiplies dozens of tiny integer Laurent polynomials.
# Packing one signed coefficient per 128-bit digit turns each polynomial
# multiply into a single big-int multiply; the digits never collide because
# the product of the per-slot coefficient abs-sums bounds every coefficient
# of the product, and we check that bound before trusting the decode.
_DIGIT_BITS = 128
_DIGIT_BASE = 1 << _DIGIT_BITS
_DIGIT_HALF = _DIGIT_BASE >> 1


@lru_cache(maxsize=None)
def _slot_packed(fixed: bool, r1: str, r2: str, exp: int):
    """Slot value as (packed, low, weight); None when the value is zero.

    packed = sum of c_e << (_DIGIT_BITS * (e - low)), weight = sum |c_e|.
    """
    fac = _slot_integral(fixed, r1, r2, exp)
    if fac is None:
        return None
    low = min(fac)
    packed = 0
    weight = 0
    for e, c in fac.items():
        packed += c << (_DIGIT_BITS * (e - low))
        weight += abs(c)
    return packed, low, weight


def _slot_key(Y: MonomialHermitian, B: MonomialHermitian, k: int, j: int):
    pk, pj = B.sigma_of(k), Y.sigma_of(j)
    if (pk, pj) < (k, j):
        return None
    exp = Y.e_of(j) + B.e_of(k)
    if (pk, pj) == (k, j):
        return True, _slot_region(k, j), "", exp
    return False, _slot_region(k, j), _slot_region(pk, pj), exp


def _gram_dicts(Y: MonomialHermitian, B: MonomialHermitian) -> SignedRational:
    # plain dict convolution, kept as the fallback for weights too large
    # to pack (never reached at desk scale)
    acc = {0: 1}
    for k in range(1, Y.size + 1):
        for j in range(1, Y.size + 1):
            key = _slot_key(Y, B, k, j)
            if key is None:
                continue
            fac = _slot_integral(*key)
            if fac is None:
                return SR_ZERO
            new: dict[int, int] = {}
            for e1, c1 in acc.items():
                for e2, c2 in fac.items():
                    ke = e1 + e2
                    v = new.get(ke, 0) + c1 * c2
                    if v:
                        new[ke] = v
                    elif ke in new:
                        del new[ke]
            acc = new
    return SignedRational(SignedLaurent(acc))


def _gram_packed(Y: MonomialHermitian, B: MonomialHermitian):
    acc = 1
    low = 0
    weight = 1
    for k in range(1, Y.size + 1):
        for j in range(1, Y.size + 1):
            key = _slot_key(Y, B, k, j)
            if key is None:
                continue
            got = _slot_packed(*key)
            if got is None:
                return None
            acc *= got[0]
            low += got[1]
            weight *= got[2]
    return acc, low, weight


def gram_g(Y: MonomialHermitian, B: MonomialHermitian) -> SignedRational:
    """Product of slot integrals for the pair (Y, B).

    Slots (k, j) are paired by (k, j) -> (tau(k), sigma(j)); fixed slots give
    norm integrals, two-element orbits give trace pair integrals.  The slot
    exponent e_j + lam_k is orbit constant.
    """
    if Y.size != B.size:
        raise ValueError("size mismatch")
    got = _gram_packed(Y, B)
    if got is None:
        return SR_ZERO
    acc, low, weight = got
    if weight >= _DIGIT_HALF:
        return _gram_dicts(Y, B)
    coeffs = {}
    e = low
    while acc:
        d = acc & (_DIGIT_BASE - 1)
        if d >= _DIGIT_HALF:
            d -= _DIGIT_BASE
        acc = (acc - d) >> _DIGIT_BITS
        if d:
            coeffs[e] = d
        e += 1
    return SignedRational(SignedLaurent(coeffs))


def gram_fingerprint(Y: MonomialHermitian, B: MonomialHermitian) -> tuple:
    """Canonical encoding of gram_g(Y, B) for bulk equality sweeps.

    Returns (packed, low) with the lowest digit nonzero, (0, 0) for a
    vanishing product.  Fingerprints are equal exactly when the gram
    values are equal, at a fraction of the cost of building them.
    """
    if Y.size != B.size:
        raise ValueError("size mismatch")
    got = _gram_packed(Y, B)
    if got is None:
        return 0, 0
    acc, low, weight = got
    if weight >= _DIGIT_HALF:
        acc = 0
        poly = _gram_dicts(Y, B).num.coeffs
        low = min(poly)
        for e, c in poly.items():
            assert abs(c.numerator) < _DIGIT_HALF
            acc += c.numerator << (_DIGIT_BITS * (e - low))
    mask = _DIGIT_BASE - 1
    while acc and not acc & mask:
        acc >>= _DIGIT_BITS
        low += 1
    return (acc, low) if acc else (0, 0)


# ---------------------------------------------------------------------------
# profile exponents


def _profile_items(Y: MonomialHermitian, h: int):
    """Per-orbit exponent contributions (m_coef, t_coef, t_const).

    The full profile exponent is sum(M*m_coef + T*t_coef + T*t_const) with
    M = 2n - t + 2r and T = t.
    """
    cls = classify(Y, h)
    items = []
    for j in sorted(cls.a1):
        e = Y.e_of(j)
        items.append((_min0(e), _min0(e + 1), -2))
    for j in sorted(cls.a2):
        if Y.sigma_of(j) > j:
            e = Y.e_of(j)
            items.append((2 * _min0(e), 2 * _min0(e + 1), -4))
    for j in sorted(cls.b1):
        e = Y.e_of(j)
        items.append((2 * _min0(e), 2 * _min0(e), -2))
    for j in sorted(cls.c1):
        e = Y.e_of(j)
        items.append((_min0(e), _min0(e - 1), 0))
    for j in sorted(cls.c2):
        if Y.sigma_of(j) > j:
            e = Y.e_of(j)
            items.append((2 * _min0(e), 2 * _min0(e - 1), 0))
    return items


def slope_of(Y: MonomialHermitian) -> int:
    """Power of X = s^{-2r} in the profile, negated: sum of min(0, e_j)."""
    return sum(_min0(e) for e in Y.e)


def profile_f(Y: MonomialHermitian, prof: WeightProfile):
    """Product form of the profile factor.

    Returns (f_base, slope, value): value = s^N at the profile's r,
    f_base the same at r = 0, slope the X-exponent sign-flipped so that
    value = f_base * X^{-slope}.
    """
    if Y.size != 2 * prof.n:
        raise ValueError("size mismatch")
    items = _profile_items(Y, prof.h)
    t = prof.t
    m_sum = sum(a for a, _, _ in items)
    base_exp = (2 * prof.n - t) * m_sum + sum(t * b + t * c for _, b, c in items)
    value = SignedRational(npq(base_exp + 2 * prof.r * m_sum))
    return SignedRational(npq(base_exp)), m_sum, value


def f_plain(Y: MonomialHermitian, h: int) -> SignedRational:
    """Profile with both multipliers set to n and no constant terms."""
    n = Y.n
    items = _profile_items(Y, h)
    return SignedRational(npq(sum(n * a + n * b for a, b, _ in items)))


def profile_statement(Y: MonomialHermitian, prof: WeightProfile) -> SignedRational:
    """Closed rearrangement of profile_f at r = 0 via the class counters."""
    cls = classify(Y, prof.h)
    n, t, h = prof.n, prof.t, prof.h
    shift = (n - t) * (cls.frak_c - cls.frak_a) - 2 * t * (2 * n - h)
    return SignedRational(npq(shift)) * f_plain(Y, prof.h)


def profile_f_prime(Y: MonomialHermitian, prof: WeightProfile) -> SignedRational:
    """prime of the profile at X = 1; only meaningful with prof.r == 0."""
    if prof.r != 0:
        raise ValueError("prime is taken at r = 0")
    _, slope, value = profile_f(Y, prof)
    return SignedRational(slope) * value


def dual_slope(Y: MonomialHermitian, h: int) -> int:
    """Slope of the wedge dual, computed on Y itself by shifting the mins."""
    cls = classify(Y, h)
    total = 0
    for j in range(1, Y.size + 1):
        e = Y.e_of(j)
        if j in cls.a1 or j in cls.a2:
            total += _min0(e + 1)
        elif j in cls.c1 or j in cls.c2:
            total += _min0(e - 1)
        else:
            total += _min0(e)
    return total


# ---------------------------------------------------------------------------
# Iwahori stabilizer density, n = 1


_QP1SQ = (SL_ONE - npq(1)) * (SL_ONE - npq(1))  # (q+1)^2


def alpha_iwahori_n1(Y: MonomialHermitian) -> SignedRational:
    if Y.size != 2:
        raise ValueError("closed forms cover 2x2 only")
    if Y.is_diagonal():
        m1, m2 = Y.e
        if m1 >= m2:
            return SignedRational(_QP1SQ * qpow(-4 + m1 + 3 * m2))
        return SignedRational(_QP1SQ * qpow(-2 + 3 * m1 + m2))
    e = Y.e_of(1)
    head = qpow(3) - qpow(1)  # q(q^2 - 1)
    return SignedRational(head * qpow(-4 + 4 * e))


def alpha_iwahori_brute(Y: MonomialHermitian, p: int, d: int) -> Fraction:
    """Count Iwahori cosets mod pi^d stabilizing Y, scaled by q^{-4d}.

    Entries live in the unramified quadratic extension modulo p^d, written
    x + y w with w^2 a nonresidue.  Exponents of Y must be nonnegative so the
    congruence closes over integers.  Small budgets only.
    """
    if Y.size != 2:
        raise ValueError("brute force covers 2x2 only")
    if d > 2 or p > 5:
        raise BudgetError("budget: d <= 2 and p <= 5")
    if min(Y.e) < 0:
        raise ValueError("nonnegative exponents only")

    from .locint import _nonresidue

    P = p ** d
    C = _nonresidue(p)

    def mul(u, v):
        return ((u[0] * v[0] + C * u[1] * v[1]) % P, (u[0] * v[1] + u[1] * v[0]) % P)

    def conj(u):
        return (u[0], -u[1] % P)

    ymat = [[(0, 0)] * 2 for _ in range(2)]
    for j in (1, 2):
        ymat[Y.sigma_of(j) - 1][j - 1] = (pow(p, Y.e_of(j), P), 0)

    def row_apply(row):
        # row . Y as a pair of extension elements
        out = []
        for col in range(2):
            acc = (0, 0)
            for u in range(2):
                m = mul(row[u], ymat[u][col])
                acc = ((acc[0] + m[0]) % P, (acc[1] + m[1]) % P)
            out.append(acc)
        return out

    def dot_conj(w, row):
        acc = (0, 0)
        for u in range(2):
            m = mul(w[u], conj(row[u]))
            acc = ((acc[0] + m[0]) % P, (acc[1] + m[1]) % P)
        return acc

    units = [(x, y) for x in range(P) for y in range(P) if x % p or y % p]
    every = [(x, y) for x in range(P) for y in range(P)]
    ideal = [(x, y) for x in range(0, P, p) for y in range(0, P, p)]

    top = []
    for a in units:
        for b in every:
            row = (a, b)
            if dot_conj(row_apply(row), row) == ymat[0][0]:
                top.append((row, row_apply(row)))
    bottom = []
    for c in ideal:
        for e in units:
            row = (c, e)
            if dot_conj(row_apply(row), row) == ymat[1][1]:
                bottom.append(row)
    if len(top) * len(bottom) > 5_000_000:
        raise BudgetError("budget: cross stage too large")
    target = ymat[0][1]
    count = 0
    for _, w in top:
        for row2 in bottom:
            if dot_conj(w, row2) == target:
                count += 1
    return Fraction(count, p ** (4 * d))


# ---------------------------------------------------------------------------
# the weighted density, n = 1


def _antidiag(e: int) -> MonomialHermitian:
    return make_monomial((2, 1), (e, e))


def _term_n1(Y, B, prof) -> SignedRational:
    g = gram_g(Y, B)
    if g.num.is_zero():
        return SR_ZERO
    _, _, val = profile_f(Y, prof)
    return g * val / alpha_iwahori_n1(Y)


def _geo_tail(first: SignedRational, ratio: SignedRational) -> SignedRational:
    """Closed form for first * (1 + ratio + ratio^2 + ...).

    The ratio must be a single power of s with negative exponent and
    coefficient of absolute value at most 1, which makes the numeric series
    converge at every prime.
    """
    num, den = ratio.num, ratio.den
    if den != SL_ONE or not num.is_monomial():
        raise AssertionError(f"tail ratio not monomial: {ratio!r}")
    ((exp, coef),) = num.coeffs.items()
    if exp >= 0 or abs(coef) > 1:
        raise AssertionError(f"tail ratio does not contract: {ratio!r}")
    return first / (SR_ONE - ratio)


def w_density_n1(B: MonomialHermitian, h: int, t: int, r: int = 0,
                 kink_pad: int = 4):
    """Exact value and prime of the weighted density over all 2x2 forms.

    Terms vanish identically below -K and follow exact geometric
    progressions above +K in each exponent direction, where K exceeds every
    kink of the piecewise structure; kink_pad sets the safety margin and the
    result does not depend on it (there is a test for that).
    """
    if B.size != 2:
        raise ValueError("n = 1 only")
    prof = WeightProfile(1, h, t, r)
    K = max(abs(l) for l in B.e) + kink_pad

    def dterm(m1, m2):
        return _term_n1(diagonal((m1, m2)), B, prof)

    def aterm(e):
        return _term_n1(_antidiag(e), B, prof)

    def dslope(m1, m2):
        return _min0(m1) + _min0(m2)

    value = SR_ZERO
    deriv = SR_ZERO

    for m1 in range(-K, K + 1):
        for m2 in range(-K, K + 1):
            tm = dterm(m1, m2)
            if tm.num.is_zero():
                continue
            value = value + tm
            s = dslope(m1, m2)
            if s:
                deriv = deriv + SignedRational(s) * tm
    for e in range(-K, K + 1):
        tm = aterm(e)
        if tm.num.is_zero():
            continue
        value = value + tm
        s = 2 * _min0(e)
        if s:
            deriv = deriv + SignedRational(s) * tm

    # below -K every term dies on a unit-region integral; spot check
    for probe in (dterm(-K - 1, 0), dterm(0, -K - 1), dterm(-K - 1, K + 1),
                  aterm(-K - 1)):
        assert probe.num.is_zero(), "term survives below the cutoff"

    def strip(term_at, slope_const):
        t1, t2, t3 = term_at(1), term_at(2), term_at(3)
        if t1.num.is_zero():
            assert t2.num.is_zero(), "tail restarts after a zero"
            return SR_ZERO, SR_ZERO
        rho = t2 / t1
        assert t3 == t2 * rho, "tail is not geometric"
        val = _geo_tail(t1, rho)
        return val, SignedRational(slope_const) * val

    for m2 in range(-K, K + 1):
        v, dv = strip(lambda i, m2=m2: dterm(K + i, m2), _min0(m2))
        value = value + v
        deriv = deriv + dv
    for m1 in range(-K, K + 1):
        v, dv = strip(lambda i, m1=m1: dterm(m1, K + i), _min0(m1))
        value = value + v
        deriv = deriv + dv
    av, adv = strip(lambda i: aterm(K + i), 0)
    value = value + av

    # corner m1 >= m2 > K, walked along m1 and along the diagonal
    v11 = dterm(K + 1, K + 1)
    if not v11.num.is_zero():
        rho1 = dterm(K + 2, K + 1) / v11
        rhod = dterm(K + 2, K + 2) / v11
        assert dterm(K + 3, K + 1) == dterm(K + 2, K + 1) * rho1
        assert dterm(K + 3, K + 2) == dterm(K + 2, K + 2) * rho1
        assert dterm(K + 3, K + 3) == dterm(K + 2, K + 2) * rhod
        value = value + _geo_tail(_geo_tail(v11, rho1), rhod)
    else:
        assert dterm(K + 2, K + 1).num.is_zero()
        assert dterm(K + 2, K + 2).num.is_zero()

    # corner m2 > m1 > K
    v12 = dterm(K + 1, K + 2)
    if not v12.num.is_zero():
        rho2 = dterm(K + 1, K + 3) / v12
        rhod = dterm(K + 2, K + 3) / v12
        assert dterm(K + 1, K + 4) == dterm(K + 1, K + 3) * rho2
        assert dterm(K + 2, K + 4) == dterm(K + 2, K + 3) * rho2
        assert dterm(K + 3, K + 4) == dterm(K + 2, K + 3) * rhod
        value = value + _geo_tail(_geo_tail(v12, rho2), rhod)
    else:
        assert dterm(K + 1, K + 3).num.is_zero()
        assert dterm(K + 2, K + 3).num.is_zero()

    return value, deriv


def w_density_truncated(B: MonomialHermitian, prof: WeightProfile, q: int,
                        e_window: int) -> dict:
    """Numeric partial sums at a concrete prime, with a tail report.

    The window is widened downward to the vanishing cutoff so that only the
    upper tail is actually truncated.
    """
    if B.size != 2 or prof.n != 1:
        raise ValueError("n = 1 only")
    K = max(abs(l) for l in B.e) + 4

    def partial(w):
        lo = -max(w, K)
        value = Fraction(0)
        deriv = Fraction(0)
        for m1 in range(lo, w + 1):
            for m2 in range(lo, w + 1):
                tm = _term_n1(diagonal((m1, m2)), B, prof)
                if tm.num.is_zero():
                    continue
                x = tm.evaluate(q)
                value += x
                deriv += (_min0(m1) + _min0(m2)) * x
        for e in range(lo, w + 1):
            tm = _term_n1(_antidiag(e), B, prof)
            if tm.num.is_zero():
                continue
            x = tm.evaluate(q)
            value += x
            deriv += 2 * _min0(e) * x
        return value, deriv

    v1, d1 = partial(e_window)
    v2, d2 = partial(e_window + 2)
    return {
        "value": v1,
        "derivative": d1,
        "tail_report": {
            "window": e_window,
            "value_shift": float(abs(v2 - v1)),
            "derivative_shift": float(abs(d2 - d1)),
        },
    }
