"""Correction constants linking derivative densities across the duality.

The constants come out of a (2n+1) x (2n+1) linear system whose rows are
indexed by the class counter difference c = frak_c - frak_a, which ranges
over [-(2n-h), h] as i runs from 1 to 2n+1.  Columns hold the profile
monomials of the two dual towers at t = 0..n-1 plus one final column for the
t = n term; the right hand side carries the counter itself.

The matrix is a scaled two-node Vandermonde in disguise: with nodes x_j and
column scalings alpha_j as below, s^{2n(2n-h)} B_{ij} = x_j^{i-1} alpha_j.
That both routes (direct elimination, Lagrange coefficient inversion) give
the same constants is part of the test surface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symb import (
    SL_ONE,
    SL_ZERO,
    SR_ONE,
    SR_ZERO,
    SignedLaurent,
    SignedRational,
    npq,
    sr_solve_linear,
)


def build_system(n: int, h: int):
    """Matrix and right hand side of the constant system."""
    if not (1 <= n and 0 <= h <= 2 * n):
        raise ValueError(f"need n >= 1 and 0 <= h <= 2n, got n={n}, h={h}")
    N = 2 * n + 1
    cut = 2 * n - h
    dual_pref = -4 * n * (n - h)
    assert (2 * n - h) ** 2 - h ** 2 == 4 * n * (n - h)
    mat = []
    rhs = []
    for i in range(1, N + 1):
        c = i - (cut + 1)
        row = [SignedRational(npq((n - t) * c - 2 * t * cut)) for t in range(n)]
        row += [SignedRational(npq(dual_pref - (n - t) * c - 2 * t * h)) for t in range(n)]
        row.append(SignedRational(npq(-2 * n * cut)))
        mat.append(row)
        rhs.append(SignedRational(npq(-2 * n * cut)) * SignedRational(c))
    return mat, rhs


@dataclass(frozen=True)
class BetaSolution:
    n: int
    h: int
    beta_h: tuple
    beta_dual: tuple
    delta: SignedRational


def solve_constants(n: int, h: int) -> BetaSolution:
    """Solve the system; the middle block carries a sign flip by convention."""
    mat, rhs = build_system(n, h)
    vec = sr_solve_linear(mat, rhs)
    beta_h = tuple(vec[:n])
    beta_dual = tuple(v * SignedRational(-1) for v in vec[n:2 * n])
    return BetaSolution(n, h, beta_h, beta_dual, vec[2 * n])


def beta_closed_last(n: int) -> SignedRational:
    """Closed form for the top constant of the h = n - 1 system."""
    num = SignedRational(SL_ONE - npq(n))
    den = (SignedRational(npq(3 * n + 1))
           * SignedRational(SL_ONE - npq(1))
           * SignedRational(SL_ONE - npq(-(n + 1))))
    return num / den


def _nodes(n: int, h: int):
    xs, al = [], []
    for j in range(1, 2 * n + 2):
        if j <= n:
            xs.append(npq(n + 1 - j))
            al.append(npq((n + 1 - j) * (2 * n - h)))
        elif j <= 2 * n:
            xs.append(npq(j - 2 * n - 1))
            al.append(npq((2 * n + 1 - j) * (2 * n + h)))
        else:
            xs.append(SL_ONE)
            al.append(SL_ONE)
    return xs, al


def vandermonde_factor_check(n: int, h: int) -> bool:
    """Entrywise check of s^{2n(2n-h)} B_ij = x_j^{i-1} alpha_j."""
    mat, _ = build_system(n, h)
    xs, al = _nodes(n, h)
    scale = SignedRational(npq(2 * n * (2 * n - h)))
    for i in range(2 * n + 1):
        for j in range(2 * n + 1):
            lhs = scale * mat[i][j]
            rhs = SignedRational(xs[j]) ** i * SignedRational(al[j])
            if lhs != rhs:
                return False
    return True


def vandermonde_inverse_route(n: int, h: int):
    """Solve the system through Lagrange coefficients instead of elimination.

    y_ij is the z^{2n+1-j} coefficient of prod_{m != i} (1 - x_m z)/(x_m - x_i);
    the solution is diag(alpha)^{-1} y rhs rescaled by s^{2n(2n-h)}.
    """
    xs, al = _nodes(n, h)
    _, rhs = build_system(n, h)
    N = 2 * n + 1
    scale = SignedRational(npq(2 * n * (2 * n - h)))
    out = []
    for i in range(N):
        coeffs = [SL_ONE]
        den = SR_ONE
        for m in range(N):
            if m == i:
                continue
            grown = [SL_ZERO] * (len(coeffs) + 1)
            for k, ck in enumerate(coeffs):
                grown[k] = grown[k] + ck
                grown[k + 1] = grown[k + 1] - ck * xs[m]
            coeffs = grown
            den = den * SignedRational(xs[m] - xs[i])
        acc = SR_ZERO
        for j in range(N):
            y_ij = SignedRational(coeffs[N - 1 - j]) / den
            acc = acc + y_ij * rhs[j]
        out.append(scale * acc / SignedRational(al[i]))
    return out


def verify_thm314(B, h: int) -> dict:
    """Both sides of the derivative correction identity at n = 1.

    Needs B in the h-shape so the vee dual exists.
    """
    from .reps import dual_vee
    from .whit import w_density_n1

    sol = solve_constants(1, h)
    Bd = dual_vee(B, h)
    w_h1, w_h1p = w_density_n1(B, h, 1)
    w_d1, w_d1p = w_density_n1(Bd, 2 - h, 1)
    w_h0, _ = w_density_n1(B, h, 0)
    w_d0, _ = w_density_n1(Bd, 2 - h, 0)
    lhs = w_h1p - w_d1p
    rhs = (sol.beta_h[0] * w_h0 - sol.beta_dual[0] * w_d0
           + sol.delta * w_h1)
    return {"lhs": lhs, "rhs": rhs, "match": lhs == rhs}
