"""Local additive character integrals over the unramified quadratic extension.

Two families of integrals appear in the Gram factor products:

    norm kind:        int_R psi(pi^e Nm(x)) dx           for one region R
    trace_pair kind:  int_{R1 x R2} psi(pi^e Tr(x y)) dx dy

with regions O (the full ring of integers), O_unit (units), and piO (the
maximal ideal).  psi has conductor exactly the base ring, the residue field
of the extension has q^2 elements, and vol(O) = 1.

Closed forms are expressed in the signed variable s = -q.  The independent
oracle charsum_oracle recomputes every value by summing actual character
values over residue rings of Z_p[w]/(w^2 - c): root-of-unity bookkeeping is
done exactly (fiber counts must be constant on Galois orbits, and sums of
primitive p^l-th roots collapse to 1, -1, or 0), so the result is a Fraction
with no numerical cancellation anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .symb import SL_ONE, SignedLaurent, SignedRational, npq


@dataclass(frozen=True)
class Region:
    kind: str

    def __post_init__(self):
        if self.kind not in ("O", "O_unit", "piO"):
            raise ValueError(f"unknown region kind {self.kind!r}")


R_O = Region("O")
R_UNIT = Region("O_unit")
R_PI = Region("piO")


def _as_region(r) -> Region:
    if isinstance(r, Region):
        return r
    return Region(str(r))


# ---------------------------------------------------------------------------
# closed forms


def _sr_mono(exp: int) -> SignedRational:
    return SignedRational(npq(exp))


_UNIT_VOL = SignedRational(SL_ONE - npq(-2))  # 1 - q^-2 in s


def norm_integral(region, e: int) -> SignedRational:
    r = _as_region(region)
    if r.kind == "O":
        return _sr_mono(min(0, e))
    if r.kind == "piO":
        return _sr_mono(min(0, e + 2) - 2)
    # units: nonzero only for e >= -1
    if e >= 0:
        return _UNIT_VOL
    if e == -1:
        return SignedRational(npq(-1) - npq(-2))  # -q^-1 - q^-2
    return SignedRational(0)


def trace_integral_J1(e: int) -> SignedRational:
    return SignedRational(1 if e >= 0 else 0)


def trace_pair_integral(r1, r2, e: int) -> SignedRational:
    """Symmetric in the two regions."""
    k1, k2 = _as_region(r1).kind, _as_region(r2).kind
    pair = tuple(sorted((k1, k2)))
    if pair == ("O", "O"):
        return _sr_mono(2 * min(0, e))
    if pair == ("O", "piO"):
        return _sr_mono(2 * min(0, e + 1) - 2)
    if pair == ("piO", "piO"):
        return _sr_mono(2 * min(0, e + 2) - 4)
    if pair == ("O", "O_unit"):
        return _UNIT_VOL if e >= 0 else SignedRational(0)
    if pair == ("O_unit", "piO"):
        if e >= -1:
            return SignedRational(npq(-2)) * _UNIT_VOL
        return SignedRational(0)
    # both unit
    if e >= 0:
        return _UNIT_VOL * _UNIT_VOL
    if e == -1:
        return SignedRational(npq(-2)) * _UNIT_VOL * SignedRational(-1)
    return SignedRational(0)


# ---------------------------------------------------------------------------
# character sum oracle


def _check_prime(p: int):
    if p < 3 or p % 2 == 0 or any(p % k == 0 for k in range(3, int(p ** 0.5) + 1, 2)):
        raise ValueError(f"p must be an odd prime, got {p}")


def _nonresidue(p: int) -> int:
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return c
    raise AssertionError(f"no quadratic nonresidue mod {p}")


def _collapse(fibers: dict, p: int, mp: int) -> Fraction:
    """Sum N_v zeta_{p^mp}^v exactly.

    Requires the counts to be constant on each Galois orbit (v of fixed
    p-valuation); sums of all primitive p^l-th roots are 1, -1, 0 for
    l = 0, 1, >=2.
    """
    if mp == 0:
        return Fraction(sum(fibers.values()))
    total = Fraction(0)
    for l in range(mp + 1):
        # v with valuation mp - l
        if l == 0:
            members = [0]
        else:
            step = p ** (mp - l)
            members = [v for v in range(step, p ** mp, step) if v % (p ** (mp - l + 1)) != 0]
        counts = {fibers.get(v, 0) for v in members}
        if len(counts) != 1:
            raise AssertionError(
                f"fiber counts not Galois invariant at level {l}: {sorted(counts)}")
        n = counts.pop()
        if l == 0:
            total += n
        elif l == 1:
            total -= n
        # primitive p^l-th roots sum to 0 for l >= 2
    return total


def _region_coord_depth(kind: str):
    """Region as signed combination of coordinate-wise divisibility depths.

    Each part constrains both coordinates of x = a + b w to p^depth Z.
    O_unit is O minus piO.
    """
    if kind == "O":
        return [(0, 1)]
    if kind == "piO":
        return [(1, 1)]
    return [(0, 1), (1, -1)]


def charsum_oracle(p: int, kind: str, regions, e: int, depth: int) -> Fraction:
    """Recompute a table integral by explicit character sums.

    regions: one region for kind='norm', a pair for kind='trace_pair'.
    depth bounds the residue precision the caller vouches for; the
    enumeration itself runs at the exact modulus max(1, -e), which the
    integrand depends on.
    """
    _check_prime(p)
    e = int(e)
    if depth < abs(e) + 2:
        raise ValueError(f"depth {depth} too small: need at least |e|+2 = {abs(e) + 2}")
    mp = max(0, -e)
    m = max(1, mp)
    c = _nonresidue(p)
    pm = p ** m
    pmp = p ** mp

    if kind == "norm":
        if isinstance(regions, (tuple, list)):
            if len(regions) != 1:
                raise ValueError("norm kind takes exactly one region")
            regions = regions[0]
        r = _as_region(regions).kind
        sq = [a * a % pm for a in range(pm)]
        fibers: dict[int, int] = {}
        if r == "piO":
            coords = range(0, pm, p)
        else:
            coords = range(pm)
        for a in coords:
            fa = sq[a]
            for b in coords:
                if r == "O_unit" and a % p == 0 and b % p == 0:
                    continue
                v = (fa - c * sq[b]) % pmp if mp else 0
                fibers[v] = fibers.get(v, 0) + 1
        return _collapse(fibers, p, mp) * Fraction(1, pm * pm)

    if kind == "trace_pair":
        if not isinstance(regions, (tuple, list)) or len(regions) != 2:
            raise ValueError("trace_pair kind takes a pair of regions")
        k1 = _as_region(regions[0]).kind
        k2 = _as_region(regions[1]).kind
        total = Fraction(0)
        for d1, s1 in _region_coord_depth(k1):
            for d2, s2 in _region_coord_depth(k2):
                ta = _coord_double_sum(p, m, mp, 2, d1, d2)
                tb = _coord_double_sum(p, m, mp, 2 * c, d1, d2)
                total += s1 * s2 * ta * tb
        return total * Fraction(1, p ** (4 * m))

    raise ValueError(f"unknown kind {kind!r}")


def _coord_double_sum(p: int, m: int, mp: int, k: int, da: int, du: int) -> int:
    """Sum of zeta_{p^mp}^{k a u} over a in p^da Z/p^m, u in p^du Z/p^m.

    The inner complete sum over u is p^{m-du} when p^mp divides k a p^du
    and zero otherwise (valid since m >= mp).
    """
    pmp = p ** mp
    if mp == 0:
        return p ** (m - da) * p ** (m - du)
    inner = p ** (m - du)
    step = p ** da
    pdu = p ** du
    total = 0
    for a in range(0, p ** m, step):
        if (k * a * pdu) % pmp == 0:
            total += inner
    return total


def _trace_brute(p: int, k1: str, k2: str, e: int) -> Fraction:
    """Quadruple loop reference for the trace pair oracle.  Small p^m only."""
    mp = max(0, -e)
    m = max(1, mp)
    c = _nonresidue(p)
    pm = p ** m
    pmp = p ** mp

    def points(kind):
        for a in range(pm):
            for b in range(pm):
                ok = True
                if kind == "piO":
                    ok = a % p == 0 and b % p == 0
                elif kind == "O_unit":
                    ok = not (a % p == 0 and b % p == 0)
                if ok:
                    yield a, b

    fibers: dict[int, int] = {}
    for a, b in points(k1):
        for u, v in points(k2):
            t = (2 * (a * u + c * b * v)) % pmp if mp else 0
            fibers[t] = fibers.get(t, 0) + 1
    return _collapse(fibers, p, mp) * Fraction(1, p ** (4 * m))
