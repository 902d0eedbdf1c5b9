"""Rational 2- and 3-isogenies.

Degree-2 quotients by a rational 2-torsion point and degree-3 quotients
by a rational order-3 subgroup, both via Velu's formulas; the cube
criterion for when a 3-quotient again carries rational 3-torsion, with
its closed-form target model; quotient chains; which side of an isogeny
is etale (pullback scale of minimal invariant differentials); and the
bookkeeping that transports a divisibility certificate across an
isogeny.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .families import FamilyPoint, GrowthReport, build_curve, z3_normalize, z3_point
from .tate import minimal_model
from .weierstrass import (
    WeierstrassModel,
    find_isomorphism,
    point_mul,
    point_order,
)


@dataclass(frozen=True)
class IsogenyRecord:
    source: WeierstrassModel
    target: WeierstrassModel
    degree: int
    kernel: tuple  # rational points generating the kernel
    via: str = "velu"

    def __post_init__(self):
        for P in self.kernel:
            assert self.source.contains(*P)


def _velu_quotient(w: WeierstrassModel, kernel_xs) -> WeierstrassModel:
    # kernel_xs: one x per +-pair of kernel points; uq vanishes exactly at
    # 2-torsion, where the t-contribution is halved
    b2, b4, b6 = w.b2, w.b4, w.b6
    t = Fraction(0)
    ww = Fraction(0)
    for x in kernel_xs:
        uq = 4 * x**3 + b2 * x * x + 2 * b4 * x + b6
        tq = 6 * x * x + b2 * x + b4
        if uq == 0:
            tq /= 2
        t += tq
        ww += uq + x * tq
    return WeierstrassModel(w.a1, w.a2, w.a3, w.a4 - 5 * t, w.a6 - b2 * t - 7 * ww)


def velu_2_isogeny(w: WeierstrassModel, P) -> IsogenyRecord:
    """Quotient by a rational 2-torsion point."""
    P = (Fraction(P[0]), Fraction(P[1]))
    if not w.contains(*P):
        raise ValueError("kernel point is not on the curve")
    if point_order(w, P, 2) != 2:
        raise ValueError("kernel point is not 2-torsion")
    target = _velu_quotient(w, [P[0]])
    return IsogenyRecord(w, target, 2, (P,))


def velu_3_isogeny(w: WeierstrassModel, P) -> IsogenyRecord:
    """Quotient by the subgroup generated by a rational point of order 3."""
    P = (Fraction(P[0]), Fraction(P[1]))
    if not w.contains(*P):
        raise ValueError("kernel point is not on the curve")
    if point_order(w, P, 3) != 3:
        raise ValueError("kernel point is not 3-torsion")
    target = _velu_quotient(w, [P[0]])
    Q = point_mul(w, 2, P)
    return IsogenyRecord(w, target, 3, (P, Q))


@dataclass(frozen=True)
class CubeFailure:
    """The quotient exists but has no rational 3-torsion point (b not a cube)."""

    a: int
    b: int

    def __str__(self):
        return f"b = {self.b} is not a positive cube; the quotient of {z3_point(self.a, self.b)} has no rational 3-torsion"


def icbrt(n: int) -> Optional[int]:
    if n <= 0:
        return None
    lo, hi = 1, 1 << (n.bit_length() // 3 + 2)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**3 <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**3 == n else None


def hadano_quotient(a: int, b: int) -> Union[IsogenyRecord, CubeFailure]:
    """Quotient of y^2 + axy + by = x^3 by its (0,0)-subgroup, when b = t^3.

    For b = t^3 (t > 0) the quotient is y^2 + (a+6t)xy + (a^2+3at+9t^2)t y = x^3
    with discriminant t^3 (a^2+3at+9t^2)^3 (a-3t)^3, and again carries the
    rational 3-torsion point (0,0).  Otherwise the quotient has no rational
    3-torsion point and a CubeFailure is returned instead of a model.
    """
    fp = z3_point(a, b)  # validates parameters, raises on singular input
    t = icbrt(b)
    if t is None:
        return CubeFailure(a, b)
    src = build_curve(fp)
    tgt = WeierstrassModel.from_ainvs([a + 6 * t, 0, (a * a + 3 * a * t + 9 * t * t) * t, 0, 0])
    assert tgt.discriminant == t**3 * (a * a + 3 * a * t + 9 * t * t) ** 3 * (a - 3 * t) ** 3
    P = (Fraction(0), Fraction(0))
    rec = IsogenyRecord(src, tgt, 3, (P, point_mul(src, 2, P)), via="hadano")
    # the closed form agrees with Velu's construction up to isomorphism
    assert find_isomorphism(_velu_quotient(src, [Fraction(0)]), tgt) is not None
    return rec


@dataclass
class IsogenyChain:
    """Curves linked by quotienting out the rational (0,0) 3-subgroup."""

    start: FamilyPoint
    records: list
    family_points: list  # family form of every curve that has one

    @property
    def length(self) -> int:
        """Number of curves in the chain, terminal quotient included."""
        return len(self.records) + 1


def three_isogeny_chain(a: int) -> IsogenyChain:
    """Maximal quotient chain from y^2 + axy + y = x^3.

    Quotients by the rational 3-subgroup are taken while the current
    curve carries one (that is, while the cube criterion holds for its
    family parameters); the final quotient, whose target has no rational
    3-torsion, is still included.  Over Q such a chain has at most 4
    curves, the bound being attained only in the conductor-27 class.
    """
    start = z3_point(a, 1)
    cur = start
    records = []
    fps = [cur]
    while True:
        a_, b_ = cur.params
        res = hadano_quotient(a_, b_)
        if isinstance(res, CubeFailure):
            # terminal step: the quotient still exists (kernel is rational)
            # but its target has no rational 3-torsion point
            w = build_curve(cur)
            records.append(velu_3_isogeny(w, (Fraction(0), Fraction(0))))
            break
        records.append(res)
        t = icbrt(b_)
        cur = z3_normalize(a_ + 6 * t, (a_ * a_ + 3 * a_ * t + 9 * t * t) * t)
        fps.append(cur)
        if len(records) > 6:  # pragma: no cover
            raise ArithmeticError("impossibly long 3-isogeny chain")
    return IsogenyChain(start, records, fps)


# ---------------------------------------------------------------------------
# etale side


def pullback_scale(rec: IsogenyRecord) -> int:
    """|n| where phi^*(omega'_min) = n * omega_min; 1 or deg(phi).

    Velu's formulas preserve the invariant differential of the working
    models, so the scale is read off from the scalings u that carry each
    side to its minimal model.
    """
    cs = find_isomorphism(rec.source, minimal_model(rec.source))
    ct = find_isomorphism(rec.target, minimal_model(rec.target))
    assert cs is not None and ct is not None
    n = Fraction(abs(ct.u)) / Fraction(abs(cs.u))
    if n == 1:
        return 1
    if n == rec.degree:
        return rec.degree
    raise ArithmeticError(f"pullback scale {n} is not 1 or {rec.degree}")


def etale_side(rec: IsogenyRecord) -> str:
    """Which of the isogeny and its dual is etale: "forward" or "dual"."""
    return "forward" if pullback_scale(rec) == 1 else "dual"


# ---------------------------------------------------------------------------
# certificate transfer


@dataclass
class DivisibilityClaim:
    """ord_p(#E(Q)_tors) <= ord_p(u_K * C * M * sqrt(#Sha(E/K))) for one curve.

    `hypotheses` lists everything the claim is conditional on (rank,
    Heegner condition, fixture-sourced Manin constants, ...).
    """

    curve: WeierstrassModel
    prime: int
    d: int
    holds: bool
    hypotheses: list = field(default_factory=list)
    trail: list = field(default_factory=list)


class TransferRefused(ValueError):
    """An isogeny-invariance hypothesis failed; the message names it."""


def transfer_certificate(
    cert: DivisibilityClaim,
    rec: IsogenyRecord,
    p: int,
    source_growth: GrowthReport,
) -> DivisibilityClaim:
    """Transport a divisibility claim across an isogeny.

    Needs (i) the source torsion p-part not to grow from Q to K, checked
    through `source_growth`, and (ii) the claim itself to hold for the
    source.  Compatibility of the isogeny with modular parametrisations
    is recorded as an assumption, not checked.
    """
    if cert.curve == rec.source:
        other = rec.target
    elif cert.curve == rec.target:
        other = rec.source
    else:
        raise TransferRefused("certificate curve is neither side of the isogeny")
    if not cert.holds:
        raise TransferRefused("condition (ii) fails: the source divisibility is not established")
    if cert.prime != p:
        raise TransferRefused(f"certificate is at p = {cert.prime}, not {p}")
    if rec.source == rec.target:
        return cert
    gains = source_growth.gains_2_possible if p == 2 else source_growth.gains_3_possible if p == 3 else None
    if gains is None:
        raise TransferRefused(f"no torsion-growth data at p = {p}")
    if gains:
        raise TransferRefused(
            f"condition (i) fails: torsion may gain {p}-power order over Q(sqrt({source_growth.d}))"
        )
    return DivisibilityClaim(
        curve=other,
        prime=p,
        d=cert.d,
        holds=True,
        hypotheses=cert.hypotheses + ["isogeny respects the modular parametrisations (assumed)"],
        trail=cert.trail
        + [
            f"transferred across a degree-{rec.degree} isogeny",
            f"torsion {p}-part stable over Q(sqrt({source_growth.d}))",
        ],
    )
