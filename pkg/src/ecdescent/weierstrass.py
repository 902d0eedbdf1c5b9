"""Weierstrass models over Q.

Exact rational coefficients, the standard b/c invariants, [u,r,s,t]
coordinate changes, quadratic twists of y^2 = x^3 + Ax^2 + Bx, and
point arithmetic used by the torsion and isogeny machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .arith import Rational, factorize, squarefree_part


@dataclass(frozen=True)
class WeierstrassModel:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    @staticmethod
    def from_ainvs(ainvs: Iterable[Rational]) -> "WeierstrassModel":
        a1, a2, a3, a4, a6 = (Fraction(a) for a in ainvs)
        return WeierstrassModel(a1, a2, a3, a4, a6)

    @property
    def ainvs(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- invariants ---------------------------------------------------------

    @property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        return (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )

    @property
    def c4(self) -> Fraction:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> Fraction:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @property
    def is_singular(self) -> bool:
        return self.discriminant == 0

    @property
    def j_invariant(self) -> Fraction:
        d = self.discriminant
        if d == 0:
            raise SingularModelError("j undefined: discriminant is zero")
        return self.c4**3 / d

    def invariants(self) -> tuple[Fraction, ...]:
        """(b2, b4, b6, b8, c4, c6, disc, j)."""
        return (self.b2, self.b4, self.b6, self.b8, self.c4, self.c6, self.discriminant, self.j_invariant)

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    # -- equation -----------------------------------------------------------

    def rhs(self, x: Fraction) -> Fraction:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def y_terms(self, x: Fraction) -> Fraction:
        return self.a1 * x + self.a3

    def contains(self, x: Rational, y: Rational) -> bool:
        x, y = Fraction(x), Fraction(y)
        return y * y + self.y_terms(x) * y == self.rhs(x)

    def two_division_poly(self) -> list[Fraction]:
        """4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the 2-torsion x's."""
        return [self.b6, 2 * self.b4, self.b2, Fraction(4)]

    def __str__(self) -> str:
        def fmt(a: Fraction) -> str:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

        return "[" + ",".join(fmt(a) for a in self.ainvs) + "]"


class SingularModelError(ValueError):
    """Raised when an operation needs a nonsingular model."""


def parse_model(text: str) -> WeierstrassModel:
    """Inverse of str(): "[a1,a2,a3,a4,a6]" with rational entries."""
    inner = text.strip().lstrip("[").rstrip("]")
    parts = [Fraction(tok.strip()) for tok in inner.split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected five coefficients, got {len(parts)}")
    return WeierstrassModel(*parts)


@dataclass(frozen=True)
class CoordinateChange:
    """x = u^2 x' + r,  y = u^3 y' + u^2 s x' + t."""

    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    @staticmethod
    def of(u: Rational, r: Rational = 0, s: Rational = 0, t: Rational = 0) -> "CoordinateChange":
        u = Fraction(u)
        if u == 0:
            raise ValueError("u must be nonzero")
        return CoordinateChange(u, Fraction(r), Fraction(s), Fraction(t))

    @staticmethod
    def identity() -> "CoordinateChange":
        return CoordinateChange.of(1)

    def compose(self, other: "CoordinateChange") -> "CoordinateChange":
        """The change equivalent to applying self, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return CoordinateChange(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
        )

    def inverse(self) -> "CoordinateChange":
        u, r, s, t = self.u, self.r, self.s, self.t
        return CoordinateChange(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)

    def apply_point(self, x: Rational, y: Rational) -> tuple[Fraction, Fraction]:
        """Old-model coordinates of a point given in new-model coordinates."""
        x, y = Fraction(x), Fraction(y)
        return (self.u**2 * x + self.r, self.u**3 * y + self.u**2 * self.s * x + self.t)

    def pull_point(self, x: Rational, y: Rational) -> tuple[Fraction, Fraction]:
        """New-model coordinates of a point on the old model."""
        inv = self.inverse()
        return inv.apply_point(x, y)


def change_variables(w: WeierstrassModel, c: CoordinateChange) -> WeierstrassModel:
    """Apply [u,r,s,t]; disc scales by u^-12, c4 by u^-4, j is preserved."""
    if c.u == 0:
        raise ValueError("u must be nonzero")
    u, r, s, t = c.u, c.r, c.s, c.t
    a1, a2, a3, a4, a6 = w.ainvs
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    na3 = (a3 + r * a1 + 2 * t) / u**3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    return WeierstrassModel(na1, na2, na3, na4, na6)


def integral_model(w: WeierstrassModel) -> tuple[WeierstrassModel, CoordinateChange]:
    """Clear denominators by a [1/m,0,0,0] change; returns (model, change)."""
    need: dict[int, int] = {}
    for i, a in zip((1, 2, 3, 4, 6), w.ainvs):
        if a.denominator > 1:
            for p, e in factorize(a.denominator):
                need[p] = max(need.get(p, 0), -(-e // i))
    m = 1
    for p, k in need.items():
        m *= p**k
    c = CoordinateChange.of(Fraction(1, m))
    out = change_variables(w, c)
    assert out.is_integral
    return out, c


def quadratic_twist(w: WeierstrassModel, d: int) -> WeierstrassModel:
    """Twist of y^2 = x^3 + Ax^2 + Bx by squarefree d: y^2 = x^3 + Adx^2 + Bd^2x."""
    A, B = two_torsion_form(w)
    if d == 0:
        raise ValueError("twist parameter must be nonzero")
    if squarefree_part(d) != d:
        raise ValueError("twist parameter must be squarefree")
    return WeierstrassModel.from_ainvs([0, A * d, 0, B * d * d, 0])


def two_torsion_form(w: WeierstrassModel) -> tuple[Fraction, Fraction]:
    """Read off (A, B) from a model of the shape y^2 = x^3 + Ax^2 + Bx."""
    if w.a1 != 0 or w.a3 != 0 or w.a6 != 0:
        raise ValueError("model is not of the shape y^2 = x^3 + Ax^2 + Bx")
    return w.a2, w.a4


# -- point arithmetic -------------------------------------------------------

#: The point at infinity.
O = None

Point = Optional[tuple[Fraction, Fraction]]


def point_neg(w: WeierstrassModel, P: Point) -> Point:
    if P is None:
        return None
    x, y = P
    return (x, -y - w.a1 * x - w.a3)


def point_add(w: WeierstrassModel, P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    a1, a2, a3, a4, a6 = w.ainvs
    if x1 == x2 and y1 + y2 + a1 * x2 + a3 == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def point_mul(w: WeierstrassModel, n: int, P: Point) -> Point:
    if n < 0:
        return point_mul(w, -n, point_neg(w, P))
    R: Point = None
    Q = P
    while n:
        if n & 1:
            R = point_add(w, R, Q)
        Q = point_add(w, Q, Q)
        n >>= 1
    return R


def point_order(w: WeierstrassModel, P: Point, bound: int = 17) -> int:
    """Exact order of a point, or 0 if it exceeds `bound` (then infinite here)."""
    Q = P
    for n in range(1, bound + 1):
        if Q is None:
            return n
        Q = point_add(w, Q, P)
    return 0


# -- isomorphism testing ----------------------------------------------------


def find_isomorphism(w1: WeierstrassModel, w2: WeierstrassModel) -> Optional[CoordinateChange]:
    """A change c with change_variables(w1, c) == w2, if one exists over Q."""
    if w1.is_singular or w2.is_singular:
        raise SingularModelError("isomorphism testing needs nonsingular models")
    ratio = w1.discriminant / w2.discriminant
    # u^12 = disc1/disc2
    for u in _rational_twelfth_roots(ratio):
        s = (w2.a1 * u - w1.a1) / 2
        r = (w2.a2 * u**2 - w1.a2 + s * w1.a1 + s * s) / 3
        t = (w2.a3 * u**3 - w1.a3 - r * w1.a1) / 2
        if change_variables(w1, CoordinateChange(u, r, s, t)) == w2:
            return CoordinateChange(u, r, s, t)
    return None


def is_isomorphic(w1: WeierstrassModel, w2: WeierstrassModel) -> bool:
    return find_isomorphism(w1, w2) is not None


def _rational_twelfth_roots(q: Fraction) -> list[Fraction]:
    if q <= 0:
        return []
    num = _int_nth_root(q.numerator, 12)
    den = _int_nth_root(q.denominator, 12)
    if num is None or den is None:
        return []
    u = Fraction(num, den)
    return [u, -u]


def _int_nth_root(n: int, k: int) -> Optional[int]:
    if n < 1:
        return None
    lo, hi = 1, 1 << (n.bit_length() // k + 2)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**k == n else None
