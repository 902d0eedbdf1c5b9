"""Torsion-family parametrizations and exact rational torsion.

The six one- and two-parameter families used throughout the toolkit (for
Z/2, Z/3, Z/4, Z/2+Z/2, Z/2+Z/4, Z/2+Z/6 torsion) are built here, and
torsion subgroups of arbitrary curves over Q are computed exactly:
reduction mod good primes bounds the order, division polynomials and
point halving locate the points, and every generator is verified by
scalar multiplication.  A Lutz-Nagell enumeration is provided as an
independent oracle for small discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import (
    factorize,
    is_square,
    kronecker_symbol,
    padic_valuation,
    square_class,
    SquareClass,
)
from .polyutil import (
    poly_add,
    poly_eval,
    poly_mul,
    poly_scale,
    poly_sqrt_monic_quartic,
    quadratic_rational_factors,
    rational_roots,
)
from .tate import minimal_model
from .weierstrass import (
    CoordinateChange,
    Point,
    SingularModelError,
    WeierstrassModel,
    change_variables,
    integral_model,
    point_add,
    point_mul,
    point_neg,
    point_order,
)


class SingularParameterError(SingularModelError):
    """Family parameters landing on a degenerate (disc = 0) curve."""


Z2Z4 = "z2z4"
Z4 = "z4"
Z2Z2 = "z2z2"
Z2 = "z2"
Z2Z6 = "z2z6"
Z3 = "z3"

FAMILIES = (Z2Z4, Z4, Z2Z2, Z2, Z2Z6, Z3)

#: Advertised generic torsion structure of each family.
ADVERTISED = {
    Z2Z4: (2, 4),
    Z4: (1, 4),
    Z2Z2: (2, 2),
    Z2: (1, 2),
    Z2Z6: (2, 6),
    Z3: (1, 3),
}


@dataclass(frozen=True)
class FamilyPoint:
    family: str
    params: tuple

    def __str__(self):
        return f"{self.family}{self.params}"


def z2z4_point(alpha: int, beta: int) -> FamilyPoint:
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha, beta must be positive")
    if math.gcd(alpha, beta) != 1:
        raise ValueError("alpha, beta must be coprime")
    if 4 * alpha == beta:
        raise ValueError("alpha/beta = 1/4 is excluded")
    return FamilyPoint(Z2Z4, (alpha, beta))


def z4_point(beta: int) -> FamilyPoint:
    if beta == 0 or beta == -16:
        raise SingularParameterError(f"beta = {beta} gives a singular curve")
    return FamilyPoint(Z4, (beta,))


def z2z2_point(a: int, b: int) -> FamilyPoint:
    if a == b or a == 0 or b == 0:
        raise SingularParameterError(f"(a, b) = {(a, b)} gives a singular curve")
    # normalize so that min(ord_p a, ord_p b) <= 1 at every common prime
    changed = True
    while changed:
        changed = False
        g = math.gcd(a, b)
        for p, _ in factorize(g) if g > 1 else []:
            while padic_valuation(a, p) >= 2 and padic_valuation(b, p) >= 2:
                a //= p * p
                b //= p * p
                changed = True
    return FamilyPoint(Z2Z2, (a, b))


def z2_point(A: int, B: int) -> FamilyPoint:
    if B == 0 or A * A == 4 * B:
        raise SingularParameterError(f"(A, B) = {(A, B)} gives a singular curve")
    return FamilyPoint(Z2, (A, B))


def z2z6_point(S: int, T: int) -> FamilyPoint:
    if S <= 0:
        raise ValueError("S must be positive")
    if math.gcd(S, T) != 1:
        raise ValueError("S, T must be coprime")
    if T in (S, 5 * S, 3 * S, -3 * S, 9 * S):
        raise SingularParameterError(f"(S, T) = {(S, T)} gives a singular curve")
    return FamilyPoint(Z2Z6, (S, T))


def z3_point(a: int, b: int) -> FamilyPoint:
    if b <= 0:
        raise ValueError("b must be positive")
    if a**3 == 27 * b:
        raise SingularParameterError(f"(a, b) = {(a, b)} gives a singular curve")
    for q, _ in factorize(a) if a else []:
        if b % q**3 == 0:
            raise ValueError(f"prime {q} divides a with q^3 | b; reduce the parameters")
    if a == 0 and b != 1:
        # a = 0 is divisible by every prime; insist b is cube-free then
        for q, e in factorize(b):
            if e >= 3:
                raise ValueError(f"prime {q} divides a with q^3 | b; reduce the parameters")
    return FamilyPoint(Z3, (a, b))


def z2z6_uv(S: int, T: int) -> tuple[int, int]:
    """The coprime (u, v) with u/v = (T-3S)(T+3S) / (2S(5S-T))."""
    num = (T - 3 * S) * (T + 3 * S)
    den = 2 * S * (5 * S - T)
    g = math.gcd(num, den)
    return num // g, den // g


def build_curve(fp: FamilyPoint) -> WeierstrassModel:
    """Integral model of a family member; raises on singular parameters."""
    fam, par = fp.family, fp.params
    if fam == Z2Z4:
        alpha, beta = par
        lam = Fraction(16 * alpha**2 - beta**2, 16 * beta**2)
        m = 4 * beta
        w = WeierstrassModel.from_ainvs([m, -lam * m**2, -lam * m**3, 0, 0])
    elif fam == Z4:
        (beta,) = par
        w = WeierstrassModel.from_ainvs([beta, -beta, -(beta**2), 0, 0])
    elif fam == Z2Z2:
        a, b = par
        w = WeierstrassModel.from_ainvs([0, a + b, 0, a * b, 0])
    elif fam == Z2:
        A, B = par
        w = WeierstrassModel.from_ainvs([0, A, 0, B, 0])
    elif fam == Z2Z6:
        S, T = par
        u, v = z2z6_uv(S, T)
        w = WeierstrassModel.from_ainvs([u - v, -v * (v + u), -u * v * (v + u), 0, 0])
    elif fam == Z3:
        a, b = par
        w = WeierstrassModel.from_ainvs([a, 0, b, 0, 0])
    else:
        raise ValueError(f"unknown family {fam}")
    if w.is_singular:
        raise SingularParameterError(f"{fp} gives a singular curve")
    return w


# ---------------------------------------------------------------------------
# division polynomials (univariate parts)


def division_poly(w: WeierstrassModel, n: int) -> list[Fraction]:
    """f_n(x): psi_n for odd n, psi_n / psi_2 for even n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b2, b4, b6, b8 = w.b2, w.b4, w.b6, w.b8
    F = [b6, 2 * b4, b2, Fraction(4)]  # psi_2^2
    FF = poly_mul(F, F)
    cache: dict[int, list[Fraction]] = {
        0: [],
        1: [Fraction(1)],
        2: [Fraction(1)],
        3: [b8, 3 * b6, 3 * b4, b2, Fraction(3)],
        4: [
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            10 * b8,
            10 * b6,
            5 * b4,
            b2,
            Fraction(2),
        ],
    }

    def f(m: int) -> list[Fraction]:
        if m in cache:
            return cache[m]
        if m == -1:
            return poly_scale(f(1), Fraction(-1))
        if m % 2:
            k = (m - 1) // 2
            t1 = poly_mul(f(k + 2), poly_mul(f(k), poly_mul(f(k), f(k))))
            t2 = poly_mul(f(k - 1), poly_mul(f(k + 1), poly_mul(f(k + 1), f(k + 1))))
            if k % 2 == 0:
                val = poly_add(poly_mul(FF, t1), poly_scale(t2, Fraction(-1)))
            else:
                val = poly_add(t1, poly_scale(poly_mul(FF, t2), Fraction(-1)))
        else:
            k = m // 2
            inner = poly_add(
                poly_mul(f(k + 2), poly_mul(f(k - 1), f(k - 1))),
                poly_scale(poly_mul(f(k - 2), poly_mul(f(k + 1), f(k + 1))), Fraction(-1)),
            )
            val = poly_mul(f(k), inner)
        cache[m] = val
        return val

    return f(n)


def duplication_numerator(w: WeierstrassModel) -> list[Fraction]:
    """phi_2(x) = x^4 - b4 x^2 - 2 b6 x - b8; x(2P) = phi_2 / psi_2^2."""
    return [-w.b8, -2 * w.b6, -w.b4, Fraction(0), Fraction(1)]


# ---------------------------------------------------------------------------
# torsion computation


MAZUR_STRUCTURES = {(1, n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)} | {
    (2, 2),
    (2, 4),
    (2, 6),
    (2, 8),
}
MAZUR_ORDERS = sorted({n1 * n2 for n1, n2 in MAZUR_STRUCTURES})


@dataclass
class TorsionGroup:
    structure: tuple[int, int]  # (n1, n2), n1 | n2, group = Z/n1 x Z/n2
    generators: list  # [(point, order)] on the input model
    model: WeierstrassModel

    @property
    def order(self) -> int:
        return self.structure[0] * self.structure[1]

    def all_points(self) -> list:
        (n1, n2) = self.structure
        pts = {None}
        g2 = self.generators[-1][0] if self.generators else None
        g1 = self.generators[0][0] if n1 > 1 else None
        for i in range(n1):
            for j in range(n2):
                P = point_mul(self.model, j, g2) if g2 else None
                if g1 and i:
                    P = point_add(self.model, P, g1)
                pts.add(P)
        return sorted(p for p in pts if p is not None) + [None]

    def contains_structure(self, other: tuple[int, int]) -> bool:
        return self.structure[0] % other[0] == 0 and self.structure[1] % other[1] == 0


def count_points_mod_p(w: WeierstrassModel, p: int) -> int:
    """#E(F_p) for a prime of good reduction, by direct character sums."""
    a1, a2, a3, a4, a6 = (int(a) % p for a in w.ainvs)
    total = p + 1
    for x in range(p):
        rhs = (((x + a2) * x + a4) * x + a6) % p
        yterm = (a1 * x + a3) % p
        disc = (yterm * yterm + 4 * rhs) % p
        total += kronecker_symbol(disc, p)
    return total


def torsion_order_bound(w: WeierstrassModel, samples: int = 8) -> int:
    """gcd of #E(F_p) over several good odd primes; a multiple of #tors."""
    disc = int(w.discriminant)
    bound = 0
    count = 0
    p = 3
    while count < samples and p < 3000:
        if disc % p:
            bound = math.gcd(bound, count_points_mod_p(w, p))
            count += 1
            if bound in (1, 2):
                break
        p += 2
        while not _is_small_prime(p):
            p += 2
    return bound


def _is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53):
        if n % q == 0:
            return n == q
    i = 59
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _y_on_curve(w: WeierstrassModel, x: Fraction) -> list[Fraction]:
    """Rational y with (x, y) on w."""
    yt = w.y_terms(x)
    disc = yt * yt + 4 * w.rhs(x)
    if disc < 0 or not is_square(disc):
        return []
    s = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
    ys = {(-yt + s) / 2, (-yt - s) / 2}
    return sorted(ys)


def two_torsion_points(w: WeierstrassModel) -> list:
    pts = []
    for x in rational_roots(w.two_division_poly()):
        y = -(w.y_terms(x)) / 2
        if w.contains(x, y):
            pts.append((x, y))
    return sorted(pts)


def halve_point(w: WeierstrassModel, P) -> list:
    """All rational Q with 2Q = P."""
    xP = P[0]
    quartic = poly_add(duplication_numerator(w), poly_scale(w.two_division_poly(), -xP))
    if point_order(w, P, 2) == 2:
        # preimages pair up; the quartic is the square of a rational quadratic
        q = poly_sqrt_monic_quartic([Fraction(c) for c in quartic])
        assert q is not None
        xs = rational_roots(q)
    else:
        xs = rational_roots(quartic)
    out = []
    for x in xs:
        for y in _y_on_curve(w, x):
            if point_mul(w, 2, (x, y)) == P:
                out.append((x, y))
    return sorted(set(out))


def points_of_order_n(w: WeierstrassModel, n: int) -> list:
    """Rational points of exact order n found through f_n."""
    out = []
    for x in rational_roots(division_poly(w, n)):
        for y in _y_on_curve(w, x):
            if point_order(w, (x, y), n + 1) == n:
                out.append((x, y))
    return sorted(set(out))


def torsion_subgroup(w: WeierstrassModel) -> TorsionGroup:
    """Exact rational torsion subgroup, generators verified by scalar mult."""
    if w.is_singular:
        raise SingularModelError("torsion of a singular model")
    wi, chg = integral_model(w)
    bound = torsion_order_bound(wi)

    # 2-primary part; cyclic 2-power order is at most 8 over Q
    t2 = two_torsion_points(wi)
    full2 = len(t2) == 3
    best2: Point = None
    best2_order = 1
    for T in t2:
        P, k = T, 2
        while bound % (2 * k) == 0 and k < 8:
            halves = halve_point(wi, P)
            if not halves:
                break
            P, k = halves[0], 2 * k
        if k > best2_order:
            best2, best2_order = P, k

    # odd parts
    odd_point: Point = None
    odd_order = 1
    for ell in (3, 5, 7):
        if bound % ell:
            continue
        pts = points_of_order_n(wi, ell)
        if not pts:
            continue
        P = pts[0]
        if ell == 3 and bound % 9 == 0:
            nine = _nine_torsion_over(wi, P)
            if nine is not None:
                P = nine
                odd_point, odd_order = _merge(wi, odd_point, odd_order, P, 9)
                continue
        odd_point, odd_order = _merge(wi, odd_point, odd_order, P, ell)

    gen = point_add(wi, best2, odd_point) if best2 or odd_point else None
    n2 = best2_order * odd_order
    n1 = 2 if full2 else 1
    if (n1, n2) not in MAZUR_STRUCTURES:
        raise ArithmeticError(f"computed structure {(n1, n2)} is impossible over Q")
    gens = []
    if full2:
        # a second generator of order 2, independent from gen
        inside = point_mul(wi, n2 // 2, gen) if n2 % 2 == 0 and gen else None
        T_other = next(T for T in t2 if T != inside)
        gens.append((T_other, 2))
    if gen is not None:
        assert point_order(wi, gen, n2) == n2
        gens.append((gen, n2))
    back = [(chg.apply_point(*P), k) for P, k in gens]
    for P, k in back:
        assert point_order(w, P, k) == k
    return TorsionGroup((n1, n2), back, w)


def _merge(w, P, n, Q, m):
    if P is None:
        return Q, m
    R = point_add(w, P, Q)
    assert point_order(w, R, n * m) == n * m
    return R, n * m


def _nine_torsion_over(w: WeierstrassModel, P3) -> Optional[tuple]:
    """A rational point Q with 3Q = P3 (or -P3), if one exists."""
    f3 = division_poly(w, 3)
    f4 = division_poly(w, 4)
    F = w.two_division_poly()
    num = poly_add(poly_mul([Fraction(0), Fraction(1)], poly_mul(f3, f3)), poly_scale(poly_mul(F, f4), Fraction(-1)))
    target = poly_add(num, poly_scale(poly_mul(f3, f3), -P3[0]))
    for x in rational_roots(target):
        for y in _y_on_curve(w, x):
            if point_order(w, (x, y), 10) == 9:
                return (x, y)
    return None


# ---------------------------------------------------------------------------
# Lutz-Nagell oracle


def torsion_points_lutz_nagell(w: WeierstrassModel) -> TorsionGroup:
    """Independent enumeration: integral points with y = 0 or y^2 | disc
    on the short model Y^2 = X^3 - 27 c4 X - 54 c6 of a minimal model."""
    m = minimal_model(w)
    c4, c6 = int(m.c4), int(m.c6)
    A, B = -27 * c4, -54 * c6
    disc_sh = abs(-16 * (4 * A**3 + 27 * B * B))
    divs = [1]
    for p, e in factorize(disc_sh):
        divs = [d * p**j for d in divs for j in range(e // 2 + 1)]
    ys = {0} | set(divs)
    pts = set()
    for y in sorted(ys):
        cube = [B - y * y, A, 0, 1]
        for x in rational_roots(cube):
            if x.denominator == 1:
                for sign in (1, -1):
                    X, Y = x, sign * y
                    if Y * Y == X**3 + A * X + B:
                        pts.add((Fraction(X), Fraction(Y)))
    # map back: X = 36x + 3b2, Y = 216y + 108(a1 x + a3)
    b2 = m.b2
    back = set()
    for X, Y in pts:
        x = (X - 3 * b2) / 36
        y = (Y / 108 - m.a1 * x - m.a3) / 2
        if m.contains(x, y) and point_order(m, (x, y), 16):
            back.add((x, y))
    # group closure and structure
    group = {None} | back
    changedflag = True
    while changedflag:
        changedflag = False
        for P in list(group):
            for Q in list(group):
                R = point_add(m, P, Q)
                if R not in group:
                    group.add(R)
                    changedflag = True
    order = len(group)
    two = [P for P in group if P is not None and point_order(m, P, 2) == 2]
    n1 = 2 if len(two) == 3 else 1
    n2 = order // n1
    gens = []
    cyc = next((P for P in group if P is not None and point_order(m, P, n2 + 1) == n2), None)
    if n1 == 2 and cyc is not None:
        inside = point_mul(m, n2 // 2, cyc) if n2 % 2 == 0 else None
        gens.append((next(T for T in two if T != inside), 2))
    if cyc is not None:
        gens.append((cyc, n2))
    return TorsionGroup((n1, n2), gens, m)


# ---------------------------------------------------------------------------
# torsion growth over quadratic fields


@dataclass
class GrowthReport:
    """Square classes of quadratic fields where 2- or 3-power torsion can grow.

    The classes are a certified superset: if class(d) avoids them, the
    torsion cannot grow at that prime over Q(sqrt(d)).
    """

    two_power_classes: set
    three_power_classes: set
    d: int
    gains_2_possible: bool
    gains_3_possible: bool


def _quadratic_growth_classes(w: WeierstrassModel, polys) -> set:
    classes = set()
    for f in polys:
        f = [Fraction(c) for c in f]
        for quad in quadratic_rational_factors(f):
            disc = quad[1] ** 2 - 4 * quad[0] * quad[2]
            if disc != 0 and not is_square(disc):
                classes.add(square_class(disc))
        for x in rational_roots(f):
            yt = w.y_terms(x)
            disc = yt * yt + 4 * w.rhs(x)
            if disc != 0 and not is_square(disc):
                classes.add(square_class(disc))
    return classes


def halving_quadratic(w: WeierstrassModel, T) -> list[Fraction]:
    """For T of order 2: the quadratic q with q(x(Q))=0 iff 2Q = T."""
    quartic = poly_add(duplication_numerator(w), poly_scale(w.two_division_poly(), -T[0]))
    q = poly_sqrt_monic_quartic([Fraction(c) for c in quartic])
    assert q is not None
    return q


def torsion_growth(w: WeierstrassModel, d: int) -> GrowthReport:
    """Can E(K)_tors gain 2- or 3-power order over K = Q(sqrt(d))?

    Tests whether the quadratic factors of the 2-, 3- and 4-division
    polynomials (and the y-coordinate quadratics over their rational
    roots) split over K, by square-class comparison of discriminants.
    The 4-division polynomial is handled through the per-torsion-point
    halving quadratics, so full rational 2-torsion contributes exactly
    the three factor discriminants.
    """
    from .arith import squarefree_part

    if squarefree_part(d) != d:
        raise ValueError("d must be squarefree")
    two_polys = [w.two_division_poly(), division_poly(w, 4)]
    for T in two_torsion_points(w):
        two_polys.append(halving_quadratic(w, T))
    three_polys = [division_poly(w, 3)]
    two_classes = _quadratic_growth_classes(w, two_polys)
    three_classes = _quadratic_growth_classes(w, three_polys)
    cls = square_class(d)
    return GrowthReport(
        two_power_classes=two_classes,
        three_power_classes=three_classes,
        d=d,
        gains_2_possible=cls in two_classes,
        gains_3_possible=cls in three_classes,
    )


def z3_normalize(a: int, b: int) -> FamilyPoint:
    """Reduce (a, b) by (q, q^3) scalings until the family invariant holds."""
    if b <= 0:
        raise ValueError("b must be positive")
    changed = True
    while changed:
        changed = False
        for q, e in factorize(b) if b > 1 else []:
            while e >= 3 and a % q == 0 and b % q**3 == 0:
                a //= q
                b //= q**3
                e -= 3
                changed = True
    return z3_point(a, b)
