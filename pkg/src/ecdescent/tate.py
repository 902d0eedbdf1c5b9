"""Local reduction data at every prime via Tate's algorithm.

The full step 1-11 loop is implemented, including the I_n* sub-loop and
the non-minimal restart, over exact integers.  Split vs nonsplit
multiplicative reduction is decided from the tangent quadratic
T^2 + a1*T - a2 after the singular point has been moved to the origin,
which handles p = 2 and p = 3 without completing the square.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import kronecker_symbol, padic_valuation, prime_divisors
from .polyutil import fp_root_multiplicities
from .weierstrass import SingularModelError, WeierstrassModel, integral_model

GOOD = "good"
SPLIT = "split-multiplicative"
NONSPLIT = "nonsplit-multiplicative"
ADDITIVE = "additive"


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol: family in {I, I*, II, III, IV, IV*, III*, II*}."""

    family: str
    n: int = 0

    def __post_init__(self):
        if self.family in ("I", "I*"):
            if self.n < 0:
                raise ValueError("n must be nonnegative")
        elif self.n:
            raise ValueError(f"type {self.family} carries no index")

    def __str__(self) -> str:
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @property
    def components(self) -> int:
        """Number of irreducible components of the special fiber (Ogg)."""
        return {
            "I": self.n if self.n else 1,
            "I*": self.n + 5,
            "II": 1,
            "III": 2,
            "IV": 3,
            "IV*": 7,
            "III*": 8,
            "II*": 9,
        }[self.family]


I0 = KodairaType("I", 0)


@dataclass(frozen=True)
class LocalReduction:
    prime: int
    kodaira: KodairaType
    tamagawa: int
    conductor_exponent: int
    v_min: int
    kind: str
    minimal_scale_exp: int  # p-power taken out of the input model by restarts

    @property
    def is_good(self) -> bool:
        return self.kind == GOOD

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "kodaira": str(self.kodaira),
            "c_p": self.tamagawa,
            "f_p": self.conductor_exponent,
            "v_min": self.v_min,
            "kind": self.kind,
        }


# -- integer 5-tuple helpers -------------------------------------------------


def _binvs(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc_c4(a):
    b2, b4, b6, b8 = _binvs(a)
    c4 = b2 * b2 - 24 * b4
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return disc, c4


def _translate(a, r, t):
    """[1, r, 0, t] on an integer coefficient tuple."""
    a1, a2, a3, a4, a6 = a
    return (
        a1,
        a2 + 3 * r,
        a3 + r * a1 + 2 * t,
        a4 + 2 * r * a2 - t * a1 + 3 * r * r,
        a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
    )


def _shift_s(a, s):
    """[1, 0, s, 0] on an integer coefficient tuple."""
    a1, a2, a3, a4, a6 = a
    return (a1 + 2 * s, a2 - s * a1 - s * s, a3, a4 - s * a3, a6)


def _vp(n, p):
    if n == 0:
        return 10**9  # effectively infinite for the comparisons below
    return padic_valuation(n, p)


def _singular_point(a, p):
    """The unique singular point of the reduction mod p, as residues."""
    a1, a2, a3, a4, a6 = a
    if p <= 3:
        for x in range(p):
            for y in range(p):
                f = y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)
                fx = a1 * y - (3 * x * x + 2 * a2 * x + a4)
                fy = 2 * y + a1 * x + a3
                if f % p == 0 and fx % p == 0 and fy % p == 0:
                    return x, y
        raise ArithmeticError("no singular point found")
    b2, b4, b6, _ = _binvs(a)
    from .polyutil import fp_gcd, poly_deriv

    G = [b6 % p, (2 * b4) % p, b2 % p, 4 % p]
    d = fp_gcd(G, poly_deriv(G), p)
    if len(d) == 2:
        x0 = (-d[0] * pow(d[1], -1, p)) % p
    elif len(d) == 3:
        x0 = (-d[1] * pow(2 * d[2], -1, p)) % p
    else:  # pragma: no cover
        raise ArithmeticError("degenerate gcd while locating singular point")
    y0 = (-(a1 * x0 + a3) * pow(2, -1, p)) % p
    return x0, y0


def _quad_distinct_mod_p(A, B, C, p):
    """Does A y^2 + B y + C (A a unit) have distinct roots over F_p-bar?"""
    if p == 2:
        return B % 2 == 1
    return (B * B - 4 * A * C) % p != 0


def _quad_rational_mod_p(A, B, C, p):
    """Assuming distinct roots, are they in F_p?"""
    if p == 2:
        return any((A * y * y + B * y + C) % 2 == 0 for y in (0, 1))
    return kronecker_symbol(B * B - 4 * A * C, p) == 1


def _quad_double_root(A, B, C, p):
    """The double root of A y^2 + B y + C mod p (A unit, disc = 0 mod p)."""
    if p == 2:
        return (C * A) % 2
    return (-B * pow(2 * A, -1, p)) % p


def local_reduction(w: WeierstrassModel, p: int) -> LocalReduction:
    """Kodaira type, Tamagawa number, conductor exponent and v(disc_min) at p."""
    if w.is_singular:
        raise SingularModelError("Tate's algorithm needs a nonsingular curve")
    if not w.is_integral:
        w, _ = integral_model(w)
    a = tuple(int(x) for x in w.ainvs)
    return _tate(a, p)


def _tate(a, p) -> LocalReduction:
    u_exp = 0
    while True:
        disc, c4 = _disc_c4(a)
        n = _vp(disc, p)
        if n == 0:
            return LocalReduction(p, I0, 1, 0, 0, GOOD, u_exp)

        # Step 2: move the singular point of the reduction to (0,0).
        x0, y0 = _singular_point(a, p)
        a = _translate(a, x0, y0)
        a1, a2, a3, a4, a6 = a

        if _vp(c4, p) == 0:
            # multiplicative: tangent slopes T^2 + a1 T - a2 at the node;
            # at p = 2 the node forces a1 odd and both roots lie in F_2
            # exactly when a2 is even
            if p == 2:
                split = a2 % 2 == 0
            else:
                split = kronecker_symbol(a1 * a1 + 4 * a2, p) == 1
            c = n if split else (2 if n % 2 == 0 else 1)
            kind = SPLIT if split else NONSPLIT
            return LocalReduction(p, KodairaType("I", n), c, 1, n, kind, u_exp)

        # additive from here on
        if _vp(a6, p) < 2:
            return LocalReduction(p, KodairaType("II"), 1, n, n, ADDITIVE, u_exp)
        b2, b4, b6, b8 = _binvs(a)
        if _vp(b8, p) < 3:
            return LocalReduction(p, KodairaType("III"), 2, n - 1, n, ADDITIVE, u_exp)
        if _vp(b6, p) < 3:
            c = 3 if _quad_rational_mod_p(1, a3 // p, -(a6 // p**2), p) else 1
            return LocalReduction(p, KodairaType("IV"), c, n - 2, n, ADDITIVE, u_exp)

        # Step 6 normalization: p | a1, a2; p^2 | a3, a4; p^3 | a6.
        if p == 2:
            a = _shift_s(a, a[1] % 2)
            assert _vp(a[2], p) >= 2
            tau = 1 if (a[4] % 8) == 4 else 0
            a = _translate(a, 0, 2 * tau)
        else:
            s = (-a[0] * pow(2, -1, p)) % p
            a = _shift_s(a, s)
            t = (-a[2] * pow(2, -1, p * p)) % (p * p)
            a = _translate(a, 0, t)
        a1, a2, a3, a4, a6 = a
        assert _vp(a1, p) >= 1 and _vp(a2, p) >= 1
        assert _vp(a3, p) >= 2 and _vp(a4, p) >= 2 and _vp(a6, p) >= 3

        P = [(a6 // p**3) % p, (a4 // p**2) % p, (a2 // p) % p, 1]
        mults = fp_root_multiplicities(P, p)
        max_mult = max(mults.values(), default=1)

        if max_mult == 1:
            # separable cubic (any repeated root would be rational)
            c = 1 + len(mults)
            return LocalReduction(p, KodairaType("I*", 0), c, n - 4, n, ADDITIVE, u_exp)

        if max_mult == 2:
            # Step 7: I_m* sub-loop
            r1 = next(r for r, m in mults.items() if m == 2)
            a = _translate(a, p * r1, 0)
            a1, a2, a3, a4, a6 = a
            assert _vp(a2, p) == 1 and _vp(a3, p) >= 2 and _vp(a4, p) >= 3 and _vp(a6, p) >= 4
            j = 1
            while True:
                # odd sub-step m = 2j-1: Y^2 + (a3/p^{j+1}) Y - a6/p^{2j+2}
                c3 = a3 // p ** (j + 1)
                c6_ = a6 // p ** (2 * j + 2)
                if _quad_distinct_mod_p(1, c3, -c6_, p):
                    m = 2 * j - 1
                    c = 4 if _quad_rational_mod_p(1, c3, -c6_, p) else 2
                    return LocalReduction(p, KodairaType("I*", m), c, n - 4 - m, n, ADDITIVE, u_exp)
                y1 = _quad_double_root(1, c3, -c6_, p)
                a = _translate(a, 0, p ** (j + 1) * y1)
                a1, a2, a3, a4, a6 = a
                # even sub-step m = 2j: (a2/p) X^2 + (a4/p^{j+2}) X + a6/p^{2j+3}
                d2 = a2 // p
                d4 = a4 // p ** (j + 2)
                d6 = a6 // p ** (2 * j + 3)
                if _quad_distinct_mod_p(d2, d4, d6, p):
                    m = 2 * j
                    c = 4 if _quad_rational_mod_p(d2, d4, d6, p) else 2
                    return LocalReduction(p, KodairaType("I*", m), c, n - 4 - m, n, ADDITIVE, u_exp)
                x1 = _quad_double_root(d2, d4, d6, p)
                a = _translate(a, p ** (j + 1) * x1, 0)
                a1, a2, a3, a4, a6 = a
                j += 1
                if 2 * j > n:  # pragma: no cover
                    raise ArithmeticError("runaway I_n* loop")

        # Step 8: triple root
        r1 = next(r for r, m in mults.items() if m == 3)
        a = _translate(a, p * r1, 0)
        a1, a2, a3, a4, a6 = a
        assert _vp(a2, p) >= 2 and _vp(a4, p) >= 3 and _vp(a6, p) >= 4
        c3 = a3 // p**2
        c6_ = a6 // p**4
        if _quad_distinct_mod_p(1, c3, -c6_, p):
            c = 3 if _quad_rational_mod_p(1, c3, -c6_, p) else 1
            return LocalReduction(p, KodairaType("IV*"), c, n - 6, n, ADDITIVE, u_exp)
        y1 = _quad_double_root(1, c3, -c6_, p)
        a = _translate(a, 0, p**2 * y1)
        a1, a2, a3, a4, a6 = a
        if _vp(a4, p) < 4:
            return LocalReduction(p, KodairaType("III*"), 2, n - 7, n, ADDITIVE, u_exp)
        if _vp(a6, p) < 6:
            return LocalReduction(p, KodairaType("II*"), 1, n - 8, n, ADDITIVE, u_exp)

        # Step 11: not minimal; scale down and restart.
        assert _vp(a1, p) >= 1 and _vp(a2, p) >= 2 and _vp(a3, p) >= 3
        a = (a1 // p, a2 // p**2, a3 // p**3, a4 // p**4, a6 // p**6)
        u_exp += 1


@dataclass(frozen=True)
class GlobalData:
    minimal_model: WeierstrassModel
    delta_min: int
    conductor: int
    tamagawa_product: int
    local_data: dict

    @property
    def bad_primes(self) -> list[int]:
        return sorted(p for p, lr in self.local_data.items() if lr.conductor_exponent > 0)


def global_data(w: WeierstrassModel, bad_prime_hint=None) -> GlobalData:
    """Global minimal model, minimal discriminant, conductor, Tamagawa product.

    `bad_prime_hint` may list the primes dividing the discriminant of the
    integral model (family sweeps know them without factoring); it is
    verified cheaply, so a wrong hint fails loudly.
    """
    if w.is_singular:
        raise SingularModelError("singular input")
    wi, _ = integral_model(w)
    disc = int(wi.discriminant)
    if bad_prime_hint is not None:
        primes = sorted(set(int(p) for p in bad_prime_hint))
        rem = abs(disc)
        for p in primes:
            while rem % p == 0:
                rem //= p
        if rem != 1:
            raise ValueError("bad_prime_hint does not cover the discriminant")
    else:
        primes = prime_divisors(disc)
    local = {p: _tate(tuple(int(x) for x in wi.ainvs), p) for p in primes}
    u = 1
    for p, lr in local.items():
        u *= p**lr.minimal_scale_exp
    delta_min = disc // u**12
    conductor = 1
    tamagawa = 1
    for p, lr in local.items():
        conductor *= p**lr.conductor_exponent
        if lr.conductor_exponent > 0:
            tamagawa *= lr.tamagawa
    c4 = int(wi.c4) // u**4
    c6 = int(wi.c6) // u**6
    return GlobalData(model_from_c4c6(c4, c6), delta_min, conductor, tamagawa, local)


def minimal_model(w: WeierstrassModel) -> WeierstrassModel:
    return global_data(w).minimal_model


def model_from_c4c6(c4: int, c6: int) -> WeierstrassModel:
    """The reduced integral model with the given invariants (Kraus-Connell)."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    if (b2 * b2 - c4) % 24:
        raise ValueError("invalid (c4, c6) pair")
    b4 = (b2 * b2 - c4) // 24
    if (-(b2**3) + 36 * b2 * b4 - c6) % 216:
        raise ValueError("invalid (c4, c6) pair")
    b6 = (-(b2**3) + 36 * b2 * b4 - c6) // 216
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    m = WeierstrassModel.from_ainvs([a1, a2, a3, a4, a6])
    if int(m.c4) != c4 or int(m.c6) != c6:
        raise ValueError("invalid (c4, c6) pair")
    return m


def split_multiplicative_divisibility(lr: LocalReduction, ell: int) -> bool:
    """Does ell divide c_p for this split multiplicative fiber?

    For split I_n one has c_p = n = v(disc_min), so this is just ell | n.
    """
    if lr.kind != SPLIT:
        raise ValueError("reduction is not split multiplicative")
    ok = lr.v_min % ell == 0
    if ok:
        assert lr.tamagawa % ell == 0
    return ok
