"""Small exact-polynomial toolbox.

Polynomials are lists of coefficients, lowest degree first.  Rational
root extraction works on integer polynomials of modest degree (division
polynomials up to order 12) whose coefficients may be hundreds of digits;
it lifts roots modulo an auxiliary prime and reconstructs u/w exactly,
so no divisor enumeration of the constant term is ever needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arith import is_square


def poly_trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_eval(f: Sequence, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_deriv(f: Sequence) -> list:
    return [i * c for i, c in enumerate(f)][1:]


def poly_mul(f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_add(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return poly_trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def poly_scale(f: Sequence, c) -> list:
    return [c * a for a in f]


def poly_divmod_q(f: Sequence, g: Sequence) -> tuple[list, list]:
    """Exact division with remainder over Q."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    poly_trim(g)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    r = f[:]
    poly_trim(r)
    while r and len(r) >= len(g):
        c = r[-1] / g[-1]
        d = len(r) - len(g)
        q[d] = c
        for i, gc in enumerate(g):
            r[i + d] -= c * gc
        poly_trim(r)
    return poly_trim(q), r


def poly_gcd_q(f: Sequence, g: Sequence) -> list:
    """Monic gcd over Q."""
    a = poly_trim([Fraction(c) for c in f])
    b = poly_trim([Fraction(c) for c in g])
    while b:
        _, r = poly_divmod_q(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_content(f: Sequence[int]) -> int:
    c = 0
    for a in f:
        c = math.gcd(c, a)
    return c or 1


def poly_primitive(f: Sequence) -> list[int]:
    """Clear denominators and content, preserving the root set."""
    f = [Fraction(c) for c in f]
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, c.denominator)
    g = [int(c * den) for c in f]
    cont = poly_content(g)
    return [c // cont for c in g]


def squarefree_part_poly(f: Sequence[int]) -> list[int]:
    """f / gcd(f, f'), primitive over Z; same roots, all simple."""
    g = poly_gcd_q(f, poly_deriv(f))
    if len(g) == 1:
        return poly_primitive(f)
    q, r = poly_divmod_q(f, g)
    assert not r
    return poly_primitive(q)


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p


def fp_trim(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def fp_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = fp_trim(f[:], p)
    g = fp_trim(g[:], p)
    if not g:
        raise ZeroDivisionError
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    while f and len(f) >= len(g):
        c = f[-1] * inv_lead % p
        d = len(f) - len(g)
        q[d] = c
        for i, gc in enumerate(g):
            f[i + d] = (f[i + d] - c * gc) % p
        while f and f[-1] == 0:
            f.pop()
    return q, f


def fp_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = fp_trim(f[:], p), fp_trim(g[:], p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def fp_mulmod(f: list[int], g: list[int], h: list[int], p: int) -> list[int]:
    prod = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return fp_divmod(prod, h, p)[1]


def fp_powmod_x(e: int, h: list[int], p: int) -> list[int]:
    """x^e modulo h over F_p."""
    result = [1]
    base = fp_divmod([0, 1], h, p)[1]
    while e:
        if e & 1:
            result = fp_mulmod(result, base, h, p)
        base = fp_mulmod(base, base, h, p)
        e >>= 1
    return result


def fp_roots(f: list[int], p: int) -> list[int]:
    """All roots of f in F_p (each once), any degree, any p."""
    f = fp_trim(f[:], p)
    if not f:
        raise ValueError("zero polynomial")
    roots = []
    if f[0] == 0:
        roots.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) <= 1:
        return roots
    if p < 60 or len(f) - 1 >= p:
        roots += [x for x in range(1, p) if poly_eval(f, x) % p == 0]
        return sorted(set(roots))
    # split off the part with roots in F_p: gcd(x^p - x, f)
    xp = fp_powmod_x(p, f, p)
    xp_minus_x = fp_trim(poly_add(xp, [0, -1]), p)
    g = fp_gcd(xp_minus_x, f, p)
    roots += _fp_split_linear(g, p)
    return sorted(set(roots))


def _fp_split_linear(g: list[int], p: int, _shift: int = 0) -> list[int]:
    # g is squarefree and splits into distinct linear factors over F_p
    g = fp_trim(g[:], p)
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0] * pow(g[1], -1, p)) % p]
    if deg == 2:
        a, b, c = g[2], g[1], g[0]
        disc = (b * b - 4 * a * c) % p
        s = _fp_sqrt(disc, p)
        inv2a = pow(2 * a, -1, p)
        return [((-b + s) * inv2a) % p, ((-b - s) * inv2a) % p]
    # random-shift equal-degree splitting by (x+c)^((p-1)/2) - 1
    c = (_shift * 7919 + 1) % p
    h = fp_powmod_poly([c, 1], (p - 1) // 2, g, p)
    h = fp_trim(poly_add(h, [-1]), p)
    d = fp_gcd(h, g, p)
    if 0 < len(d) - 1 < deg:
        other = fp_divmod(g, d, p)[0]
        return _fp_split_linear(d, p, _shift + 1) + _fp_split_linear(other, p, _shift + 1)
    return _fp_split_linear(g, p, _shift + 1)


def fp_powmod_poly(base: list[int], e: int, h: list[int], p: int) -> list[int]:
    result = [1]
    base = fp_divmod(base, h, p)[1]
    while e:
        if e & 1:
            result = fp_mulmod(result, base, h, p)
        base = fp_mulmod(base, base, h, p)
        e >>= 1
    return result


def _fp_sqrt(a: int, p: int) -> int:
    """Square root mod odd prime p (Tonelli-Shanks); a must be a QR."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def fp_root_multiplicities(f: list[int], p: int) -> dict[int, int]:
    """Roots in F_p with multiplicities, via exact deflation."""
    f = fp_trim(f[:], p)
    out: dict[int, int] = {}
    for r in fp_roots(f, p):
        m = 0
        g = f
        while True:
            q, rem = fp_divmod(g, [-r, 1], p)
            if rem:
                break
            m += 1
            g = q
        out[r] = m
    return out


# ---------------------------------------------------------------------------
# exact rational roots of integer polynomials


def _rational_reconstruct(r: int, m: int, ubound: int, wbound: int):
    """Find u/w = r mod m with |u| <= ubound, 0 < w <= wbound, else None."""
    v0, v1 = (m, 0), (r % m, 1)
    while v1[0] > ubound:
        q = v0[0] // v1[0]
        v0, v1 = v1, (v0[0] - q * v1[0], v0[1] - q * v1[1])
    u, w = v1[0], v1[1]
    if w == 0 or abs(w) > wbound:
        return None
    if w < 0:
        u, w = -u, -w
    return Fraction(u, w)


def rational_roots(f: Sequence) -> list[Fraction]:
    """All rational roots of a nonzero polynomial with rational coefficients."""
    f = poly_primitive(list(f))
    poly_trim(f)
    if not f:
        raise ValueError("zero polynomial")
    roots = []
    if f[0] == 0:
        roots.append(Fraction(0))
        while f[0] == 0:
            f = f[1:]
    if len(f) == 1:
        return roots
    if len(f) == 2:
        return sorted(roots + [Fraction(-f[0], f[1])])
    g = squarefree_part_poly(f)
    if len(g) == 2:
        return sorted(roots + [Fraction(-g[0], g[1])])
    lead, const = g[-1], g[0]
    if const == 0:  # pragma: no cover - zero root removed above
        raise AssertionError
    ubound, wbound = abs(const), abs(lead)
    # pick a prime where g stays squarefree with unit leading coefficient
    for q in [30011, 30013, 30029, 30047, 30059, 30071, 30089, 30091, 30097, 30103]:
        if lead % q != 0 and len(fp_gcd(g, poly_deriv(g), q)) == 1:
            break
    else:  # pragma: no cover - ten bad primes in a row
        raise ArithmeticError("no good auxiliary prime found")
    target = 2 * ubound * wbound + 1
    prec = 1
    while q**prec < target:
        prec *= 2
    for r0 in fp_roots(g, q):
        # Newton lift the simple root r0 to Z/q^prec
        r, k, qk = r0, 1, q
        while k < prec:
            k = min(2 * k, prec)
            qk = q**k
            fr = poly_eval(g, r) % qk
            dfr = poly_eval(poly_deriv(g), r)
            r = (r - fr * pow(dfr, -1, qk)) % qk
        cand = _rational_reconstruct(r, qk, ubound, wbound)
        if cand is not None and poly_eval(g, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def integer_roots(f: Sequence) -> list[int]:
    return [int(r) for r in rational_roots(f) if r.denominator == 1]


def poly_sqrt_monic_quartic(f: Sequence) -> list[Fraction] | None:
    """Exact square root of a monic quartic, i.e. q with q^2 = f, or None."""
    if len(poly_trim([Fraction(c) for c in f])) != 5 or f[4] != 1:
        return None
    a3, a2, a1, a0 = (Fraction(f[3]), Fraction(f[2]), Fraction(f[1]), Fraction(f[0]))
    c1 = a3 / 2
    c0 = (a2 - c1 * c1) / 2
    if 2 * c1 * c0 == a1 and c0 * c0 == a0:
        return [c0, c1, Fraction(1)]
    return None


def quadratic_rational_factors(f: Sequence) -> list[list[Fraction]]:
    """Monic irreducible quadratic factors over Q of a polynomial.

    Works degree by degree: strips rational roots, then splits quartics via
    the resolvent cubic.  Degrees beyond 4 are reduced only through their
    rational roots (enough for the division polynomials this package uses,
    where higher-degree parts are handled separately).
    """
    g = [Fraction(c) for c in poly_primitive(list(f))]
    lead = g[-1]
    g = [c / lead for c in g]
    for r in rational_roots(g):
        while True:
            q, rem = poly_divmod_q(g, [-r, Fraction(1)])
            if rem:
                break
            g = q
    out = []
    deg = len(g) - 1
    if deg == 2:
        out.append(g)
    elif deg == 4:
        split = _split_quartic(g)
        if split is not None:
            out.extend(split)
    return out


def _split_quartic(g: list[Fraction]) -> list[list[Fraction]] | None:
    """Monic quartic with no rational roots -> two monic rational quadratics."""
    p3, q2, r_, s = g[3], g[2], g[1], g[0]
    # (x^2+ax+b)(x^2+cx+d): resolvent cubic in u = b + d
    resolvent = [
        -(p3 * p3 * s - 4 * q2 * s + r_ * r_),
        p3 * r_ - 4 * s,
        -q2,
        Fraction(1),
    ]
    for u in rational_roots(resolvent):
        # a + c = p3, ac = q2 - u, b + d = u, ad + bc = r_, bd = s
        disc = p3 * p3 - 4 * (q2 - u)
        if disc < 0 or not is_square(disc):
            continue
        sq = _fraction_sqrt(disc)
        for a in {(p3 + sq) / 2, (p3 - sq) / 2}:
            c = p3 - a
            if a != c:
                bd_disc = u * u - 4 * s
                if bd_disc < 0 or not is_square(bd_disc):
                    continue
                sq2 = _fraction_sqrt(bd_disc)
                for b in {(u + sq2) / 2, (u - sq2) / 2}:
                    d = u - b
                    if a * d + b * c == r_ and b * d == s:
                        return [[b, a, Fraction(1)], [d, c, Fraction(1)]]
            else:
                # a = c = p3/2; solve b+d = u, bd = s, a(b+d) = r_
                if a * u != r_:
                    continue
                bd_disc = u * u - 4 * s
                if bd_disc < 0 or not is_square(bd_disc):
                    continue
                sq2 = _fraction_sqrt(bd_disc)
                b, d = (u + sq2) / 2, (u - sq2) / 2
                return [[b, a, Fraction(1)], [d, a, Fraction(1)]]
    return None


def _fraction_sqrt(q: Fraction) -> Fraction:
    q = Fraction(q)
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))
