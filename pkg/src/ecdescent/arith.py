"""Exact integer/rational kernel.

Factorization, p-adic valuations, Kronecker and Hilbert symbols, and
square classes of Q*/Q*^2 together with their local analogues at a
prime or at the real place.  Everything here is a pure function of its
arguments and works on plain ints and fractions.Fraction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]

#: Marker for the archimedean place of Q.
OO = float("inf")


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


SMALL_PRIMES = _sieve(10_000)
_SMALL_PRIME_SET = set(SMALL_PRIMES)

# Deterministic Miller-Rabin bases: sufficient for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for the 64-bit-scale range this package uses."""
    if n < 2:
        return False
    if n < 10_000:
        return n in _SMALL_PRIME_SET
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    # Brent's variant; n must be odd composite, not a prime power handled upstream.
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> list[tuple[int, int]]:
    """Factor |n| into a sorted list of (prime, exponent) pairs.

    The sign is not part of the result: prod(p**e) * sign(n) == n.
    Trial division by small primes, then Pollard rho on what remains.

    Raises ValueError on n == 0.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    rng = random.Random(0x5EED)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _pollard_rho(m, rng)
        stack += [d, m // d]
    return sorted(out.items())


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def padic_valuation(q: Rational, p: int) -> int:
    """Largest v with p**v dividing q (negative for denominators)."""
    if q == 0:
        raise ValueError("valuation of 0 is undefined")
    if isinstance(q, Fraction):
        return padic_valuation(q.numerator, p) - padic_valuation(q.denominator, p)
    v = 0
    q = abs(q)
    while q % p == 0:
        q //= p
        v += 1
    return v


def padic_unit(q: Rational, p: int) -> Rational:
    """The unit part q / p**v(q)."""
    v = padic_valuation(q, p)
    if isinstance(q, int) and v >= 0:
        return q // p**v
    return Fraction(q) / Fraction(p) ** v


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of Jacobi/Legendre."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    # peel factors of 2 from n
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if abs(a) % 8 in (3, 5):
            sign = -sign
    # now n odd positive: Jacobi
    a %= n
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def smallest_nonresidue(p: int) -> int:
    """Least positive quadratic nonresidue of an odd prime p."""
    for a in range(2, p):
        if kronecker_symbol(a, p) == -1:
            return a
    raise ValueError(f"{p} has no nonresidue; not an odd prime?")


def _as_integer_squareclass(q: Rational) -> int:
    """Replace a nonzero rational by an integer in the same square class."""
    if isinstance(q, Fraction):
        return q.numerator * q.denominator
    return q


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n/s a positive perfect square."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = 1 if n > 0 else -1
    for p, e in factorize(n):
        if e % 2:
            s *= p
    return s


def is_square(q: Rational) -> bool:
    if q < 0:
        return False
    if isinstance(q, Fraction):
        return is_square(q.numerator) and is_square(q.denominator)
    r = math.isqrt(q)
    return r * r == q


def hilbert_symbol(a: Rational, b: Rational, place) -> int:
    """Hilbert norm-residue symbol (a,b) at a prime p or at OO.

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_p (resp. R).
    """
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    a = _as_integer_squareclass(a)
    b = _as_integer_squareclass(b)
    if place == OO or place is None:
        return -1 if (a < 0 and b < 0) else 1
    p = int(place)
    alpha = padic_valuation(a, p)
    beta = padic_valuation(b, p)
    u = a // p**alpha
    v = b // p**beta
    if p != 2:
        eps = (p - 1) // 2
        sign = (-1) ** (alpha * beta * eps)
        s = sign
        if beta % 2:
            s *= kronecker_symbol(u, p)
        if alpha % 2:
            s *= kronecker_symbol(v, p)
        return s
    # p = 2: closed form in terms of (u-1)/2 and (u^2-1)/8.
    def eps2(x: int) -> int:
        return ((x - 1) // 2) % 2

    def omega(x: int) -> int:
        return ((x * x - 1) // 8) % 2

    e = eps2(u) * eps2(v) + alpha * omega(v) + beta * omega(u)
    return -1 if e % 2 else 1


def hilbert_places(a: Rational, b: Rational) -> list:
    """Places where the Hilbert symbol of (a, b) could be nontrivial."""
    a = _as_integer_squareclass(a)
    b = _as_integer_squareclass(b)
    ps = {2} | set(prime_divisors(a)) | set(prime_divisors(b))
    return sorted(ps) + [OO]


@dataclass(frozen=True, order=True)
class SquareClass:
    """An element of Q*/Q*^2, canonically a signed squarefree integer."""

    rep: int

    def __post_init__(self):
        if self.rep == 0:
            raise ValueError("square class of 0 undefined")
        if squarefree_part(self.rep) != self.rep:
            raise ValueError(f"{self.rep} is not squarefree")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return SquareClass(squarefree_part(self.rep * other.rep))

    def __pow__(self, k: int) -> "SquareClass":
        return self if k % 2 else SquareClass(1)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    def __repr__(self):
        return f"SquareClass({self.rep})"


def square_class(q: Rational) -> SquareClass:
    """Canonical square class of a nonzero rational."""
    if q == 0:
        raise ValueError("square class of 0 undefined")
    return SquareClass(squarefree_part(_as_integer_squareclass(q)))


def local_square_rep(q: Rational, place) -> int:
    """Canonical representative of q in Q_place^* / squares.

    At odd p the 4 reps are {1, n, p, n*p} with n the least nonresidue;
    at 2 they are {+-1, +-2, +-5, +-10}; at OO they are {1, -1}.
    """
    if q == 0:
        raise ValueError("square class of 0 undefined")
    n = _as_integer_squareclass(q)
    if place == OO or place is None:
        return 1 if n > 0 else -1
    p = int(place)
    v = padic_valuation(n, p)
    u = n // p**v
    if p == 2:
        u8 = u % 8
        unit_rep = {1: 1, 3: -5, 5: 5, 7: -1}[u8]
        return unit_rep * (2 if v % 2 else 1)
    nr = smallest_nonresidue(p)
    unit_rep = 1 if kronecker_symbol(u, p) == 1 else nr
    return unit_rep * (p if v % 2 else 1)


def is_local_square(q: Rational, place) -> bool:
    return local_square_rep(q, place) == 1


@dataclass
class LocalSquareClassGroup:
    """A subgroup of Q_place^*/Q_place^{*2}, stored by canonical reps."""

    place: object
    elements: frozenset

    @staticmethod
    def full(place) -> "LocalSquareClassGroup":
        if place == OO or place is None:
            reps = {1, -1}
        elif int(place) == 2:
            reps = {1, -1, 2, -2, 5, -5, 10, -10}
        else:
            p = int(place)
            n = smallest_nonresidue(p)
            reps = {1, n, p, (n * p)}
        return LocalSquareClassGroup(place, frozenset(reps))

    @staticmethod
    def span(place, gens: Iterable[Rational]) -> "LocalSquareClassGroup":
        elems = {1}
        for g in gens:
            r = local_square_rep(g, place)
            elems |= {local_square_rep(x * r, place) for x in elems}
        return LocalSquareClassGroup(place, frozenset(elems))

    def __contains__(self, q) -> bool:
        return local_square_rep(q, self.place) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return len(self.elements).bit_length() - 1

    def is_subgroup(self) -> bool:
        if 1 not in self.elements:
            return False
        for x in self.elements:
            for y in self.elements:
                if local_square_rep(x * y, self.place) not in self.elements:
                    return False
        return True
