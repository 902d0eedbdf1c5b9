"""Descent through the 2-isogeny of y^2 = x^3 + Ax^2 + Bx.

Local images of the connecting map delta at every place, the phi-Selmer
group cut out by them, the everywhere-local norm group obtained by
intersecting with the twisted Selmer group, Kramer's local norm indices
i_l, and the resulting lower bound for dim Sha(E/K)[2].

The local image at a finite place is decided by an exact p-adic scan of
X-coordinate candidates with valuation-controlled refinement: a residue
either determines the square class of X^3 + A'X^2 + B'X outright, or it
Hensel-converges to a root (which itself witnesses a class), or it is
split one digit deeper.  An independent brute-force torsor enumeration
is provided as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    OO,
    LocalSquareClassGroup,
    SquareClass,
    hilbert_symbol,
    is_local_square,
    is_square,
    kronecker_symbol,
    local_square_rep,
    padic_valuation,
    prime_divisors,
    square_class,
    squarefree_part,
)
from .tate import GlobalData, global_data
from .weierstrass import (
    SingularModelError,
    WeierstrassModel,
    quadratic_twist,
    two_torsion_form,
)

_BIG = 10**9


def dual_params(A: Fraction, B: Fraction) -> tuple[Fraction, Fraction]:
    """(A', B') of the quotient curve E' = E/<(0,0)>."""
    return -2 * A, A * A - 4 * B


@dataclass
class LocalImage:
    place: object
    subgroup: LocalSquareClassGroup

    def __contains__(self, q) -> bool:
        return q in self.subgroup

    @property
    def dim(self) -> int:
        return self.subgroup.dim


def _int_pair(A, B) -> tuple[int, int]:
    A, B = Fraction(A), Fraction(B)
    if A.denominator != 1 or B.denominator != 1:
        raise ValueError("integral A, B required")
    return int(A), int(B)


def _vp(n: int, p: int) -> int:
    return padic_valuation(n, p) if n else _BIG


def is_local_square_exact(q: Fraction, place) -> bool:
    if q == 0:
        raise ValueError("zero has no square class")
    return is_local_square(q, place)


def local_image(w: WeierstrassModel, place) -> LocalImage:
    """Image of delta: E'(Q_l)/phi(E(Q_l)) -> Q_l*/Q_l*^2 for the descent
    through the 2-isogeny of y^2 = x^3 + Ax^2 + Bx."""
    A, B = two_torsion_form(w)
    if w.is_singular:
        raise SingularModelError("descent needs a nonsingular curve")
    Ap, Bp = dual_params(A, B)
    if place == OO or place is None:
        return LocalImage(OO, LocalSquareClassGroup(OO, frozenset(_image_at_infinity(Ap, Bp, B))))
    ell = int(place)
    Ai, Bi = _int_pair(Ap, Bp)
    reps = _image_scan(Ai, Bi, ell)
    grp = LocalSquareClassGroup(ell, frozenset(reps))
    assert grp.is_subgroup(), (w, place, reps)
    return LocalImage(ell, grp)


def _image_at_infinity(Ap, Bp, B) -> set:
    # F(X) = X(X^2 + A'X + B') takes a nonnegative value on some X < 0
    # iff F has a negative real root
    members = {1}
    if Bp < 0 or (B > 0 and Bp > 0 and Ap > 0):
        members.add(-1)
    return members


def _image_scan(Ap: int, Bi: int, ell: int) -> set:
    """All local classes b with a point of E' over Q_ell of class b."""
    members = {1, local_square_rep(Bi, ell)}
    slack = 3 if ell == 2 else 1
    c = _vp(Bi, ell)
    vAp = _vp(Ap, ell)
    guard = 2 * (_vp(Ap * Ap - 4 * Bi, ell) if Ap * Ap != 4 * Bi else 0) + 2 * c + 24

    if ell == 2:
        m_range = range(-2, c + 4)
        unit_mod, k0 = 8, 3
    else:
        m_range = range(0, c + 2)
        unit_mod, k0 = ell, 1

    full = LocalSquareClassGroup.full(ell).elements
    for m in m_range:
        # X = w * ell^m with w a unit known modulo ell^k
        stack = [(w0, k0) for w0 in range(1, unit_mod) if w0 % ell]
        while stack:
            if members == full:
                return members
            w0, k = stack.pop()
            if m >= 0:
                X = Fraction(w0 * ell**m)
            else:
                X = Fraction(w0, ell**-m)
            val = X * (X * X + Ap * X + Bi)
            if val == 0:
                members.add(local_square_rep(X, ell))
                continue
            vF = padic_valuation(val, ell)
            dval = 3 * X * X + 2 * Ap * X + Bi
            vdF = padic_valuation(dval, ell) if dval else _BIG
            if vF > 2 * vdF and vF - vdF >= m + k:
                # Newton converges to a root at distance >= vF - vdF, hence
                # inside this residue disc; X - root then varies freely there
                # and F can be made a square, so class(X) is in the image
                members.add(local_square_rep(X, ell))
                continue
            second = 2 * (m + k) + min(m, 0)
            determined = vF + slack <= min(vdF + m + k, second)
            if determined:
                if is_local_square_exact(val, ell):
                    members.add(local_square_rep(X, ell))
                continue
            if k > guard:  # pragma: no cover - safety net
                raise ArithmeticError("runaway refinement in local image scan")
            step = ell**k
            stack.extend((w0 + t * step, k + 1) for t in range(ell))
    return members


def local_image_bruteforce(w: WeierstrassModel, place, extra: int = 0, cap: int = 500_000) -> LocalImage:
    """Independent oracle: enumerate torsor points b w^2 = b^2 t^4 + A'b t^2 z^2 + B' z^4
    on both affine charts at bounded precision.

    The precision is 2 v(disc) + 6 digits (four more at 2) shifted by
    `extra`, but never more than `cap` residues per chart."""
    A, B = two_torsion_form(w)
    Ap, Bp = dual_params(A, B)
    if place == OO or place is None:
        return LocalImage(OO, LocalSquareClassGroup(OO, frozenset(_infty_oracle(Ap, Bp))))
    ell = int(place)
    Ai, Bi = _int_pair(Ap, Bp)
    disc = int(w.discriminant)
    k = 2 * padic_valuation(disc, ell) + 6 + extra
    if ell == 2:
        k += 4
    while k > 1 and ell**k > cap:
        k -= 1
    members = set()
    for b in sorted(LocalSquareClassGroup.full(ell).elements, key=abs):
        if _torsor_solvable(b, Ai, Bi, ell, k):
            members.add(b)
    grp = LocalSquareClassGroup(ell, frozenset(members))
    assert grp.is_subgroup()
    return LocalImage(ell, grp)


def _infty_oracle(Ap, Bp) -> set:
    # minimum of b^2 s^2 + A'b s + B' over s >= 0, sign analysis for b < 0
    members = {1}
    for b in (-1,):
        s_vertex = Fraction(-Ap, 2 * b)
        vals = [Fraction(Bp)]
        if s_vertex > 0:
            vals.append(b * b * s_vertex**2 + Ap * b * s_vertex + Bp)
        if min(vals) <= 0:
            members.add(-1)
    return members


def _torsor_solvable(b: int, Ap: int, Bi: int, ell: int, k: int) -> bool:
    # each accepted candidate is an exact rational point, so hits are sound;
    # the precision k controls completeness only
    mod = ell**k
    for t in range(mod):
        # chart z = 1: b w^2 = b^2 t^4 + A'b t^2 + B'
        val = b * b * t**4 + Ap * b * t * t + Bi
        if val == 0 or is_local_square_exact(Fraction(val, b), ell):
            return True
    for z in range(0, mod, ell):
        # chart t = 1: b w^2 = b^2 + A'b z^2 + B' z^4 with z = 0 mod ell
        val = b * b + Ap * b * z * z + Bi * z**4
        if val == 0 or is_local_square_exact(Fraction(val, b), ell):
            return True
    return False


# ---------------------------------------------------------------------------
# phi-Selmer groups


@dataclass
class SelmerGroup2:
    """Sel^phi(E/Q) as a subgroup of Q*/Q*^2, with an F_2 basis."""

    elements: frozenset  # of SquareClass
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, cls: SquareClass) -> bool:
        return cls in self.elements


def _f2_basis(elements) -> tuple:
    basis = []
    span = {SquareClass(1)}
    for e in sorted(elements, key=lambda c: (abs(c.rep), c.rep < 0)):
        if e not in span:
            basis.append(e)
            span |= {e * x for x in span}
    return tuple(basis)


def descent_places(w: WeierstrassModel) -> list:
    A, B = _int_pair(*two_torsion_form(w))
    Bp = A * A - 4 * B
    ps = {2} | set(prime_divisors(B)) | set(prime_divisors(Bp))
    return sorted(ps) + [OO]


def candidate_classes(w: WeierstrassModel) -> list:
    """Square classes supported on -1 and the primes of 2*B*disc."""
    A, B = _int_pair(*two_torsion_form(w))
    gens = [-1, 2] + [p for p in prime_divisors(B * (A * A - 4 * B)) if p != 2]
    if len(gens) > 14:
        raise ArithmeticError("too many bad primes for a desk-scale descent")
    classes = [1]
    for g in gens:
        classes += [squarefree_part(c * g) for c in classes]
    return sorted(set(classes), key=abs)


def phi_selmer(w: WeierstrassModel) -> SelmerGroup2:
    """Classes whose restriction lies in the local image at every place."""
    images = {pl: local_image(w, pl) for pl in descent_places(w)}
    sel = []
    for b in candidate_classes(w):
        if all(b in images[pl] for pl in images):
            sel.append(SquareClass(b))
    elements = frozenset(sel)
    basis = _f2_basis(elements)
    assert len(elements) == 2 ** len(basis)
    return SelmerGroup2(elements, basis)


def selmer_kernel_class(w: WeierstrassModel) -> SquareClass:
    """Generator class of ker(Sel^phi -> Sel^2): the class of A^2 - 4B."""
    A, B = two_torsion_form(w)
    return square_class(A * A - 4 * B)


def everywhere_local_norm_dim(w: WeierstrassModel, d: int) -> int:
    """Lower bound for dim_F2 of the everywhere-local norm group:
    dim of (Sel^phi(E) intersect Sel^phi(E_d)) modulo <class(A^2-4B)>."""
    s1 = phi_selmer(w)
    s2 = phi_selmer(quadratic_twist(w, d))
    inter = s1.elements & s2.elements
    dim_inter = len(_f2_basis(inter))
    g = selmer_kernel_class(w)
    drop = 1 if (not g.is_trivial and g in inter) else 0
    return dim_inter - drop


def phi_intersection(w: WeierstrassModel, d: int) -> frozenset:
    return phi_selmer(w).elements & phi_selmer(quadratic_twist(w, d)).elements


def rank_upper_bound_via_isogeny(w: WeierstrassModel) -> int:
    """rank E(Q) <= dim Sel(E) + dim Sel'(E') - 2 for the 2-isogeny pair."""
    A, B = two_torsion_form(w)
    Ap, Bp = dual_params(A, B)
    s = phi_selmer(w)
    sp = phi_selmer(WeierstrassModel.from_ainvs([0, Ap, 0, Bp, 0]))
    return s.dim + sp.dim - 2


# ---------------------------------------------------------------------------
# Kramer's local norm indices and the Sha[2] bound


class FullTwoTorsionError(ValueError):
    """The norm-index formulas assume E(Q)[2] = Z/2."""


def _check_z2_two_torsion(w: WeierstrassModel):
    A, B = two_torsion_form(w)
    if is_square(A * A - 4 * B):
        raise FullTwoTorsionError("curve has full rational 2-torsion")


def field_discriminant(d: int) -> int:
    if d >= 0 or squarefree_part(d) != d:
        raise ValueError("d must be a negative squarefree integer")
    return d if d % 4 == 1 else 4 * d


def splits_in(d: int, p: int) -> bool:
    """Does the prime p split in Q(sqrt(d))?"""
    disc = field_discriminant(d)
    if p == 2:
        return disc % 8 == 1
    return kronecker_symbol(disc % p, p) == 1


def splits_in_oracle(d: int, p: int) -> bool:
    """Independent check: p splits iff x^2 = disc (mod 4p) is solvable
    and p does not divide disc."""
    disc = field_discriminant(d)
    if disc % p == 0:
        return False
    mod = 4 * p
    return any((x * x - disc) % mod == 0 for x in range(mod))


def is_heegner_field(N: int, d: int) -> bool:
    return all(splits_in(d, p) for p in prime_divisors(N))


def heegner_field_scan(w: WeierstrassModel, bound: int) -> list[int]:
    """Negative squarefree d with |d| <= bound, all p | N split in Q(sqrt d)."""
    gd = global_data(w)
    out = []
    for dd in range(-1, -bound - 1, -1):
        if squarefree_part(dd) != dd:
            continue
        if is_heegner_field(gd.conductor, dd):
            out.append(dd)
    return out


def local_norm_index(w: WeierstrassModel, place, d: int, gd: GlobalData = None) -> int:
    """Kramer's i_l for E(Q)[2] = Z/2 over K = Q(sqrt(d))."""
    _check_z2_two_torsion(w)
    if gd is None:
        gd = global_data(w)
    if place == OO or place is None:
        return 1 if gd.delta_min > 0 else 0
    p = int(place)
    disc = field_discriminant(d)
    ramified = disc % p == 0
    good = gd.conductor % p != 0
    if not (ramified and good):
        return 0
    A, B = two_torsion_form(w)
    if p == 2:
        return 2 if hilbert_symbol(gd.delta_min, d, 2) == 1 else 1
    return 1 + (1 if is_local_square(A * A - 4 * B, p) else 0)


def sum_local_norm_indices(w: WeierstrassModel, d: int, gd: GlobalData = None) -> tuple[int, dict]:
    if gd is None:
        gd = global_data(w)
    i_map = {OO: local_norm_index(w, OO, d, gd)}
    disc = field_discriminant(d)
    for p in prime_divisors(disc):
        i_map[p] = local_norm_index(w, p, d, gd)
    return sum(i_map.values()), i_map


@dataclass
class DescentCertificate:
    """Outcome of the Sha(E/K)[2] lower-bound computation."""

    curve: WeierstrassModel
    d: int
    i_map: dict
    sum_i: int
    dim_phi_lower: int
    sha2_dim_lower: int
    two_divides_sha_sqrt: bool
    hypotheses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "curve": str(self.curve),
            "d": self.d,
            "i": {str(k): v for k, v in sorted(self.i_map.items(), key=lambda kv: str(kv[0]))},
            "sum_i": self.sum_i,
            "dim_phi_lower": self.dim_phi_lower,
            "sha2_dim_lower": self.sha2_dim_lower,
            "two_divides_sha_sqrt": self.two_divides_sha_sqrt,
            "hypotheses": self.hypotheses,
            "notes": self.notes,
        }


def kramer_sha2_bound(w: WeierstrassModel, d: int, rank_hypothesis: int = 1) -> DescentCertificate:
    """dim Sha(E/K)[2] >= sum(i_l) + dim(Phi) - rank - 2 dim E(Q)[2].

    With rank 1 and E(Q)[2] = Z/2 the nonnegative norm-image term dropped,
    the bound is sum(i_l) + dim(Phi) - 3; when it is >= 1, the square
    order of Sha[2^inf] forces 2 | sqrt(#Sha(E/K)).
    """
    if rank_hypothesis != 1:
        raise ValueError("the bound is stated for rank E(K) = 1")
    _check_z2_two_torsion(w)
    gd = global_data(w)
    if not is_heegner_field(gd.conductor, d):
        raise ValueError(f"d = {d} fails the Heegner condition for N = {gd.conductor}")
    total, i_map = sum_local_norm_indices(w, d, gd)
    dim_phi = everywhere_local_norm_dim(w, d)
    lower = total + dim_phi - rank_hypothesis - 2
    cert = DescentCertificate(
        curve=w,
        d=d,
        i_map=i_map,
        sum_i=total,
        dim_phi_lower=dim_phi,
        sha2_dim_lower=lower,
        two_divides_sha_sqrt=lower >= 1,
        hypotheses=[f"rank E(K) = {rank_hypothesis}", f"K = Q(sqrt({d})) satisfies the Heegner condition"],
    )
    if lower < 1:
        cert.notes.append("insufficient: sum(i_l) + dim(Phi) < 4")
    return cert
