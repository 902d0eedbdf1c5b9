from fractions import Fraction

import pytest

from ecdescent.arith import OO, SquareClass, smallest_nonresidue, square_class
from ecdescent.descent2 import (
    DescentCertificate,
    FullTwoTorsionError,
    candidate_classes,
    dual_params,
    everywhere_local_norm_dim,
    field_discriminant,
    heegner_field_scan,
    is_heegner_field,
    kramer_sha2_bound,
    local_image,
    local_image_bruteforce,
    local_norm_index,
    phi_intersection,
    phi_selmer,
    selmer_kernel_class,
    splits_in,
    splits_in_oracle,
    sum_local_norm_indices,
)
from ecdescent.tate import global_data
from ecdescent.weierstrass import WeierstrassModel, quadratic_twist


def W(*a):
    return WeierstrassModel.from_ainvs(a)


def beta_even_curve(p, z):
    # y^2 = x^3 + (p^2z + 8) x^2 + 16 x, the working model for beta = p^2z
    return W(0, p ** (2 * z) + 8, 0, 16, 0)


def test_image_at_infinity_cases():
    # beta-family curve: Im at infinity is trivial
    img = local_image(beta_even_curve(3, 1), OO)
    assert img.subgroup.elements == {1}
    # B = -1 family: also trivial (no negative 2-torsion real locus)
    img = local_image(W(0, 5, 0, -1, 0), OO)
    assert img.subgroup.elements == {1}
    # twist of the beta curve by -2 has full image at infinity
    tw = quadratic_twist(beta_even_curve(3, 1), -2)
    assert local_image(tw, OO).subgroup.elements == {1, -1}


def test_image_at_2_beta_family():
    # Im delta_2 = {1, 5}
    for p, z in [(3, 1), (7, 1), (11, 1), (3, 2)]:
        img = local_image(beta_even_curve(p, z), 2)
        assert img.subgroup.elements == {1, 5}, (p, z, img.subgroup.elements)


def test_image_at_good_odd_primes():
    # good odd l: the unit classes
    w = beta_even_curve(3, 1)
    img = local_image(w, 7)
    n = smallest_nonresidue(7)
    assert img.subgroup.elements == {1, n}


def test_image_at_p_depends_on_mod4():
    # at l = p: full local group iff p = 1 mod 4
    for p, z in [(5, 1), (13, 1)]:
        img = local_image(beta_even_curve(p, z), p)
        assert img.dim == 2, (p, img.subgroup.elements)
    for p, z in [(3, 1), (7, 1), (11, 1)]:
        img = local_image(beta_even_curve(p, z), p)
        n = smallest_nonresidue(p)
        assert img.subgroup.elements == {1, n}, (p, img.subgroup.elements)


def test_image_at_odd_divisors_of_q():
    # odd l | disc, l != p: the full local group
    p, z = 3, 1  # q = 25, l = 5
    img = local_image(beta_even_curve(p, z), 5)
    assert img.dim == 2


def test_image_at_2_B_minus_one_family():
    # B = -1: {1,5} for A odd, {1,2,5,10} for A = 2 mod 4
    for A in [1, 3, 5, 7, 9]:
        w = W(0, A, 0, -1, 0)
        assert local_image(w, 2).subgroup.elements == {1, 5}, A
    for A in [6, 10, 14]:
        w = W(0, A, 0, -1, 0)
        assert local_image(w, 2).subgroup.elements == {1, 2, 5, 10}, A


def test_local_image_oracle_equivalence_small():
    curves = [W(0, 1, 0, 3, 0), W(0, 3, 0, -1, 0), W(0, -2, 0, 5, 0), W(0, 5, 0, 4, 0)]
    for w in curves:
        for place in [2, 3, 5, OO]:
            a = local_image(w, place).subgroup.elements
            b = local_image_bruteforce(w, place).subgroup.elements
            assert a == b, (w, place, a, b)


def test_phi_selmer_contains_kernel_class():
    for ainvs in [(0, 5, 0, -1, 0), (0, 17, 0, 16, 0), (0, 3, 0, -1, 0)]:
        w = W(*ainvs)
        sel = phi_selmer(w)
        assert selmer_kernel_class(w) in sel


def test_phi_selmer_beta_family_example():
    # p = 3, z = 1: q = 25; Selmer classes land inside every local image
    w = beta_even_curve(3, 1)
    sel = phi_selmer(w)
    assert SquareClass(1) in sel
    # the kernel class A^2-4B = p^2z(p^2z+16) = 9*25: trivial class here
    assert selmer_kernel_class(w).rep == 1
    for cls in sel.elements:
        assert cls.rep > 0  # image at infinity is trivial, no negative classes


def test_candidate_classes_support():
    w = W(0, 5, 0, -1, 0)
    cands = candidate_classes(w)
    assert 1 in cands and -1 in cands and 2 in cands
    assert all(abs(c) <= 2 * 29 * 2 for c in cands)


def test_field_discriminant_and_splitting():
    assert field_discriminant(-7) == -7
    assert field_discriminant(-2) == -8
    assert field_discriminant(-5) == -20
    with pytest.raises(ValueError):
        field_discriminant(-4)
    for d in [-1, -2, -7, -15, -21]:
        for p in [2, 3, 5, 7, 11, 13]:
            assert splits_in(d, p) == splits_in_oracle(d, p), (d, p)


def test_heegner_scan():
    # N = 15: both 3 and 5 must split; 2 | N absent so no mod-8 force
    w = W(-1, 1, -1, 0, 0)  # conductor 15
    ds = heegner_field_scan(w, 60)
    for d in ds:
        assert splits_in(d, 3) and splits_in(d, 5)
    assert -26 in ds  # disc -104: (-104|3): -104=1 mod 3 -> QR; mod 5: 1 -> QR
    # every 2 | N case forces d = 1 mod 8
    w2 = W(0, 5, 0, -1, 0)  # conductor 4p
    for d in heegner_field_scan(w2, 80):
        assert d % 8 == 1


def test_local_norm_index_infinity():
    w = W(0, 5, 0, -1, 0)  # disc_min = 16(A^2+4) > 0
    assert local_norm_index(w, OO, -7) == 1


def test_local_norm_index_rejects_full_two_torsion():
    with pytest.raises(FullTwoTorsionError):
        local_norm_index(W(0, 0, 0, -1, 0), OO, -7)


def test_sum_indices_beta_family_d_minus_2():
    # d = -2: (disc_min, -2)_2 = 1 gives i_2 = 2, i_infty = 1: total 3
    for p, z in [(17, 1), (41, 1), (73, 1)]:
        w = beta_even_curve(p, z)
        total, i_map = sum_local_norm_indices(w, -2)
        assert i_map[OO] == 1
        assert i_map[2] == 2
        assert total == 3, (p, z, i_map)


def test_kramer_certificate_beta_family():
    # p = 1 mod 8 and d = -2: sum i = 3 and the class of p survives in Phi
    done = 0
    for p in [17, 41, 73, 89, 97]:
        w = beta_even_curve(p, 1)
        N = global_data(w).conductor
        if not is_heegner_field(N, -2):
            continue
        cert = kramer_sha2_bound(w, -2)
        assert cert.sum_i == 3
        assert cert.dim_phi_lower >= 1, (p, cert.as_dict())
        assert cert.sha2_dim_lower >= 1
        assert cert.two_divides_sha_sqrt
        inter = phi_intersection(w, -2)
        assert square_class(p) in inter
        done += 1
    assert done >= 2


def test_B_minus_one_A_2_mod_4_image_of_two():
    # A = 2 mod 4 (A != +-2): the class of 2 gives a nontrivial element of Phi
    found = 0
    for A in [6, 10, 14, 18]:
        w = W(0, A, 0, -1, 0)
        N = global_data(w).conductor
        for d in heegner_field_scan(w, 120):
            inter = phi_intersection(w, d)
            g = selmer_kernel_class(w)
            if square_class(2) in inter and square_class(2) != g:
                assert everywhere_local_norm_dim(w, d) >= 1
                found += 1
                break
    assert found >= 2


def test_kramer_insufficient_case_records_note():
    # a case where the bound falls short should not claim divisibility
    w = W(0, 3, 0, -1, 0)  # N = 208
    ds = heegner_field_scan(w, 150)
    assert ds, "expected some Heegner field"
    found_any = False
    for d in ds[:3]:
        cert = kramer_sha2_bound(w, d)
        found_any = True
        if not cert.two_divides_sha_sqrt:
            assert cert.notes
    assert found_any


def test_kramer_requires_rank_one():
    w = W(0, 5, 0, -1, 0)
    with pytest.raises(ValueError):
        kramer_sha2_bound(w, -7, rank_hypothesis=0)


def test_dual_params():
    assert dual_params(Fraction(3), Fraction(-1)) == (Fraction(-6), Fraction(13))
