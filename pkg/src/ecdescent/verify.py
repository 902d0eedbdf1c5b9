"""Table-verification sweeps.

Each sweep re-derives one block of golden data (reduction-type tables,
exception lists, local-image lists, chain bounds, Selmer lower bounds)
from scratch through the library modules and reports every case as a
record {case_id, inputs, computed, expected, citation, status}.
Failures are data, not exceptions: the report carries them.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import OO, padic_valuation, prime_divisors, smallest_nonresidue
from .descent2 import (
    heegner_field_scan,
    is_heegner_field,
    kramer_sha2_bound,
    local_image,
    phi_intersection,
    selmer_kernel_class,
    sum_local_norm_indices,
)
from .descent3 import HypothesisFailure, ThreeDividesTamagawa, criterion_witnesses, sha3_criterion
from .families import (
    SingularParameterError,
    build_curve,
    torsion_subgroup,
    z2z4_point,
    z2z6_point,
    z3_point,
    z4_point,
)
from .fixtures import FIXTURES
from .isogeny import three_isogeny_chain, velu_2_isogeny
from .tate import GOOD, SPLIT, global_data, local_reduction
from .weierstrass import WeierstrassModel, find_isomorphism
from .arith import square_class


@dataclass
class Report:
    section: int
    cases: list = field(default_factory=list)

    def add(self, case_id, inputs, computed, expected, citation, ok):
        self.cases.append(
            {
                "case_id": case_id,
                "inputs": inputs,
                "computed": computed,
                "expected": expected,
                "citation": citation,
                "status": "pass" if ok else "fail",
            }
        )

    @property
    def attempted(self) -> int:
        return len(self.cases)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if c["status"] == "fail")

    @property
    def passed(self) -> int:
        return self.attempted - self.failed

    @property
    def mismatches(self) -> list:
        return [c for c in self.cases if c["status"] == "fail"]

    def summary(self) -> dict:
        return {
            "section": self.section,
            "attempted": self.attempted,
            "passed": self.passed,
            "failed": self.failed,
        }

    def dump_jsonl(self, fh):
        for c in self.cases:
            fh.write(json.dumps(c, default=str) + "\n")
        fh.write(json.dumps({"summary": self.summary()}) + "\n")


def _lambda_bad_prime_hint(alpha, beta):
    return sorted(
        set(prime_divisors(16 * alpha**2 - beta**2))
        | set(prime_divisors(beta))
        | set(prime_divisors(alpha))
        | {2}
    )


def verify_section(section: int, **opts) -> Report:
    return {
        3: _verify_3,
        4: _verify_4,
        5: _verify_5,
        6: _verify_6,
        8: _verify_8,
        9: _verify_9,
    }[section](**opts)


# -- section 3: the Z/2+Z/4 family -------------------------------------------


def _verify_3(bound: int = 200, samples: int = 120, seed: int = 0) -> Report:
    rep = Report(3)
    rng = random.Random(seed)
    # multiplicative rows: ord_p(lambda) = m > 0 gives split I_{4m}, c = 4m
    done = 0
    while done < samples:
        alpha, beta = rng.randint(1, 400), rng.randint(1, 400)
        if math.gcd(alpha, beta) != 1 or 4 * alpha == beta:
            continue
        lam = Fraction(16 * alpha**2 - beta**2, 16 * beta**2)
        ps = [p for p in prime_divisors(lam.numerator) if padic_valuation(lam, p) > 0]
        if not ps:
            continue
        w = build_curve(z2z4_point(alpha, beta))
        for p in ps[:2]:
            m = padic_valuation(lam, p)
            lr = local_reduction(w, p)
            ok = str(lr.kodaira) == f"I{4 * m}" and lr.kind == SPLIT and lr.tamagawa == 4 * m
            rep.add(
                f"s3-mult-{alpha}-{beta}-{p}",
                {"alpha": alpha, "beta": beta, "p": p, "m": m},
                lr.as_dict(),
                {"kodaira": f"I{4 * m}", "c_p": 4 * m, "kind": SPLIT},
                "multiplicative row of the lambda-family reduction table",
                ok,
            )
        done += 1

    # exception scan: the S/T counting conditions fail exactly on the nine
    # curves (restricting to v_2(beta) <= 4; larger powers of 2 are covered
    # by the even-C_2 argument and still have 8 | C)
    exc = {}
    eight_ok = True
    for beta in range(1, bound + 1):
        for alpha in range(1, bound + 1):
            if math.gcd(alpha, beta) != 1 or 4 * alpha == beta:
                continue
            lam = Fraction(16 * alpha**2 - beta**2, 16 * beta**2)
            S = [p for p in prime_divisors(lam.numerator) if padic_valuation(lam, p) > 0]
            T = [p for p in prime_divisors(lam.denominator) if p != 2 and padic_valuation(lam, p) < 0]
            conditions_ok = len(S) >= 1 and (len(T) >= 1 or len(S) >= 2)
            if conditions_ok:
                continue
            w = build_curve(z2z4_point(alpha, beta))
            gd = global_data(w, bad_prime_hint=_lambda_bad_prime_hint(alpha, beta))
            key = str(gd.minimal_model)
            exc.setdefault(key, (gd, []))[1].append((alpha, beta))
            if gd.tamagawa_product % 8 and key != str(FIXTURES["15a3"].model):
                eight_ok = False
    counted = {k: v for k, v in exc.items() if padic_valuation(v[1][0][1], 2) <= 4}
    expected_models = {
        str(FIXTURES[lbl].model)
        for lbl in ["15a1", "15a3", "21a1", "24a1", "48a3", "120a2", "240a3", "240d5", "336e4"]
    }
    rep.add(
        "s3-exceptions",
        {"bound": bound},
        sorted(counted),
        sorted(expected_models),
        "exception list of the torsion Z/2+Z/4 counting argument",
        set(counted) == expected_models,
    )
    rep.add(
        "s3-eight-divides",
        {"bound": bound},
        {"only_violator_is_15a3": eight_ok},
        {"only_violator_is_15a3": True},
        "8 | C over the family except one curve with C*M = 8",
        eight_ok,
    )
    fif = exc.get(str(FIXTURES["15a3"].model))
    cm = None
    if fif is not None:
        cm = fif[0].tamagawa_product * (FIXTURES["15a3"].manin or 0)
    rep.add(
        "s3-15a3-CM",
        {},
        cm,
        8,
        "C*M = 8 for the exceptional curve (Manin constant from modular tables)",
        cm == 8,
    )
    return rep


# -- section 4: the Z/2+Z/2 family -------------------------------------------


def _verify_4(bound: int = 300, jobs: int = 1) -> Report:
    rep = Report(4)
    pairs = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, a):
            if a and b and a != b:
                pairs.append((a, b))
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.map(_sec4_case, pairs, chunksize=2048)
    else:
        results = map(_sec4_case, pairs)
    bad = []
    attempted = 0
    for res in results:
        if res is None:
            continue
        attempted += 1
        if res:
            bad.append(res)
    classes = {}
    for key, ab, C in bad:
        classes.setdefault(key, (ab, C))
    expected = {str(FIXTURES["17a2"].model), str(FIXTURES["32a2"].model)}
    ok = set(classes) == expected and all(C == 2 for _, C in classes.values())
    rep.add(
        "s4-four-divides",
        {"bound": bound, "attempted": attempted},
        {k: v[1] for k, v in sorted(classes.items())},
        {m: 2 for m in sorted(expected)},
        "4 | C over the full 2-torsion family except two curves with C = M = 2",
        ok,
    )
    return rep


def _sec4_case(pair):
    a, b = pair
    try:
        from .families import z2z2_point

        fp = z2z2_point(a, b)
    except (ValueError, SingularParameterError):
        return None
    a, b = fp.params
    w = build_curve(fp)
    hint = sorted(set(prime_divisors(a)) | set(prime_divisors(b)) | set(prime_divisors(a - b)) | {2})
    gd = global_data(w, bad_prime_hint=hint)
    if gd.tamagawa_product % 4 == 0:
        return False
    return (str(gd.minimal_model), (a, b), gd.tamagawa_product)


# -- section 5: the Z/4 family ------------------------------------------------


def _verify_5(seed: int = 0, image_samples: int = 12) -> Report:
    rep = Report(5)
    # the beta = +-2^k table, singular and good rows included
    table = [
        (2**2, "40a3", 2),
        (2**4, "32a4", 2),
        (2**6, None, 4),
        (2**8, None, 4),
        (2**10, None, 4),
        (-(2**2), "24a4", 2),
        (-(2**6), "24a3", 2),
        (-(2**8), "15a7", 1),
        (-(2**10), None, 2),  # z = 5 odd: C_2 = 2(z-4)
        (-(2**12), None, 4),  # z = 6 even: C_2 = 2(z-4)
        (-(2**14), None, 6),  # z = 7 odd
    ]
    for beta, label, expect_c in table:
        w = build_curve(z4_point(beta))
        gd = global_data(w)
        got = gd.tamagawa_product if label else local_reduction(w, 2).tamagawa
        ok = got == expect_c
        if label:
            ok = ok and find_isomorphism(gd.minimal_model, FIXTURES[label].model) is not None
        rep.add(
            f"s5-beta-{beta}",
            {"beta": beta},
            {"C": got, "N": gd.conductor},
            {"C": expect_c, "label": label},
            "beta power-of-two Tamagawa table",
            ok,
        )
    # singular row
    try:
        z4_point(-16)
        rep.add("s5-beta--16", {"beta": -16}, "curve", "singular", "singular row of the table", False)
    except SingularParameterError:
        rep.add("s5-beta--16", {"beta": -16}, "singular", "singular", "singular row of the table", True)
    # odd/even ord_p beta rows; odd m gives a star fiber with C_p = 4
    # (type I_m* after minimalization), even m gives I_{2z} with even C_p
    for beta, p, expect in [(3 * 5, 3, ("I1*", 4)), (3**3 * 5, 3, ("I3*", 4)), (5**3, 5, ("I3*", 4)), (7**2, 7, ("I2", None))]:
        lr = local_reduction(build_curve(z4_point(beta)), p)
        ok = str(lr.kodaira) == expect[0] and (expect[1] is None or lr.tamagawa == expect[1])
        if expect[1] is None:
            ok = ok and lr.tamagawa % 2 == 0
        rep.add(
            f"s5-ordp-{beta}-{p}",
            {"beta": beta, "p": p},
            lr.as_dict(),
            {"kodaira": expect[0], "c": expect[1] or "even"},
            "odd/even ord_p(beta) reduction rows",
            ok,
        )
    # good reduction at 2 for m = 8, u = 3 mod 4
    lr = local_reduction(build_curve(z4_point(2**8 * 3)), 2)
    rep.add(
        "s5-m8-good",
        {"beta": 2**8 * 3},
        lr.as_dict(),
        {"kind": GOOD},
        "m = 8 with u = 3 mod 4 gives good reduction at 2",
        lr.kind == GOOD,
    )
    # local images of the transformed curve y^2 = x^3 + (p^2z+8)x^2 + 16x
    rng = random.Random(seed)
    prims = [p for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 37, 41) if p != 2]
    done = 0
    while done < image_samples:
        p = rng.choice(prims)
        z = rng.choice([1, 1, 2])
        w = WeierstrassModel.from_ainvs([0, p ** (2 * z) + 8, 0, 16, 0])
        # infinity
        img_inf = local_image(w, OO).subgroup.elements
        rep.add(
            f"s5-img-inf-{p}-{z}", {"p": p, "z": z}, sorted(img_inf), [1], "image at infinity is trivial", img_inf == {1}
        )
        # at 2
        img2 = local_image(w, 2).subgroup.elements
        rep.add(f"s5-img-2-{p}-{z}", {"p": p, "z": z}, sorted(img2), [1, 5], "image at 2 is {1,5}", img2 == {1, 5})
        # at p: full iff p = 1 mod 4
        imgp = local_image(w, p)
        expect_full = p % 4 == 1
        ok = (imgp.dim == 2) == expect_full
        if not expect_full:
            ok = ok and imgp.subgroup.elements == {1, smallest_nonresidue(p)}
        rep.add(
            f"s5-img-p-{p}-{z}",
            {"p": p, "z": z},
            sorted(imgp.subgroup.elements),
            "full iff p = 1 mod 4",
            "local image at p",
            ok,
        )
        # at odd divisors of p^2z + 16 other than p: full group
        for ell in [l for l in prime_divisors(p ** (2 * z) + 16) if l not in (2, p)][:1]:
            img = local_image(w, ell)
            rep.add(
                f"s5-img-ell-{p}-{z}-{ell}",
                {"p": p, "z": z, "ell": ell},
                img.dim,
                2,
                "image at an odd divisor of p^2z+16 is the full local group",
                img.dim == 2,
            )
        done += 1
    # exceptional family: quotient model and full 2-torsion
    for p, z in [(3, 1), (7, 1), (11, 1)]:
        pz = p**z
        E = WeierstrassModel.from_ainvs([pz, -1, -pz, 0, 0])
        rec = velu_2_isogeny(E, (1, 0))
        expect = WeierstrassModel.from_ainvs([pz, -1, -pz, -5, -(pz**2 + 3)])
        ok = rec.target == expect and rec.target.discriminant == pz**4 * (pz**2 + 16) ** 2
        rep.add(
            f"s5-exc-quotient-{p}-{z}",
            {"p": p, "z": z},
            str(rec.target),
            str(expect),
            "quotient model of the exceptional family",
            ok,
        )
    return rep


# -- section 6: the Z/2 family -------------------------------------------------


MOD128_PARITY = {
    2: 0, 6: 0, 10: 1, 14: 0, 18: 0, 22: 0, 26: 1, 30: 1,
    34: 0, 38: 0, 42: 1, 46: 0, 50: 0, 54: 0, 58: 1, 62: 1,
    66: 0, 70: 0, 74: 1, 78: 0, 82: 0, 86: 0, 90: 1, 94: 1,
    98: 0, 102: 0, 106: 1, 110: 0, 114: 0, 118: 0, 122: 1,
}


def _verify_6(a_hi: int = 2050, image_samples: int = 10, seed: int = 0) -> Report:
    rep = Report(6)
    # B = 1: parity table of C_2 by A mod 128 over the whole range
    bad = []
    for A in range(2, a_hi + 1, 4):
        w = WeierstrassModel.from_ainvs([0, A, 0, 1, 0])
        if w.is_singular:
            continue
        lr = local_reduction(w, 2)
        r = A % 128
        expect = (padic_valuation(A + 2, 2) % 2) if r == 126 else MOD128_PARITY[r]
        if lr.tamagawa % 2 != expect:
            bad.append((A, lr.tamagawa, expect))
    rep.add(
        "s6-mod128-table",
        {"range": [2, a_hi]},
        {"mismatches": bad},
        {"mismatches": []},
        "B = 1 parity of C_2 by A mod 128",
        not bad,
    )
    # good reduction at 2 iff A = 62 mod 128
    bad = []
    for A in range(2, a_hi + 1):
        w = WeierstrassModel.from_ainvs([0, A, 0, 1, 0])
        if w.is_singular:
            continue
        good = local_reduction(w, 2).kind == GOOD
        if good != (A % 128 == 62):
            bad.append(A)
    rep.add(
        "s6-good-at-2",
        {"range": [2, a_hi]},
        {"mismatches": bad},
        {"mismatches": []},
        "B = 1 good reduction at 2 iff A = 62 mod 128",
        not bad,
    )
    # B = 1 odd-C_2 criterion: residues from the table plus the 0/1 mod 4 rows
    bad = []
    for A in range(2, a_hi + 1):
        w = WeierstrassModel.from_ainvs([0, A, 0, 1, 0])
        if w.is_singular:
            continue
        odd = local_reduction(w, 2).tamagawa % 2 == 1
        r4, r16, r128 = A % 4, A % 16, A % 128
        expect = (
            r4 in (0, 1)
            or r16 == 10
            or r128 in (30, 62, 94)
            or (r128 == 126 and padic_valuation(A + 2, 2) % 2 == 1)
        )
        if odd != expect:
            bad.append(A)
    rep.add(
        "s6-odd-criterion",
        {"range": [2, a_hi]},
        {"mismatches": bad},
        {"mismatches": []},
        "odd C_2 residue classes for B = 1 (30 and 94 mod 128 verified odd as in the table)",
        not bad,
    )
    # B = -1: C_2 even iff A = 0 mod 4
    bad = []
    for A in range(-60, 61):
        w = WeierstrassModel.from_ainvs([0, A, 0, -1, 0])
        lr = local_reduction(w, 2)
        if (lr.tamagawa % 2 == 0) != (A % 4 == 0):
            bad.append(A)
    rep.add(
        "s6-Bminus1-parity",
        {"range": [-60, 60]},
        {"mismatches": bad},
        {"mismatches": []},
        "B = -1: C_2 even iff A = 0 mod 4",
        not bad,
    )
    # B = -1 local images at 2
    for A in [5, 9, 13, 7, 11]:
        img = local_image(WeierstrassModel.from_ainvs([0, A, 0, -1, 0]), 2).subgroup.elements
        rep.add(
            f"s6-img2-A{A}",
            {"A": A},
            sorted(img),
            [1, 5],
            "B = -1 image at 2 for odd A",
            img == {1, 5},
        )
    for A in [6, 10, 14, 18]:
        img = local_image(WeierstrassModel.from_ainvs([0, A, 0, -1, 0]), 2).subgroup.elements
        rep.add(
            f"s6-img2-A{A}",
            {"A": A},
            sorted(img),
            [1, 2, 5, 10],
            "B = -1 image at 2 for A = 2 mod 4",
            img == {1, 2, 5, 10},
        )
    # B = -1, A = 2 mod 4 (A != +-2): the class of 2 is a nontrivial
    # element of the everywhere-local norm group for admissible fields
    done = 0
    for A in [6, 10, 14, 18, 22, 26]:
        if done >= 3:
            break
        w = WeierstrassModel.from_ainvs([0, A, 0, -1, 0])
        for d in heegner_field_scan(w, 150):
            inter = phi_intersection(w, d)
            if square_class(2) in inter and square_class(2) != selmer_kernel_class(w):
                rep.add(
                    f"s6-phi2-A{A}",
                    {"A": A, "d": d},
                    "2 in Phi",
                    "2 in Phi",
                    "image of 2 is nontrivial in the everywhere-local norm group",
                    True,
                )
                done += 1
                break
    # exceptional family checks: A = 2 and A = 11 are the non-prime cases
    for A, label in [(2, "128d2"), (11, "80b4")]:
        gd = global_data(WeierstrassModel.from_ainvs([0, A, 0, -1, 0]))
        ok = find_isomorphism(gd.minimal_model, FIXTURES[label].model) is not None
        ok = ok and FIXTURES[label].manin == 2
        rep.add(
            f"s6-exc-A{A}",
            {"A": A},
            str(gd.minimal_model),
            str(FIXTURES[label].model),
            "the two non-prime A^2+4 cases carry Manin constant 2",
            ok,
        )
    # A^2+4 = p prime: quotient model and conductor data
    for A in [1, 5, 13]:
        p = A * A + 4
        E = WeierstrassModel.from_ainvs([0, A, 0, -1, 0])
        gd = global_data(E)
        rec = velu_2_isogeny(E, (0, 0))
        ok = (
            gd.delta_min == 16 * p
            and gd.conductor == 4 * p
            and rec.target == WeierstrassModel.from_ainvs([0, A, 0, 4, 4 * A])
        )
        # the shifted quotient has C_p = 2
        lrp = local_reduction(rec.target, p)
        ok = ok and lrp.tamagawa == 2
        rep.add(
            f"s6-exc-family-A{A}",
            {"A": A, "p": p},
            {"N": gd.conductor, "quotient": str(rec.target), "C_p(E')": lrp.tamagawa},
            {"N": 4 * p, "C_p(E')": 2},
            "prime A^2+4 family: conductor and quotient data (A = 1 mod 4)",
            ok,
        )
    # B = -16, A = 15 sporadic case: A^2+64 = 17^2, so the curve picks up
    # full rational 2-torsion and lands in the 4 | C theorem; the published
    # table's C_2 = 2 belongs to an isogeny-class mate (computed C_2 here: 4)
    gd = global_data(WeierstrassModel.from_ainvs([0, 15, 0, -16, 0]))
    tors = torsion_subgroup(gd.minimal_model).structure
    ok = gd.conductor == 272 and tors == (2, 2) and gd.tamagawa_product % 4 == 0
    ok = ok and find_isomorphism(gd.minimal_model, FIXTURES["272b2"].model) is not None
    rep.add(
        "s6-B-16-A15",
        {"A": 15, "B": -16},
        {"N": gd.conductor, "torsion": tors, "C": gd.tamagawa_product},
        {"N": 272, "torsion": (2, 2), "4 | C": True},
        "B = -16, A = 15 sporadic case resolved through full 2-torsion",
        ok,
    )
    return rep


# -- section 8: the Z/2+Z/6 family ----------------------------------------------


def _verify_8(s_hi: int = 60, t_abs: int = 60, jobs: int = 1) -> Report:
    rep = Report(8)
    tasks = [
        (S, T)
        for S in range(1, s_hi + 1)
        for T in range(-t_abs, t_abs + 1)
        if math.gcd(S, T) == 1 and T not in (S, 5 * S, 3 * S, -3 * S, 9 * S)
    ]
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.map(_sec8_case, tasks, chunksize=256)
    else:
        results = map(_sec8_case, tasks)
    bad = [r for r in results if r is not None and r is not True]
    rep.add(
        "s8-twelve-divides",
        {"S": [1, s_hi], "T": [-t_abs, t_abs], "attempted": len(tasks)},
        {"violations": bad},
        {"violations": []},
        "12 | C over the torsion Z/2+Z/6 family",
        not bad,
    )
    return rep


def _sec8_case(st):
    S, T = st
    try:
        fp = z2z6_point(S, T)
        w = build_curve(fp)
    except (ValueError, SingularParameterError):
        return None
    from .families import z2z6_uv

    u, v = z2z6_uv(S, T)
    hint = set(prime_divisors(v)) | set(prime_divisors(v + u)) | set(prime_divisors(u)) | set(
        prime_divisors(9 * v + u)
    ) | {2, 3}
    gd = global_data(w, bad_prime_hint=sorted(hint))
    if gd.tamagawa_product % 12:
        return (S, T, gd.tamagawa_product)
    return True


# -- section 9: the Z/3 family ----------------------------------------------------


def _verify_9(a_abs: int = 10_000, sha_samples: int = 12, seed: int = 0) -> Report:
    rep = Report(9)
    # chain lengths over |a| <= a_abs with b = 1
    max_len = 0
    long_chains = []
    for a in range(-a_abs, a_abs + 1):
        if a == 3:
            continue
        divs = a * a + 3 * a + 9
        # the chain has 4 curves iff a^2+3a+9 is a cube (only a = -6)
        cube = round(divs ** (1 / 3))
        is_cube = any((cube + e) ** 3 == divs for e in (-1, 0, 1))
        length = 4 if is_cube else 3
        if length > max_len:
            max_len = length
        if length == 4:
            long_chains.append(a)
    # confirm the arithmetic shortcut against the real chains on a sample
    for a in [-6, 1, 2, 10, -20]:
        chain = three_isogeny_chain(a)
        expect = 4 if a == -6 else 3
        rep.add(
            f"s9-chain-{a}",
            {"a": a},
            chain.length,
            expect,
            "quotient chain length",
            chain.length == expect,
        )
    ok = max_len == 4 and long_chains == [-6]
    if ok:
        gd = global_data(build_curve(z3_point(-6, 1)))
        ok = gd.conductor == 27
    rep.add(
        "s9-chain-bound",
        {"a_abs": a_abs},
        {"max": max_len, "length4_at": long_chains},
        {"max": 4, "length4_at": [-6]},
        "maximal chain length 4, attained only at conductor 27",
        ok,
    )
    # b != 1 route: a prime divisor of b witnesses 3 | C
    for a, b in [(2, 5), (1, 7), (4, 5)]:
        w = build_curve(z3_point(a, b))
        gd = global_data(w)
        witness = [p for p in prime_divisors(b) if gd.local_data[p].tamagawa % 3 == 0]
        rep.add(
            f"s9-bneq1-{a}-{b}",
            {"a": a, "b": b},
            {"witnesses": witness, "C": gd.tamagawa_product},
            "3 | C_p for some p | b",
            "order-3 point reducing to the singular point forces 3 | C_p",
            bool(witness),
        )
    # Selmer lower bounds for admissible (a, d)
    rng = random.Random(seed)
    done = 0
    a = 1
    while done < sha_samples and a < 4000:
        a += 1
        if a == 3:
            continue
        divs, near = criterion_witnesses(a)
        if len(divs) < 2 and not near:
            continue
        E = build_curve(z3_point(a, 1))
        try:
            ds = heegner_field_scan(E, 120)
        except Exception:
            continue
        ds = [d for d in ds if d != -3]
        if not ds:
            continue
        try:
            cert = sha3_criterion(a, ds[0])
        except (HypothesisFailure, ThreeDividesTamagawa):
            continue
        if cert.route == "tamagawa":
            rep.add(
                f"s9-sha-{a}",
                {"a": a, "d": ds[0]},
                cert.conclusion,
                "3 | C",
                "Tamagawa short-circuit",
                cert.conclusion == "3 | C",
            )
            continue
        ok = cert.ledger.sel_phi_dim_lower >= 4 and cert.sha3_dim_lower >= 2
        # oracle equivalence of the per-prime divisibility claims
        for p, c in cert.witnesses.items():
            ok = ok and local_reduction(cert.ledger.quotient, p).tamagawa == c and c % 3 == 0
        rep.add(
            f"s9-sha-{a}",
            {"a": a, "d": ds[0]},
            {"sel_dim": cert.ledger.sel_phi_dim_lower, "sha_dim": cert.sha3_dim_lower, "witnesses": cert.witnesses},
            {"sel_dim": ">=4", "sha_dim": ">=2"},
            "Selmer-ratio lower bound with Tamagawa witnesses",
            ok,
        )
        done += 1
    return rep
