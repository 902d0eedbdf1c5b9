"""Acceptance suite: one test per criterion, exact-match assertions.

Each test prints one PASS line (visible with -s or on failure); the time
limits stated for the sweeps are asserted inside the tests themselves.
"""

import math
import random
import time
from fractions import Fraction


from ecdescent.arith import (
    OO,
    factorize,
    hilbert_places,
    hilbert_symbol,
    is_prime,
    padic_valuation,
    prime_divisors,
    square_class,
)
from ecdescent.descent2 import (
    is_heegner_field,
    kramer_sha2_bound,
    local_image,
    local_image_bruteforce,
    phi_intersection,
    selmer_kernel_class,
)
from ecdescent.descent3 import criterion_witnesses, sha3_criterion
from ecdescent.families import (
    SingularParameterError,
    build_curve,
    z2z2_point,
    z2z4_point,
    z2z6_point,
    z3_point,
    z4_point,
)
from ecdescent.fixtures import FIXTURES
from ecdescent.isogeny import hadano_quotient, three_isogeny_chain, velu_2_isogeny, velu_3_isogeny
from ecdescent.tate import GOOD, SPLIT, global_data, local_reduction
from ecdescent.verify import MOD128_PARITY
from ecdescent.weierstrass import WeierstrassModel, find_isomorphism


def W(*a):
    return WeierstrassModel.from_ainvs(a)


def _report(n, ok, text):
    print(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {text}")
    assert ok, f"criterion {n}: {text}"


def test_criterion_01_lambda_family_tate_rows():
    t0 = time.time()
    rng = random.Random(11)
    checked_pairs = 0
    checked_primes = 0
    while checked_pairs < 500:
        alpha, beta = rng.randint(1, 300), rng.randint(1, 300)
        if math.gcd(alpha, beta) != 1 or 4 * alpha == beta:
            continue
        lam = Fraction(16 * alpha**2 - beta**2, 16 * beta**2)
        w = None
        for p in prime_divisors(lam.numerator):
            m = padic_valuation(lam, p)
            if m <= 0:
                continue
            if w is None:
                w = build_curve(z2z4_point(alpha, beta))
            lr = local_reduction(w, p)
            assert str(lr.kodaira) == f"I{4*m}", (alpha, beta, p)
            assert lr.kind == SPLIT and lr.tamagawa == 4 * m, (alpha, beta, p)
            checked_primes += 1
        checked_pairs += 1
    elapsed = time.time() - t0
    _report(
        1,
        checked_primes > 200 and elapsed < 10,
        f"500 sampled parameter pairs, {checked_primes} positive-valuation primes "
        f"all split I_4m with c=4m ({elapsed:.1f}s < 10s)",
    )


def test_criterion_02_exception_scan():
    t0 = time.time()
    violators_8C = {}
    counting_exceptions = {}
    for beta in range(1, 201):
        for alpha in range(1, 201):
            if math.gcd(alpha, beta) != 1 or 4 * alpha == beta:
                continue
            lam = Fraction(16 * alpha**2 - beta**2, 16 * beta**2)
            S = [p for p in prime_divisors(lam.numerator) if padic_valuation(lam, p) > 0]
            T = [p for p in prime_divisors(lam.denominator) if p != 2 and padic_valuation(lam, p) < 0]
            conditions_ok = len(S) >= 1 and (len(T) >= 1 or len(S) >= 2)
            # every curve in range is checked for 8 | C, not only the
            # counting exceptions
            w = build_curve(z2z4_point(alpha, beta))
            hint = sorted(
                set(prime_divisors(16 * alpha**2 - beta**2))
                | set(prime_divisors(beta))
                | set(prime_divisors(alpha))
                | {2}
            )
            gd = global_data(w, bad_prime_hint=hint)
            key = str(gd.minimal_model)
            if not conditions_ok and padic_valuation(beta, 2) <= 4:
                counting_exceptions[key] = gd.tamagawa_product
            if gd.tamagawa_product % 8:
                violators_8C[key] = gd.tamagawa_product
    elapsed = time.time() - t0
    nine = {
        str(FIXTURES[lbl].model)
        for lbl in ["15a1", "15a3", "21a1", "24a1", "48a3", "120a2", "240a3", "240d5", "336e4"]
    }
    ok = set(counting_exceptions) == nine
    # every prime power of 2 beyond the table still has 8 | C, so the lone
    # 8|C violator across the whole scan is the C*M = 8 curve
    ok = ok and set(violators_8C) == {str(FIXTURES["15a3"].model)}
    ok = ok and violators_8C[str(FIXTURES["15a3"].model)] * FIXTURES["15a3"].manin == 8
    ok = ok and elapsed < 60
    _report(
        2,
        ok,
        f"nine counting exceptions recovered exactly; only 8|C violator has C*M=8 ({elapsed:.1f}s < 60s)",
    )


def test_criterion_03_full_two_torsion_sweep():
    violators = {}
    attempted = 0
    for a in range(-300, 301):
        for b in range(-300, a):
            if a == 0 or b == 0 or a == b:
                continue
            try:
                fp = z2z2_point(a, b)
            except (ValueError, SingularParameterError):
                continue
            aa, bb = fp.params
            w = build_curve(fp)
            hint = sorted(
                set(prime_divisors(aa)) | set(prime_divisors(bb)) | set(prime_divisors(aa - bb)) | {2}
            )
            gd = global_data(w, bad_prime_hint=hint)
            attempted += 1
            if gd.tamagawa_product % 4:
                violators[str(gd.minimal_model)] = gd.tamagawa_product
    expected = {str(FIXTURES["17a2"].model): 2, str(FIXTURES["32a2"].model): 2}
    ok = violators == expected
    _report(3, ok, f"{attempted} curves, 4 | C except the two C=M=2 curves")


def test_criterion_04_mod128_table():
    bad = []
    for A in range(2, 2051):
        w = W(0, A, 0, 1, 0)
        if w.is_singular:
            continue
        lr = local_reduction(w, 2)
        odd = lr.tamagawa % 2 == 1
        r4, r16, r128 = A % 4, A % 16, A % 128
        if r4 == 2:
            expect_parity = (padic_valuation(A + 2, 2) % 2) if r128 == 126 else MOD128_PARITY[r128]
            if lr.tamagawa % 2 != expect_parity:
                bad.append(("table", A))
        if (lr.kind == GOOD) != (r128 == 62):
            bad.append(("good", A))
        expect_odd = (
            r4 in (0, 1)
            or r16 == 10
            or r128 in (30, 62, 94)
            or (r128 == 126 and padic_valuation(A + 2, 2) % 2 == 1)
        )
        if odd != expect_odd:
            bad.append(("criterion", A))
    _report(4, not bad, f"parity table, good-reduction rule, odd-C_2 classes over A in [2,2050]: {bad[:4]}")


def test_criterion_05_beta_power_table():
    rows = []
    # (beta, expected C of the curve, expected label or None)
    for beta, c, label in [
        (2**2, 2, "40a3"),
        (2**4, 2, "32a4"),
        (2**6, 4, None),
        (2**8, 4, None),
        (-(2**2), 2, "24a4"),
        (-(2**6), 2, "24a3"),
        (-(2**8), 1, "15a7"),
        (-(2**10), 2, None),
        (-(2**12), 4, None),
    ]:
        w = build_curve(z4_point(beta))
        gd = global_data(w)
        got = gd.tamagawa_product if label else local_reduction(w, 2).tamagawa
        ok = got == c
        if label:
            ok = ok and find_isomorphism(gd.minimal_model, FIXTURES[label].model) is not None
        rows.append(ok)
    try:
        z4_point(-16)
        rows.append(False)
    except SingularParameterError:
        rows.append(True)
    _report(5, all(rows), "all nine beta rows including the singular and good-reduction rows")


def _criterion6_pool():
    pool = []
    for p in range(17, 302, 8):
        if not is_prime(p):
            continue
        for z in (1, 2):
            q = p ** (2 * z) + 16
            fac = factorize(q)
            if max(f for f, _ in fac) > 2_000_000:
                continue
            if any(e % 2 == 0 for _, e in fac):
                continue
            if not is_heegner_field(p * q, -2):
                continue
            pool.append((p, z))
    return pool


def test_criterion_06_kramer_machinery():
    pool = _criterion6_pool()
    assert len(pool) >= 5, pool
    rng = random.Random(606)
    cache = {}
    count = 0
    for _ in range(100):
        p, z = rng.choice(pool)
        if (p, z) not in cache:
            w = W(0, p ** (2 * z) + 8, 0, 16, 0)
            cache[(p, z)] = kramer_sha2_bound(w, -2)
        cert = cache[(p, z)]
        assert cert.sum_i == 3, (p, z, cert.as_dict())
        assert cert.dim_phi_lower >= 1, (p, z, cert.as_dict())
        assert cert.sha2_dim_lower >= 1 and cert.two_divides_sha_sqrt
        count += 1
    # B = -1, A = 2 mod 4: the image of 2 is nontrivial in Phi
    found = 0
    for A in [6, 10, 14, 18, 22, 26, 30, 34]:
        w = W(0, A, 0, -1, 0)
        from ecdescent.descent2 import heegner_field_scan

        for d in heegner_field_scan(w, 150):
            inter = phi_intersection(w, d)
            if square_class(2) in inter and square_class(2) != selmer_kernel_class(w):
                found += 1
                break
    _report(
        6,
        count == 100 and found >= 6,
        f"100 sampled pairs (pool of {len(pool)}): sum(i)=3, dim(Phi)>=1, Sha[2] nontrivial; "
        f"image of 2 nontrivial for {found} twisted-family cases",
    )


def test_criterion_07_local_image_oracle():
    curves = []
    for A, B in [
        (1, 3), (3, -1), (-2, 5), (5, 4), (0, -1), (2, -3), (-3, 2), (7, -1),
        (4, 1), (1, -2), (6, -1), (-1, -5), (5, 1), (0, 2), (3, 5), (-4, 3),
        (2, 7), (-5, -1), (1, 6), (8, 1), (-6, 1), (3, 4), (9, 2), (-2, -2),
        (10, 3),
    ]:
        w = W(0, A, 0, B, 0)
        if not w.is_singular:
            curves.append(w)
    assert len(curves) == 25
    raised = 0
    for i, w in enumerate(curves):
        places = [OO, 2] + [p for p in prime_divisors(int(w.discriminant)) if p != 2]
        for pl in places:
            a = local_image(w, pl).subgroup.elements
            b = local_image_bruteforce(w, pl, cap=8192).subgroup.elements
            assert a == b, (w, pl, sorted(a), sorted(b))
            if i % 3 == 0 and pl != OO:
                c = local_image_bruteforce(w, pl, cap=65536).subgroup.elements
                assert a == c, (w, pl, "raised precision")
                raised += 1
    _report(7, True, f"25 curves: scan equals torsor enumeration at all bad places ({raised} raised-precision runs)")


def test_criterion_08_velu_hadano_closed_forms():
    rng = random.Random(88)
    primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
    for _ in range(50):
        p = rng.choice(primes)
        z = rng.choice([1, 1, 2])
        pz = p**z
        rec = velu_2_isogeny(W(pz, -1, -pz, 0, 0), (1, 0))
        assert rec.target == W(pz, -1, -pz, -5, -(pz**2 + 3))
        assert rec.target.discriminant == pz**4 * (pz**2 + 16) ** 2
    done = 0
    while done < 50:
        a, t = rng.randint(-40, 40), rng.randint(1, 6)
        try:
            rec = hadano_quotient(a, t**3)
        except (ValueError, SingularParameterError):
            continue
        assert rec.target == W(a + 6 * t, 0, (a * a + 3 * a * t + 9 * t * t) * t, 0, 0)
        assert rec.target.discriminant == t**3 * (a * a + 3 * a * t + 9 * t * t) ** 3 * (a - 3 * t) ** 3
        # independent route: the generic odd-degree quotient is the same curve
        velu = velu_3_isogeny(rec.source, (Fraction(0), Fraction(0)))
        assert find_isomorphism(velu.target, rec.target) is not None
        done += 1
    _report(8, True, "50 + 50 random parameters match the closed-form quotient models exactly")


def test_criterion_09_chain_lengths():
    max_len, at = 0, []
    for a in range(-10_000, 10_001):
        if a == 3:
            continue
        chain = three_isogeny_chain(a)
        if chain.length > max_len:
            max_len, at = chain.length, [a]
        elif chain.length == max_len:
            at.append(a)
    ok = max_len == 4 and at == [-6]
    ok = ok and global_data(build_curve(z3_point(-6, 1))).conductor == 27
    _report(9, ok, f"max chain length {max_len} over |a| <= 10^4, attained at {at} (conductor 27)")


def test_criterion_10_z2z6_sweep():
    t0 = time.time()
    violations = []
    attempted = 0
    for S in range(1, 61):
        for T in range(-60, 61):
            if math.gcd(S, T) != 1:
                continue
            try:
                fp = z2z6_point(S, T)
            except (ValueError, SingularParameterError):
                continue
            from ecdescent.families import z2z6_uv

            u, v = z2z6_uv(S, T)
            hint = sorted(
                set(prime_divisors(v)) | set(prime_divisors(v + u)) | set(prime_divisors(u))
                | set(prime_divisors(9 * v + u)) | {2, 3}
            )
            gd = global_data(build_curve(fp), bad_prime_hint=hint)
            attempted += 1
            if gd.tamagawa_product % 12:
                violations.append((S, T, gd.tamagawa_product))
    elapsed = time.time() - t0
    _report(
        10,
        not violations and elapsed < 120,
        f"12 | C for all {attempted} nonsingular members ({elapsed:.1f}s < 120s)",
    )


def test_criterion_11_cassels_three_descent():
    done = 0
    a = 1
    results = []
    while done < 50 and a < 3000:
        a += 1
        if a == 3:
            continue
        divs, near = criterion_witnesses(a)
        if len(divs) < 2 and not near:
            continue
        E = build_curve(z3_point(a, 1))
        gd = global_data(E)
        if gd.tamagawa_product % 3 == 0:
            continue
        from ecdescent.descent2 import heegner_field_scan

        ds = [d for d in heegner_field_scan(E, 100) if d != -3]
        if not ds:
            continue
        cert = sha3_criterion(a, ds[0])
        assert cert.route == "cassels"
        assert cert.ledger.sel_phi_dim_lower >= 4, (a, ds[0])
        assert cert.sha3_dim_lower >= 2
        # oracle equivalence of every 3-divisibility claim
        for p, c in cert.witnesses.items():
            lr = local_reduction(cert.ledger.quotient, p)
            assert lr.tamagawa == c and c % 3 == 0, (a, p)
        for p, o3 in cert.ledger.witnesses.items():
            lr = local_reduction(cert.ledger.quotient, p)
            assert padic_valuation(lr.tamagawa, 3) == o3
        results.append(a)
        done += 1
    _report(11, done == 50, f"50 admissible parameters with Selmer bound >= 4 and verified witnesses")


def test_criterion_12_hilbert_reciprocity():
    rng = random.Random(1212)
    for _ in range(10_000):
        a = rng.randint(-500, 500)
        b = rng.randint(-500, 500)
        if a == 0 or b == 0:
            continue
        prod = 1
        for v in hilbert_places(a, b):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)
    _report(12, True, "product formula holds for 10^4 random pairs")
