"""The six torsion families and exact rational torsion.

Each family builder validates its parameter invariants and produces an
integral model; the torsion computation bounds the order by counting
points modulo good primes, then locates the points through division
polynomials and halving, verifying every generator by scalar
multiplication.
"""

from ecdescent import (
    build_curve,
    global_data,
    torsion_growth,
    torsion_subgroup,
    z2_point,
    z2z2_point,
    z2z4_point,
    z2z6_point,
    z3_point,
    z4_point,
)

for fp in [
    z2z4_point(1, 3),
    z4_point(-1),
    z2z2_point(3, 5),
    z2_point(4, 7),
    z2z6_point(1, 7),
    z3_point(2, 1),
]:
    w = build_curve(fp)
    tg = torsion_subgroup(w)
    gd = global_data(w)
    n1, n2 = tg.structure
    name = f"Z/{n2}" if n1 == 1 else f"Z/{n1} x Z/{n2}"
    print(f"{fp}: N = {gd.conductor:6d}  torsion {name}")
    for P, k in tg.generators:
        print(f"    generator of order {k}: ({P[0]}, {P[1]})")

# torsion jumps happen on positive-density subsets and are reported as-is
w = build_curve(z3_point(5, 1))
print("\nz3(5,1) torsion:", torsion_subgroup(w).structure, "(a jump to Z/6)")

# growth over quadratic fields: the quotient curve of y^2 = x^3+5x^2-x has
# 2-torsion polynomial 4(x^2+4)(x+5), so only Q(i) can enlarge the 2-part
from ecdescent import WeierstrassModel

w = WeierstrassModel.from_ainvs([0, 5, 0, 4, 20])
for d in [-1, -7, -11]:
    rep = torsion_growth(w, d)
    print(f"growth over Q(sqrt({d})):", "possible" if rep.gains_2_possible else "ruled out")
