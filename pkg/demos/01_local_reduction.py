"""Local reduction data at every prime.

The complete reduction-type loop runs over exact integers: minimal model,
Kodaira symbol, Tamagawa number, conductor exponent.  A few classic
curves and one family walk show the output.
"""

from ecdescent import WeierstrassModel, global_data, local_reduction

# the conductor-11 curve with a 5-torsion point
w = WeierstrassModel.from_ainvs([0, -1, 1, -10, -20])
gd = global_data(w)
print("curve", w, "conductor", gd.conductor, "minimal disc", gd.delta_min)
for p, lr in sorted(gd.local_data.items()):
    print(f"  p={p}: {lr.kodaira}  c_p={lr.tamagawa}  f_p={lr.conductor_exponent}  ({lr.kind})")

# a wildly ramified place: y^2 = x^3 - x has type III at 2 with f = 5
w = WeierstrassModel.from_ainvs([0, 0, 0, -1, 0])
lr = local_reduction(w, 2)
print("\ny^2 = x^3 - x at 2:", lr.kodaira, "c =", lr.tamagawa, "f =", lr.conductor_exponent)

# non-minimal input is rescaled automatically
big = WeierstrassModel.from_ainvs([0, -6**2, 6**3, -10 * 6**4, -20 * 6**6])
print("\nnon-minimal model", big)
print("  recovers", global_data(big).minimal_model, "N =", global_data(big).conductor)

# a one-parameter family: ord_p(lambda) = m > 0 forces split I_{4m}
from fractions import Fraction

for lam, p in [(Fraction(3), 3), (Fraction(9), 3), (Fraction(49, 9), 7)]:
    w = WeierstrassModel.from_ainvs([1, -lam, -lam, 0, 0])
    lr = local_reduction(w, p)
    print(f"\nlambda = {lam}: at {p} type {lr.kodaira}, c = {lr.tamagawa} ({lr.kind})")
