"""End-to-end audit: #E(Q)_tors | u_K * C * M * sqrt(#Sha(E/K)).

The audit routes each curve by its torsion structure: a plain Tamagawa
count when enough local factors exist, a fixture-backed Manin constant
for the finitely many published exceptions, the Sha[2] or Sha[3] lower
bound when the Tamagawa product falls short, or a transfer across a
2-isogeny whose target is already certified.  Fixture facts and rank
hypotheses are flagged as assumptions in the output.
"""

import json

from ecdescent import WeierstrassModel, build_curve, main_theorem_audit, z2z6_point, z3_point, z4_point

showcase = [
    ("Z/2+Z/6, Tamagawa route", build_curve(z2z6_point(1, 7))),
    ("Z/2+Z/4 exception, fixture route", WeierstrassModel.from_ainvs([3, -1, -3, 0, 0])),
    ("Z/4 with Sha[2] route", build_curve(z4_point(41**2))),
    ("Z/2 exceptional family, transfer route", WeierstrassModel.from_ainvs([0, 5, 0, -1, 0])),
    ("Z/3 with Selmer-ratio route", build_curve(z3_point(10, 1))),
    ("Z/3 settled by the 3 | M fixture", build_curve(z3_point(1, 1))),
]

for title, w in showcase:
    cert = main_theorem_audit(w)
    print(f"== {title}")
    print(json.dumps(cert.as_dict(), indent=2, default=str)[:1200])
    print()
