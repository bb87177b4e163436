#!/usr/bin/env python3
"""Walk through the whole pipeline on the projective plane.

The fan has rays (1,0), (0,1), (-1,-1).  We enumerate its Demazure roots,
pick the admissible basis, emit both isomorphism classes of additive
actions, bring a random generator into normal form and let the annihilator
invariant tell the two classes apart.
"""

from fractions import Fraction

from toric_additive import (
    ActionClass,
    annihilator_profile,
    build_fan,
    classify,
    classify_profile,
    derivation_str,
    distinguish_actions,
    normal_form,
    poly_str,
)

fan = build_fan([(1, 0), (0, 1), (-1, -1)])
c = classify(fan)

print("rays:", fan.rays)
print("admits additive action:", c.admits_action)
print("isomorphism classes:", c.num_classes)
print("wide:", c.wide, " degree d:", c.d)
print()

rs = c.root_system
for i in range(fan.nrays):
    print(f"roots of ray {i + 1}:", rs.roots_of_ray(i))
print("positive system:", rs.positive, "for u =", rs.regular_vector)
print()

fam = c.family
print("delta      =", derivation_str(fam.delta))
for k, p in enumerate(fam.partials):
    print(f"partial_{k}  =", derivation_str(p))
print()

print("normalized action:")
for line in c.normalized_action.image_strings():
    print("  " + line)
print("non-normalized action:")
for line in c.non_normalized_action.image_strings():
    print("  " + line)
print()

# an arbitrary generator delta + 5*partial_0 + 3*partial_1 is conjugate to
# the straightened one delta + 3*partial_1; eta records the conjugation
res = normal_form((5, 3), fam)
print("normal form of mu = (5, 3): eta =", tuple(map(str, res.eta)))
print("conjugated generator entry:",
      poly_str(res.conjugated.entries[1]))
print()

verdicts = distinguish_actions(c)
print("distinguisher:", {k: v.value for k, v in verdicts.items()})
rep = annihilator_profile(c.non_normalized_action, fam)
print("stabilizer lines of the non-normalized probes:", rep.lines)
assert classify_profile(rep) is ActionClass.NON_NORMALIZED
