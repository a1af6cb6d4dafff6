"""
Binary and quaternary forms of level p
======================================

Class enumeration, automorphism counts, genus masses and genus theta series
for the discriminants that appear in the congruences.
"""

from siegel_padic.quadforms import binary_class_number, enumerate_classes, epsilon, genus_partition, sl_class_count
from siegel_padic.theta import genus_theta0, genus_theta_normalized

# GL-classes of discriminant -23 and their automorphism counts
forms = enumerate_classes(2, 23, 23)
for f in forms:
    print(f.base.to_json(), "eps =", epsilon(f))
print("SL class number h(-23) =", sl_class_count(forms), binary_class_number(-23))

# one genus; its mass is h/4 because proper and improper automorphisms both count
(g,) = genus_partition(forms)
print("mass =", g.mass)

theta0 = genus_theta0(g, 1, 8)
print("genus theta (unnormalised):", [str(v) for _, v in theta0.items()])
print("normalised:", [str(v) for _, v in genus_theta_normalized(g, 1, 8).items()])

# quaternary lattices of level 7 with square determinant
for g in genus_partition(enumerate_classes(4, 49, 7)):
    print([c.form.base.to_json() for c in g.classes], "mass", g.mass)
