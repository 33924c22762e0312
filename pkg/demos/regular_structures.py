"""
A Lie algebra bundle over the plane, glued to T + T*
====================================================

Regular Courant algebroids are built from a quadratic Lie algebra bundle,
a metric connection, its curvature and a 3-form. One scale of the pairing
on the Lie block makes the result Courant; the audit finds it.
"""

from fractions import Fraction

from dorfman import (build_regular, check_axioms, check_regular_compat, flat_to_matched_pair, gallery,
                     load_spec, matched_sum, normalization_audit)
from dorfman.matched import structure_differences
from dorfman.regular import pontryagin_form

rd = load_spec(gallery.text("regular-abelian-r2"))["abelian"]
print(check_regular_compat(rd))

# try each candidate scale; only one passes every axiom
for lam in (Fraction(1, 2), 1, 2):
    E = build_regular(rd.with_lam(lam))
    print(f"lambda = {Fraction(lam)}: {'Courant' if check_axioms(E).passed else 'not Courant'}")
print("audit:", normalization_audit(rd))

# the curvature shows up as a Lie-block component of the field bracket
E = build_regular(rd)
print("del_x <> del_y =", E.format(E.dorfman(E.basis("del_x"), E.basis("del_y"))))
print("4-form vanishes:", pontryagin_form(rd).is_zero())

# flat data split into T + T* and the Lie algebra bundle
so3 = load_spec(gallery.text("regular-so3"))["so3"]
mp = flat_to_matched_pair(so3)
print("so3 sum matches:", structure_differences(matched_sum(mp), build_regular(so3)) == [])
