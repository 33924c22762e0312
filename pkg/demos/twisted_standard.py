"""
Brackets on T + T* and what a twist does to them
================================================

Build the standard structure on R^3, twist it by a closed 3-form, then
break closedness on R^4 and watch Jacobi fail on coordinate fields.
"""

from fractions import Fraction

from dorfman import Chart, DiffForm, check_axioms, make_twisted_standard
from dorfman.courant import NonClosedTwist

R3 = Chart(("x", "y", "z"))
H = DiffForm.basis(R3, [0, 1, 2])             # dx^dy^dz
E = make_twisted_standard(R3, H)

# coordinate fields no longer commute: the twist leaves a 1-form behind
dx, dy = E.basis("del_x"), E.basis("del_y")
print("del_x <> del_y =", E.format(E.dorfman(dx, dy)))

# sections are frame combinations with polynomial coefficients
phi = E.section(del_x="y", dx="x^2")
print("phi <> phi     =", E.format(E.dorfman(phi, phi)))
print("1/2 D<phi,phi> =", E.format(E.d_operator(E.pairing_apply(phi, phi)) * Fraction(1, 2)))

print(check_axioms(E))

# a twist with dH != 0 is refused unless forced
R4 = Chart(("x1", "x2", "x3", "x4"))
bad = DiffForm.basis(R4, [1, 2, 3]) * R4.coord("x1")
try:
    make_twisted_standard(R4, bad)
except NonClosedTwist as exc:
    print("refused:", exc)

report = check_axioms(make_twisted_standard(R4, bad, force=True))
print(report["jacobi"].witness, "->", report["jacobi"].residual)
