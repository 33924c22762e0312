"""
Holomorphic and antiholomorphic halves of C^2
=============================================

z and zb are independent variables over Q(i). Each half carries its own
twisted structure, the Dolbeault-type connections glue them, and the
sum is the complexified twisted T + T*.
"""

from dorfman import ComplexChart, DiffForm, build_complex_matched_pair, check_matched_pair, check_sum_isomorphism
from dorfman.complexpair import bidegree_split, dolbeault_connection
from dorfman.forms import VectorField, one_form
from dorfman.scalars import GaussianRational

cc = ComplexChart(2)
ch = cc.chart
i = GaussianRational(0, 1)

# a (2,1) + (1,2) twist; dH = 0 because every coefficient is constant
H = DiffForm.basis(ch, [0, 1, 2]) + DiffForm.basis(ch, [0, 2, 3]) * i
for (p, q), part in sorted(bidegree_split(cc, H).items()):
    print(f"H^({p},{q}) = {part}")

# the Dolbeault connection is a projected Lie derivative
zb1 = ch.coord("zb1")
d_zb1 = VectorField.coordinate(ch, 2)
print("nabla_(del_zb1) (zb1 dz1) =", dolbeault_connection(cc, d_zb1, one_form(ch, [zb1, 0, 0, 0])))

mp = build_complex_matched_pair(cc, H)
print("left connection, del_zb1 on del_z1:",
      mp.first.format(mp.left.apply(mp.second.basis("del_zb1"), mp.first.basis("del_z1"))))
print(check_matched_pair(mp).passed, check_sum_isomorphism(mp, H).passed)

# leave out the (2,1) term of the left connection and the sum stops matching
broken = build_complex_matched_pair(cc, H, drop_h21=True)
print(check_sum_isomorphism(broken, H)["bracket"].witness)
