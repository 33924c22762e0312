"""
Dirac structures, graphs, and the Lie algebroids they carry
===========================================================

Integrability is tested by pairing brackets against the frame, which is
enough for a maximal isotropic subbundle. A port-Hamiltonian graph lives
in a matched sum and is Dirac when the port map is parallel.
"""

from dorfman import (DiffForm, check_dirac, check_lie_matched_pair, check_matched_dirac, dirac_to_lie,
                     gallery, load_spec, make_twisted_standard)
from dorfman.dirac import graph_of_two_form, restricted_lie_pair
from dorfman.polynomial import Chart

R3 = Chart(("x", "y", "z"))
E = make_twisted_standard(R3)

# a closed 2-form has an integrable graph; z dx^dy does not
for w in (DiffForm.basis(R3, [0, 1]), DiffForm.basis(R3, [0, 1]) * R3.coord("z")):
    res = check_dirac(graph_of_two_form(E, w))["integrability"]
    print(f"graph of {w}: {res.status()}", res.witness or "")

# the Lie algebroid of a graph is the tangent bundle in disguise
A = dirac_to_lie(graph_of_two_form(E, DiffForm.basis(R3, [0, 1])))
print("anchor:", [str(X) for X in A.anchor])

# port-Hamiltonian graphs in the matched sum
for name in ("port-hamiltonian", "port-hamiltonian-broken"):
    rep = check_dirac(load_spec(gallery.text(name))["ph"])
    print(name, "->", "Dirac" if rep.passed else rep["integrability"].witness)

# a matched pair of Dirac structures restricts to a matched pair of Lie algebroids
mp, D1, D2 = load_spec(gallery.text("port-hamiltonian"))["split"]
print(check_matched_dirac(mp, D1, D2).passed, check_lie_matched_pair(restricted_lie_pair(mp, D1, D2)).passed)
