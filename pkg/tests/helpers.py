"""Small builders shared by the tests."""

from dorfman import gallery
from dorfman.dirac import graph_of_pairing_map
from dorfman.courant import CourantStructure, Section, make_twisted_standard, zero_section
from dorfman.forms import VectorField
from dorfman.matched import Connection, MatchedPairData
from dorfman.polynomial import Chart
from dorfman.specfile import load_spec

HYPERBOLIC = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]


def flat_bundle(chart, labels=("v1", "v2", "w1", "w2"), pairing=HYPERBOLIC, name="V"):
    """V + V* with zero anchor and zero bracket."""
    k = len(labels)
    z = zero_section(chart, k)
    return CourantStructure(chart, labels, pairing, [VectorField.zero(chart)] * k,
                            [[z] * k for _ in range(k)], name=name)


def diagonal_connection(E1, E2, forms, signs):
    """nabla_e v_j = forms(e) * signs[j] * v_j, with forms a list of polynomials per frame element of E1."""
    chart = E1.chart
    table = []
    for f in forms:
        row = []
        for j, s in enumerate(signs):
            coeffs = [chart.zero()] * E2.rank
            coeffs[j] = f * s
            row.append(Section(coeffs))
        table.append(row)
    return Connection(E1, E2, table, name="right")


def merker():
    ws = load_spec(gallery.text("merker-r2"))
    return ws["merker"]


def merker_with(forms):
    """Merker-type data on R^2 with nabla = forms (x) diag(1, -1, -1, 1)."""
    chart = Chart(("x", "y"))
    E1 = make_twisted_standard(chart, name="CM")
    E2 = flat_bundle(chart)
    right = diagonal_connection(E1, E2, forms, [1, -1, -1, 1])
    return MatchedPairData(E1, E2, right, Connection.trivial(E2, E1, name="left"))


def pairing_map_graph(mp, L):
    """Graph of L(v1, v2) = L in the second factor of a Merker-type pair; None means L = 0."""
    c = 0 if L is None else L
    return graph_of_pairing_map(mp.second, [[0, c], [-c, 0]],
                                ["v1", "v2"], ["w1", "w2"], name="L")
