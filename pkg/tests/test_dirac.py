import sympy as sp
import pytest

from helpers import merker, pairing_map_graph
from dorfman import gallery
from dorfman.courant import (CourantStructure, Section, make_twisted_standard, point_chart, zero_section)
from dorfman.dirac import (BadComplementCertificate, DiracFrame, LieAlgebroid, LieMatchedPairData,
                           NotIntegrable, check_dirac, check_lie_algebroid,
                           check_lie_matched_pair, check_matched_dirac, dirac_to_lie, direct_sum_dirac,
                           graph_of_bivector, graph_of_two_form, lie_matched_sum,
                           restricted_lie_pair, tangent_algebroid)
from dorfman.forms import DiffForm, VectorField
from dorfman.matched import Connection
from dorfman.polynomial import Chart, as_polynomial
from dorfman.specfile import load_spec
from dorfman.verify import check_axioms

R2 = Chart(("x", "y"))
R3 = Chart(("x", "y", "z"))


def sec(chart, coeffs):
    return Section([as_polynomial(chart, c) for c in coeffs])


def same_algebroid(A, B):
    return A.labels == B.labels and A.anchor == B.anchor and A.table == B.table


# -- check_dirac ---------------------------------------------------------------------------------------


def test_tangent_bundle_is_dirac():
    E = make_twisted_standard(R2)
    D = DiracFrame(E, [E.basis("del_x"), E.basis("del_y")], [E.basis("dx"), E.basis("dy")], ["del_x", "del_y"])
    assert check_dirac(D).passed
    assert same_algebroid(dirac_to_lie(D), tangent_algebroid(R2))


def test_graph_of_closed_two_form():
    E = make_twisted_standard(R2)
    D = graph_of_two_form(E, DiffForm.basis(R2, [0, 1]))
    assert D.span == (E.basis("del_x") + E.basis("dy"), E.basis("del_y") - E.basis("dx"))
    assert check_dirac(D).passed
    A = dirac_to_lie(D)
    assert A.anchor == tuple(VectorField.coordinate(R2, i) for i in range(2))
    assert all(s.is_zero() for row in A.table for s in row)


def test_graph_of_non_closed_two_form_fails_with_d_omega():
    E = make_twisted_standard(R3)
    D = graph_of_two_form(E, DiffForm.basis(R3, [0, 1]) * R3.coord("z"))
    report = check_dirac(D)
    assert not report.passed
    res = report["integrability"]
    assert (res.witness["a"], res.witness["b"], res.witness["c"]) == ("gr_x", "gr_y", "gr_z")
    # <gr_x <> gr_y, gr_z> = d omega(del_x, del_y, del_z) = 1 up to the orientation of the triple
    assert res.residual in ("1", "-1")
    with pytest.raises(NotIntegrable):
        dirac_to_lie(D)


def test_isotropy_and_certificate_errors():
    E = make_twisted_standard(R2)
    with pytest.raises(BadComplementCertificate):
        DiracFrame(E, [E.basis("del_x"), E.basis("del_y")], [E.basis("dx"), E.basis("dx") * R2.coord("x")])
    D = DiracFrame(E, [E.basis("del_x") + E.basis("dx"), E.basis("del_y")], [E.basis("dx"), E.basis("dy")])
    assert not check_dirac(D)["isotropy"].passed
    with pytest.raises(ValueError):
        graph_of_two_form(E, DiffForm.basis(R2, [0]))


# -- bivectors ------------------------------------------------------------------------------------------


def poisson_jacobiator(P, chart):
    """{x_i,{x_j,x_k}} + cyclic for the bracket {f, g} = sum P_ab df/dx_a dg/dx_b, in sympy."""
    xs = sp.symbols(list(chart.names))
    M = [[sp.sympify(str(p).replace("^", "**")) if str(p) else 0 for p in row] for row in P]

    def br(f, g):
        return sp.expand(sum(M[a][b] * sp.diff(f, xs[a]) * sp.diff(g, xs[b])
                             for a in range(len(xs)) for b in range(len(xs))))

    n = len(xs)
    return [sp.expand(br(xs[i], br(xs[j], xs[k])) + br(xs[j], br(xs[k], xs[i])) + br(xs[k], br(xs[i], xs[j])))
            for i in range(n) for j in range(n) for k in range(n)]


def bivector(chart, entries):
    n = chart.dimension
    P = [[chart.zero()] * n for _ in range(n)]
    for (i, j), v in entries.items():
        P[i][j] = as_polynomial(chart, v)
        P[j][i] = -as_polynomial(chart, v)
    return P


x3, y3, z3 = (R3.coord(n) for n in "xyz")
BIVECTORS = {
    "constant": bivector(R3, {(0, 1): 1}),
    "z-scaled": bivector(R3, {(0, 1): z3}),
    "lie-poisson": bivector(R3, {(0, 1): z3, (1, 2): x3, (2, 0): y3}),
    "broken": bivector(R3, {(0, 1): y3, (1, 2): x3}),
    "broken-2": bivector(R3, {(0, 1): x3 * x3, (1, 2): 1, (0, 2): z3}),
}


@pytest.mark.parametrize("name", list(BIVECTORS))
def test_bivector_graph_agrees_with_poisson_jacobi(name):
    P = BIVECTORS[name]
    E = make_twisted_standard(R3)
    D = graph_of_bivector(E, P)
    poisson = all(v == 0 for v in poisson_jacobiator(P, R3))
    assert check_dirac(D).passed == poisson
    assert poisson == (not name.startswith("broken"))


def test_bivector_convention_and_gallery_entry():
    E = make_twisted_standard(R2)
    D = graph_of_bivector(E, bivector(R2, {(0, 1): 1}))
    # pi#(dx) = pi(dx, -) = del_y
    assert D.span[0] == E.basis("dx") + E.basis("del_y")
    ws = load_spec(gallery.text("dirac-graph-pi"))
    assert check_dirac(ws["pi"]).passed


# -- port-Hamiltonian graphs -----------------------------------------------------------------------------


def test_port_graph_with_parallel_map_is_dirac():
    ws = load_spec(gallery.text("port-hamiltonian"))
    assert check_dirac(ws["ph"]).passed


def test_port_graph_with_non_parallel_map_fails():
    ws = load_spec(gallery.text("port-hamiltonian-broken"))
    res = check_dirac(ws["ph"])["integrability"]
    assert not res.passed
    assert (res.witness["a"], res.witness["b"], res.witness["c"]) == ("gr_x", "gr_y", "gr_f2")


# -- matched Dirac structures ---------------------------------------------------------------------------


@pytest.mark.parametrize("L", [1, 3, None], ids=["L=1", "L=3", "L=0"])
def test_matched_dirac_with_parallel_L(L):
    mp = merker()
    D1 = graph_of_two_form(mp.first, DiffForm.basis(R2, [0, 1]))
    D2 = pairing_map_graph(mp, L)
    report = check_matched_dirac(mp, D1, D2)
    assert report.passed
    lmp = restricted_lie_pair(mp, D1, D2)
    assert check_lie_matched_pair(lmp).passed
    assert same_algebroid(lie_matched_sum(lmp), dirac_to_lie(direct_sum_dirac(mp, D1, D2)))


def test_matched_dirac_with_non_parallel_L():
    mp = merker()
    D1 = graph_of_two_form(mp.first, DiffForm.basis(R2, [0, 1]))
    D2 = pairing_map_graph(mp, R2.coord("x"))
    report = check_matched_dirac(mp, D1, D2)
    assert report["first.integrability"].passed and report["second.integrability"].passed
    assert report["left_membership"].passed
    assert not report["right_membership"].passed
    # the proposition in the other direction: the sum is not Dirac either
    assert not report["sum.integrability"].passed


def test_port_gallery_matched_dirac():
    mp, D1, D2 = load_spec(gallery.text("port-hamiltonian"))["split"]
    assert check_matched_dirac(mp, D1, D2).passed


# -- Lie algebroids and their matched pairs --------------------------------------------------------------


def test_complex_tangent_halves_form_a_matched_pair():
    from dorfman.complexpair import ComplexChart
    ch = ComplexChart(1).chart
    A, B = tangent_algebroid(ch, [0]), tangent_algebroid(ch, [1])
    lmp = LieMatchedPairData(A, B, Connection.trivial(A, B), Connection.trivial(B, A))
    assert check_lie_matched_pair(lmp).passed
    total = lie_matched_sum(lmp)
    assert same_algebroid(total, tangent_algebroid(ch))


def line_bundle(chart):
    return LieAlgebroid(chart, ["v"], [VectorField.zero(chart)], [[zero_section(chart, 1)]], name="V")


def test_tangent_bundle_and_flat_line_bundle():
    A, B = tangent_algebroid(R2), line_bundle(R2)
    x, y = R2.coord("x"), R2.coord("y")
    right = Connection(A, B, [[sec(R2, [y])], [sec(R2, [x])]])      # d(xy) acting on v
    lmp = LieMatchedPairData(A, B, right, Connection.trivial(B, A))
    assert check_lie_matched_pair(lmp).passed


def test_curved_connection_is_not_flat():
    A, B = tangent_algebroid(R2), line_bundle(R2)
    right = Connection(A, B, [[sec(R2, [R2.coord("y")])], [sec(R2, [0])]])
    report = check_lie_matched_pair(LieMatchedPairData(A, B, right, Connection.trivial(B, A)))
    assert not report["flat_right"].passed


def test_non_derivation_breaks_crocodile():
    A, B = tangent_algebroid(R2), line_bundle(R2)
    left = Connection(B, A, [[sec(R2, [R2.coord("y"), 0]), sec(R2, [0, 0])]])
    report = check_lie_matched_pair(LieMatchedPairData(A, B, Connection.trivial(A, B), left))
    res = report["crocodile"]
    assert not res.passed
    assert (res.witness["alpha"], res.witness["b"], res.witness["c"]) == ("v", "del_x", "del_y")
    # the trivial right connection still obeys Leibniz, so only frame triples are clean
    assert report["alligator"].stages["frame"]


# -- a quadratic Lie algebra as host -----------------------------------------------------------------------


def double_of_affine_line():
    """g + g* for the 2-dimensional algebra [a, b] = b, with the dual pairing."""
    P = point_chart()
    labels = ["a", "b", "alpha", "beta"]
    G = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    z = [0, 0, 0, 0]
    t = {("a", "b"): [0, 1, 0, 0], ("b", "a"): [0, -1, 0, 0],
         ("a", "beta"): [0, 0, 0, -1], ("beta", "a"): [0, 0, 0, 1],
         ("b", "beta"): [0, 0, 1, 0], ("beta", "b"): [0, 0, -1, 0]}
    table = [[sec(P, t.get((p, q), z)) for q in labels] for p in labels]
    return CourantStructure(P, labels, G, [VectorField.zero(P)] * 4, table, name="double")


def test_maximal_isotropic_subalgebras_of_a_quadratic_lie_algebra():
    E = double_of_affine_line()
    assert check_axioms(E).passed
    D = DiracFrame(E, [E.basis("a"), E.basis("b")], [E.basis("alpha"), E.basis("beta")], ["a", "b"])
    assert check_dirac(D).passed
    A = dirac_to_lie(D)
    assert A.table[0][1] == sec(E.chart, [0, 1]) and A.table[1][0] == sec(E.chart, [0, -1])
    assert check_lie_algebroid(A).passed
    D2 = DiracFrame(E, [E.basis("b"), E.basis("alpha")], [E.basis("a"), E.basis("beta")], ["b", "alpha"])
    assert check_dirac(D2).passed
    assert all(s.is_zero() for row in dirac_to_lie(D2).table for s in row)
    # [a, beta] = -beta, so this plane is a subalgebra as well
    D3 = DiracFrame(E, [E.basis("a"), E.basis("beta")], [E.basis("b"), E.basis("alpha")], ["a", "beta"])
    assert check_dirac(D3).passed
    # graph of a 2-form on g; every such form is closed in dimension 2
    c = 5
    D4 = DiracFrame(E, [E.basis("a") + E.basis("beta") * c, E.basis("b") - E.basis("alpha") * c],
                    [E.basis("alpha"), E.basis("beta")], ["a'", "b'"])
    assert check_dirac(D4).passed
    assert dirac_to_lie(D4).table[0][1] == sec(E.chart, [0, 1])
