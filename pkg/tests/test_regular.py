from fractions import Fraction
from itertools import permutations

import pytest

from dorfman import gallery
from dorfman.courant import Section, make_twisted_standard
from dorfman.forms import DiffForm
from dorfman.matched import (Connection, MatchedPairData, check_matched_pair, compare_structures, matched_sum,
                             same_structure, structure_differences)
from dorfman.polynomial import Chart
from dorfman.regular import (AmbiguousNormalization, IncompatibleData, NotFlat, QuadraticLieBundle,
                             RegularData, build_regular, check_flat, check_regular_compat,
                             flat_to_matched_pair, lie_structure, normalization_audit, pontryagin_form,
                             pontryagin_values)
from dorfman.specfile import load_spec
from dorfman.courant import StructureError
from dorfman.verify import check_axioms

R2 = Chart(("x", "y"))
R4 = Chart(("x1", "x2", "x3", "x4"))
one, zero = R2.one(), R2.zero()


def abelian_r():
    return load_spec(gallery.text("regular-abelian-r2"))["abelian"]


def so3_regular():
    return load_spec(gallery.text("regular-so3"))["so3"]


def flat_so3():
    return RegularData(R2, QuadraticLieBundle.so3(), name="so3-flat")


def rank_zero():
    return RegularData(R2, QuadraticLieBundle.abelian([]), name="empty")


# -- quadratic Lie algebras -------------------------------------------------------------------------


def test_so3_is_quadratic_and_killing_form_is_negative():
    G = QuadraticLieBundle.so3()
    assert G.killing_form() == [[-2, 0, 0], [0, -2, 0], [0, 0, -2]]


def test_lie_algebra_validation():
    c = [[[0, 0], [0, 1]], [[0, -1], [0, 0]]]      # [a, b] = b
    with pytest.raises(StructureError):
        QuadraticLieBundle(["a", "b"], c, [[1, 0], [0, 1]])     # the form is not invariant


# -- compatibility conditions ----------------------------------------------------------------------


def test_trivial_so3_data_is_compatible():
    assert check_regular_compat(flat_so3()).passed


def test_abelian_curvature_example_is_compatible_and_flat():
    rd = abelian_r()
    assert check_regular_compat(rd).passed
    assert check_flat(rd)
    assert pontryagin_form(rd).is_zero()


def test_non_metric_connection_is_rejected():
    rd = abelian_r()
    nabla = [[Section([one])], [Section([zero])]]
    bad = RegularData(R2, rd.algebra, nabla, rd.curvature, rd.H)
    report = check_regular_compat(bad)
    assert not report["metric_invariance"].passed
    assert report["bianchi"].passed            # no 3-forms on a 2-dimensional F
    with pytest.raises(IncompatibleData):
        build_regular(bad)


def test_so3_gallery_data_is_compatible():
    assert check_regular_compat(so3_regular()).passed


# -- the built structure ------------------------------------------------------------------------------


def test_rank_zero_gives_the_twisted_standard_structure():
    E = build_regular(rank_zero())
    assert same_structure(E, make_twisted_standard(R2))


def test_so3_bracket_on_the_lie_block():
    E = build_regular(flat_so3())
    assert E.dorfman(E.basis("g1"), E.basis("g2")) == E.basis("g3")


def test_curvature_appears_in_the_field_bracket():
    E = build_regular(abelian_r())
    assert E.dorfman(E.basis("del_x"), E.basis("del_y")) == E.basis("g1")


def test_frame_order_and_pairing():
    E = build_regular(so3_regular())
    assert E.labels == ("dx", "dy", "g1", "g2", "g3", "del_x", "del_y")
    assert E.pairing[2][2] == 2


@pytest.mark.parametrize("rd", [abelian_r(), so3_regular()], ids=["abelian", "so3"])
def test_built_structures_pass_the_axioms(rd):
    assert check_axioms(build_regular(rd)).passed


def test_self_bracket_of_lie_elements_is_half_D_of_the_pairing():
    E = build_regular(so3_regular())
    for label in ("g1", "g2", "g3"):
        g = E.basis(label)
        assert E.dorfman(g, g) == E.d_operator(E.pairing_apply(g, g)) * Fraction(1, 2)


# -- the normalization audit ------------------------------------------------------------------------


def test_audit_singles_out_lambda_two():
    assert normalization_audit(abelian_r()) == 2
    assert normalization_audit(so3_regular()) == 2


def test_wrong_normalization_fails_ad_invariance():
    for lam in (Fraction(1, 2), 1):
        report = check_axioms(build_regular(abelian_r().with_lam(lam)))
        assert not report["ad_invariance"].passed


@pytest.mark.parametrize("rd", [flat_so3(), rank_zero()], ids=["all-trivial", "rank-zero"])
def test_audit_is_ambiguous_without_data(rd):
    with pytest.raises(AmbiguousNormalization) as info:
        normalization_audit(rd)
    assert len(info.value.candidates) == 3


# -- the 4-form ----------------------------------------------------------------------------------------


def four_dim_abelian(H=None):
    K = [[0, 1], [1, 0]]
    G = QuadraticLieBundle.abelian(["g1", "g2"], K)
    z = Section([R4.zero(), R4.zero()])
    R = [[z] * 4 for _ in range(4)]
    g1, g2 = Section([R4.one(), R4.zero()]), Section([R4.zero(), R4.one()])
    R[0][1], R[1][0] = g1, -g1
    R[2][3], R[3][2] = g2, -g2
    return RegularData(R4, G, curvature=R, H=H)


def test_pontryagin_form_in_four_dimensions():
    rd = four_dim_abelian()
    assert not check_flat(rd)
    C = pontryagin_form(rd)
    assert C == DiffForm.basis(R4, [0, 1, 2, 3]) * 2


def _sign(p):
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _raw(rd, args):
    """The permutation sum evaluated on arbitrary (not necessarily increasing) arguments."""
    acc = rd.chart.zero()
    for perm in permutations(range(4)):
        x = [args[p] for p in perm]
        acc = acc + rd.algebra.pair(rd.curvature[x[0]][x[1]], rd.curvature[x[2]][x[3]]) * _sign(perm)
    return acc * Fraction(1, 4)


def test_pontryagin_values_are_antisymmetric():
    rd = four_dim_abelian()
    base = pontryagin_values(rd)[(0, 1, 2, 3)]
    for perm in permutations(range(4)):
        assert _raw(rd, perm) == base * _sign(perm)


@pytest.mark.parametrize("c, ok", [(1, False), (2, True), (-2, False)])
def test_dH_must_equal_the_pontryagin_form(c, ok):
    H = DiffForm.basis(R4, [1, 2, 3]) * (R4.coord("x1") * c)
    rd = four_dim_abelian(H)
    assert check_regular_compat(rd)["dH"].passed == ok


def test_flat_decomposition_needs_flatness():
    H = DiffForm.basis(R4, [1, 2, 3]) * (R4.coord("x1") * 2)
    with pytest.raises(NotFlat):
        flat_to_matched_pair(four_dim_abelian(H))


# -- flat case as a matched sum ---------------------------------------------------------------------


@pytest.mark.parametrize("rd", [abelian_r(), so3_regular(), rank_zero()], ids=["abelian", "so3", "rank-zero"])
def test_flat_sum_reproduces_the_regular_table(rd):
    mp = flat_to_matched_pair(rd)
    assert check_matched_pair(mp).passed
    assert structure_differences(matched_sum(mp), build_regular(rd)) == []


def test_flat_so3_with_zero_curvature_is_a_merker_type_sum():
    rd = so3_regular()
    mp = flat_to_matched_pair(rd)
    assert all(s.is_zero() for row in mp.left.table for s in row)
    E1 = make_twisted_standard(R2, name="FH")
    G = lie_structure(rd)
    n = 2
    right = Connection(E1, G, [list(rd.nabla[i]) for i in range(n)] + [[G.zero()] * 3 for _ in range(n)])
    merker_type = MatchedPairData(E1, G, right, Connection.trivial(G, E1))
    assert compare_structures(matched_sum(mp), matched_sum(merker_type)).passed
