import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dorfman.courant import (CourantStructure, NonClosedTwist, RankMismatch, Section, StructureError,
                             join_standard, make_twisted_standard, point_chart, split_standard,
                             twisted_bracket_direct, zero_section)
from dorfman.forms import DiffForm, VectorField, random_form, random_vector_field
from dorfman.polynomial import Chart, random_polynomial
from dorfman.specfile import load_spec
from dorfman import gallery

R2 = Chart(("x", "y"))
R3 = Chart(("x", "y", "z"))
seeds = st.integers(min_value=0, max_value=10**9)

CM2 = make_twisted_standard(R2)
H3 = DiffForm.basis(R3, [0, 1, 2])
TW3 = make_twisted_standard(R3, H3)


def so3():
    return load_spec(gallery.text("so3-point"))["so3"]


# -- pairing, anchor, D --------------------------------------------------------------------


def test_pairing_examples():
    s = CM2.section
    assert CM2.pairing_apply(s(del_x=1, dy=1), s(del_y=1, dx=1)) == R2.const(2)
    assert CM2.pairing_apply(s(del_x=1), s(del_y=1)).is_zero()
    assert CM2.pairing_apply(s(dx="x"), s(del_x=1)) == R2.coord("x")


def test_pairing_rank_mismatch():
    with pytest.raises(RankMismatch):
        CM2.pairing_apply(CM2.basis(0), Section([R2.one()]))


def test_anchor_examples():
    assert CM2.anchor_apply(CM2.section(del_x=1, dy="x")) == VectorField.coordinate(R2, 0)
    assert CM2.anchor_apply(CM2.section(dx="x*y")).is_zero()
    E = so3()
    assert E.chart.dimension == 0
    assert all(E.anchor_apply(e).is_zero() for e in E.frame())


def test_d_operator_examples():
    assert CM2.d_operator("x") == CM2.section(dx=1)
    assert CM2.d_operator(5).is_zero()
    assert CM2.d_operator("x*y") == CM2.section(dx="y", dy="x")


@given(seeds)
def test_d_operator_contract(seed):
    r = random.Random(seed)
    f = random_polynomial(R3, r, 3)
    phi = TW3.random_section(r, 2)
    assert TW3.pairing_apply(TW3.d_operator(f), phi) == TW3.anchor_apply(phi)(f)


# -- bracket -------------------------------------------------------------------------------


def test_dorfman_examples():
    s = CM2.section
    assert CM2.dorfman(s(del_x=1), s(dx="x")) == s(dx=1)
    assert CM2.dorfman(CM2.d_operator("x*y"), s(del_x=1)).is_zero()
    assert TW3.dorfman(TW3.section(del_x=1), TW3.section(del_y=1)) == TW3.section(dz=1)


def test_dorfman_reproduces_table():
    for E in (TW3, so3()):
        for i, a in enumerate(E.frame()):
            for j, b in enumerate(E.frame()):
                assert E.dorfman(a, b) == E.table[i][j]


@given(seeds)
def test_dorfman_is_additive(seed):
    r = random.Random(seed)
    a, b, c = (TW3.random_section(r, 2) for _ in range(3))
    assert TW3.dorfman(a + b, c) == TW3.dorfman(a, c) + TW3.dorfman(b, c)
    assert TW3.dorfman(a, b + c) == TW3.dorfman(a, b) + TW3.dorfman(a, c)


@given(seeds)
def test_leibniz_rules(seed):
    r = random.Random(seed)
    f = random_polynomial(R3, r, 2)
    a, b = TW3.random_section(r, 2), TW3.random_section(r, 2)
    rho = TW3.anchor_apply
    # right slot: a.(f b) = f (a.b) + rho(a)(f) b
    assert TW3.dorfman(a, b * f) == TW3.dorfman(a, b) * f + b * rho(a)(f)
    # left slot: (f a).b = f (a.b) - rho(b)(f) a + <a, b> D f
    assert TW3.dorfman(a * f, b) == (TW3.dorfman(a, b) * f - a * rho(b)(f)
                                    + TW3.d_operator(f) * TW3.pairing_apply(a, b))


@given(seeds)
def test_extension_agrees_with_direct_twisted_formula(seed):
    r = random.Random(seed)
    H = random_form(R3, r, 3, 2)
    E = make_twisted_standard(R3, H)     # every 3-form on R^3 is closed
    X, Y = random_vector_field(R3, r, 2), random_vector_field(R3, r, 2)
    alpha, beta = random_form(R3, r, 1, 2), random_form(R3, r, 1, 2)
    Z, gamma = twisted_bracket_direct(H, X, alpha, Y, beta)
    phi, psi = join_standard(R3, X, alpha), join_standard(R3, Y, beta)
    assert split_standard(E, E.dorfman(phi, psi)) == (Z, gamma)


# -- construction ---------------------------------------------------------------------------


def test_untwisted_table_is_zero_on_fields():
    for i in range(2):
        for j in range(2):
            assert CM2.table[i][j].is_zero()


def test_top_degree_twist_is_accepted():
    make_twisted_standard(R3, H3 * R3.coord("x"))


def test_nonclosed_twist_is_refused_unless_forced():
    R4 = Chart(("x1", "x2", "x3", "x4"))
    H = DiffForm.basis(R4, [1, 2, 3]) * R4.coord("x1")
    with pytest.raises(NonClosedTwist):
        make_twisted_standard(R4, H)
    assert make_twisted_standard(R4, H, force=True).rank == 8


def test_frame_labels():
    assert TW3.labels == ("del_x", "del_y", "del_z", "dx", "dy", "dz")


def test_structure_validation():
    z = zero_section(R2, 2)
    anchor = [VectorField.zero(R2)] * 2
    with pytest.raises(StructureError, match="symmetric"):
        CourantStructure(R2, ["a", "b"], [[0, 1], [2, 0]], anchor, [[z, z], [z, z]])
    with pytest.raises(StructureError, match="degenerate"):
        CourantStructure(R2, ["a", "b"], [[1, 1], [1, 1]], anchor, [[z, z], [z, z]])
    with pytest.raises(StructureError, match="duplicate"):
        CourantStructure(R2, ["a", "a"], [[1, 0], [0, 1]], anchor, [[z, z], [z, z]])


def test_point_chart_structure_has_rank_zero_d():
    P = point_chart()
    assert P.dimension == 0
    assert so3().d_operator(P.const(3)).is_zero()
