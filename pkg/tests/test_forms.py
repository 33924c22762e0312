import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dorfman.forms import (DiffForm, VectorField, differential, evaluate, exterior_derivative, insert_pair,
                           interior_product, lie_bracket, lie_derivative, one_form, random_form,
                           random_vector_field, wedge)
from dorfman.polynomial import Chart, ChartMismatch

R3 = Chart(("x", "y", "z"))
R4 = Chart(("x1", "x2", "x3", "x4"))
x, y, z = R3.coords()
dx, dy, dz = (DiffForm.basis(R3, [i]) for i in range(3))
ddx, ddy, ddz = (VectorField.coordinate(R3, i) for i in range(3))

seeds = st.integers(min_value=0, max_value=10**9)
charts = st.sampled_from([R3, R4])


def vf(**kw):
    return VectorField(R3, [kw.get(n, 0) for n in R3.names])


# -- worked examples -------------------------------------------------------------------------


def test_bracket_examples():
    assert lie_bracket(ddx, ddy).is_zero()
    assert lie_bracket(vf(y=x), ddx) == -ddy
    assert lie_bracket(vf(x=x), vf(y=x)) == vf(y=x)


def test_exterior_derivative_examples():
    assert exterior_derivative(one_form(R3, [0, x, 0])) == dx.wedge(dy)
    assert exterior_derivative(dx).is_zero()
    assert exterior_derivative(one_form(R3, [0, 0, x * y])) == dx.wedge(dz) * y + dy.wedge(dz) * x


def test_interior_examples():
    assert interior_product(ddx, dx.wedge(dy)) == dy
    assert insert_pair(ddx, ddy, dx.wedge(dy).wedge(dz)) == dz
    assert interior_product(ddy, dx.wedge(dy)) == -dx
    assert interior_product(ddx, DiffForm.function(x)).is_zero()


def test_lie_derivative_examples():
    assert lie_derivative(ddx, one_form(R3, [0, x, 0])) == dy
    assert lie_derivative(vf(x=x), dx) == dx
    assert lie_derivative(ddz, dx.wedge(dy)).is_zero()


def test_wedge_is_graded_commutative():
    a, b = one_form(R3, [x, 0, y]), one_form(R3, [0, z, 1])
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


def test_chart_mismatch_is_an_error():
    with pytest.raises(ChartMismatch):
        lie_bracket(ddx, VectorField.coordinate(R4, 0))


# -- against the sympy oracle ------------------------------------------------------------------


@given(seeds, charts, st.integers(0, 3))
def test_d_matches_oracle(seed, chart, k):
    w = random_form(chart, random.Random(seed), k, 3)
    xs = oracles.symbols(chart)
    assert oracles.form(exterior_derivative(w)) == oracles.d(oracles.form(w), xs)


@given(seeds, charts, st.integers(1, 3))
def test_interior_matches_oracle(seed, chart, k):
    r = random.Random(seed)
    X, w = random_vector_field(chart, r, 2), random_form(chart, r, k, 2)
    assert oracles.form(interior_product(X, w)) == oracles.interior(oracles.field(X), oracles.form(w))


@given(seeds, st.integers(0, 3))
def test_lie_derivative_matches_transport_oracle(seed, k):
    r = random.Random(seed)
    X, w = random_vector_field(R3, r, 2), random_form(R3, r, k, 2)
    xs = oracles.symbols(R3)
    assert oracles.form(lie_derivative(X, w)) == oracles.lie_transport(oracles.field(X), oracles.form(w), xs)


@given(seeds)
def test_bracket_matches_oracle(seed):
    r = random.Random(seed)
    X, Y = random_vector_field(R4, r, 3), random_vector_field(R4, r, 3)
    xs = oracles.symbols(R4)
    assert oracles.field(lie_bracket(X, Y)) == oracles.bracket(oracles.field(X), oracles.field(Y), xs)


@given(seeds, st.integers(1, 3))
def test_evaluate_matches_determinant_formula(seed, k):
    r = random.Random(seed)
    w = random_form(R4, r, k, 2)
    fields = [random_vector_field(R4, r, 1) for _ in range(k)]
    expected = oracles.evaluate(oracles.form(w), [oracles.field(X) for X in fields], 4)
    assert oracles.poly(evaluate(w, fields)) == expected


# -- identities ---------------------------------------------------------------------------------


@given(seeds, charts, st.integers(0, 2))
def test_d_squared_is_zero(seed, chart, k):
    w = random_form(chart, random.Random(seed), k, 3)
    assert exterior_derivative(exterior_derivative(w)).is_zero()


@given(seeds, st.integers(0, 3))
def test_cartan_equals_native_transport(seed, k):
    r = random.Random(seed)
    X, w = random_vector_field(R4, r, 3), random_form(R4, r, k, 3)
    assert lie_derivative(X, w) == oracles.lie_transport_native(X, w)


@given(seeds, st.integers(1, 3))
def test_lie_interior_commutator(seed, k):
    r = random.Random(seed)
    X, Y = random_vector_field(R3, r, 2), random_vector_field(R3, r, 2)
    w = random_form(R3, r, k, 2)
    lhs = lie_derivative(X, interior_product(Y, w)) - interior_product(Y, lie_derivative(X, w))
    assert lhs == interior_product(lie_bracket(X, Y), w)


@given(seeds)
def test_vector_field_jacobi(seed):
    r = random.Random(seed)
    X, Y, Z = (random_vector_field(R3, r, 3) for _ in range(3))
    total = lie_bracket(lie_bracket(X, Y), Z) + lie_bracket(lie_bracket(Y, Z), X) + lie_bracket(lie_bracket(Z, X), Y)
    assert total.is_zero()


@given(seeds)
def test_d_is_a_derivation_of_wedge(seed):
    r = random.Random(seed)
    a, b = random_form(R3, r, 1, 2), random_form(R3, r, 1, 2)
    assert exterior_derivative(wedge(a, b)) == wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b))


@given(seeds)
def test_differential_evaluates_to_directional_derivative(seed):
    r = random.Random(seed)
    f = random_form(R3, r, 0, 3).terms.get((), R3.zero())
    X = random_vector_field(R3, r, 2)
    assert evaluate(differential(f), [X]) == X(f)
