"""Independent reference implementations built on sympy.

These share no code with the package: forms are dicts from increasing
index tuples to sympy expressions, and every operator is written from its
coordinate formula.
"""

from itertools import permutations

import sympy as sp

from dorfman.scalars import GaussianRational


def symbols(chart):
    return sp.symbols(list(chart.names)) if chart.names else []


def scalar(c):
    if isinstance(c, GaussianRational):
        return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
    return sp.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sp.Integer(c)


def poly(p):
    xs = symbols(p.chart)
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = scalar(c)
        for x, e in zip(xs, mono):
            term *= x ** e
        out += term
    return sp.expand(out)


def field(X):
    return [poly(c) for c in X.coeffs]


def form(w):
    return {idx: poly(c) for idx, c in w.terms.items()}


def _sort(idx):
    """Sign and sorted tuple, or (0, None) for repeated indices."""
    if len(set(idx)) != len(idx):
        return 0, None
    inversions = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return (-1) ** inversions, tuple(sorted(idx))


def clean(f):
    return {k: sp.expand(v) for k, v in f.items() if sp.expand(v) != 0}


def add_term(out, idx, value):
    s, key = _sort(idx)
    if s:
        out[key] = out.get(key, 0) + s * value


def d(f, xs):
    out = {}
    for idx, c in f.items():
        for j, x in enumerate(xs):
            add_term(out, (j,) + idx, sp.diff(c, x))
    return clean(out)


def interior(X, f):
    out = {}
    for idx, c in f.items():
        for p, i in enumerate(idx):
            add_term(out, idx[:p] + idx[p + 1:], (-1) ** p * X[i] * c)
    return clean(out)


def lie_transport(X, f, xs):
    """(L_X w)_I = X(w_I) + sum over slots p of w(.., d(X^j)/dx_{i_p} in slot p, ..)."""
    out = {}
    for idx, c in f.items():
        add_term(out, idx, sum(X[j] * sp.diff(c, x) for j, x in enumerate(xs)))
        for p in range(len(idx)):
            for k, xk in enumerate(xs):
                # the slot holding dx_{idx[p]} receives the dx_k component of d(X^{idx[p]})
                add_term(out, idx[:p] + (k,) + idx[p + 1:], c * sp.diff(X[idx[p]], xk))
    return clean(out)


def bracket(X, Y, xs):
    return [sp.expand(sum(X[j] * sp.diff(Y[i], x) - Y[j] * sp.diff(X[i], x) for j, x in enumerate(xs)))
            for i in range(len(xs))]


def evaluate(f, fields, n):
    """w(X1, ..., Xk) by the determinant formula."""
    k = len(fields)
    total = sp.Integer(0)
    for idx, c in f.items():
        for perm in permutations(range(k)):
            sign, _ = _sort(perm)
            term = c * sign
            for slot, p in enumerate(perm):
                term *= fields[slot][idx[p]]
            total += term
    return sp.expand(total)


def lie_transport_native(X, w):
    """The transport formula on the package's own polynomials (fast; no Cartan formula)."""
    from dorfman.forms import DiffForm

    chart = w.chart
    n = chart.dimension
    terms = {}

    def put(idx, value):
        s, key = _sort(idx)
        if s and value.terms:
            v = value if s > 0 else -value
            terms[key] = terms[key] + v if key in terms else v

    for idx, c in w.terms.items():
        put(idx, X(c))
        for p in range(len(idx)):
            col = X.coeffs[idx[p]]
            for k in range(n):
                put(idx[:p] + (k,) + idx[p + 1:], c * col.diff(k))
    return DiffForm(chart, w.degree, terms)
