"""Vector fields and differential forms with polynomial coefficients."""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, Sequence, Tuple

from .polynomial import Chart, ChartMismatch, Polynomial, as_polynomial, random_polynomial

Index = Tuple[int, ...]


def _sort_sign(indices: Sequence[int]):
    """Sort ``indices``; return (sign, sorted tuple), sign 0 on a repeat."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, tuple(idx)
    return sign, tuple(idx)


class VectorField:
    """A polynomial vector field: one coefficient per coordinate direction."""

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: Chart, coeffs: Iterable):
        self.chart = chart
        self.coeffs = tuple(as_polynomial(chart, c) for c in coeffs)
        if len(self.coeffs) != chart.dimension:
            raise ValueError(f"expected {chart.dimension} components, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, [chart.zero()] * chart.dimension)

    @classmethod
    def coordinate(cls, chart: Chart, i) -> "VectorField":
        i = i if isinstance(i, int) else chart.index(i)
        return cls(chart, [chart.one() if k == i else chart.zero() for k in range(chart.dimension)])

    def _check(self, other):
        self.chart.check(other.chart)

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.chart, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.coeffs])

    def __mul__(self, f) -> "VectorField":
        f = as_polynomial(self.chart, f)
        return VectorField(self.chart, [f * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __call__(self, f: Polynomial) -> Polynomial:
        """Directional derivative ``X(f)``."""
        f = as_polynomial(self.chart, f)
        out = self.chart.zero()
        for i, c in enumerate(self.coeffs):
            if c.terms:
                df = f.diff(i)
                if df.terms:
                    out = out + c * df
        return out

    def map_coefficients(self, fn) -> "VectorField":
        return VectorField(self.chart, [fn(c) for c in self.coeffs])

    def __str__(self):
        parts = [f"({c})*d/d{name}" for c, name in zip(self.coeffs, self.chart.names) if c.terms]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class DiffForm:
    """A differential ``degree``-form; terms keyed by strictly increasing index tuples."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: Dict[Index, Polynomial] | None = None):
        if degree < 0:
            raise ValueError("negative degree")
        self.chart = chart
        self.degree = degree
        clean: Dict[Index, Polynomial] = {}
        for idx, c in (terms or {}).items():
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            if any(not 0 <= k < chart.dimension for k in key):
                raise ValueError(f"index {idx} out of range")
            c = as_polynomial(chart, c)
            if sign < 0:
                c = -c
            prev = clean.get(key)
            c = c if prev is None else prev + c
            if c.terms:
                clean[key] = c
            elif prev is not None:
                del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "DiffForm":
        return cls(chart, degree, {})

    @classmethod
    def function(cls, f: Polynomial) -> "DiffForm":
        return cls(f.chart, 0, {(): f})

    @classmethod
    def basis(cls, chart: Chart, indices: Sequence, coeff=1) -> "DiffForm":
        """``coeff * dx_{i1} ^ ... ^ dx_{ip}``; indices may be names or positions."""
        idx = tuple(i if isinstance(i, int) else chart.index(i) for i in indices)
        return cls(chart, len(idx), {idx: as_polynomial(chart, coeff)})

    def _check(self, other: "DiffForm"):
        self.chart.check(other.chart)
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return DiffForm(self.chart, self.degree, terms)

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def __neg__(self):
        return DiffForm(self.chart, self.degree, {k: -c for k, c in self.terms.items()})

    def __mul__(self, f) -> "DiffForm":
        f = as_polynomial(self.chart, f)
        return DiffForm(self.chart, self.degree, {k: f * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: Sequence[int]) -> Polynomial:
        """Component along ``dx_{i1}^...^dx_{ip}`` for any (unsorted) index tuple."""
        sign, key = _sort_sign(indices)
        if sign == 0:
            return self.chart.zero()
        c = self.terms.get(key)
        if c is None:
            return self.chart.zero()
        return c if sign > 0 else -c

    def wedge(self, other: "DiffForm") -> "DiffForm":
        return wedge(self, other)

    __xor__ = wedge

    def map_coefficients(self, fn) -> "DiffForm":
        return DiffForm(self.chart, self.degree, {k: fn(c) for k, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.chart.names
        parts = []
        for key in sorted(self.terms):
            basis = "^".join(f"d{names[k]}" for k in key) or "1"
            parts.append(f"({self.terms[key]})*{basis}")
        return " + ".join(parts)

    __repr__ = __str__


# -- operations -------------------------------------------------------------------------


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y]^k = sum_i X^i d_i Y^k - Y^i d_i X^k``."""
    X.chart.check(Y.chart)
    return VectorField(X.chart, [X(yk) - Y(xk) for xk, yk in zip(X.coeffs, Y.coeffs)])


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    a.chart.check(b.chart)
    terms: Dict[Index, Polynomial] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, key = _sort_sign(ka + kb)
            if sign == 0:
                continue
            c = ca * cb if sign > 0 else -(ca * cb)
            terms[key] = terms[key] + c if key in terms else c
    return DiffForm(a.chart, a.degree + b.degree, terms)


def exterior_derivative(w: DiffForm) -> DiffForm:
    terms: Dict[Index, Polynomial] = {}
    for key, c in w.terms.items():
        for j in c.variables():
            sign, k = _sort_sign((j,) + key)
            if sign == 0:
                continue
            dc = c.diff(j)
            dc = dc if sign > 0 else -dc
            terms[k] = terms[k] + dc if k in terms else dc
    return DiffForm(w.chart, w.degree + 1, terms)


def interior_product(X: VectorField, w: DiffForm) -> DiffForm:
    """``i_X w``: insert ``X`` into the first slot; zero form if ``w`` has degree 0."""
    X.chart.check(w.chart)
    if w.degree == 0:
        return DiffForm.zero(w.chart, 0)
    terms: Dict[Index, Polynomial] = {}
    for key, c in w.terms.items():
        for pos, k in enumerate(key):
            xk = X.coeffs[k]
            if not xk.terms:
                continue
            rest = key[:pos] + key[pos + 1:]
            t = xk * c
            if pos % 2:
                t = -t
            terms[rest] = terms[rest] + t if rest in terms else t
    return DiffForm(w.chart, w.degree - 1, terms)


def insert_pair(X: VectorField, Y: VectorField, w: DiffForm) -> DiffForm:
    """``w(X, Y, -)``, i.e. ``i_Y i_X w``."""
    if w.degree < 2:
        return DiffForm.zero(w.chart, 0)
    return interior_product(Y, interior_product(X, w))


def lie_derivative(X: VectorField, w: DiffForm) -> DiffForm:
    """Cartan's formula ``L_X = i_X d + d i_X``."""
    X.chart.check(w.chart)
    out = interior_product(X, exterior_derivative(w))
    if w.degree > 0:
        out = out + exterior_derivative(interior_product(X, w))
    return out


def evaluate(w: DiffForm, fields: Sequence[VectorField]) -> Polynomial:
    """``w(X_1, ..., X_p)`` as a polynomial."""
    if len(fields) != w.degree:
        raise ValueError(f"need {w.degree} vector fields, got {len(fields)}")
    for X in fields:
        w = interior_product(X, w)
    return w.terms.get((), w.chart.zero())


def one_form(chart: Chart, coeffs: Iterable) -> DiffForm:
    return DiffForm(chart, 1, {(i,): c for i, c in enumerate(coeffs)})


def differential(f: Polynomial) -> DiffForm:
    return exterior_derivative(DiffForm.function(f))


def random_vector_field(chart: Chart, rng, max_degree: int) -> VectorField:
    return VectorField(chart, [random_polynomial(chart, rng, max_degree)
                               for _ in range(chart.dimension)])


def random_form(chart: Chart, rng, degree: int, max_degree: int, max_terms: int = 3) -> DiffForm:
    keys = list(combinations(range(chart.dimension), degree))
    if not keys:
        return DiffForm.zero(chart, degree)
    picks = rng.sample(keys, rng.randint(1, min(max_terms, len(keys))))
    return DiffForm(chart, degree, {k: random_polynomial(chart, rng, max_degree) for k in picks})


__all__ = [
    "ChartMismatch", "DiffForm", "VectorField", "differential", "evaluate",
    "exterior_derivative", "insert_pair", "interior_product", "lie_bracket",
    "lie_derivative", "one_form", "random_form", "random_vector_field", "wedge",
]
