"""Coordinate charts and exact multivariate polynomials over Q or Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from . import scalars
from .scalars import GAUSSIAN, RATIONAL, normalize

Monomial = Tuple[int, ...]


class ChartMismatch(ValueError):
    """Raised when objects living on different charts are combined."""


@dataclass(frozen=True)
class Chart:
    """A polynomial coordinate chart: ordered coordinate names and a field tag."""

    names: Tuple[str, ...]
    field: str = RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"coordinate names must be distinct: {self.names}")
        if self.field not in scalars.FIELDS:
            raise ValueError(f"unknown scalar field {self.field!r}")
        if self.field == GAUSSIAN and "i" in self.names:
            raise ValueError("'i' is reserved for the imaginary unit")
        for name in self.names:
            if not name.isidentifier():
                raise ValueError(f"bad coordinate name {name!r}")

    @property
    def dimension(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.dimension: c})

    def coord(self, which) -> "Polynomial":
        i = which if isinstance(which, int) else self.index(which)
        exps = [0] * self.dimension
        exps[i] = 1
        return Polynomial(self, {tuple(exps): 1})

    def coords(self) -> Tuple["Polynomial", ...]:
        return tuple(self.coord(i) for i in range(self.dimension))

    def poly(self, text: str) -> "Polynomial":
        """Parse ``text`` in the polynomial expression grammar."""
        from .expr import parse_polynomial

        return parse_polynomial(text, self)

    def check(self, other: "Chart"):
        if other is not self and other != self:
            raise ChartMismatch(f"chart mismatch: {self.names} vs {other.names}")


class Polynomial:
    """Exact polynomial: a map from exponent tuples to nonzero scalars.

    Instances are immutable; the stored term map never contains zero
    coefficients, so equality is equality of term maps.
    """

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: Chart, terms: Dict[Monomial, object] | None = None,
                 _clean: bool = False):
        self.chart = chart
        if _clean:
            self.terms = terms
        else:
            clean = {}
            n = chart.dimension
            for mono, c in (terms or {}).items():
                if len(mono) != n:
                    raise ValueError(f"monomial {mono} has wrong length for {chart.names}")
                c = normalize(c)
                if c != 0:
                    if not scalars.in_field(c, chart.field):
                        raise ValueError(f"scalar {c} not in field {chart.field}")
                    clean[tuple(mono)] = c
            self.terms = clean
        self._hash = None

    # -- construction helpers ---------------------------------------------------------

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self.chart.check(other.chart)
            return other
        return self.chart.const(other)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return self
            other = self.chart.const(other)
        else:
            self.chart.check(other.chart)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = normalize(v + c)
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return Polynomial(self.chart, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.chart, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, scalars.Fraction, scalars.GaussianRational)):
                return self.scale(other)
            return NotImplemented
        self.chart.check(other.chart)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.chart, {}, _clean=True)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, object] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        return Polynomial(self.chart, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = normalize(c)
        if c == 0:
            return Polynomial(self.chart, {}, _clean=True)
        if c == 1:
            return self
        return Polynomial(self.chart, {m: normalize(v * c) for m, v in self.terms.items()},
                          _clean=True)

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if not c.is_constant() or c.is_zero():
                raise ZeroDivisionError("division only by nonzero constants")
            c = c.constant_term()
        return self.scale(scalars.inverse(c))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.chart.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus -----------------------------------------------------------------

    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to coordinate ``i``."""
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = normalize(c * e)
        return Polynomial(self.chart, out, _clean=True)

    def gradient(self) -> Tuple["Polynomial", ...]:
        return tuple(self.diff(i) for i in range(self.chart.dimension))

    # -- inspection ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.chart.dimension, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.chart == other.chart and self.terms == other.terms
        try:
            c = normalize(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.chart.dimension: c} if c != 0 else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.chart, {m: fn(c) for m, c in self.terms.items()})

    def permute_variables(self, perm) -> "Polynomial":
        """Relabel variables: the exponent of coordinate ``j`` moves to ``perm[j]``."""
        out = {}
        n = self.chart.dimension
        for m, c in self.terms.items():
            mm = [0] * n
            for j, e in enumerate(m):
                mm[perm[j]] = e
            out[tuple(mm)] = c
        return Polynomial(self.chart, out, _clean=True)

    def on_chart(self, chart: Chart) -> "Polynomial":
        """Reinterpret on a chart with the same dimension (e.g. a new field tag)."""
        if chart.dimension != self.chart.dimension:
            raise ChartMismatch("dimension mismatch")
        return Polynomial(chart, dict(self.terms))

    # -- printing -------------------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_monomial(mono: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical printing: graded-lex order, signs absorbed into coefficients."""
    if not p.terms:
        return "0"
    out = []
    for mono, c in p.sorted_terms():
        mon = _format_monomial(mono, p.chart.names)
        if isinstance(c, scalars.GaussianRational):
            body = f"({scalars.format_scalar(c)})"
            sign = "+"
            if mon:
                body = f"{body}*{mon}"
        else:
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if not mon:
                body = scalars.format_rational(a)
            elif a == 1:
                body = mon
            else:
                body = f"{scalars.format_rational(a)}*{mon}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def monomials_up_to(n: int, degree: int) -> list:
    """All exponent tuples of length ``n`` with total degree at most ``degree``."""
    result = [()]
    for _ in range(n):
        result = [m + (e,) for m in result for e in range(degree + 1)]
    return [m for m in result if sum(m) <= degree]


def random_polynomial(chart: Chart, rng, max_degree: int, max_terms: int = 4,
                      coefficient_range: int = 3) -> Polynomial:
    """A small random polynomial with integer (or Gaussian integer) coefficients."""
    monos = monomials_up_to(chart.dimension, max_degree)
    k = rng.randint(1, min(max_terms, len(monos)))
    picks = rng.sample(monos, k)
    terms = {}
    for m in picks:
        re = rng.randint(-coefficient_range, coefficient_range)
        if chart.field == GAUSSIAN:
            im = rng.randint(-coefficient_range, coefficient_range)
            terms[m] = scalars.GaussianRational(re, im)
        else:
            terms[m] = re
    return Polynomial(chart, terms)


def as_polynomial(chart: Chart, value) -> Polynomial:
    if isinstance(value, Polynomial):
        chart.check(value.chart)
        return value
    if isinstance(value, str):
        return chart.poly(value)
    return chart.const(value)


def lift_all(chart: Chart, values: Iterable) -> Tuple[Polynomial, ...]:
    return tuple(as_polynomial(chart, v) for v in values)
