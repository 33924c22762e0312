"""Courant algebroids over a chart, described by frame data.

A :class:`CourantStructure` stores a frame, a constant pairing matrix, the
anchor of each frame element and the Dorfman products of frame pairs. The
bracket of arbitrary polynomial sections is obtained from the frame table by
the two Leibniz rules::

    phi <> (g psi)   = (rho(phi) g) psi + g (phi <> psi)
    (f phi) <> psi   = -(rho(psi) f) phi + f (phi <> psi) + <phi, psi> D f
"""

from __future__ import annotations

from typing import Iterable, List, Mapping, Sequence, Tuple

from . import linalg
from .forms import (DiffForm, VectorField, exterior_derivative, insert_pair, interior_product,
                    lie_bracket, lie_derivative)
from .polynomial import Chart, ChartMismatch, Polynomial, as_polynomial, random_polynomial
from .scalars import normalize


class StructureError(ValueError):
    """Invalid frame data (shape, symmetry, invertibility)."""


class NonClosedTwist(ValueError):
    """The twisting 3-form is not closed."""


class RankMismatch(ValueError):
    pass


class Section:
    """Polynomial coefficients over a bundle frame."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Polynomial]):
        self.coeffs = tuple(coeffs)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "Section"):
        if other.rank != self.rank:
            raise RankMismatch(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "Section":
        return Section(-a for a in self.coeffs)

    def __mul__(self, f) -> "Section":
        if not isinstance(f, Polynomial):
            return Section(a.scale(f) for a in self.coeffs)
        return Section(f * a for a in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __repr__(self):
        return f"Section({[str(c) for c in self.coeffs]})"


def zero_section(chart: Chart, rank: int) -> Section:
    z = chart.zero()
    return Section([z] * rank)


def format_section(labels: Sequence[str], s: Section) -> str:
    """``label: poly, label: poly``; ``0`` for the zero section."""
    parts = [f"{lab}: {c}" for lab, c in zip(labels, s.coeffs) if not c.is_zero()]
    return ", ".join(parts) if parts else "0"


class CourantStructure:
    """Frame data ``(labels, pairing, anchor, bracket table)`` over a chart.

    ``anchor[i]`` is the vector field ``rho(e_i)`` and ``table[i][j]`` is
    ``e_i <> e_j``. Construction checks shapes, symmetry and invertibility of
    the pairing; the Courant axioms are checked by :mod:`dorfman.verify`.
    """

    def __init__(self, chart: Chart, labels: Sequence[str], pairing: Sequence[Sequence],
                 anchor: Sequence[VectorField], table: Sequence[Sequence[Section]], name: str = ""):
        self.chart = chart
        self.labels = tuple(labels)
        self.name = name
        k = len(self.labels)
        if len(set(self.labels)) != k:
            raise StructureError(f"duplicate frame labels in {self.labels}")
        if len(pairing) != k or any(len(row) != k for row in pairing):
            raise StructureError(f"pairing must be {k}x{k}")
        self.pairing = tuple(tuple(normalize(x) for x in row) for row in pairing)
        for i in range(k):
            for j in range(i):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise StructureError(
                        f"pairing not symmetric at ({self.labels[i]}, {self.labels[j]})")
        try:
            self.pairing_inverse = tuple(tuple(r) for r in linalg.invert(self.pairing))
        except linalg.SingularMatrix:
            raise StructureError("pairing is degenerate") from None
        if len(anchor) != k:
            raise StructureError(f"anchor needs {k} rows")
        for X in anchor:
            chart.check(X.chart)
        self.anchor = tuple(anchor)
        if len(table) != k or any(len(row) != k for row in table):
            raise StructureError(f"bracket table must be {k}x{k}")
        for row in table:
            for s in row:
                if s.rank != k:
                    raise StructureError("bracket table entries must be sections of the bundle")
        self.table = tuple(tuple(row) for row in table)
        # sparse view of the pairing for fast contractions
        self._pair_nz = tuple(tuple((j, g) for j, g in enumerate(row) if g != 0)
                              for row in self.pairing)
        self._ginv_nz = tuple(tuple((j, g) for j, g in enumerate(row) if g != 0)
                              for row in self.pairing_inverse)

    # -- basics ---------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no frame element {label!r}") from None

    def zero(self) -> Section:
        return zero_section(self.chart, self.rank)

    def basis(self, which) -> Section:
        i = which if isinstance(which, int) else self.index(which)
        z, one = self.chart.zero(), self.chart.one()
        return Section([one if k == i else z for k in range(self.rank)])

    def frame(self) -> List[Section]:
        return [self.basis(i) for i in range(self.rank)]

    def section(self, spec: Mapping | None = None, **kw) -> Section:
        """Section from ``{label: polynomial-or-text}``."""
        data = dict(spec or {}, **kw)
        coeffs = [self.chart.zero()] * self.rank
        for lab, v in data.items():
            coeffs[self.index(lab)] = as_polynomial(self.chart, v)
        return Section(coeffs)

    def format(self, s: Section) -> str:
        return format_section(self.labels, s)

    def _check(self, *sections: Section):
        for s in sections:
            if s.rank != self.rank:
                raise RankMismatch(f"section of rank {s.rank} for structure of rank {self.rank}")
            for c in s.coeffs:
                if c.chart is not self.chart:
                    self.chart.check(c.chart)

    # -- structure maps -------------------------------------------------------------

    def pairing_apply(self, phi: Section, psi: Section) -> Polynomial:
        self._check(phi, psi)
        out = self.chart.zero()
        for i, row in enumerate(self._pair_nz):
            a = phi.coeffs[i]
            if not a.terms:
                continue
            acc = self.chart.zero()
            for j, g in row:
                b = psi.coeffs[j]
                if b.terms:
                    acc = acc + b.scale(g)
            if acc.terms:
                out = out + a * acc
        return out

    def anchor_apply(self, phi: Section) -> VectorField:
        self._check(phi)
        out = [self.chart.zero()] * self.chart.dimension
        for f, X in zip(phi.coeffs, self.anchor):
            if not f.terms:
                continue
            for k, c in enumerate(X.coeffs):
                if c.terms:
                    out[k] = out[k] + f * c
        return VectorField(self.chart, out)

    def _anchor_derivatives(self, f: Polynomial) -> List[Polynomial]:
        """``rho(e_i) f`` for every frame element."""
        grad = f.gradient()
        out = []
        for X in self.anchor:
            acc = self.chart.zero()
            for c, g in zip(X.coeffs, grad):
                if c.terms and g.terms:
                    acc = acc + c * g
            out.append(acc)
        return out

    def _raise_index(self, w: Sequence[Polynomial]) -> Section:
        """The section ``s`` with ``<s, e_i> = w_i``, i.e. ``G^{-1} w``."""
        out = []
        for row in self._ginv_nz:
            acc = self.chart.zero()
            for j, g in row:
                if w[j].terms:
                    acc = acc + w[j].scale(g)
            out.append(acc)
        return Section(out)

    def d_operator(self, f) -> Section:
        """``D f``: the section with ``<D f, phi> = rho(phi) f``."""
        f = as_polynomial(self.chart, f)
        return self._raise_index(self._anchor_derivatives(f))

    def dual_section(self, w: Sequence[Polynomial]) -> Section:
        """The section whose pairing with frame element ``i`` is ``w[i]``."""
        return self._raise_index([as_polynomial(self.chart, x) for x in w])

    def dorfman(self, phi: Section, psi: Section) -> Section:
        """Dorfman product of arbitrary sections via the frame table and Leibniz rules."""
        self._check(phi, psi)
        k = self.rank
        chart = self.chart
        zero = chart.zero()
        f, g = phi.coeffs, psi.coeffs
        out = [zero] * k
        rho_phi = self.anchor_apply(phi)
        rho_psi = self.anchor_apply(psi)
        # (rho(phi) g_j) e_j - (rho(psi) f_j) e_j
        for j in range(k):
            t = zero
            if g[j].terms:
                t = rho_phi(g[j])
            if f[j].terms:
                t = t - rho_psi(f[j])
            out[j] = t
        # sum f_i g_j B_ij
        for i in range(k):
            if not f[i].terms:
                continue
            row = self.table[i]
            for j in range(k):
                if not g[j].terms:
                    continue
                entry = row[j]
                fg = None
                for l, c in enumerate(entry.coeffs):
                    if c.terms:
                        if fg is None:
                            fg = f[i] * g[j]
                        out[l] = out[l] + fg * c
        # sum_i <e_i, psi> D f_i  =  G^{-1} (sum_i <e_i, psi> rho(e_l) f_i)_l
        w = [zero] * k
        any_w = False
        for i in range(k):
            if not f[i].terms or f[i].is_constant():
                continue
            weight = zero
            for j, gij in self._pair_nz[i]:
                if g[j].terms:
                    weight = weight + g[j].scale(gij)
            if not weight.terms:
                continue
            derivs = self._anchor_derivatives(f[i])
            for l in range(k):
                if derivs[l].terms:
                    w[l] = w[l] + weight * derivs[l]
                    any_w = True
        if any_w:
            extra = self._raise_index(w)
            out = [a + b for a, b in zip(out, extra.coeffs)]
        return Section(out)

    bracket = dorfman

    def table_entry(self, a: str, b: str) -> Section:
        return self.table[self.index(a)][self.index(b)]

    def random_section(self, rng, max_degree: int, density: float = 0.6) -> Section:
        coeffs = []
        for _ in range(self.rank):
            if rng.random() < density:
                coeffs.append(random_polynomial(self.chart, rng, max_degree))
            else:
                coeffs.append(self.chart.zero())
        if all(c.is_zero() for c in coeffs) and self.rank:
            coeffs[rng.randrange(self.rank)] = random_polynomial(self.chart, rng, max_degree)
        return Section(coeffs)

    def max_data_degree(self) -> int:
        degs = [c.degree() for X in self.anchor for c in X.coeffs]
        degs += [c.degree() for row in self.table for s in row for c in s.coeffs]
        return max(degs, default=0)

    def relabeled(self, labels: Sequence[str], name: str | None = None) -> "CourantStructure":
        return CourantStructure(self.chart, labels, self.pairing, self.anchor, self.table,
                                name=self.name if name is None else name)

    def __repr__(self):
        return f"CourantStructure(name={self.name!r}, rank={self.rank}, labels={self.labels})"


def pairing(E: CourantStructure, phi: Section, psi: Section) -> Polynomial:
    return E.pairing_apply(phi, psi)


def anchor_apply(E: CourantStructure, phi: Section) -> VectorField:
    return E.anchor_apply(phi)


def d_operator(E: CourantStructure, f) -> Section:
    return E.d_operator(f)


def dorfman(E: CourantStructure, phi: Section, psi: Section) -> Section:
    return E.dorfman(phi, psi)


def point_chart(field: str = "rational") -> Chart:
    return Chart((), field)


# -- twisted standard Courant algebroid ----------------------------------------------------


def field_label(name: str) -> str:
    return f"del_{name}"


def form_label(name: str) -> str:
    return f"d{name}"


def make_twisted_standard(chart: Chart, H: DiffForm | None = None, directions: Sequence | None = None,
                          force: bool = False, name: str = "") -> CourantStructure:
    """``TM + T*M`` twisted by the closed 3-form ``H``.

    Frame: ``del_x1..del_xn, dx1..dxn`` with the duality pairing, anchor the
    projection to vector fields and ``del_i <> del_j = H(del_i, del_j, -)``.
    ``directions`` restricts the frame to a subset of coordinate directions
    (the twist is then restricted to those directions too); this gives the
    complex structures on ``T^{1,0} + (T^{1,0})*`` used by
    :mod:`dorfman.complexpair`.
    """
    if H is None:
        H = DiffForm.zero(chart, 3)
    chart.check(H.chart)
    if H.degree != 3:
        raise ValueError("the twist must be a 3-form")
    if not force and not exterior_derivative(H).is_zero():
        raise NonClosedTwist(f"dH = {exterior_derivative(H)} is not zero")
    dirs = list(range(chart.dimension)) if directions is None else [
        d if isinstance(d, int) else chart.index(d) for d in directions]
    n = len(dirs)
    labels = [field_label(chart.names[d]) for d in dirs] + [form_label(chart.names[d]) for d in dirs]
    k = 2 * n
    pair = [[0] * k for _ in range(k)]
    for a in range(n):
        pair[a][n + a] = pair[n + a][a] = 1
    anchor = [VectorField.coordinate(chart, d) for d in dirs] + [VectorField.zero(chart)] * n
    zero = chart.zero()
    table = [[zero_section(chart, k) for _ in range(k)] for _ in range(k)]
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            coeffs = [zero] * k
            for c in range(n):
                coeffs[n + c] = H.coefficient((dirs[a], dirs[b], dirs[c]))
            table[a][b] = Section(coeffs)
    return CourantStructure(chart, labels, pair, anchor, table, name=name)


def split_standard(E: CourantStructure, s: Section) -> Tuple[VectorField, DiffForm]:
    """Read a section of a (full) twisted standard structure as ``X + alpha``."""
    n = E.chart.dimension
    if E.rank != 2 * n:
        raise RankMismatch("not a full standard structure")
    X = VectorField(E.chart, s.coeffs[:n])
    alpha = DiffForm(E.chart, 1, {(i,): c for i, c in enumerate(s.coeffs[n:])})
    return X, alpha


def join_standard(chart: Chart, X: VectorField, alpha: DiffForm) -> Section:
    return Section(list(X.coeffs) + [alpha.coefficient((i,)) for i in range(chart.dimension)])


def twisted_bracket_direct(H: DiffForm, X: VectorField, alpha: DiffForm, Y: VectorField,
                           beta: DiffForm) -> Tuple[VectorField, DiffForm]:
    """``[X,Y] + (L_X beta - i_Y d alpha + H(X, Y, -))`` computed with forms."""
    form = lie_derivative(X, beta) - interior_product(Y, exterior_derivative(alpha))
    twist = insert_pair(X, Y, H)
    if twist.degree == 1:
        form = form + twist
    return lie_bracket(X, Y), form


def frame_pairs(E: CourantStructure):
    return [(a, b) for a in range(E.rank) for b in range(E.rank)]


__all__ = [
    "ChartMismatch", "CourantStructure", "NonClosedTwist", "RankMismatch", "Section",
    "StructureError", "anchor_apply", "d_operator", "dorfman", "format_section",
    "make_twisted_standard", "pairing", "point_chart", "split_standard", "join_standard",
    "twisted_bracket_direct", "zero_section",
]
