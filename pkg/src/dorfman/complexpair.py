"""Complex manifolds: Dolbeault-type connections and the bidegree matched pair.

``C^n`` is modelled with independent polynomial variables ``z_j`` and
``zb_j`` (for ``z-bar``) over Q(i). A polynomial is holomorphic when no
``zb`` occurs, and every projection onto a bidegree is a filter on frame
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .courant import (CourantStructure, NonClosedTwist, Section, field_label, form_label,
                      make_twisted_standard, zero_section)
from .forms import DiffForm, VectorField, exterior_derivative, lie_bracket, lie_derivative
from .matched import Connection, MatchedPairData, compare_structures, matched_sum
from .polynomial import Chart, Polynomial
from .scalars import GAUSSIAN, conjugate
from .verify import VerificationReport

HOLOMORPHIC = (1, 0)
ANTIHOLOMORPHIC = (0, 1)


class MixedBidegree(ValueError):
    pass


@dataclass(frozen=True)
class ComplexChart:
    """``n`` holomorphic coordinates followed by their conjugates."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one complex dimension")

    @property
    def holomorphic_names(self) -> Tuple[str, ...]:
        return ("z",) if self.n == 1 else tuple(f"z{j + 1}" for j in range(self.n))

    @property
    def antiholomorphic_names(self) -> Tuple[str, ...]:
        return ("zb",) if self.n == 1 else tuple(f"zb{j + 1}" for j in range(self.n))

    @property
    def chart(self) -> Chart:
        return Chart(self.holomorphic_names + self.antiholomorphic_names, GAUSSIAN)

    @property
    def holomorphic(self) -> Tuple[int, ...]:
        return tuple(range(self.n))

    @property
    def antiholomorphic(self) -> Tuple[int, ...]:
        return tuple(range(self.n, 2 * self.n))

    def partner(self, i: int) -> int:
        return i + self.n if i < self.n else i - self.n

    def type_of(self, i: int) -> Tuple[int, int]:
        return HOLOMORPHIC if i < self.n else ANTIHOLOMORPHIC

    @classmethod
    def of(cls, chart: Chart) -> "ComplexChart":
        if chart.dimension % 2:
            raise ValueError("complex charts have an even number of coordinates")
        cc = cls(chart.dimension // 2)
        if cc.chart.names != chart.names:
            raise ValueError(f"coordinates {chart.names} are not of the form z.., zb..")
        return cc

    # -- conjugation ------------------------------------------------------------------

    def conjugate_polynomial(self, p: Polynomial) -> Polynomial:
        perm = [self.partner(i) for i in range(2 * self.n)]
        return p.permute_variables(perm).map_coefficients(conjugate)

    def conjugate_field(self, X: VectorField) -> VectorField:
        coeffs = [None] * (2 * self.n)
        for i, c in enumerate(X.coeffs):
            coeffs[self.partner(i)] = self.conjugate_polynomial(c)
        return VectorField(X.chart, coeffs)

    def conjugate_form(self, w: DiffForm) -> DiffForm:
        return DiffForm(w.chart, w.degree, {
            tuple(self.partner(i) for i in idx): self.conjugate_polynomial(c)
            for idx, c in w.terms.items()})

    def conjugate_label(self, label: str) -> str:
        names = self.chart.names
        for i, x in enumerate(names):
            y = names[self.partner(i)]
            if label == field_label(x):
                return field_label(y)
            if label == form_label(x):
                return form_label(y)
        raise KeyError(label)

    def conjugate_structure(self, E: CourantStructure) -> CourantStructure:
        """Apply the involution to every datum and rename frame labels ``z <-> zb``."""
        labels = [self.conjugate_label(l) for l in E.labels]
        pairing = [[conjugate(g) for g in row] for row in E.pairing]
        anchor = [self.conjugate_field(X) for X in E.anchor]
        table = [[Section(self.conjugate_polynomial(c) for c in s.coeffs) for s in row]
                 for row in E.table]
        return CourantStructure(E.chart, labels, pairing, anchor, table, name=f"conj({E.name})")


def bidegree_split(cc: ComplexChart, w: DiffForm) -> Dict[Tuple[int, int], DiffForm]:
    """``{(p, q): w^{p,q}}`` for the nonzero components."""
    parts: Dict[Tuple[int, int], dict] = {}
    for idx, c in w.terms.items():
        p = sum(1 for i in idx if i < cc.n)
        parts.setdefault((p, w.degree - p), {})[idx] = c
    return {k: DiffForm(w.chart, w.degree, v) for k, v in parts.items()}


def bidegree_component(cc: ComplexChart, w: DiffForm, p: int, q: int) -> DiffForm:
    return bidegree_split(cc, w).get((p, q), DiffForm.zero(w.chart, w.degree))


def field_type(cc: ComplexChart, X: VectorField):
    """``(1,0)``, ``(0,1)`` or ``None`` for the zero field; raises on mixed fields."""
    hol = any(X.coeffs[i].terms for i in cc.holomorphic)
    anti = any(X.coeffs[i].terms for i in cc.antiholomorphic)
    if hol and anti:
        raise MixedBidegree(f"vector field {X} has mixed type")
    return HOLOMORPHIC if hol else ANTIHOLOMORPHIC if anti else None


def form_type(cc: ComplexChart, w: DiffForm):
    if w.degree != 1:
        raise ValueError("expected a 1-form")
    hol = any(idx[0] < cc.n for idx in w.terms)
    anti = any(idx[0] >= cc.n for idx in w.terms)
    if hol and anti:
        raise MixedBidegree(f"1-form {w} has mixed type")
    return HOLOMORPHIC if hol else ANTIHOLOMORPHIC if anti else None


def project_field(cc: ComplexChart, X: VectorField, kind) -> VectorField:
    keep = cc.holomorphic if kind == HOLOMORPHIC else cc.antiholomorphic
    z = X.chart.zero()
    return VectorField(X.chart, [c if i in keep else z for i, c in enumerate(X.coeffs)])


def project_form(cc: ComplexChart, w: DiffForm, kind) -> DiffForm:
    keep = set(cc.holomorphic if kind == HOLOMORPHIC else cc.antiholomorphic)
    return DiffForm(w.chart, w.degree, {k: c for k, c in w.terms.items() if all(i in keep for i in k)})


def dolbeault_connection(cc: ComplexChart, psi: VectorField, v):
    """``nabla^o_psi v``: the bracket or Lie derivative projected onto the type of ``v``.

    ``v`` is a vector field or a 1-form of the type opposite to ``psi``.
    """
    tp = field_type(cc, psi)
    if isinstance(v, VectorField):
        tv = field_type(cc, v)
        if tp is not None and tv is not None and tp == tv:
            raise MixedBidegree("connection needs arguments of opposite types")
        target = tv or (ANTIHOLOMORPHIC if tp == HOLOMORPHIC else HOLOMORPHIC)
        return project_field(cc, lie_bracket(psi, v), target)
    tv = form_type(cc, v)
    if tp is not None and tv is not None and tp == tv:
        raise MixedBidegree("connection needs arguments of opposite types")
    target = tv or (ANTIHOLOMORPHIC if tp == HOLOMORPHIC else HOLOMORPHIC)
    return project_form(cc, lie_derivative(psi, v), target)


def dolbeault_curvature(cc: ComplexChart, X1: VectorField, X2: VectorField, v):
    """``R(X1, X2) v`` for the Dolbeault connection; zero by integrability."""
    nab = lambda a, b: dolbeault_connection(cc, a, b)
    return nab(X1, nab(X2, v)) - nab(X2, nab(X1, v)) - nab(lie_bracket(X1, X2), v)


# -- the matched pair ---------------------------------------------------------------------


def _check_closed(H: DiffForm):
    dH = exterior_derivative(H)
    if not dH.is_zero():
        raise NonClosedTwist(f"dH = {dH} is not zero")


def holomorphic_part(cc: ComplexChart, H: DiffForm, name: str = "C10") -> CourantStructure:
    """``(C^{1,0})_{H^{3,0}}``. Only ``d`` restricted to (1,0)-directions matters, and that
    vanishes whenever ``H`` is closed."""
    return make_twisted_standard(cc.chart, bidegree_component(cc, H, 3, 0), directions=cc.holomorphic,
                                 force=True, name=name)


def antiholomorphic_part(cc: ComplexChart, H: DiffForm, name: str = "C01") -> CourantStructure:
    return make_twisted_standard(cc.chart, bidegree_component(cc, H, 0, 3),
                                 directions=cc.antiholomorphic, force=True, name=name)


def plane_connection(cc: ComplexChart, E1: CourantStructure, E2: CourantStructure, H: DiffForm,
                     include_twist: bool = True) -> Connection:
    """``nabla_{X+alpha}(Y+beta) = nabla^o_X Y + nabla^o_X beta + H^{1,2}(X, Y, -)`` on frames."""
    n = cc.n
    chart = cc.chart
    zero = chart.zero()
    table = [[zero_section(chart, 2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    if include_twist:
        for i, zi in enumerate(cc.holomorphic):
            for j, zbj in enumerate(cc.antiholomorphic):
                form = [H.coefficient((zi, zbj, zbk)) for zbk in cc.antiholomorphic]
                table[i][j] = Section([zero] * n + form)
    return Connection(E1, E2, table, name="right")


def car_connection(cc: ComplexChart, E1: CourantStructure, E2: CourantStructure, H: DiffForm,
                   include_twist: bool = True) -> Connection:
    """``nabla_{Y+beta}(X+alpha) = nabla^o_Y X + nabla^o_Y alpha + H^{2,1}(Y, X, -)`` on frames."""
    n = cc.n
    chart = cc.chart
    zero = chart.zero()
    table = [[zero_section(chart, 2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    if include_twist:
        for j, zbj in enumerate(cc.antiholomorphic):
            for i, zi in enumerate(cc.holomorphic):
                form = [H.coefficient((zbj, zi, zk)) for zk in cc.holomorphic]
                table[j][i] = Section([zero] * n + form)
    return Connection(E2, E1, table, name="left")


def build_complex_matched_pair(cc: ComplexChart, H: DiffForm | None = None,
                               drop_h21: bool = False) -> MatchedPairData:
    """The pair ``((C^{1,0})_{H^{3,0}}, (C^{0,1})_{H^{0,3}})``.

    ``drop_h21`` removes the ``H^{2,1}`` term from the left connection; it
    exists for mutation tests.
    """
    chart = cc.chart
    if H is None:
        H = DiffForm.zero(chart, 3)
    chart.check(H.chart)
    _check_closed(H)
    E1 = holomorphic_part(cc, H)
    E2 = antiholomorphic_part(cc, H)
    right = plane_connection(cc, E1, E2, H)
    left = car_connection(cc, E1, E2, H, include_twist=not drop_h21)
    return MatchedPairData(E1, E2, right, left)


def complex_standard(cc: ComplexChart, H: DiffForm | None = None) -> CourantStructure:
    """``(T + T*) (x) C`` twisted by ``H``."""
    return make_twisted_standard(cc.chart, H, name="CH")


def check_sum_isomorphism(mp: MatchedPairData, H: DiffForm | None = None) -> VerificationReport:
    """Compare the matched sum with the H-twisted complex standard structure entrywise."""
    chart = mp.chart
    if H is None:
        H = DiffForm.zero(chart, 3)
    cc = ComplexChart.of(chart)
    return compare_structures(matched_sum(mp), complex_standard(cc, H), title="sum-isomorphism")


def bidegree_frames(cc: ComplexChart, E: CourantStructure) -> Tuple[List[str], List[str]]:
    """Labels of ``E`` split into the ``C^{1,0}`` and ``C^{0,1}`` frames."""
    hol = {field_label(cc.chart.names[i]) for i in cc.holomorphic}
    hol |= {form_label(cc.chart.names[i]) for i in cc.holomorphic}
    first = [l for l in E.labels if l in hol]
    second = [l for l in E.labels if l not in hol]
    return first, second
