"""Regular Courant algebroids in standard form ``F* + G + F`` with ``F = TM``.

The structure is determined by an F-connection ``nabla`` on a bundle of
quadratic Lie algebras, a curvature map ``R`` and a 3-form ``H``. The
pairing on the Lie block is ``lam * K``; :func:`normalization_audit`
finds the value of ``lam`` for which the bracket formulas give a Courant
algebroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .courant import (CourantStructure, Section, StructureError, field_label, form_label,
                      make_twisted_standard, zero_section)
from .forms import DiffForm, VectorField, exterior_derivative
from .matched import Connection, MatchedPairData
from .polynomial import Chart, Polynomial
from .scalars import normalize
from .verify import Checker, SampleSpec, VerificationReport, check_axioms

CANDIDATES = (Fraction(1, 2), 1, 2)


class NoConsistentNormalization(ValueError):
    pass


class AmbiguousNormalization(ValueError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class NotFlat(ValueError):
    pass


class IncompatibleData(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class QuadraticLieBundle:
    """A trivialized bundle of quadratic Lie algebras with constant structure constants."""

    def __init__(self, labels: Sequence[str], structure, pairing):
        self.labels = tuple(labels)
        m = len(self.labels)
        if len(set(self.labels)) != m:
            raise StructureError("duplicate Lie algebra labels")
        self.structure = tuple(tuple(tuple(normalize(c) for c in structure[i][j]) for j in range(m))
                               for i in range(m))
        self.pairing = tuple(tuple(normalize(c) for c in row) for row in pairing)
        if len(self.pairing) != m or any(len(r) != m for r in self.pairing):
            raise StructureError(f"pairing must be {m}x{m}")
        for i in range(m):
            for j in range(m):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise StructureError("Lie algebra pairing is not symmetric")
                for k in range(m):
                    if self.structure[i][j][k] != -self.structure[j][i][k]:
                        raise StructureError(
                            f"structure constants not antisymmetric at ({self.labels[i]}, {self.labels[j]})")
        try:
            linalg.invert(self.pairing)
        except linalg.SingularMatrix:
            raise StructureError("Lie algebra pairing is degenerate") from None
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if any(self._jacobi(i, j, k)):
                        raise StructureError("structure constants violate the Jacobi identity")
                    inv = (self._pair(self._bracket_basis(i, j), k)
                           + self._pair(self._bracket_basis(i, k), j))
                    if inv != 0:
                        raise StructureError("pairing is not ad-invariant")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def _bracket_basis(self, i, j):
        return self.structure[i][j]

    def _bracket_vec(self, u, v):
        m = self.rank
        out = [0] * m
        for i in range(m):
            if u[i] == 0:
                continue
            for j in range(m):
                if v[j] == 0:
                    continue
                for k, c in enumerate(self.structure[i][j]):
                    if c != 0:
                        out[k] = normalize(out[k] + u[i] * v[j] * c)
        return out

    def _pair(self, u, k):
        return normalize(sum(u[l] * self.pairing[l][k] for l in range(self.rank)))

    def _jacobi(self, i, j, k):
        e = lambda n: [1 if t == n else 0 for t in range(self.rank)]
        a = self._bracket_vec(e(i), self._bracket_vec(e(j), e(k)))
        b = self._bracket_vec(e(j), self._bracket_vec(e(k), e(i)))
        c = self._bracket_vec(e(k), self._bracket_vec(e(i), e(j)))
        return [normalize(x + y + z) for x, y, z in zip(a, b, c)]

    def bracket(self, u: Section, v: Section) -> Section:
        """Pointwise Lie bracket of two sections."""
        m = self.rank
        chart = (u.coeffs + v.coeffs)[0].chart
        out = [chart.zero()] * m
        for i, f in enumerate(u.coeffs):
            if not f.terms:
                continue
            for j, g in enumerate(v.coeffs):
                if not g.terms:
                    continue
                fg = f * g
                for k, c in enumerate(self.structure[i][j]):
                    if c != 0:
                        out[k] = out[k] + fg.scale(c)
        return Section(out)

    def pair(self, u: Section, v: Section) -> Polynomial:
        chart = (u.coeffs + v.coeffs)[0].chart
        out = chart.zero()
        for i, f in enumerate(u.coeffs):
            if not f.terms:
                continue
            for j, g in enumerate(v.coeffs):
                if g.terms and self.pairing[i][j] != 0:
                    out = out + (f * g).scale(self.pairing[i][j])
        return out

    def killing_form(self):
        """``tr(ad_i ad_j)``."""
        m = self.rank
        ad = [[[self.structure[i][j][k] for j in range(m)] for k in range(m)] for i in range(m)]
        return [[normalize(sum(ad[i][k][l] * ad[j][l][k] for k in range(m) for l in range(m)))
                 for j in range(m)] for i in range(m)]

    @classmethod
    def abelian(cls, labels: Sequence[str], pairing=None) -> "QuadraticLieBundle":
        m = len(labels)
        if pairing is None:
            pairing = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        return cls(labels, [[[0] * m for _ in range(m)] for _ in range(m)], pairing)

    @classmethod
    def so3(cls, labels=("g1", "g2", "g3"), pairing=None) -> "QuadraticLieBundle":
        c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            c[i][j][k] = 1
            c[j][i][k] = -1
        if pairing is None:
            pairing = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        return cls(labels, c, pairing)

    def __repr__(self):
        return f"QuadraticLieBundle({self.labels})"


@dataclass
class RegularData:
    """Data ``(nabla, R, H, lam)`` over a chart.

    ``nabla[d][a]`` is ``nabla_{del_d} g_a`` and ``curvature[i][j]`` is
    ``R(del_i, del_j)``, both as coefficient sections of the Lie bundle.
    """

    chart: Chart
    algebra: QuadraticLieBundle
    nabla: List[List[Section]] = None
    curvature: List[List[Section]] = None
    H: DiffForm = None
    lam: object = 2
    name: str = ""

    def __post_init__(self):
        n, m = self.chart.dimension, self.algebra.rank
        z = zero_section(self.chart, m)
        if self.nabla is None:
            self.nabla = [[z] * m for _ in range(n)]
        if self.curvature is None:
            self.curvature = [[z] * n for _ in range(n)]
        if self.H is None:
            self.H = DiffForm.zero(self.chart, 3)
        if len(self.nabla) != n or any(len(r) != m for r in self.nabla):
            raise StructureError(f"connection table must be {n}x{m}")
        if len(self.curvature) != n or any(len(r) != n for r in self.curvature):
            raise StructureError(f"curvature must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if self.curvature[i][j] != -self.curvature[j][i]:
                    raise StructureError("curvature map is not antisymmetric")
        if self.H.degree != 3:
            raise StructureError("H must be a 3-form")
        self.lam = normalize(self.lam)
        if self.lam == 0:
            raise StructureError("normalization must be nonzero")

    def with_lam(self, lam) -> "RegularData":
        return RegularData(self.chart, self.algebra, self.nabla, self.curvature, self.H, lam, self.name)

    # the F-connection on arbitrary sections of G, along coordinate fields
    def covariant(self, d: int, u: Section) -> Section:
        out = [c.diff(d) for c in u.coeffs]
        for a, f in enumerate(u.coeffs):
            if not f.terms:
                continue
            for k, c in enumerate(self.nabla[d][a].coeffs):
                if c.terms:
                    out[k] = out[k] + f * c
        return Section(out)

    def basis(self, a: int) -> Section:
        one, z = self.chart.one(), self.chart.zero()
        return Section([one if k == a else z for k in range(self.algebra.rank)])


def _labels(rd: RegularData):
    forms = [form_label(x) for x in rd.chart.names]
    fields = [field_label(x) for x in rd.chart.names]
    return forms, list(rd.algebra.labels), fields


def p_map(rd: RegularData, a: int, b: int) -> List[Polynomial]:
    """Coefficients of ``P(g_a, g_b)``: ``<P(r1, r2), y> = 2 K(r2, nabla_y r1)``."""
    K = rd.algebra
    gb = rd.basis(b)
    return [K.pair(gb, rd.nabla[y][a]).scale(2) for y in range(rd.chart.dimension)]


def q_map(rd: RegularData, i: int, a: int) -> List[Polynomial]:
    """Coefficients of ``Q(del_i, g_a)``: ``<Q(x, r), y> = K(r, R(x, y))``."""
    K = rd.algebra
    ga = rd.basis(a)
    return [K.pair(ga, rd.curvature[i][y]) for y in range(rd.chart.dimension)]


def pontryagin_values(rd: RegularData) -> Dict[Tuple[int, int, int, int], Polynomial]:
    """``C(del_i, del_j, del_k, del_l)`` for ``i<j<k<l``, by the full permutation sum."""
    n = rd.chart.dimension
    K = rd.algebra
    out = {}
    quarter = Fraction(1, 4)
    for idx in _increasing(n, 4):
        acc = rd.chart.zero()
        for perm in permutations(range(4)):
            x = [idx[p] for p in perm]
            u, v = rd.curvature[x[0]][x[1]], rd.curvature[x[2]][x[3]]
            if u.is_zero() or v.is_zero():
                continue
            val = K.pair(u, v)
            acc = acc + val if _perm_sign(perm) > 0 else acc - val
        out[idx] = acc.scale(quarter)
    return out


def pontryagin_form(rd: RegularData) -> DiffForm:
    return DiffForm(rd.chart, 4, {k: v for k, v in pontryagin_values(rd).items() if not v.is_zero()})


def _increasing(n, k):
    return list(combinations(range(n), k))


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def check_flat(rd: RegularData) -> bool:
    return all(v.is_zero() for v in pontryagin_values(rd).values())


def check_regular_compat(rd: RegularData) -> VerificationReport:
    """The five compatibility conditions on coordinate fields and basis elements."""
    chart = rd.chart
    n, m = chart.dimension, rd.algebra.rank
    G = rd.algebra
    names = chart.names
    glab = G.labels
    report = VerificationReport(f"regular-compat({rd.name or 'data'})")
    basis = [rd.basis(a) for a in range(m)]
    fmt = lambda s: ", ".join(f"{l}: {c}" for l, c in zip(glab, s.coeffs) if not c.is_zero()) or "0"

    ck = Checker("metric_invariance")
    ck.stage("frame")
    for d in range(n):
        for a in range(m):
            for b in range(a, m):
                r = (G.pair(basis[a], basis[b]).diff(d) - G.pair(rd.nabla[d][a], basis[b])
                     - G.pair(basis[a], rd.nabla[d][b]))
                ck.record(r.is_zero(), lambda d=d, a=a, b=b: {
                    "x": field_label(names[d]), "r": glab[a], "s": glab[b]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("derivation")
    ck.stage("frame")
    for d in range(n):
        for a in range(m):
            for b in range(m):
                r = (rd.covariant(d, G.bracket(basis[a], basis[b]))
                     - G.bracket(rd.nabla[d][a], basis[b]) - G.bracket(basis[a], rd.nabla[d][b]))
                ck.record(r.is_zero(), lambda d=d, a=a, b=b: {
                    "x": field_label(names[d]), "r": glab[a], "s": glab[b]}, lambda r=r: fmt(r))
    report.checks.append(ck.result)

    # coordinate fields commute, so only the covariant terms survive
    ck = Checker("bianchi")
    ck.stage("frame")
    for x, y, z in _increasing(n, 3):
        r = (rd.covariant(x, rd.curvature[y][z]) + rd.covariant(y, rd.curvature[z][x])
             + rd.covariant(z, rd.curvature[x][y]))
        ck.record(r.is_zero(), lambda x=x, y=y, z=z: {
            "x": field_label(names[x]), "y": field_label(names[y]), "z": field_label(names[z])},
            lambda r=r: fmt(r))
    report.checks.append(ck.result)

    ck = Checker("curvature")
    ck.stage("frame")
    for x in range(n):
        for y in range(x + 1, n):
            for a in range(m):
                g = basis[a]
                r = (rd.covariant(x, rd.covariant(y, g)) - rd.covariant(y, rd.covariant(x, g))
                     - G.bracket(rd.curvature[x][y], g))
                ck.record(r.is_zero(), lambda x=x, y=y, a=a: {
                    "x": field_label(names[x]), "y": field_label(names[y]), "r": glab[a]},
                    lambda r=r: fmt(r))
    report.checks.append(ck.result)

    ck = Checker("dH")
    ck.stage("frame")
    dH = exterior_derivative(rd.H)
    C = pontryagin_values(rd)
    for idx, c in C.items():
        r = dH.coefficient(idx) - c
        ck.record(r.is_zero(), lambda idx=idx: {
            "x": ", ".join(field_label(names[i]) for i in idx)}, lambda r=r: str(r))
    report.checks.append(ck.result)
    return report


def build_regular(rd: RegularData, force: bool = False) -> CourantStructure:
    """The standard regular structure on the frame ``(dx.., g.., del_x..)``."""
    if not force:
        rep = check_regular_compat(rd)
        if not rep.passed:
            raise IncompatibleData("regular data fail the compatibility conditions", rep)
    chart = rd.chart
    n, m = chart.dimension, rd.algebra.rank
    G = rd.algebra
    forms, glab, fields = _labels(rd)
    labels = forms + glab + fields
    k = 2 * n + m
    F0, G0, X0 = 0, n, n + m
    pair = [[0] * k for _ in range(k)]
    for i in range(n):
        pair[F0 + i][X0 + i] = pair[X0 + i][F0 + i] = 1
    for a in range(m):
        for b in range(m):
            pair[G0 + a][G0 + b] = normalize(rd.lam * G.pairing[a][b])
    anchor = [VectorField.zero(chart)] * (n + m) + [VectorField.coordinate(chart, i) for i in range(n)]
    zero = chart.zero()
    table = [[zero_section(chart, k) for _ in range(k)] for _ in range(k)]

    def sec(form=None, lie=None):
        c = [zero] * k
        for i, p in enumerate(form or []):
            c[F0 + i] = p
        for a, p in enumerate(lie.coeffs if lie is not None else []):
            c[G0 + a] = p
        return Section(c)

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            h = [rd.H.coefficient((i, j, l)) for l in range(n)]
            table[X0 + i][X0 + j] = sec(h, rd.curvature[i][j])
    for a in range(m):
        for b in range(m):
            table[G0 + a][G0 + b] = sec(p_map(rd, a, b), G.bracket(rd.basis(a), rd.basis(b)))
    for i in range(n):
        for a in range(m):
            q = [c.scale(-2) for c in q_map(rd, i, a)]
            s = sec(q, rd.nabla[i][a])
            table[X0 + i][G0 + a] = s
            table[G0 + a][X0 + i] = -s
    return CourantStructure(chart, labels, pair, anchor, table, name=rd.name or "regular")


def normalization_audit(rd: RegularData, sample: SampleSpec | None = None,
                        candidates=CANDIDATES):
    """The unique ``lam`` among ``candidates`` for which the built structure passes every axiom."""
    passing = []
    for lam in candidates:
        E = build_regular(rd.with_lam(lam), force=True)
        if check_axioms(E, sample).passed:
            passing.append(normalize(lam))
    if not passing:
        raise NoConsistentNormalization("no candidate normalization passes the axioms")
    if len(passing) > 1:
        raise AmbiguousNormalization(
            f"{len(passing)} candidate normalizations pass the axioms", passing)
    return passing[0]


def lie_structure(rd: RegularData) -> CourantStructure:
    """The Lie bundle as a Courant algebroid with zero anchor and pairing ``lam * K``."""
    chart = rd.chart
    G = rd.algebra
    m = G.rank
    pair = [[normalize(rd.lam * G.pairing[a][b]) for b in range(m)] for a in range(m)]
    table = [[G.bracket(rd.basis(a), rd.basis(b)) for b in range(m)] for a in range(m)]
    return CourantStructure(chart, G.labels, pair, [VectorField.zero(chart)] * m, table, name="G")


def flat_to_matched_pair(rd: RegularData) -> MatchedPairData:
    """``(F + F*)_H`` and the Lie bundle, with ``right = nabla`` and ``left = 2Q`` in the form slot."""
    rep = check_regular_compat(rd)
    if not rep.passed:
        raise IncompatibleData("regular data fail the compatibility conditions", rep)
    if not check_flat(rd):
        raise NotFlat("the 4-form C does not vanish")
    chart = rd.chart
    n, m = chart.dimension, rd.algebra.rank
    E1 = make_twisted_standard(chart, rd.H, name="FH")
    E2 = lie_structure(rd)
    zero_g = zero_section(chart, m)
    right = Connection(E1, E2, [list(rd.nabla[i]) for i in range(n)] + [[zero_g] * m for _ in range(n)],
                       name="right")
    zero = chart.zero()
    left_table = []
    for a in range(m):
        row = []
        for i in range(n):
            q = q_map(rd, i, a)
            row.append(Section([zero] * n + [c.scale(2) for c in q]))
        row += [zero_section(chart, 2 * n)] * n
        left_table.append(row)
    left = Connection(E2, E1, left_table, name="left")
    return MatchedPairData(E1, E2, right, left)
