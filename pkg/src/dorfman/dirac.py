"""Dirac structures, their Lie algebroids and matched pairs of Lie algebroids."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import linalg
from .courant import CourantStructure, RankMismatch, Section, StructureError, format_section, zero_section
from .forms import DiffForm, VectorField, lie_bracket
from .matched import Connection, MatchedPairData, matched_sum
from .polynomial import Chart, Polynomial, as_polynomial, random_polynomial
from .scalars import GaussianRational
from .verify import Checker, SampleSpec, VerificationReport


class BadComplementCertificate(ValueError):
    pass


class NotIntegrable(ValueError):
    pass


class NotIsotropic(ValueError):
    pass


def _coefficient_matrix(sections: Sequence[Section]):
    return [list(s.coeffs) for s in sections]


class DiracFrame:
    """A candidate Dirac structure: ``r`` spanning sections of a rank ``2r`` host.

    ``complement`` holds ``r`` further sections; together with ``span`` they
    must form a frame whose coefficient matrix has constant nonzero
    determinant, which makes the pointwise rank of ``span`` manifest.
    """

    def __init__(self, host: CourantStructure, span: Sequence[Section], complement: Sequence[Section],
                 labels: Sequence[str] | None = None, name: str = ""):
        self.host = host
        self.span = tuple(span)
        self.complement = tuple(complement)
        self.name = name
        r = len(self.span)
        if 2 * r != host.rank:
            raise RankMismatch(f"{r} spanning sections in a host of rank {host.rank}")
        if len(self.complement) != r:
            raise BadComplementCertificate(f"complement has {len(self.complement)} sections, need {r}")
        for s in self.span + self.complement:
            if s.rank != host.rank:
                raise RankMismatch("frame sections must be sections of the host")
        self.labels = tuple(labels) if labels is not None else tuple(f"d{i + 1}" for i in range(r))
        if len(self.labels) != r or len(set(self.labels)) != r:
            raise StructureError("Dirac frame labels must be distinct, one per spanning section")
        M = _coefficient_matrix(self.span + self.complement)
        self.determinant = linalg.poly_det(host.chart, M)
        try:
            self._inverse = linalg.poly_inverse(host.chart, M)
        except linalg.SingularMatrix:
            raise BadComplementCertificate(
                f"combined frame has determinant {self.determinant}, not a nonzero constant") from None

    @property
    def rank(self) -> int:
        return len(self.span)

    @property
    def chart(self) -> Chart:
        return self.host.chart

    def section(self, coeffs: Sequence) -> Section:
        """The host section ``sum_i coeffs[i] * span[i]``."""
        out = self.host.zero()
        for f, s in zip(coeffs, self.span):
            f = as_polynomial(self.chart, f)
            if f.terms:
                out = out + s * f
        return out

    def coordinates(self, s: Section) -> Tuple[List[Polynomial], List[Polynomial]]:
        """Coefficients of ``s`` on ``span`` and on ``complement``."""
        k = self.host.rank
        c = []
        for l in range(k):
            acc = self.chart.zero()
            for m in range(k):
                if s.coeffs[m].terms and self._inverse[m][l].terms:
                    acc = acc + s.coeffs[m] * self._inverse[m][l]
            c.append(acc)
        return c[:self.rank], c[self.rank:]

    def random_section(self, rng, max_degree: int) -> Section:
        return self.section([random_polynomial(self.chart, rng, max_degree) if rng.random() < 0.7
                             else self.chart.zero() for _ in range(self.rank)])

    def format(self, s: Section) -> str:
        return self.host.format(s)

    def __repr__(self):
        return f"DiracFrame({self.name!r}, rank={self.rank}, host={self.host.name!r})"


def _is_real_matrix(G) -> bool:
    return not any(isinstance(g, GaussianRational) for row in G for g in row)


def check_dirac(D: DiracFrame, sample: SampleSpec | None = None,
                title: str | None = None) -> VerificationReport:
    """Signature, isotropy, rank certificate and integrability (pairing test)."""
    sample = sample or SampleSpec()
    E = D.host
    report = VerificationReport(title or f"dirac({D.name or 'D'})")
    labels = D.labels

    ck = Checker("signature")
    ck.stage("frame")
    if _is_real_matrix(E.pairing):
        pos, neg, _ = linalg.inertia(E.pairing)
        ck.record(pos == neg, lambda: {"host": E.name}, lambda: f"signature ({pos}, {neg})")
    else:
        # over C every nondegenerate form admits maximal isotropic subspaces of half rank
        ck.record(E.rank % 2 == 0, lambda: {"host": E.name}, lambda: f"odd rank {E.rank}")
    report.checks.append(ck.result)

    ck = Checker("rank")
    ck.stage("frame")
    ck.record(D.determinant.is_constant() and not D.determinant.is_zero(),
              lambda: {"frame": D.name}, lambda: str(D.determinant))
    report.checks.append(ck.result)

    ck = Checker("isotropy")
    ck.stage("frame")
    for i in range(D.rank):
        for j in range(i, D.rank):
            r = E.pairing_apply(D.span[i], D.span[j])
            ck.record(r.is_zero(), lambda i=i, j=j: {"a": labels[i], "b": labels[j]},
                      lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("integrability")
    ck.stage("frame")
    for i in range(D.rank):
        for j in range(D.rank):
            br = E.dorfman(D.span[i], D.span[j])
            for k in range(D.rank):
                r = E.pairing_apply(br, D.span[k])
                ck.record(r.is_zero(), lambda i=i, j=j, k=k: {
                    "a": labels[i], "b": labels[j], "c": labels[k]}, lambda r=r: str(r))
    ck.stage("random")
    rng = sample.rng(f"dirac:{D.name}:{D.rank}")
    for n in range(sample.count):
        a = D.random_section(rng, sample.max_degree)
        b = D.random_section(rng, sample.max_degree)
        br = E.dorfman(a, b)
        for k in range(D.rank):
            r = E.pairing_apply(br, D.span[k])
            ck.record(r.is_zero(), lambda n=n, a=a, b=b, k=k: {
                "sample": str(n), "a": D.format(a), "b": D.format(b), "c": labels[k]},
                lambda r=r: str(r))
    report.checks.append(ck.result)
    return report


def direct_sum_dirac(mp: MatchedPairData, D1: DiracFrame, D2: DiracFrame,
                     host: CourantStructure | None = None) -> DiracFrame:
    """``D1 + D2`` inside the matched sum."""
    host = host or matched_sum(mp)
    z1, z2 = mp.first.zero(), mp.second.zero()
    join = lambda a, b: Section(a.coeffs + b.coeffs)
    span = [join(s, z2) for s in D1.span] + [join(z1, s) for s in D2.span]
    comp = [join(s, z2) for s in D1.complement] + [join(z1, s) for s in D2.complement]
    labels = list(D1.labels) + list(D2.labels)
    return DiracFrame(host, span, comp, labels, name=f"{D1.name}+{D2.name}")


def check_matched_dirac(mp: MatchedPairData, D1: DiracFrame, D2: DiracFrame,
                        sample: SampleSpec | None = None) -> VerificationReport:
    """Both factors Dirac, both membership conditions, and the sum Dirac in the matched sum."""
    sample = sample or SampleSpec()
    if D1.host is not mp.first and D1.host.table != mp.first.table:
        raise StructureError("D1 must live in the first factor")
    if D2.host is not mp.second and D2.host.table != mp.second.table:
        raise StructureError("D2 must live in the second factor")
    report = VerificationReport("matched-dirac")
    report.extend(check_dirac(D1, sample), prefix="first.")
    report.extend(check_dirac(D2, sample), prefix="second.")
    E1, E2 = mp.first, mp.second

    ck = Checker("left_membership")
    ck.stage("frame")
    for p, al in enumerate(D2.span):
        for i, a in enumerate(D1.span):
            v = mp.left.apply(al, a)
            for j, b in enumerate(D1.span):
                r = E1.pairing_apply(v, b)
                ck.record(r.is_zero(), lambda p=p, i=i, j=j: {
                    "alpha": D2.labels[p], "a": D1.labels[i], "b": D1.labels[j]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("right_membership")
    ck.stage("frame")
    for i, a in enumerate(D1.span):
        for p, al in enumerate(D2.span):
            v = mp.right.apply(a, al)
            for q, be in enumerate(D2.span):
                r = E2.pairing_apply(v, be)
                ck.record(r.is_zero(), lambda i=i, p=p, q=q: {
                    "a": D1.labels[i], "alpha": D2.labels[p], "beta": D2.labels[q]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    report.extend(check_dirac(direct_sum_dirac(mp, D1, D2), sample), prefix="sum.")
    return report


# -- Lie algebroids -----------------------------------------------------------------------


class LieAlgebroid:
    """Frame data of a Lie algebroid: anchor rows and an antisymmetric bracket table."""

    def __init__(self, chart: Chart, labels: Sequence[str], anchor: Sequence[VectorField],
                 table: Sequence[Sequence[Section]], name: str = ""):
        self.chart = chart
        self.labels = tuple(labels)
        self.name = name
        k = len(self.labels)
        if len(set(self.labels)) != k:
            raise StructureError("duplicate frame labels")
        if len(anchor) != k or len(table) != k or any(len(row) != k for row in table):
            raise StructureError(f"anchor and bracket table must have {k} rows")
        self.anchor = tuple(anchor)
        self.table = tuple(tuple(row) for row in table)
        for i in range(k):
            for j in range(i, k):
                if self.table[i][j] != -self.table[j][i]:
                    raise StructureError(
                        f"bracket table not antisymmetric at ({self.labels[i]}, {self.labels[j]})")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def zero(self) -> Section:
        return zero_section(self.chart, self.rank)

    def basis(self, i: int) -> Section:
        z, one = self.chart.zero(), self.chart.one()
        return Section([one if k == i else z for k in range(self.rank)])

    def frame(self) -> List[Section]:
        return [self.basis(i) for i in range(self.rank)]

    def format(self, s: Section) -> str:
        return format_section(self.labels, s)

    def anchor_apply(self, u: Section) -> VectorField:
        out = VectorField.zero(self.chart)
        for f, X in zip(u.coeffs, self.anchor):
            if f.terms:
                out = out + X * f
        return out

    def bracket(self, u: Section, v: Section) -> Section:
        X, Y = self.anchor_apply(u), self.anchor_apply(v)
        out = [-Y(f) if f.terms else f for f in u.coeffs]
        out = [a + X(g) if g.terms else a for a, g in zip(out, v.coeffs)]
        for i, f in enumerate(u.coeffs):
            if not f.terms:
                continue
            for j, g in enumerate(v.coeffs):
                if not g.terms:
                    continue
                fg = f * g
                for l, c in enumerate(self.table[i][j].coeffs):
                    if c.terms:
                        out[l] = out[l] + fg * c
        return Section(out)

    def random_section(self, rng, max_degree: int) -> Section:
        return Section(random_polynomial(self.chart, rng, max_degree) if rng.random() < 0.7
                       else self.chart.zero() for _ in range(self.rank))

    def __repr__(self):
        return f"LieAlgebroid({self.name!r}, rank={self.rank})"


def tangent_algebroid(chart: Chart, directions: Sequence[int] | None = None) -> LieAlgebroid:
    from .courant import field_label
    dirs = list(range(chart.dimension)) if directions is None else list(directions)
    k = len(dirs)
    z = zero_section(chart, k)
    return LieAlgebroid(chart, [field_label(chart.names[d]) for d in dirs],
                        [VectorField.coordinate(chart, d) for d in dirs], [[z] * k for _ in range(k)],
                        name="T")


def check_lie_algebroid(A: LieAlgebroid, sample: SampleSpec | None = None,
                        title: str | None = None) -> VerificationReport:
    sample = sample or SampleSpec()
    report = VerificationReport(title or f"lie({A.name or 'A'})")
    frame = A.frame()
    labels = A.labels
    coords = list(zip(A.chart.coords(), A.chart.names))
    rng = sample.rng(f"lie:{A.name}:{A.rank}")
    rnd = [(A.random_section(rng, sample.max_degree), A.random_section(rng, sample.max_degree),
            A.random_section(rng, sample.max_degree)) for _ in range(sample.count)]

    def jac(a, b, c):
        return (A.bracket(a, A.bracket(b, c)) + A.bracket(b, A.bracket(c, a))
                + A.bracket(c, A.bracket(a, b)))

    def anc(a, b):
        return A.anchor_apply(A.bracket(a, b)) - lie_bracket(A.anchor_apply(a), A.anchor_apply(b))

    ck = Checker("jacobi")
    ck.stage("frame")
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            for k in range(j + 1, A.rank):
                r = jac(frame[i], frame[j], frame[k])
                ck.record(r.is_zero(), lambda i=i, j=j, k=k: {
                    "a": labels[i], "b": labels[j], "c": labels[k]}, lambda r=r: A.format(r))
    ck.stage("random")
    for n, (a, b, c) in enumerate(rnd):
        r = jac(a, b, c)
        ck.record(r.is_zero(), lambda n=n, a=a, b=b, c=c: {
            "sample": str(n), "a": A.format(a), "b": A.format(b), "c": A.format(c)},
            lambda r=r: A.format(r))
    report.checks.append(ck.result)

    ck = Checker("anchor_morphism")
    ck.stage("frame")
    for i in range(A.rank):
        for j in range(A.rank):
            r = anc(frame[i], frame[j])
            ck.record(r.is_zero(), lambda i=i, j=j: {"a": labels[i], "b": labels[j]},
                      lambda r=r: str(r))
            for x, xn in coords:
                r = anc(frame[i], frame[j] * x)
                ck.record(r.is_zero(), lambda i=i, j=j, xn=xn: {
                    "a": labels[i], "b": f"{xn}*{labels[j]}"}, lambda r=r: str(r))
    ck.stage("random")
    for n, (a, b, _) in enumerate(rnd):
        r = anc(a, b)
        ck.record(r.is_zero(), lambda n=n, a=a, b=b: {
            "sample": str(n), "a": A.format(a), "b": A.format(b)}, lambda r=r: str(r))
    report.checks.append(ck.result)
    return report


def dirac_to_lie(D: DiracFrame) -> LieAlgebroid:
    """Restrict anchor and bracket to ``D`` and re-express brackets in the ``D``-frame."""
    E = D.host
    table = []
    for i, a in enumerate(D.span):
        row = []
        for j, b in enumerate(D.span):
            coeffs, rest = D.coordinates(E.dorfman(a, b))
            if any(c.terms for c in rest):
                raise NotIntegrable(f"{D.labels[i]} <> {D.labels[j]} leaves the Dirac structure")
            row.append(Section(coeffs))
        table.append(row)
    anchor = [E.anchor_apply(s) for s in D.span]
    try:
        return LieAlgebroid(E.chart, D.labels, anchor, table, name=f"lie({D.name})")
    except StructureError as exc:
        raise NotIntegrable(str(exc)) from None


@dataclass(frozen=True)
class LieMatchedPairData:
    first: LieAlgebroid
    second: LieAlgebroid
    right: Connection   # first acting on second
    left: Connection    # second acting on first


def lie_matched_sum(lmp: LieMatchedPairData, name: str = "") -> LieAlgebroid:
    A, B = lmp.first, lmp.second
    k1, k2 = A.rank, B.rank
    join = lambda a, b: Section(a.coeffs + b.coeffs)
    fa, fb = A.frame(), B.frame()
    za, zb = A.zero(), B.zero()
    k = k1 + k2
    table = [[None] * k for _ in range(k)]
    for i, a in enumerate(fa):
        for j, b in enumerate(fa):
            table[i][j] = join(A.table[i][j], zb)
        for j, be in enumerate(fb):
            table[i][k1 + j] = join(-lmp.left.apply(be, a), lmp.right.apply(a, be))
    for i, al in enumerate(fb):
        for j, b in enumerate(fa):
            table[k1 + i][j] = join(lmp.left.apply(al, b), -lmp.right.apply(b, al))
        for j, be in enumerate(fb):
            table[k1 + i][k1 + j] = join(za, B.table[i][j])
    return LieAlgebroid(A.chart, A.labels + B.labels, A.anchor + B.anchor, table,
                        name=name or f"{A.name}+{B.name}")


def crocodile_residual(lmp: LieMatchedPairData, alpha: Section, b: Section, c: Section) -> Section:
    A = lmp.first
    L, R = lmp.left.apply, lmp.right.apply
    return (L(alpha, A.bracket(b, c)) - A.bracket(L(alpha, b), c) - A.bracket(b, L(alpha, c))
            - L(R(c, alpha), b) + L(R(b, alpha), c))


def alligator_residual(lmp: LieMatchedPairData, a: Section, beta: Section, gamma: Section) -> Section:
    B = lmp.second
    L, R = lmp.left.apply, lmp.right.apply
    return (R(a, B.bracket(beta, gamma)) - B.bracket(R(a, beta), gamma) - B.bracket(beta, R(a, gamma))
            - R(L(gamma, a), beta) + R(L(beta, a), gamma))


def check_lie_matched_pair(lmp: LieMatchedPairData, sample: SampleSpec | None = None) -> VerificationReport:
    """Flatness of both connections, the two compatibility conditions, and the sum axioms."""
    sample = sample or SampleSpec()
    A, B = lmp.first, lmp.second
    fa, fb = A.frame(), B.frame()
    la, lb = A.labels, B.labels
    report = VerificationReport("lie-matched-pair")

    for name, nab, dom, act, dl, al in (("flat_right", lmp.right, fa, fb, la, lb),
                                         ("flat_left", lmp.left, fb, fa, lb, la)):
        ck = Checker(name)
        ck.stage("frame")
        for i in range(len(dom)):
            for j in range(i + 1, len(dom)):
                for p, v in enumerate(act):
                    r = nab.curvature_operator(dom[i], dom[j], v)
                    ck.record(r.is_zero(), lambda i=i, j=j, p=p, dl=dl, al=al: {
                        "a": dl[i], "b": dl[j], "v": al[p]}, lambda r=r: str(r.coeffs))
        report.checks.append(ck.result)

    rng = sample.rng(f"lie-matched:{A.rank}:{B.rank}")
    rnd = [(A.random_section(rng, sample.max_degree), A.random_section(rng, sample.max_degree),
            B.random_section(rng, sample.max_degree), B.random_section(rng, sample.max_degree))
           for _ in range(sample.count)]

    ck = Checker("crocodile")
    ck.stage("frame")
    for p, al in enumerate(fb):
        for i, b in enumerate(fa):
            for j, c in enumerate(fa):
                r = crocodile_residual(lmp, al, b, c)
                ck.record(r.is_zero(), lambda p=p, i=i, j=j: {
                    "alpha": lb[p], "b": la[i], "c": la[j]}, lambda r=r: A.format(r))
    ck.stage("random")
    for n, (b, c, al, _) in enumerate(rnd):
        r = crocodile_residual(lmp, al, b, c)
        ck.record(r.is_zero(), lambda n=n, al=al, b=b, c=c: {
            "sample": str(n), "alpha": B.format(al), "b": A.format(b), "c": A.format(c)},
            lambda r=r: A.format(r))
    report.checks.append(ck.result)

    ck = Checker("alligator")
    ck.stage("frame")
    for i, a in enumerate(fa):
        for p, be in enumerate(fb):
            for q, ga in enumerate(fb):
                r = alligator_residual(lmp, a, be, ga)
                ck.record(r.is_zero(), lambda i=i, p=p, q=q: {
                    "a": la[i], "beta": lb[p], "gamma": lb[q]}, lambda r=r: B.format(r))
    ck.stage("random")
    for n, (a, _, be, ga) in enumerate(rnd):
        r = alligator_residual(lmp, a, be, ga)
        ck.record(r.is_zero(), lambda n=n, a=a, be=be, ga=ga: {
            "sample": str(n), "a": A.format(a), "beta": B.format(be), "gamma": B.format(ga)},
            lambda r=r: B.format(r))
    report.checks.append(ck.result)

    report.extend(check_lie_algebroid(lie_matched_sum(lmp), sample), prefix="sum.")
    return report


def restricted_lie_pair(mp: MatchedPairData, D1: DiracFrame, D2: DiracFrame) -> LieMatchedPairData:
    """Lie algebroids of ``D1``, ``D2`` with the matched-pair connections restricted to them."""
    A, B = dirac_to_lie(D1), dirac_to_lie(D2)

    def restrict(nab, dom, act, Dact, name):
        table = []
        for s in dom.span:
            row = []
            for t in act.span:
                coeffs, rest = Dact.coordinates(nab.apply(s, t))
                if any(c.terms for c in rest):
                    raise NotIntegrable(f"{name} connection does not preserve {Dact.name or 'D'}")
                row.append(Section(coeffs))
            table.append(row)
        return table

    right = Connection(A, B, restrict(mp.right, D1, D2, D2, "right"), name="right")
    left = Connection(B, A, restrict(mp.left, D2, D1, D1, "left"), name="left")
    return LieMatchedPairData(A, B, right, left)


# -- graphs ---------------------------------------------------------------------------------


def _assert_isotropic(D: DiracFrame):
    for i in range(D.rank):
        for j in range(i, D.rank):
            if not D.host.pairing_apply(D.span[i], D.span[j]).is_zero():
                raise NotIsotropic(f"graph frame is not isotropic at ({D.labels[i]}, {D.labels[j]})")
    return D


def _standard_dims(E: CourantStructure):
    n = E.chart.dimension
    if E.rank < 2 * n:
        raise RankMismatch("host does not contain a full T + T* block")
    return n


def graph_of_two_form(E: CourantStructure, omega: DiffForm, offset: int = 0,
                      labels: Sequence[str] | None = None, name: str = "graph(omega)") -> DiracFrame:
    """``{X + i_X omega}`` in a standard structure whose frame starts with ``del_x.., dx..``.

    ``offset`` locates the ``T + T*`` block inside a larger host; the rest
    of the host frame goes to the complement.
    """
    n = E.chart.dimension
    if omega.degree != 2:
        raise ValueError("omega must be a 2-form")
    chart = E.chart
    span, comp = [], []
    for i in range(n):
        c = [chart.zero()] * E.rank
        c[offset + i] = chart.one()
        for j in range(n):
            c[offset + n + j] = omega.coefficient((i, j))
        span.append(Section(c))
        comp.append(E.basis(offset + n + i))
    labels = labels or [f"gr_{x}" for x in chart.names]
    return _assert_isotropic(DiracFrame(E, span, comp, labels, name=name))


def graph_of_bivector(E: CourantStructure, pi: Sequence[Sequence], labels: Sequence[str] | None = None,
                      name: str = "graph(pi)") -> DiracFrame:
    """``{pi^#(alpha) + alpha}`` with ``pi^#(alpha) = pi(alpha, -)``; ``pi[i][j] = pi(dx_i, dx_j)``."""
    n = _standard_dims(E)
    chart = E.chart
    P = [[as_polynomial(chart, p) for p in row] for row in pi]
    for i in range(n):
        for j in range(n):
            if P[i][j] != -P[j][i]:
                raise ValueError("bivector matrix must be antisymmetric")
    span, comp = [], []
    for i in range(n):
        c = [chart.zero()] * E.rank
        for j in range(n):
            c[j] = P[i][j]
        c[n + i] = chart.one()
        span.append(Section(c))
        comp.append(E.basis(i))
    labels = labels or [f"gr_d{x}" for x in chart.names]
    return _assert_isotropic(DiracFrame(E, span, comp, labels, name=name))


def graph_of_pairing_map(E: CourantStructure, L: Sequence[Sequence], v_labels: Sequence[str],
                         dual_labels: Sequence[str], labels: Sequence[str] | None = None,
                         name: str = "graph(L)") -> DiracFrame:
    """``{v + L^#(v)}`` in ``V + V*`` with ``L^#(v) = L(v, -)`` and ``L`` antisymmetric."""
    chart = E.chart
    m = len(v_labels)
    M = [[as_polynomial(chart, p) for p in row] for row in L]
    if len(M) != m or any(len(r) != m for r in M):
        raise RankMismatch(f"L must be {m}x{m}")
    for a in range(m):
        for b in range(m):
            if M[a][b] != -M[b][a]:
                raise ValueError("L must be antisymmetric")
    span, comp = [], []
    for a in range(m):
        s = E.basis(v_labels[a])
        for b in range(m):
            if M[a][b].terms:
                s = s + E.basis(dual_labels[b]) * M[a][b]
        span.append(s)
        comp.append(E.basis(dual_labels[a]))
    labels = labels or [f"gr_{l}" for l in v_labels]
    return _assert_isotropic(DiracFrame(E, span, comp, labels, name=name))


def port_hamiltonian_graph(E: CourantStructure, omega: DiffForm, A: Sequence[Sequence],
                           e_labels: Sequence[str], f_labels: Sequence[str],
                           name: str = "port") -> DiracFrame:
    """Graph of ``TM + E* -> T*M + E``, block matrix ``[[w#, -(A w#)*], [A w#, 0]]``.

    The host is the matched sum ``CM + (E + E*)`` with frame ``del_x.., dx..``
    first; ``A[a][i]`` is the ``e_a``-coefficient of ``A(dx_i)``.
    """
    chart = E.chart
    n = chart.dimension
    m = len(e_labels)
    A = [[as_polynomial(chart, p) for p in row] for row in A]
    if len(A) != m or any(len(r) != n for r in A):
        raise RankMismatch(f"port map must be {m}x{n}")
    w = [[omega.coefficient((i, j)) for j in range(n)] for i in range(n)]
    # B = A o w#:  B(del_i) = sum_j w_ij A(dx_j)
    B = [[sum((w[i][j] * A[a][j] for j in range(n)), chart.zero()) for i in range(n)] for a in range(m)]
    eidx = [E.index(l) for l in e_labels]
    fidx = [E.index(l) for l in f_labels]
    span, comp, labels = [], [], []
    for i in range(n):
        c = [chart.zero()] * E.rank
        c[i] = chart.one()
        for j in range(n):
            c[n + j] = w[i][j]
        for a in range(m):
            c[eidx[a]] = B[a][i]
        span.append(Section(c))
        comp.append(E.basis(n + i))
        labels.append(f"gr_{chart.names[i]}")
    for a in range(m):
        c = [chart.zero()] * E.rank
        c[fidx[a]] = chart.one()
        for i in range(n):
            c[n + i] = -B[a][i]
        span.append(Section(c))
        comp.append(E.basis(eidx[a]))
        labels.append(f"gr_{f_labels[a]}")
    return _assert_isotropic(DiracFrame(E, span, comp, labels, name=name))
