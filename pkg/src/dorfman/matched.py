"""Matched pairs of Courant algebroids.

Notation used throughout: ``E1``/``E2`` are the two factors, ``right`` is
the E1-connection on E2 and ``left`` the E2-connection on E1. Elements of
E1 are written ``a, b``; elements of E2 ``alpha, beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .courant import CourantStructure, RankMismatch, Section, StructureError, zero_section
from .polynomial import Chart, Polynomial, random_polynomial
from . import linalg
from .verify import Checker, SampleSpec, VerificationReport, check_axioms

HALF = Fraction(1, 2)


class NotOrthogonal(ValueError):
    pass


class DegenerateRestriction(ValueError):
    pass


class Connection:
    """An anchored-bundle connection given on frame pairs.

    ``table[i][j]`` is ``nabla_{e_i} v_j``. The domain may be any object with
    ``chart``, ``rank``, ``anchor_apply`` and ``bracket`` (Courant structures
    and Lie algebroids); the acted bundle only needs ``chart`` and ``rank``.
    """

    def __init__(self, domain, acted, table: Sequence[Sequence[Section]], name: str = ""):
        domain.chart.check(acted.chart)
        self.domain = domain
        self.acted = acted
        self.name = name
        if len(table) != domain.rank or any(len(row) != acted.rank for row in table):
            raise StructureError(f"connection table must be {domain.rank}x{acted.rank}")
        for row in table:
            for s in row:
                if s.rank != acted.rank:
                    raise StructureError("connection values must be sections of the acted bundle")
        self.table = tuple(tuple(row) for row in table)

    @classmethod
    def trivial(cls, domain, acted, name: str = "") -> "Connection":
        z = zero_section(domain.chart, acted.rank)
        return cls(domain, acted, [[z] * acted.rank for _ in range(domain.rank)], name=name)

    @property
    def chart(self) -> Chart:
        return self.domain.chart

    def apply(self, psi: Section, v: Section) -> Section:
        """``nabla_psi v``: C-linear in ``psi``, Leibniz in ``v`` along the anchor."""
        if psi.rank != self.domain.rank or v.rank != self.acted.rank:
            raise RankMismatch("connection applied to sections of the wrong bundles")
        chart = self.chart
        out = [chart.zero()] * self.acted.rank
        X = self.domain.anchor_apply(psi)
        if not X.is_zero():
            out = [X(g) if g.terms else g for g in v.coeffs]
        for i, f in enumerate(psi.coeffs):
            if not f.terms:
                continue
            row = self.table[i]
            for j, g in enumerate(v.coeffs):
                if not g.terms:
                    continue
                entry = row[j]
                fg = None
                for l, c in enumerate(entry.coeffs):
                    if c.terms:
                        if fg is None:
                            fg = f * g
                        out[l] = out[l] + fg * c
        return Section(out)

    __call__ = apply

    def curvature_operator(self, a: Section, b: Section, v: Section) -> Section:
        """``R(a,b)v = nabla_a nabla_b v - nabla_b nabla_a v - nabla_{a.b} v``."""
        return (self.apply(a, self.apply(b, v)) - self.apply(b, self.apply(a, v))
                - self.apply(self.domain.bracket(a, b), v))

    def with_table(self, table) -> "Connection":
        return Connection(self.domain, self.acted, table, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        return self.table == other.table

    def __repr__(self):
        return f"Connection({self.name!r}, {self.domain.rank}x{self.acted.rank})"


def connection_apply(nabla: Connection, psi: Section, v: Section) -> Section:
    return nabla.apply(psi, v)


@dataclass(frozen=True)
class CurvatureTensor:
    """``values[a][b][c][d] = <R(e_a, e_b) v_c, v_d>`` on frame quadruples."""

    values: Tuple

    def is_zero(self) -> bool:
        return all(p.is_zero() for x in self.values for y in x for z in y for p in z)

    def __getitem__(self, key):
        a, b, c, d = key
        return self.values[a][b][c][d]


def curvature(nabla: Connection) -> CurvatureTensor:
    """Pair the curvature operator with the acted bundle's metric."""
    dom = nabla.domain.frame()
    act = nabla.acted.frame()
    vals = []
    for a in dom:
        row_a = []
        for b in dom:
            row_b = []
            for v in act:
                Rv = nabla.curvature_operator(a, b, v)
                row_b.append(tuple(nabla.acted.pairing_apply(Rv, w) for w in act))
            row_a.append(tuple(row_b))
        vals.append(tuple(row_a))
    return CurvatureTensor(tuple(vals))


@dataclass(frozen=True)
class MatchedPairData:
    first: CourantStructure
    second: CourantStructure
    right: Connection   # E1 acting on E2
    left: Connection    # E2 acting on E1

    def __post_init__(self):
        self.first.chart.check(self.second.chart)
        if self.right.domain.rank != self.first.rank or self.right.acted.rank != self.second.rank:
            raise StructureError("right connection must be an E1-connection on E2")
        if self.left.domain.rank != self.second.rank or self.left.acted.rank != self.first.rank:
            raise StructureError("left connection must be an E2-connection on E1")

    @property
    def chart(self) -> Chart:
        return self.first.chart


# -- mixed maps -----------------------------------------------------------------------------


def omega_map(mp: MatchedPairData, a: Section, b: Section) -> Section:
    """``Omega(a, b)`` in E2: ``<gamma, Omega(a,b)>_2 = 1/2(<left_gamma a, b>_1 - <a, left_gamma b>_1)``."""
    E1, E2 = mp.first, mp.second
    w = []
    for g in E2.frame():
        w.append((E1.pairing_apply(mp.left.apply(g, a), b)
                  - E1.pairing_apply(a, mp.left.apply(g, b))).scale(HALF))
    return E2.dual_section(w)


def mho_map(mp: MatchedPairData, alpha: Section, beta: Section) -> Section:
    """``Mho(alpha, beta)`` in E1, the mirror of :func:`omega_map` built from ``right``.

    The mixed term written ``Omega(v, v')`` in the flat-connection example is
    this map.
    """
    E1, E2 = mp.first, mp.second
    w = []
    for c in E1.frame():
        w.append((E2.pairing_apply(mp.right.apply(c, alpha), beta)
                  - E2.pairing_apply(alpha, mp.right.apply(c, beta))).scale(HALF))
    return E1.dual_section(w)


def _join(a: Section, alpha: Section) -> Section:
    return Section(a.coeffs + alpha.coeffs)


def _parts(mp: MatchedPairData, s: Section) -> Tuple[Section, Section]:
    k = mp.first.rank
    return Section(s.coeffs[:k]), Section(s.coeffs[k:])


def full_bracket(mp: MatchedPairData, phi: Section, psi: Section) -> Section:
    """The matched-sum bracket evaluated directly on arbitrary sections."""
    E1, E2 = mp.first, mp.second
    a, alpha = _parts(mp, phi)
    b, beta = _parts(mp, psi)
    p2 = E2.pairing_apply(alpha, beta).scale(HALF)
    p1 = E1.pairing_apply(a, b).scale(HALF)
    first = (E1.dorfman(a, b) + mp.left.apply(alpha, b) - mp.left.apply(beta, a)
             + mho_map(mp, alpha, beta) + E1.d_operator(p2))
    second = (E2.dorfman(alpha, beta) + mp.right.apply(a, beta) - mp.right.apply(b, alpha)
              + omega_map(mp, a, b) + E2.d_operator(p1))
    return _join(first, second)


def matched_sum(mp: MatchedPairData, name: str = "") -> CourantStructure:
    """Direct sum with block pairing, summed anchor and the full bracket on frame pairs."""
    E1, E2 = mp.first, mp.second
    if E2.rank == 0:
        return E1
    if E1.rank == 0:
        return E2
    chart = mp.chart
    k1, k2 = E1.rank, E2.rank
    k = k1 + k2
    pair = [[0] * k for _ in range(k)]
    for i in range(k1):
        for j in range(k1):
            pair[i][j] = E1.pairing[i][j]
    for i in range(k2):
        for j in range(k2):
            pair[k1 + i][k1 + j] = E2.pairing[i][j]
    anchor = list(E1.anchor) + list(E2.anchor)
    f1, f2 = E1.frame(), E2.frame()
    table: List[List[Section]] = [[None] * k for _ in range(k)]
    for i, a in enumerate(f1):
        for j, b in enumerate(f1):
            table[i][j] = _join(E1.dorfman(a, b),
                                omega_map(mp, a, b) + E2.d_operator(E1.pairing_apply(a, b).scale(HALF)))
        for j, beta in enumerate(f2):
            table[i][k1 + j] = _join(-mp.left.apply(beta, a), mp.right.apply(a, beta))
    for i, alpha in enumerate(f2):
        for j, b in enumerate(f1):
            table[k1 + i][j] = _join(mp.left.apply(alpha, b), -mp.right.apply(b, alpha))
        for j, beta in enumerate(f2):
            table[k1 + i][k1 + j] = _join(
                mho_map(mp, alpha, beta) + E1.d_operator(E2.pairing_apply(alpha, beta).scale(HALF)),
                E2.dorfman(alpha, beta))
    labels = list(E1.labels) + list(E2.labels)
    return CourantStructure(chart, labels, pair, anchor, table,
                            name=name or f"{E1.name}+{E2.name}")


def embed_first(mp: MatchedPairData, a: Section) -> Section:
    return _join(a, mp.second.zero())


def embed_second(mp: MatchedPairData, alpha: Section) -> Section:
    return _join(mp.first.zero(), alpha)


# -- the five conditions --------------------------------------------------------------------


def derof_br1_residual(mp: MatchedPairData, alpha: Section, a1: Section, a2: Section) -> Section:
    E1, E2 = mp.first, mp.second
    L, R = mp.left.apply, mp.right.apply
    lhs = (L(alpha, E1.dorfman(a1, a2)) - E1.dorfman(L(alpha, a1), a2) - E1.dorfman(a1, L(alpha, a2))
           - L(R(a2, alpha), a1) + L(R(a1, alpha), a2))
    inner = omega_map(mp, a1, a2) + E2.d_operator(E1.pairing_apply(a1, a2).scale(HALF))
    rhs = -mho_map(mp, alpha, inner) - E1.d_operator(E2.pairing_apply(alpha, inner).scale(HALF))
    return lhs - rhs


def derof_br2_residual(mp: MatchedPairData, a: Section, alpha1: Section, alpha2: Section) -> Section:
    E1, E2 = mp.first, mp.second
    L, R = mp.left.apply, mp.right.apply
    lhs = (R(a, E2.dorfman(alpha1, alpha2)) - E2.dorfman(R(a, alpha1), alpha2)
           - E2.dorfman(alpha1, R(a, alpha2)) - R(L(alpha2, a), alpha1) + R(L(alpha1, a), alpha2))
    inner = mho_map(mp, alpha1, alpha2) + E1.d_operator(E2.pairing_apply(alpha1, alpha2).scale(HALF))
    rhs = -omega_map(mp, a, inner) - E2.d_operator(E1.pairing_apply(a, inner).scale(HALF))
    return lhs - rhs


def curvature_compatibility(mp: MatchedPairData, a: Section, b: Section, alpha: Section,
                            beta: Section) -> Polynomial:
    """``<R_right(a,b) alpha, beta>_2 + <R_left(alpha,beta) a, b>_1``."""
    return (mp.second.pairing_apply(mp.right.curvature_operator(a, b, alpha), beta)
            + mp.first.pairing_apply(mp.left.curvature_operator(alpha, beta, a), b))


def cyclic_left(mp: MatchedPairData, a1: Section, a2: Section, a3: Section) -> Section:
    L = mp.left.apply
    return (L(omega_map(mp, a1, a2), a3) + L(omega_map(mp, a2, a3), a1)
            + L(omega_map(mp, a3, a1), a2))


def cyclic_right(mp: MatchedPairData, x1: Section, x2: Section, x3: Section) -> Section:
    R = mp.right.apply
    return (R(mho_map(mp, x1, x2), x3) + R(mho_map(mp, x2, x3), x1)
            + R(mho_map(mp, x3, x1), x2))


def check_matched_pair(mp: MatchedPairData, sample: SampleSpec | None = None,
                       title: str | None = None) -> VerificationReport:
    """Metric preservation, D-flatness and the five Jacobi-equivalent conditions."""
    sample = sample or SampleSpec()
    E1, E2 = mp.first, mp.second
    f1, f2 = E1.frame(), E2.frame()
    l1, l2 = E1.labels, E2.labels
    report = VerificationReport(title or "matched-pair")
    coords = list(zip(mp.chart.coords(), mp.chart.names))
    rng = sample.rng(f"matched:{E1.rank}:{E2.rank}")
    rnd = [(E1.random_section(rng, sample.max_degree), E1.random_section(rng, sample.max_degree),
            E1.random_section(rng, sample.max_degree), E2.random_section(rng, sample.max_degree),
            E2.random_section(rng, sample.max_degree), E2.random_section(rng, sample.max_degree))
           for _ in range(sample.count)]

    ck = Checker("metric_left")
    ck.stage("frame")
    for g, gl in zip(f2, l2):
        X = E2.anchor_apply(g)
        for i, a in enumerate(f1):
            for j, b in enumerate(f1):
                r = (X(E1.pairing_apply(a, b)) - E1.pairing_apply(mp.left.apply(g, a), b)
                     - E1.pairing_apply(a, mp.left.apply(g, b)))
                ck.record(r.is_zero(), lambda gl=gl, i=i, j=j: {
                    "alpha": gl, "a": l1[i], "b": l1[j]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("metric_right")
    ck.stage("frame")
    for c, cl in zip(f1, l1):
        X = E1.anchor_apply(c)
        for i, al in enumerate(f2):
            for j, be in enumerate(f2):
                r = (X(E2.pairing_apply(al, be)) - E2.pairing_apply(mp.right.apply(c, al), be)
                     - E2.pairing_apply(al, mp.right.apply(c, be)))
                ck.record(r.is_zero(), lambda cl=cl, i=i, j=j: {
                    "a": cl, "alpha": l2[i], "beta": l2[j]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("d_flat")
    ck.stage("frame")
    for x, xn in coords:
        D1x, D2x = E1.d_operator(x), E2.d_operator(x)
        for j, be in enumerate(f2):
            r = mp.right.apply(D1x, be)
            ck.record(r.is_zero(), lambda xn=xn, j=j: {"f": xn, "beta": l2[j], "side": "right"},
                      lambda r=r: E2.format(r))
        for j, b in enumerate(f1):
            r = mp.left.apply(D2x, b)
            ck.record(r.is_zero(), lambda xn=xn, j=j: {"f": xn, "b": l1[j], "side": "left"},
                      lambda r=r: E1.format(r))
    report.checks.append(ck.result)

    ck = Checker("derof_br1")
    ck.stage("frame")
    for g, gl in zip(f2, l2):
        for i, a1 in enumerate(f1):
            for j, a2 in enumerate(f1):
                r = derof_br1_residual(mp, g, a1, a2)
                ck.record(r.is_zero(), lambda gl=gl, i=i, j=j: {
                    "alpha": gl, "a1": l1[i], "a2": l1[j]}, lambda r=r: E1.format(r))
    ck.stage("random")
    for n, (a1, a2, _, al, _, _) in enumerate(rnd):
        r = derof_br1_residual(mp, al, a1, a2)
        ck.record(r.is_zero(), lambda n=n, al=al, a1=a1, a2=a2: {
            "sample": str(n), "alpha": E2.format(al), "a1": E1.format(a1), "a2": E1.format(a2)},
            lambda r=r: E1.format(r))
    report.checks.append(ck.result)

    ck = Checker("derof_br2")
    ck.stage("frame")
    for c, cl in zip(f1, l1):
        for i, al1 in enumerate(f2):
            for j, al2 in enumerate(f2):
                r = derof_br2_residual(mp, c, al1, al2)
                ck.record(r.is_zero(), lambda cl=cl, i=i, j=j: {
                    "a": cl, "alpha1": l2[i], "alpha2": l2[j]}, lambda r=r: E2.format(r))
    ck.stage("random")
    for n, (a, _, _, al1, al2, _) in enumerate(rnd):
        r = derof_br2_residual(mp, a, al1, al2)
        ck.record(r.is_zero(), lambda n=n, a=a, al1=al1, al2=al2: {
            "sample": str(n), "a": E1.format(a), "alpha1": E2.format(al1),
            "alpha2": E2.format(al2)}, lambda r=r: E2.format(r))
    report.checks.append(ck.result)

    ck = Checker("curv_compat")
    ck.stage("frame")
    for i, a in enumerate(f1):
        for j, b in enumerate(f1):
            for p, al in enumerate(f2):
                for q, be in enumerate(f2):
                    r = curvature_compatibility(mp, a, b, al, be)
                    ck.record(r.is_zero(), lambda i=i, j=j, p=p, q=q: {
                        "a": l1[i], "b": l1[j], "alpha": l2[p], "beta": l2[q]}, lambda r=r: str(r))
    report.checks.append(ck.result)

    ck = Checker("cyclic_left")
    ck.stage("frame")
    for i, a1 in enumerate(f1):
        for j, a2 in enumerate(f1):
            for m, a3 in enumerate(f1):
                r = cyclic_left(mp, a1, a2, a3)
                ck.record(r.is_zero(), lambda i=i, j=j, m=m: {
                    "a1": l1[i], "a2": l1[j], "a3": l1[m]}, lambda r=r: E1.format(r))
    report.checks.append(ck.result)

    ck = Checker("cyclic_right")
    ck.stage("frame")
    for i, x1 in enumerate(f2):
        for j, x2 in enumerate(f2):
            for m, x3 in enumerate(f2):
                r = cyclic_right(mp, x1, x2, x3)
                ck.record(r.is_zero(), lambda i=i, j=j, m=m: {
                    "alpha1": l2[i], "alpha2": l2[j], "alpha3": l2[m]}, lambda r=r: E2.format(r))
    report.checks.append(ck.result)
    return report


# -- splitting a Courant algebroid ----------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    first: CourantStructure
    second: CourantStructure
    right: Connection
    left: Connection
    omega: Tuple[Tuple[Section, ...], ...]   # Omega on E1 frame pairs, values in E2
    mho: Tuple[Tuple[Section, ...], ...]     # Mho on E2 frame pairs, values in E1

    @property
    def pair(self) -> MatchedPairData:
        return MatchedPairData(self.first, self.second, self.right, self.left)


def _restricted_pairing(E: CourantStructure, frame: Sequence[Section]):
    out = []
    for s in frame:
        row = []
        for t in frame:
            p = E.pairing_apply(s, t)
            if not p.is_constant():
                raise DegenerateRestriction("restricted pairing is not constant")
            row.append(p.constant_term())
        out.append(row)
    return out


def split(E: CourantStructure, first: Sequence[Section], second: Sequence[Section],
          first_labels: Sequence[str] | None = None, second_labels: Sequence[str] | None = None,
          ) -> SplitResult:
    """Decompose ``E = E1 + E2`` along two mutually orthogonal frames."""
    first, second = list(first), list(second)
    if len(first) + len(second) != E.rank:
        raise DegenerateRestriction(
            f"frames have {len(first)} + {len(second)} elements, structure has rank {E.rank}")
    for i, s in enumerate(first):
        for j, t in enumerate(second):
            if not E.pairing_apply(s, t).is_zero():
                raise NotOrthogonal(f"first[{i}] and second[{j}] are not orthogonal")
    G1 = _restricted_pairing(E, first)
    G2 = _restricted_pairing(E, second)
    try:
        G1inv = linalg.invert(G1)
        G2inv = linalg.invert(G2)
    except linalg.SingularMatrix:
        raise DegenerateRestriction("restricted pairing is degenerate") from None
    chart = E.chart

    def coords_in(frame, Ginv, s: Section) -> Section:
        w = [E.pairing_apply(s, t) for t in frame]
        out = []
        for row in Ginv:
            acc = chart.zero()
            for g, x in zip(row, w):
                if g != 0 and x.terms:
                    acc = acc + x.scale(g)
            out.append(acc)
        return Section(out)

    def pr1(s):
        return coords_in(first, G1inv, s)

    def pr2(s):
        return coords_in(second, G2inv, s)

    labels1 = list(first_labels) if first_labels else [f"a{i + 1}" for i in range(len(first))]
    labels2 = list(second_labels) if second_labels else [f"b{i + 1}" for i in range(len(second))]
    anchor1 = [E.anchor_apply(s) for s in first]
    anchor2 = [E.anchor_apply(s) for s in second]
    table1 = [[pr1(E.dorfman(s, t)) for t in first] for s in first]
    table2 = [[pr2(E.dorfman(s, t)) for t in second] for s in second]
    E1 = CourantStructure(chart, labels1, G1, anchor1, table1, name=f"{E.name}/1")
    E2 = CourantStructure(chart, labels2, G2, anchor2, table2, name=f"{E.name}/2")
    right = Connection(E1, E2, [[pr2(E.dorfman(s, t)) for t in second] for s in first], name="right")
    left = Connection(E2, E1, [[pr1(E.dorfman(t, s)) for s in first] for t in second], name="left")
    omega = tuple(tuple(pr2(E.dorfman(s, t) - E.dorfman(t, s)) * HALF for t in first) for s in first)
    mho = tuple(tuple(pr1(E.dorfman(s, t) - E.dorfman(t, s)) * HALF for t in second) for s in second)
    return SplitResult(E1, E2, right, left, omega, mho)


def split_by_labels(E: CourantStructure, first: Sequence[str], second: Sequence[str]) -> SplitResult:
    return split(E, [E.basis(l) for l in first], [E.basis(l) for l in second],
                 first_labels=first, second_labels=second)


# -- comparisons ----------------------------------------------------------------------------


def structure_differences(E: CourantStructure, F: CourantStructure, limit: int = 1) -> List[dict]:
    """Entrywise differences between two structures, matching frames by label."""
    diffs: List[dict] = []
    if set(E.labels) != set(F.labels) or E.rank != F.rank:
        return [{"what": "frame", "left": ",".join(E.labels), "right": ",".join(F.labels)}]
    perm = [F.index(l) for l in E.labels]

    def move(s: Section) -> Section:
        # express an F-section in E's frame order
        return Section(s.coeffs[p] for p in perm)

    for i, a in enumerate(E.labels):
        for j, b in enumerate(E.labels):
            if E.pairing[i][j] != F.pairing[perm[i]][perm[j]]:
                diffs.append({"what": "pairing", "a": a, "b": b})
        if E.anchor[i] != F.anchor[perm[i]]:
            diffs.append({"what": "anchor", "a": a})
    for i, a in enumerate(E.labels):
        for j, b in enumerate(E.labels):
            d = E.table[i][j] - move(F.table[perm[i]][perm[j]])
            if not d.is_zero():
                diffs.append({"what": "bracket", "a": a, "b": b, "difference": E.format(d)})
                if len(diffs) >= limit:
                    return diffs
    return diffs[:limit] if limit else diffs


def same_structure(E: CourantStructure, F: CourantStructure) -> bool:
    return not structure_differences(E, F)


def matched_sum_report(mp: MatchedPairData, sample: SampleSpec | None = None) -> VerificationReport:
    return check_axioms(matched_sum(mp), sample, title="axioms(matched sum)")


# -- candidate generation -------------------------------------------------------------------


def skew_generator(G: Sequence[Sequence], K: Sequence[Sequence[Polynomial]]) -> List[List[Polynomial]]:
    """``G^{-1} K`` for antisymmetric ``K``: an element of o(G) acting on coefficient columns.

    The returned matrix ``A`` satisfies ``A^T G + G A = 0``; ``A[l][j]`` is the
    ``l``-th coefficient of the image of the ``j``-th frame element.
    """
    Ginv = linalg.invert(G)
    n = len(G)
    chart = K[0][0].chart if n else None
    out = [[chart.zero() for _ in range(n)] for _ in range(n)]
    for l in range(n):
        for j in range(n):
            acc = chart.zero()
            for m in range(n):
                if Ginv[l][m] != 0 and K[m][j].terms:
                    acc = acc + K[m][j].scale(Ginv[l][m])
            out[l][j] = acc
    return out


def anchored_connection(domain, acted: CourantStructure,
                        gammas: Sequence[Sequence[Sequence[Polynomial]]], name: str = "") -> Connection:
    """``nabla_e v = rho(e)(v) + sum_k rho(e)^k Gamma_k v``: a connection pulled back along the anchor.

    ``gammas[k]`` is a matrix acting on coefficient columns of the acted
    frame, one per coordinate direction. Since ``rho(D f) = 0`` the result
    kills ``D f``; if every ``Gamma_k`` lies in o(G) it preserves the metric.
    """
    chart = domain.chart
    k = acted.rank
    table = []
    for X in domain.anchor:
        row = []
        for j in range(k):
            coeffs = [chart.zero()] * k
            for d, c in enumerate(X.coeffs):
                if not c.terms:
                    continue
                for l in range(k):
                    g = gammas[d][l][j]
                    if g.terms:
                        coeffs[l] = coeffs[l] + c * g
            row.append(Section(coeffs))
        table.append(row)
    return Connection(domain, acted, table, name=name)


def tensorial_connection(domain, acted: CourantStructure,
                         matrices: Sequence[Sequence[Sequence[Polynomial]]], name: str = "") -> Connection:
    """Connection with ``nabla_{e_i} = matrices[i]``; only a connection when ``domain`` has zero anchor."""
    table = [[Section(M[l][j] for l in range(acted.rank)) for j in range(acted.rank)] for M in matrices]
    return Connection(domain, acted, table, name=name)


def _random_antisymmetric(chart: Chart, n: int, rng, max_degree: int, density: float):
    K = [[chart.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                p = random_polynomial(chart, rng, max_degree, max_terms=2)
                K[i][j] = p
                K[j][i] = -p
    return K


def random_candidate(E1: CourantStructure, E2: CourantStructure, rng, max_degree: int = 1,
                     density: float = 0.3) -> Tuple[MatchedPairData, str]:
    """A random pair satisfying the metric and D-flatness preconditions.

    The right connection is pulled back along the anchor of ``E1`` with
    o(G2)-valued coefficients: either the flat form ``dh * S`` or a random
    one. When ``E2`` has zero anchor, the left connection may be a random
    tensorial o(G1)-valued map. Returns the pair and a short description.
    """
    chart = E1.chart
    n = chart.dimension
    kind = rng.choice(["flat", "flat", "random", "flat-left"])
    if kind.startswith("flat"):
        h = random_polynomial(chart, rng, max_degree + 1, max_terms=3)
        S = skew_generator(E2.pairing, [[chart.const(c) for c in row] for row in
                                        _const_antisymmetric(E2.rank, rng)])
        gammas = [[[h.diff(d) * s for s in row] for row in S] for d in range(n)]
    else:
        gammas = [skew_generator(E2.pairing, _random_antisymmetric(chart, E2.rank, rng, max_degree, density))
                  for _ in range(n)]
    right = anchored_connection(E1, E2, gammas, name="right")
    anchorless = all(X.is_zero() for X in E2.anchor)
    if kind == "flat-left" and anchorless:
        mats = [skew_generator(E1.pairing, _random_antisymmetric(chart, E1.rank, rng, max_degree, density))
                for _ in range(E2.rank)]
        left = tensorial_connection(E2, E1, mats, name="left")
    else:
        left = Connection.trivial(E2, E1, name="left")
    return MatchedPairData(E1, E2, right, left), kind


def _const_antisymmetric(n: int, rng):
    K = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = rng.randint(-2, 2)
            K[i][j], K[j][i] = c, -c
    return K


def compare_structures(E: CourantStructure, F: CourantStructure,
                       title: str = "isomorphism") -> VerificationReport:
    """Entrywise comparison of pairing, anchor and bracket table, frames matched by label."""
    report = VerificationReport(title)
    ck = Checker("frame")
    ck.stage("frame")
    same = set(E.labels) == set(F.labels)
    ck.record(same, lambda: {"left": ",".join(E.labels), "right": ",".join(F.labels)},
              lambda: "frames differ")
    report.checks.append(ck.result)
    if not same:
        return report
    perm = [F.index(l) for l in E.labels]
    labels = E.labels

    ck = Checker("pairing")
    ck.stage("frame")
    for i in range(E.rank):
        for j in range(i, E.rank):
            a, b = E.pairing[i][j], F.pairing[perm[i]][perm[j]]
            ck.record(a == b, lambda i=i, j=j: {"a": labels[i], "b": labels[j]},
                      lambda a=a, b=b: f"{a} vs {b}")
    report.checks.append(ck.result)

    ck = Checker("anchor")
    ck.stage("frame")
    for i in range(E.rank):
        d = E.anchor[i] - F.anchor[perm[i]]
        ck.record(d.is_zero(), lambda i=i: {"a": labels[i]}, lambda d=d: str(d))
    report.checks.append(ck.result)

    ck = Checker("bracket")
    ck.stage("frame")
    for i in range(E.rank):
        for j in range(E.rank):
            other = F.table[perm[i]][perm[j]]
            d = E.table[i][j] - Section(other.coeffs[p] for p in perm)
            ck.record(d.is_zero(), lambda i=i, j=j: {"a": labels[i], "b": labels[j]},
                      lambda d=d: E.format(d))
    report.checks.append(ck.result)
    return report
