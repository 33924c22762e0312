"""The sectioned key/value spec format.

A spec is a sequence of sections. Each section starts with a header
``[kind name]`` (``[chart]`` has no name) followed by ``key = value`` lines.
Blank lines and lines starting with ``#`` are ignored. The full grammar and
the list of section kinds are documented in ``docs/spec-format.md``.

Values are one of:

* a name list: ``x, y, z``
* a word: ``rational``, ``true``
* a polynomial: ``2*x^2 - 1/3*y``
* a section: ``del_x: 1, dy: x*y`` (or ``0``), keyed by frame labels or
  coordinate names
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .courant import (CourantStructure, NonClosedTwist, Section, StructureError, format_section,
                      make_twisted_standard, zero_section)
from .expr import ExpressionError, UnknownSymbol, parse_polynomial
from .forms import DiffForm, VectorField
from .matched import Connection, MatchedPairData, matched_sum
from .polynomial import Chart, Polynomial
from .scalars import FIELDS, RATIONAL, GaussianRational, format_scalar

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_HEADER = re.compile(r"\[\s*([A-Za-z][A-Za-z0-9-]*)(?:\s+([^\]\s]+))?\s*\]\s*\Z")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")


class SpecError(ValueError):
    """A spec problem at a 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class SpecSyntaxError(SpecError):
    pass


class UnknownName(SpecError):
    pass


class ShapeMismatch(SpecError):
    pass


@dataclass(frozen=True)
class Entry:
    key: str
    value: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)   # column where the value starts
    key_column: int = field(default=1, compare=False)


@dataclass
class SpecSection:
    kind: str
    name: str
    entries: List[Entry] = field(default_factory=list)
    line: int = field(default=0, compare=False)

    def get(self, key: str) -> Optional[Entry]:
        for e in self.entries:
            if e.key == key:
                return e
        return None

    def with_prefix(self, prefix: str) -> List[Entry]:
        return [e for e in self.entries if e.key.startswith(prefix + ".")]

    def header(self) -> str:
        return f"[{self.kind}]" if not self.name else f"[{self.kind} {self.name}]"


@dataclass
class SpecDocument:
    sections: List[SpecSection] = field(default_factory=list)

    def chart_section(self) -> Optional[SpecSection]:
        return next((s for s in self.sections if s.kind == "chart"), None)

    def named(self, name: str) -> Optional[SpecSection]:
        return next((s for s in self.sections if s.name == name), None)

    def to_text(self) -> str:
        blocks = []
        for s in self.sections:
            lines = [s.header()] + [f"{e.key} = {e.value}" for e in s.entries]
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"

    __str__ = to_text


# allowed keys per section kind: plain keys, and dotted prefixes with their arity
KINDS: Dict[str, Tuple[Tuple[str, ...], Dict[str, int]]] = {
    "chart": (("coordinates", "field"), {}),
    "bundle": (("frame",), {"pairing": 1, "anchor": 1, "bracket": 2}),
    "twisted": (("directions", "force"), {"H": 3}),
    "connection": (("domain", "acted"), {"table": 2}),
    "matched-pair": (("first", "second", "right", "left"), {}),
    "complex-pair": (("drop-h21",), {"H": 3}),
    "lie-algebra": (("basis",), {"structure": 2, "pairing": 1}),
    "regular": (("algebra", "lambda", "force"), {"nabla": 2, "curvature": 2, "H": 3}),
    "dirac": (("host",), {"span": 1, "complement": 1}),
    "graph": (("host", "type", "vectors", "duals"), {"omega": 2, "pi": 2, "L": 2, "A": 2}),
    "matched-dirac": (("pair", "first", "second"), {}),
    "split": (("structure", "first", "second"), {}),
}

REQUIRED = {
    "chart": ("coordinates",),
    "bundle": ("frame",),
    "connection": ("domain", "acted"),
    "matched-pair": ("first", "second"),
    "lie-algebra": ("basis",),
    "regular": ("algebra",),
    "dirac": ("host",),
    "graph": ("host", "type"),
    "matched-dirac": ("pair", "first", "second"),
    "split": ("structure", "first", "second"),
}


# -- syntax -----------------------------------------------------------------------------------


def parse_document(text: str) -> SpecDocument:
    """Syntactic parse: headers, ``key = value`` lines and allowed keys."""
    doc = SpecDocument()
    current: Optional[SpecSection] = None
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise SpecSyntaxError("malformed section header", lineno, indent + 1)
            kind, name = m.group(1), m.group(2) or ""
            if kind not in KINDS:
                raise UnknownName(f"unknown section kind {kind!r}", lineno, indent + 2)
            if kind == "chart":
                if name:
                    raise SpecSyntaxError("the chart section takes no name", lineno, indent + 1)
                if doc.chart_section() is not None:
                    raise SpecSyntaxError("duplicate chart section", lineno, indent + 1)
            else:
                if not name:
                    raise SpecSyntaxError(f"section {kind!r} needs a name", lineno, indent + 1)
                if not _IDENT.match(name.replace("-", "_")):
                    raise SpecSyntaxError(f"invalid section name {name!r}", lineno, indent + 1)
                if name in names:
                    raise SpecSyntaxError(f"duplicate section name {name!r}", lineno, indent + 1)
                names.add(name)
            current = SpecSection(kind, name, line=lineno)
            doc.sections.append(current)
            continue
        if current is None:
            raise SpecSyntaxError("entry outside of any section", lineno, indent + 1)
        eq = raw.find("=")
        if eq < 0:
            raise SpecSyntaxError("expected 'key = value'", lineno, len(raw.rstrip()) + 1)
        key = raw[:eq].strip()
        if not _KEY.match(key):
            raise SpecSyntaxError(f"invalid key {key!r}", lineno, indent + 1)
        value_raw = raw[eq + 1:]
        value = value_raw.strip()
        vcol = eq + 2 + (len(value_raw) - len(value_raw.lstrip()))
        if not value:
            raise SpecSyntaxError("missing value", lineno, eq + 2)
        _check_key(current, key, lineno, indent + 1)
        if current.get(key) is not None:
            raise SpecSyntaxError(f"duplicate key {key!r}", lineno, indent + 1)
        current.entries.append(Entry(key, value, lineno, vcol, indent + 1))
    for s in doc.sections:
        for req in REQUIRED.get(s.kind, ()):
            if s.get(req) is None:
                raise SpecSyntaxError(f"section {s.header()} is missing {req!r}", s.line, 1)
    if doc.sections and doc.chart_section() is None:
        raise SpecSyntaxError("missing [chart] section", doc.sections[0].line, 1)
    return doc


def _check_key(section: SpecSection, key: str, line: int, column: int):
    plain, dotted = KINDS[section.kind]
    if key in plain:
        return
    head, _, rest = key.partition(".")
    if head in dotted:
        parts = rest.split(".") if rest else []
        if len(parts) == dotted[head] and all(parts):
            return
        raise SpecSyntaxError(f"key {key!r} needs {dotted[head]} dotted component(s)", line, column)
    raise UnknownName(f"unknown key {key!r} in {section.header()}", line, column)


def parse_spec(text: str, force: bool = False) -> SpecDocument:
    """Parse and fully validate (names, shapes, expressions); returns the document."""
    doc = parse_document(text)
    build_workspace(doc, force=force)
    return doc


# -- value helpers ----------------------------------------------------------------------------


def _split_items(entry: Entry) -> List[Tuple[str, int]]:
    """Comma-separated items with their absolute start columns."""
    out = []
    start = 0
    text = entry.value
    depth = 0
    for i, ch in enumerate(text + ","):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            item = text[start:i]
            lead = len(item) - len(item.lstrip())
            if not item.strip():
                raise SpecSyntaxError("empty list item", entry.line, entry.column + start)
            out.append((item.strip(), entry.column + start + lead))
            start = i + 1
    return out


def _names(entry: Entry) -> List[str]:
    out = []
    for item, col in _split_items(entry):
        if not _IDENT.match(item):
            raise SpecSyntaxError(f"invalid name {item!r}", entry.line, col)
        out.append(item)
    if len(set(out)) != len(out):
        raise ShapeMismatch("duplicate names in list", entry.line, entry.column)
    return out


def _flag(entry: Optional[Entry]) -> bool:
    if entry is None:
        return False
    v = entry.value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise SpecSyntaxError(f"expected true or false, found {entry.value!r}", entry.line, entry.column)


def _poly(chart: Chart, text: str, line: int, column: int) -> Polynomial:
    try:
        return parse_polynomial(text, chart)
    except UnknownSymbol as exc:
        raise UnknownName(exc.message, line, column + exc.column - 1) from None
    except ExpressionError as exc:
        raise SpecSyntaxError(exc.message, line, column + exc.column - 1) from None


def _scalar(chart: Chart, text: str, line: int, column: int):
    p = _poly(chart, text, line, column)
    if not p.is_constant():
        raise ShapeMismatch(f"expected a constant, found {text!r}", line, column)
    return p.constant_term()


def _keyed(entry: Entry, keys: Sequence[str], chart: Chart, scalar: bool = False) -> Dict[str, object]:
    """``label: expr, ...`` (or ``0``) into ``{label: value}``."""
    if entry.value.strip() == "0":
        return {}
    out = {}
    for item, col in _split_items(entry):
        label, sep, expr = item.partition(":")
        if not sep:
            raise SpecSyntaxError("expected 'label: expression'", entry.line, col)
        label = label.strip()
        if label not in keys:
            raise UnknownName(f"unknown label {label!r}", entry.line, col)
        if label in out:
            raise ShapeMismatch(f"label {label!r} given twice", entry.line, col)
        ecol = col + len(item) - len(expr) + (len(expr) - len(expr.lstrip()))
        if not expr.strip():
            raise SpecSyntaxError("missing expression", entry.line, ecol)
        out[label] = (_scalar if scalar else _poly)(chart, expr.strip(), entry.line, ecol)
    return out


def _section(entry: Entry, labels: Sequence[str], chart: Chart) -> Section:
    vals = _keyed(entry, labels, chart)
    return Section(vals.get(l, chart.zero()) for l in labels)


def _key_parts(entry: Entry, allowed: Sequence[Sequence[str]]) -> List[str]:
    parts = entry.key.split(".")[1:]
    for p, ok in zip(parts, allowed):
        if p not in ok:
            raise UnknownName(f"unknown name {p!r} in key {entry.key!r}", entry.line, entry.key_column)
    return parts


def _form(chart: Chart, entries: Sequence[Entry], degree: int) -> DiffForm:
    terms = {}
    for e in entries:
        parts = _key_parts(e, [chart.names] * degree)
        if len(set(parts)) != degree:
            raise ShapeMismatch(f"repeated coordinate in {e.key!r}", e.line, e.key_column)
        idx = tuple(chart.index(p) for p in parts)
        if any(set(k) == set(idx) for k in terms):
            raise ShapeMismatch(f"component {e.key!r} given twice", e.line, e.key_column)
        terms[idx] = _poly(chart, e.value, e.line, e.column)
    return DiffForm(chart, degree, terms)


def _check_symmetric(given: Dict[Tuple[str, str], Tuple[object, Entry]]):
    """Report an asymmetric pairing at the later of the two conflicting entries."""
    bad = []
    for (a, b), (v, e) in given.items():
        other, oe = given.get((b, a), (0, None))
        if other != v:
            culprit = e if oe is None or (e.line, e.column) >= (oe.line, oe.column) else oe
            bad.append((culprit.line, culprit.column, a, b))
    if bad:
        line, col, a, b = min(bad)
        raise ShapeMismatch(f"pairing is not symmetric at ({a}, {b})", line, col)


def _antisymmetric(chart: Chart, entries: Sequence[Entry], rows: Sequence[str], cols: Sequence[str],
                   what: str):
    """Matrix from ``key.a.b`` entries, antisymmetrized (``key.b.a`` implied)."""
    M = [[chart.zero() for _ in cols] for _ in rows]
    seen = {}
    for e in entries:
        a, b = _key_parts(e, [rows, cols])
        i, j = rows.index(a), cols.index(b)
        p = _poly(chart, e.value, e.line, e.column)
        if i == j and not p.is_zero():
            raise ShapeMismatch(f"{what} must vanish on the diagonal", e.line, e.column)
        if (j, i) in seen and seen[(j, i)] != -p:
            raise ShapeMismatch(f"{what} is not antisymmetric at {e.key!r}", e.line, e.column)
        seen[(i, j)] = p
        M[i][j] = p
        M[j][i] = -p
    return M


# -- building -------------------------------------------------------------------------------


class Workspace:
    """Named objects built from a spec document, in declaration order."""

    def __init__(self, doc: SpecDocument, chart: Chart):
        self.doc = doc
        self.chart = chart
        self.objects: Dict[str, object] = {}
        self.kinds: Dict[str, str] = {}
        self.order: List[str] = []
        self._sums: Dict[str, CourantStructure] = {}
        self.extra: Dict[str, dict] = {}

    def add(self, name: str, kind: str, obj, **extra):
        self.objects[name] = obj
        self.kinds[name] = kind
        self.order.append(name)
        self.extra[name] = extra

    def sum_of(self, name: str) -> CourantStructure:
        if name not in self._sums:
            self._sums[name] = matched_sum(self.objects[name], name=name)
        return self._sums[name]

    def structure(self, name: str) -> CourantStructure:
        kind = self.kinds[name]
        if kind in ("bundle", "twisted"):
            return self.objects[name]
        if kind in ("matched-pair", "complex-pair"):
            return self.sum_of(name)
        if kind == "regular":
            from .regular import build_regular
            return build_regular(self.objects[name], force=True)
        raise KeyError(name)

    def __getitem__(self, name):
        return self.objects[name]

    def names_of(self, *kinds) -> List[str]:
        return [n for n in self.order if self.kinds[n] in kinds]


STRUCTURE_KINDS = ("bundle", "twisted", "matched-pair", "complex-pair", "regular")


def _ref(ws: Workspace, entry: Entry, kinds: Sequence[str]) -> str:
    name = entry.value.strip()
    if name not in ws.objects:
        raise UnknownName(f"unknown name {name!r}", entry.line, entry.column)
    if ws.kinds[name] not in kinds:
        raise ShapeMismatch(f"{name!r} is a {ws.kinds[name]}, expected {' or '.join(kinds)}",
                            entry.line, entry.column)
    return name


def _build_chart(sec: SpecSection) -> Chart:
    coords = sec.get("coordinates")
    names = [] if coords.value.strip() == "-" else _names(coords)
    fe = sec.get("field")
    fld = fe.value.strip() if fe else RATIONAL
    if fld not in FIELDS:
        raise UnknownName(f"unknown field {fld!r}", fe.line, fe.column)
    try:
        return Chart(tuple(names), fld)
    except ValueError as exc:
        raise ShapeMismatch(str(exc), coords.line, coords.column) from None


def _build_bundle(ws: Workspace, sec: SpecSection) -> CourantStructure:
    chart = ws.chart
    fe = sec.get("frame")
    labels = _names(fe)
    k = len(labels)
    G = [[0] * k for _ in range(k)]
    given = {}
    for e in sec.with_prefix("pairing"):
        (a,) = _key_parts(e, [labels])
        for b, v in _keyed(e, labels, chart, scalar=True).items():
            given[(a, b)] = (v, e)
            G[labels.index(a)][labels.index(b)] = v
    _check_symmetric(given)
    anchor = [VectorField.zero(chart)] * k
    for e in sec.with_prefix("anchor"):
        (a,) = _key_parts(e, [labels])
        vals = _keyed(e, chart.names, chart)
        anchor[labels.index(a)] = VectorField(chart, [vals.get(x, chart.zero()) for x in chart.names])
    table = [[zero_section(chart, k) for _ in range(k)] for _ in range(k)]
    for e in sec.with_prefix("bracket"):
        a, b = _key_parts(e, [labels, labels])
        table[labels.index(a)][labels.index(b)] = _section(e, labels, chart)
    try:
        return CourantStructure(chart, labels, G, anchor, table, name=sec.name)
    except StructureError as exc:
        raise ShapeMismatch(str(exc), fe.line, fe.column) from None


def _build_twisted(ws: Workspace, sec: SpecSection, force: bool) -> CourantStructure:
    chart = ws.chart
    H = _form(chart, sec.with_prefix("H"), 3)
    de = sec.get("directions")
    dirs = None
    if de is not None:
        dirs = _names(de)
        for d in dirs:
            if d not in chart.names:
                raise UnknownName(f"unknown coordinate {d!r}", de.line, de.column)
    try:
        return make_twisted_standard(chart, H, directions=dirs, force=force or _flag(sec.get("force")),
                                     name=sec.name)
    except NonClosedTwist as exc:
        raise NonClosedTwist(f"[twisted {sec.name}] line {sec.line}: {exc}") from None


def _build_connection(ws: Workspace, sec: SpecSection) -> Connection:
    chart = ws.chart
    dom = ws.structure(_ref(ws, sec.get("domain"), STRUCTURE_KINDS))
    act = ws.structure(_ref(ws, sec.get("acted"), STRUCTURE_KINDS))
    table = [[zero_section(chart, act.rank) for _ in range(act.rank)] for _ in range(dom.rank)]
    for e in sec.with_prefix("table"):
        a, v = _key_parts(e, [dom.labels, act.labels])
        table[dom.index(a)][act.index(v)] = _section(e, act.labels, chart)
    return Connection(dom, act, table, name=sec.name)


def _build_pair(ws: Workspace, sec: SpecSection) -> MatchedPairData:
    E1 = ws.structure(_ref(ws, sec.get("first"), STRUCTURE_KINDS))
    E2 = ws.structure(_ref(ws, sec.get("second"), STRUCTURE_KINDS))
    conns = {}
    for key, dom, act in (("right", E1, E2), ("left", E2, E1)):
        e = sec.get(key)
        if e is None:
            conns[key] = Connection.trivial(dom, act, name=key)
            continue
        c = ws[_ref(ws, e, ("connection",))]
        if c.domain is not dom or c.acted is not act:
            raise ShapeMismatch(f"{key} connection must act by {'first on second' if key == 'right' else 'second on first'}",
                                e.line, e.column)
        conns[key] = c
    return MatchedPairData(E1, E2, conns["right"], conns["left"])


def _build_complex(ws: Workspace, sec: SpecSection):
    from .complexpair import ComplexChart, build_complex_matched_pair
    chart = ws.chart
    try:
        cc = ComplexChart.of(chart)
    except ValueError as exc:
        raise ShapeMismatch(str(exc), sec.line, 1) from None
    if chart.field != "gaussian-rational":
        raise ShapeMismatch("complex pairs need field = gaussian-rational", sec.line, 1)
    H = _form(chart, sec.with_prefix("H"), 3)
    return build_complex_matched_pair(cc, H, drop_h21=_flag(sec.get("drop-h21"))), H


def _build_lie(ws: Workspace, sec: SpecSection):
    from .regular import QuadraticLieBundle
    chart = ws.chart
    be = sec.get("basis")
    labels = _names(be)
    m = len(labels)
    c = [[[0] * m for _ in range(m)] for _ in range(m)]
    seen = {}
    for e in sec.with_prefix("structure"):
        a, b = _key_parts(e, [labels, labels])
        vals = _keyed(e, labels, chart, scalar=True)
        i, j = labels.index(a), labels.index(b)
        vec = [vals.get(l, 0) for l in labels]
        if (j, i) in seen and seen[(j, i)] != [-v for v in vec]:
            raise ShapeMismatch(f"structure constants not antisymmetric at {e.key!r}", e.line, e.column)
        seen[(i, j)] = vec
        c[i][j] = vec
        c[j][i] = [-v for v in vec]
    K = [[0] * m for _ in range(m)]
    given = {}
    for e in sec.with_prefix("pairing"):
        (a,) = _key_parts(e, [labels])
        for b, v in _keyed(e, labels, chart, scalar=True).items():
            given[(a, b)] = (v, e)
            K[labels.index(a)][labels.index(b)] = v
    _check_symmetric(given)
    try:
        return QuadraticLieBundle(labels, c, K)
    except StructureError as exc:
        raise ShapeMismatch(str(exc), be.line, be.column) from None


def _build_regular(ws: Workspace, sec: SpecSection):
    from .regular import RegularData
    chart = ws.chart
    G = ws[_ref(ws, sec.get("algebra"), ("lie-algebra",))]
    n, m = chart.dimension, G.rank
    z = zero_section(chart, m)
    nabla = [[z] * m for _ in range(n)]
    for e in sec.with_prefix("nabla"):
        x, g = _key_parts(e, [chart.names, G.labels])
        nabla[chart.index(x)][G.labels.index(g)] = _section(e, G.labels, chart)
    R = [[z] * n for _ in range(n)]
    for e in sec.with_prefix("curvature"):
        x, y = _key_parts(e, [chart.names, chart.names])
        i, j = chart.index(x), chart.index(y)
        s = _section(e, G.labels, chart)
        if i == j and not s.is_zero():
            raise ShapeMismatch("curvature must vanish on the diagonal", e.line, e.column)
        if R[j][i] != z and R[j][i] != -s:
            raise ShapeMismatch(f"curvature is not antisymmetric at {e.key!r}", e.line, e.column)
        R[i][j], R[j][i] = s, -s
    H = _form(chart, sec.with_prefix("H"), 3)
    le = sec.get("lambda")
    lam = _scalar(chart, le.value, le.line, le.column) if le else 2
    if lam == 0:
        raise ShapeMismatch("lambda must be nonzero", le.line, le.column)
    return RegularData(chart, G, nabla, R, H, lam, name=sec.name)


def _build_dirac(ws: Workspace, sec: SpecSection):
    from .dirac import DiracFrame
    chart = ws.chart
    host = ws.structure(_ref(ws, sec.get("host"), STRUCTURE_KINDS))
    span = sec.with_prefix("span")
    comp = sec.with_prefix("complement")
    labels = [e.key.split(".", 1)[1] for e in span]
    for e, l in zip(span, labels):
        if not _IDENT.match(l):
            raise SpecSyntaxError(f"invalid label {l!r}", e.line, e.key_column)
    if 2 * len(span) != host.rank:
        raise ShapeMismatch(f"{len(span)} spanning sections for a host of rank {host.rank}", sec.line, 1)
    if len(comp) != len(span):
        raise ShapeMismatch(f"complement needs {len(span)} sections, found {len(comp)}", sec.line, 1)
    return DiracFrame(host, [_section(e, host.labels, chart) for e in span],
                      [_section(e, host.labels, chart) for e in comp], labels, name=sec.name)


def _build_graph(ws: Workspace, sec: SpecSection):
    from . import dirac
    chart = ws.chart
    host = ws.structure(_ref(ws, sec.get("host"), STRUCTURE_KINDS))
    te = sec.get("type")
    kind = te.value.strip()
    names = list(chart.names)
    if kind == "two-form":
        M = _antisymmetric(chart, sec.with_prefix("omega"), names, names, "omega")
        omega = DiffForm(chart, 2, {(i, j): M[i][j] for i in range(len(names)) for j in range(i + 1, len(names))})
        return dirac.graph_of_two_form(host, omega, name=sec.name)
    if kind == "bivector":
        return dirac.graph_of_bivector(host, _antisymmetric(chart, sec.with_prefix("pi"), names, names, "pi"),
                                       name=sec.name)
    vecs = _names(sec.get("vectors")) if sec.get("vectors") else None
    duals = _names(sec.get("duals")) if sec.get("duals") else None
    if vecs is None or duals is None or len(vecs) != len(duals):
        raise ShapeMismatch("graph needs 'vectors' and 'duals' lists of equal length", sec.line, 1)
    for lst, key in ((vecs, "vectors"), (duals, "duals")):
        e = sec.get(key)
        for l in lst:
            if l not in host.labels:
                raise UnknownName(f"unknown frame label {l!r}", e.line, e.column)
    if kind == "pairing-map":
        L = _antisymmetric(chart, sec.with_prefix("L"), vecs, vecs, "L")
        return dirac.graph_of_pairing_map(host, L, vecs, duals, name=sec.name)
    if kind == "port":
        M = _antisymmetric(chart, sec.with_prefix("omega"), names, names, "omega")
        omega = DiffForm(chart, 2, {(i, j): M[i][j] for i in range(len(names)) for j in range(i + 1, len(names))})
        A = [[chart.zero() for _ in names] for _ in vecs]
        for e in sec.with_prefix("A"):
            a, x = _key_parts(e, [vecs, names])
            A[vecs.index(a)][names.index(x)] = _poly(chart, e.value, e.line, e.column)
        return dirac.port_hamiltonian_graph(host, omega, A, vecs, duals, name=sec.name)
    raise UnknownName(f"unknown graph type {kind!r}", te.line, te.column)


def build_workspace(doc: SpecDocument, force: bool = False) -> Workspace:
    """Resolve every section into library objects, raising located spec errors."""
    cs = doc.chart_section()
    if cs is None:
        raise SpecSyntaxError("missing [chart] section", 1, 1)
    ws = Workspace(doc, _build_chart(cs))
    for sec in doc.sections:
        if sec.kind == "chart":
            continue
        try:
            if sec.kind == "bundle":
                ws.add(sec.name, sec.kind, _build_bundle(ws, sec))
            elif sec.kind == "twisted":
                ws.add(sec.name, sec.kind, _build_twisted(ws, sec, force))
            elif sec.kind == "connection":
                ws.add(sec.name, sec.kind, _build_connection(ws, sec))
            elif sec.kind == "matched-pair":
                ws.add(sec.name, sec.kind, _build_pair(ws, sec))
            elif sec.kind == "complex-pair":
                mp, H = _build_complex(ws, sec)
                ws.add(sec.name, sec.kind, mp, H=H)
            elif sec.kind == "lie-algebra":
                ws.add(sec.name, sec.kind, _build_lie(ws, sec))
            elif sec.kind == "regular":
                ws.add(sec.name, sec.kind, _build_regular(ws, sec), force=_flag(sec.get("force")))
            elif sec.kind == "dirac":
                ws.add(sec.name, sec.kind, _build_dirac(ws, sec))
            elif sec.kind == "graph":
                ws.add(sec.name, sec.kind, _build_graph(ws, sec))
            elif sec.kind == "matched-dirac":
                pair = _ref(ws, sec.get("pair"), ("matched-pair", "complex-pair"))
                d1 = _ref(ws, sec.get("first"), ("dirac", "graph"))
                d2 = _ref(ws, sec.get("second"), ("dirac", "graph"))
                mp = ws[pair]
                if ws[d1].host is not mp.first:
                    e = sec.get("first")
                    raise ShapeMismatch("first Dirac structure must live in the first factor", e.line, e.column)
                if ws[d2].host is not mp.second:
                    e = sec.get("second")
                    raise ShapeMismatch("second Dirac structure must live in the second factor", e.line, e.column)
                ws.add(sec.name, sec.kind, (mp, ws[d1], ws[d2]), pair=pair)
            elif sec.kind == "split":
                sname = _ref(ws, sec.get("structure"), STRUCTURE_KINDS)
                E = ws.structure(sname)
                parts = []
                for key in ("first", "second"):
                    e = sec.get(key)
                    labs = _names(e)
                    for l in labs:
                        if l not in E.labels:
                            raise UnknownName(f"unknown frame label {l!r}", e.line, e.column)
                    parts.append(labs)
                ws.add(sec.name, sec.kind, (E, parts[0], parts[1]))
        except SpecError:
            raise
        except (StructureError, ValueError) as exc:
            if isinstance(exc, NonClosedTwist):
                raise
            raise ShapeMismatch(str(exc), sec.line, 1) from None
    return ws


def load_spec(text: str, force: bool = False) -> Workspace:
    return build_workspace(parse_document(text), force=force)


# -- printing structures ------------------------------------------------------------------------


def _fmt_scalar(c) -> str:
    s = format_scalar(c)
    return f"({s})" if isinstance(c, GaussianRational) else s


def chart_section(chart: Chart) -> SpecSection:
    coords = ", ".join(chart.names) if chart.names else "-"
    return SpecSection("chart", "", [Entry("coordinates", coords), Entry("field", chart.field)])


def structure_section(E: CourantStructure, name: str | None = None) -> SpecSection:
    """A ``[bundle]`` section that rebuilds ``E`` exactly."""
    sec = SpecSection("bundle", name or E.name or "E")
    sec.entries.append(Entry("frame", ", ".join(E.labels)))
    for i, a in enumerate(E.labels):
        row = [f"{b}: {_fmt_scalar(g)}" for b, g in zip(E.labels, E.pairing[i]) if g != 0]
        if row:
            sec.entries.append(Entry(f"pairing.{a}", ", ".join(row)))
    for a, X in zip(E.labels, E.anchor):
        if not X.is_zero():
            sec.entries.append(Entry(f"anchor.{a}", format_section(E.chart.names, Section(X.coeffs))))
    for i, a in enumerate(E.labels):
        for j, b in enumerate(E.labels):
            s = E.table[i][j]
            if not s.is_zero():
                sec.entries.append(Entry(f"bracket.{a}.{b}", E.format(s)))
    return sec


def connection_section(nab: Connection, name: str, domain: str, acted: str) -> SpecSection:
    sec = SpecSection("connection", name, [Entry("domain", domain), Entry("acted", acted)])
    for i, a in enumerate(nab.domain.labels):
        for j, v in enumerate(nab.acted.labels):
            s = nab.table[i][j]
            if not s.is_zero():
                sec.entries.append(Entry(f"table.{a}.{v}", format_section(nab.acted.labels, s)))
    return sec


def structure_to_spec(E: CourantStructure, name: str | None = None) -> str:
    return SpecDocument([chart_section(E.chart), structure_section(E, name)]).to_text()


def pair_to_spec(mp: MatchedPairData, name: str = "pair", first: str = "E1", second: str = "E2") -> str:
    doc = SpecDocument([
        chart_section(mp.chart),
        structure_section(mp.first, first),
        structure_section(mp.second, second),
        connection_section(mp.right, "right", first, second),
        connection_section(mp.left, "left", second, first),
        SpecSection("matched-pair", name, [Entry("first", first), Entry("second", second),
                                           Entry("right", "right"), Entry("left", "left")]),
    ])
    return doc.to_text()
