"""Exact verification of the Courant algebroid axioms.

Every identity is checked twice: on all frame tuples (with a coordinate
multiplier in one slot where the identity is not tensorial), then on
randomized polynomial sections. A check passes only if both stages pass.
The first failing instance of a stage is kept as the witness; frame
witnesses take precedence over random ones.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .courant import CourantStructure, Section
from .forms import VectorField, lie_bracket
from .polynomial import Polynomial, random_polynomial

DEFAULT_SEED = 20100416
DEFAULT_SAMPLES = 16
DEFAULT_MAX_DEGREE = 2

_HALF = Fraction(1, 2)

AXIOMS = ("jacobi", "leibniz", "nskew", "ad_invariance", "anchor_morphism", "d_annihilation")


@dataclass(frozen=True)
class SampleSpec:
    seed: int = DEFAULT_SEED
    count: int = DEFAULT_SAMPLES
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sample count must be at least 1")
        if self.max_degree < 0:
            raise ValueError("max degree must be nonnegative")

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


@dataclass
class CheckResult:
    """Outcome of one identity.

    ``stages`` maps stage name (``frame``/``random``) to pass/fail;
    ``witness`` names the inputs of the reported failing instance and
    ``residual`` is the printed nonzero residual.
    """

    name: str
    passed: bool = True
    instances: int = 0
    stages: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[Dict[str, str]] = None
    residual: Optional[str] = None

    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class VerificationReport:
    title: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.passed, c.instances, dict(c.stages),
                                           c.witness, c.residual))

    def to_machine(self) -> dict:
        """Frozen key/value tree; field names and order are part of the interface."""
        return {
            "report": self.title,
            "status": "pass" if self.passed else "fail",
            "checks": [
                {
                    "name": c.name,
                    "status": c.status(),
                    "instances": c.instances,
                    "stages": {k: ("pass" if v else "fail") for k, v in c.stages.items()},
                    "witness": c.witness,
                    "residual": c.residual,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_machine(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{c.status().upper()}] {c.name} ({c.instances} instances)")
            if not c.passed:
                if c.witness:
                    for k, v in c.witness.items():
                        lines.append(f"      {k} = {v}")
                if c.residual is not None:
                    lines.append(f"      residual = {c.residual}")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


class Checker:
    """Accumulates instance results for one identity."""

    def __init__(self, name: str):
        self.result = CheckResult(name)
        self._stage = None

    def stage(self, name: str):
        self._stage = name
        self.result.stages.setdefault(name, True)

    def record(self, residual_zero: bool, witness: Callable[[], Dict[str, str]],
               residual: Callable[[], str]):
        self.result.instances += 1
        if residual_zero:
            return
        self.result.stages[self._stage] = False
        if self.result.passed:
            self.result.passed = False
            self.result.witness = {"stage": self._stage, **witness()}
            self.result.residual = residual()

    def stage_failed(self) -> bool:
        return not self.result.stages.get(self._stage, True)


def polarized_ad_invariance(E: CourantStructure, phi: Section, phi1: Section,
                            phi2: Section) -> Polynomial:
    """``rho(phi)<phi1, phi2> - <phi <> phi1, phi2> - <phi1, phi <> phi2>``."""
    return (E.anchor_apply(phi)(E.pairing_apply(phi1, phi2))
            - E.pairing_apply(E.dorfman(phi, phi1), phi2)
            - E.pairing_apply(phi1, E.dorfman(phi, phi2)))


def jacobiator(E: CourantStructure, a: Section, b: Section, c: Section) -> Section:
    """``a<>(b<>c) - b<>(a<>c) - (a<>b)<>c``."""
    return (E.dorfman(a, E.dorfman(b, c)) - E.dorfman(b, E.dorfman(a, c))
            - E.dorfman(E.dorfman(a, b), c))


def leibniz_residual(E: CourantStructure, phi: Section, f: Polynomial, psi: Section) -> Section:
    return E.dorfman(phi, psi * f) - psi * E.anchor_apply(phi)(f) - E.dorfman(phi, psi) * f


def nskew_residual(E: CourantStructure, phi: Section, psi: Section) -> Section:
    """Polarized symmetric part: ``phi<>psi + psi<>phi - D<phi, psi>``."""
    return E.dorfman(phi, psi) + E.dorfman(psi, phi) - E.d_operator(E.pairing_apply(phi, psi))


def nskew_residual_single(E: CourantStructure, phi: Section) -> Section:
    return E.dorfman(phi, phi) - E.d_operator(E.pairing_apply(phi, phi)) * _HALF


def anchor_residual(E: CourantStructure, phi: Section, psi: Section) -> VectorField:
    return E.anchor_apply(E.dorfman(phi, psi)) - lie_bracket(E.anchor_apply(phi), E.anchor_apply(psi))


def d_annihilation_residual(E: CourantStructure, f: Polynomial, phi: Section) -> Section:
    return E.dorfman(E.d_operator(f), phi)


def _multiplied_frame_tuples(E: CourantStructure, arity: int):
    """Frame tuples, plus each tuple with one slot multiplied by a coordinate."""
    frame = E.frame()
    labels = E.labels
    coords = E.chart.coords()
    names = E.chart.names
    idx = [()]
    for _ in range(arity):
        idx = [t + (i,) for t in idx for i in range(E.rank)]
    for t in idx:
        yield [frame[i] for i in t], [labels[i] for i in t]
    for slot in range(arity):
        for t in idx:
            for x, xn in zip(coords, names):
                secs = [frame[i] for i in t]
                labs = [labels[i] for i in t]
                secs[slot] = secs[slot] * x
                labs[slot] = f"{xn}*{labs[slot]}"
                yield secs, labs


def random_sections(E: CourantStructure, sample: SampleSpec, salt: str):
    rng = sample.rng(f"{salt}:{E.name}:{E.rank}")
    for _ in range(sample.count):
        yield (E.random_section(rng, sample.max_degree), E.random_section(rng, sample.max_degree),
               E.random_section(rng, sample.max_degree),
               random_polynomial(E.chart, rng, sample.max_degree))


def check_axioms(E: CourantStructure, sample: SampleSpec | None = None,
                 title: str | None = None) -> VerificationReport:
    """Check the six Courant identities on frame tuples and random sections."""
    sample = sample or SampleSpec()
    fmt = E.format
    report = VerificationReport(title or f"axioms({E.name or 'E'})")
    coords = list(zip(E.chart.coords(), E.chart.names))
    frame = E.frame()
    labels = E.labels
    rnd = list(random_sections(E, sample, "axioms"))

    # Jacobi
    ck = Checker("jacobi")
    ck.stage("frame")
    for secs, labs in _multiplied_frame_tuples(E, 3):
        if ck.stage_failed():
            break
        r = jacobiator(E, *secs)
        ck.record(r.is_zero(), lambda labs=labs: dict(zip(("phi", "phi1", "phi2"), labs)),
                  lambda r=r: fmt(r))
    ck.stage("random")
    for i, (a, b, c, _) in enumerate(rnd):
        if ck.stage_failed():
            break
        r = jacobiator(E, a, b, c)
        ck.record(r.is_zero(), lambda a=a, b=b, c=c, i=i: {
            "sample": str(i), "phi": fmt(a), "phi1": fmt(b), "phi2": fmt(c)}, lambda r=r: fmt(r))
    report.checks.append(ck.result)

    # Leibniz
    ck = Checker("leibniz")
    ck.stage("frame")
    for i in range(E.rank):
        for j in range(E.rank):
            for x, xn in coords:
                r = leibniz_residual(E, frame[i], x, frame[j])
                ck.record(r.is_zero(), lambda i=i, j=j, xn=xn: {
                    "phi": labels[i], "f": xn, "psi": labels[j]}, lambda r=r: fmt(r))
    ck.stage("random")
    for i, (a, b, _, f) in enumerate(rnd):
        r = leibniz_residual(E, a, f, b)
        ck.record(r.is_zero(), lambda a=a, b=b, f=f, i=i: {
            "sample": str(i), "phi": fmt(a), "f": str(f), "psi": fmt(b)}, lambda r=r: fmt(r))
    report.checks.append(ck.result)

    # symmetric part
    ck = Checker("nskew")
    ck.stage("frame")
    for i in range(E.rank):
        for j in range(i, E.rank):
            r = nskew_residual(E, frame[i], frame[j])
            ck.record(r.is_zero(), lambda i=i, j=j: {"phi": labels[i], "psi": labels[j]},
                      lambda r=r: fmt(r))
    ck.stage("random")
    for i, (a, _, _, _) in enumerate(rnd):
        r = nskew_residual_single(E, a)
        ck.record(r.is_zero(), lambda a=a, i=i: {"sample": str(i), "phi": fmt(a)},
                  lambda r=r: fmt(r))
    report.checks.append(ck.result)

    # ad-invariance, polarized
    ck = Checker("ad_invariance")
    ck.stage("frame")
    for secs, labs in _multiplied_frame_tuples(E, 3):
        if ck.stage_failed():
            break
        r = polarized_ad_invariance(E, *secs)
        ck.record(r.is_zero(), lambda labs=labs: dict(zip(("phi", "phi1", "phi2"), labs)),
                  lambda r=r: str(r))
    ck.stage("random")
    for i, (a, b, c, _) in enumerate(rnd):
        r = polarized_ad_invariance(E, a, b, c)
        ck.record(r.is_zero(), lambda a=a, b=b, c=c, i=i: {
            "sample": str(i), "phi": fmt(a), "phi1": fmt(b), "phi2": fmt(c)}, lambda r=r: str(r))
    report.checks.append(ck.result)

    # anchor is a morphism of brackets
    ck = Checker("anchor_morphism")
    ck.stage("frame")
    for secs, labs in _multiplied_frame_tuples(E, 2):
        r = anchor_residual(E, *secs)
        ck.record(r.is_zero(), lambda labs=labs: dict(zip(("phi", "psi"), labs)),
                  lambda r=r: str(r))
    ck.stage("random")
    for i, (a, b, _, _) in enumerate(rnd):
        r = anchor_residual(E, a, b)
        ck.record(r.is_zero(), lambda a=a, b=b, i=i: {
            "sample": str(i), "phi": fmt(a), "psi": fmt(b)}, lambda r=r: str(r))
    report.checks.append(ck.result)

    # (D f) <> phi = 0
    ck = Checker("d_annihilation")
    ck.stage("frame")
    for x, xn in coords:
        for j in range(E.rank):
            r = d_annihilation_residual(E, x, frame[j])
            ck.record(r.is_zero(), lambda xn=xn, j=j: {"f": xn, "phi": labels[j]},
                      lambda r=r: fmt(r))
    ck.stage("random")
    for i, (a, _, _, f) in enumerate(rnd):
        r = d_annihilation_residual(E, f, a)
        ck.record(r.is_zero(), lambda a=a, f=f, i=i: {
            "sample": str(i), "f": str(f), "phi": fmt(a)}, lambda r=r: fmt(r))
    report.checks.append(ck.result)
    return report
