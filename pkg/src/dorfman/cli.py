"""Command line interface: ``dorfman COMMAND SPEC [options]``.

``SPEC`` is a path to a spec file or the name of a gallery entry. Exit
codes: 0 every check passed, 1 a check failed, 2 the spec could not be
read or built, 3 internal error.
"""

from __future__ import annotations

import json
import os
import sys
import traceback
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import click

from . import gallery
from .complexpair import check_sum_isomorphism
from .courant import NonClosedTwist
from .dirac import (check_dirac, check_lie_matched_pair, check_matched_dirac, dirac_to_lie, direct_sum_dirac,
                    lie_matched_sum, restricted_lie_pair)
from .matched import (DegenerateRestriction, NotOrthogonal, check_matched_pair, compare_structures,
                      matched_sum, split_by_labels)
from .regular import (AmbiguousNormalization, IncompatibleData, NoConsistentNormalization, NotFlat,
                      build_regular, check_regular_compat, flat_to_matched_pair, normalization_audit)
from .scalars import format_scalar
from .specfile import STRUCTURE_KINDS, SpecError, Workspace, load_spec, pair_to_spec, structure_to_spec
from .verify import CheckResult, SampleSpec, VerificationReport, check_axioms

EXIT_PASS, EXIT_FAIL, EXIT_SPEC, EXIT_INTERNAL = 0, 1, 2, 3

# section kinds each command can act on; the last declared match is the default target
TARGETS: Dict[str, Sequence[str]] = {
    "check-axioms": STRUCTURE_KINDS,
    "check-matched-pair": ("matched-pair", "complex-pair"),
    "matched-sum": ("matched-pair", "complex-pair"),
    "split": ("split",),
    "check-dirac": ("dirac", "graph"),
    "check-matched-dirac": ("matched-dirac",),
    "build-regular": ("regular",),
    "check-regular": ("regular",),
    "flat-decompose": ("regular",),
    "audit-normalization": ("regular",),
}


class CheckFailed(Exception):
    """A precondition of the command failed; carries an optional report."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass
class RunReport:
    command: str
    spec: str
    target: Optional[str] = None
    reports: List[VerificationReport] = field(default_factory=list)
    output: Optional[str] = None
    error: Optional[str] = None
    exit_code: Optional[int] = None

    @property
    def exit(self) -> int:
        if self.exit_code is not None:
            return self.exit_code
        return EXIT_PASS if all(r.passed for r in self.reports) else EXIT_FAIL

    @property
    def status(self) -> str:
        return {EXIT_PASS: "pass", EXIT_FAIL: "fail"}.get(self.exit, "error")

    def to_machine(self) -> dict:
        """Key order is frozen: command, spec, target, status, exit, error, output, reports."""
        return {
            "command": self.command,
            "spec": self.spec,
            "target": self.target,
            "status": self.status,
            "exit": self.exit,
            "error": self.error,
            "output": self.output,
            "reports": [r.to_machine() for r in self.reports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_machine(), indent=2)

    def to_text(self) -> str:
        head = f"{self.command} {self.spec}"
        if self.target:
            head += f" [{self.target}]"
        lines = [head]
        if self.output:
            lines.append(self.output.rstrip("\n"))
        lines += [r.to_text() for r in self.reports]
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"status: {self.status.upper()} (exit {self.exit})")
        return "\n".join(lines)


def read_spec(spec: str) -> str:
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return fh.read()
    if gallery.is_gallery_name(spec):
        return gallery.text(spec)
    raise SpecError(f"{spec!r} is neither a spec file nor a gallery entry", 0, 0)


def choose_target(ws: Workspace, command: str, target: str | None) -> str:
    kinds = TARGETS[command]
    if target is not None:
        if target not in ws.kinds:
            raise SpecError(f"no section named {target!r}", 0, 0)
        if ws.kinds[target] not in kinds:
            raise SpecError(f"{command} cannot act on a {ws.kinds[target]} section", 0, 0)
        return target
    candidates = ws.names_of(*kinds)
    if not candidates:
        raise SpecError(f"{command} needs a section of kind {' or '.join(kinds)}", 0, 0)
    return candidates[-1]


def _regular_structure(ws: Workspace, name: str, force: bool):
    rd = ws[name]
    try:
        return build_regular(rd, force=force or ws.extra[name].get("force", False))
    except IncompatibleData as exc:
        raise CheckFailed(f"{exc}; use --force to build anyway", exc.report) from None


def _structure(ws: Workspace, name: str, force: bool):
    if ws.kinds[name] == "regular":
        return _regular_structure(ws, name, force)
    return ws.structure(name)


# -- commands ------------------------------------------------------------------------------


def cmd_check_axioms(ws, name, sample, force, run):
    E = _structure(ws, name, force)
    run.reports.append(check_axioms(E, sample, title=f"axioms({name})"))


def cmd_check_matched_pair(ws, name, sample, force, run):
    mp = ws[name]
    run.reports.append(check_matched_pair(mp, sample, title=f"matched-pair({name})"))
    if ws.kinds[name] == "complex-pair":
        run.reports.append(check_sum_isomorphism(mp, ws.extra[name]["H"]))


def cmd_matched_sum(ws, name, sample, force, run):
    run.output = structure_to_spec(ws.sum_of(name), name=f"{name}_sum")


def cmd_split(ws, name, sample, force, run):
    E, first, second = ws[name]
    try:
        sp = split_by_labels(E, first, second)
    except (NotOrthogonal, DegenerateRestriction) as exc:
        raise CheckFailed(str(exc)) from None
    run.output = pair_to_spec(sp.pair, name=name)
    run.reports.append(check_matched_pair(sp.pair, sample, title=f"matched-pair({name})"))
    run.reports.append(compare_structures(matched_sum(sp.pair), E, title="round-trip"))


def cmd_check_dirac(ws, name, sample, force, run):
    run.reports.append(check_dirac(ws[name], sample, title=f"dirac({name})"))


def cmd_check_matched_dirac(ws, name, sample, force, run):
    mp, D1, D2 = ws[name]
    report = check_matched_dirac(mp, D1, D2, sample)
    report.title = f"matched-dirac({name})"
    run.reports.append(report)
    if report.passed:
        lmp = restricted_lie_pair(mp, D1, D2)
        run.reports.append(check_lie_matched_pair(lmp, sample))
        lie = VerificationReport("lie-sum")
        A = lie_matched_sum(lmp)
        B = dirac_to_lie(direct_sum_dirac(mp, D1, D2))
        for what, ok in (("anchor", A.anchor == B.anchor), ("bracket", A.table == B.table)):
            lie.checks.append(CheckResult(what, ok, 1))
        run.reports.append(lie)


def cmd_build_regular(ws, name, sample, force, run):
    rd = ws[name]
    rep = check_regular_compat(rd)
    run.reports.append(rep)
    if not rep.passed and not (force or ws.extra[name].get("force", False)):
        run.error = "regular data fail the compatibility conditions; use --force to build anyway"
        return
    run.output = structure_to_spec(build_regular(rd, force=True), name=name)


def cmd_check_regular(ws, name, sample, force, run):
    rd = ws[name]
    run.reports.append(check_regular_compat(rd))
    E = build_regular(rd, force=True)
    run.reports.append(check_axioms(E, sample, title=f"axioms({name})"))


def cmd_flat_decompose(ws, name, sample, force, run):
    rd = ws[name]
    try:
        mp = flat_to_matched_pair(rd)
    except IncompatibleData as exc:
        raise CheckFailed(str(exc), exc.report) from None
    except NotFlat as exc:
        raise CheckFailed(str(exc)) from None
    run.output = pair_to_spec(mp, name=name, first="F", second="G")
    run.reports.append(check_matched_pair(mp, sample, title=f"matched-pair({name})"))
    run.reports.append(compare_structures(matched_sum(mp), build_regular(rd, force=True), title="sum-vs-regular"))


def cmd_audit_normalization(ws, name, sample, force, run):
    rd = ws[name]
    try:
        lam = normalization_audit(rd, sample)
    except AmbiguousNormalization as exc:
        values = ", ".join(format_scalar(c) for c in exc.candidates)
        raise CheckFailed(f"{exc}: {values}") from None
    except NoConsistentNormalization as exc:
        raise CheckFailed(str(exc)) from None
    run.output = f"lambda* = {format_scalar(lam)}"


COMMANDS: Dict[str, Callable] = {
    "check-axioms": cmd_check_axioms,
    "check-matched-pair": cmd_check_matched_pair,
    "matched-sum": cmd_matched_sum,
    "split": cmd_split,
    "check-dirac": cmd_check_dirac,
    "check-matched-dirac": cmd_check_matched_dirac,
    "build-regular": cmd_build_regular,
    "check-regular": cmd_check_regular,
    "flat-decompose": cmd_flat_decompose,
    "audit-normalization": cmd_audit_normalization,
}


def run(command: str, spec: str, *, seed: int | None = None, samples: int | None = None,
        max_degree: int | None = None, force: bool = False, target: str | None = None) -> RunReport:
    """Run one command and collect its reports; never raises for spec or check problems."""
    report = RunReport(command, spec)
    defaults = SampleSpec()
    try:
        sample = SampleSpec(seed if seed is not None else defaults.seed,
                            samples if samples is not None else defaults.count,
                            max_degree if max_degree is not None else defaults.max_degree)
        ws = load_spec(read_spec(spec), force=force)
        report.target = choose_target(ws, command, target)
        COMMANDS[command](ws, report.target, sample, force, report)
    except SpecError as exc:
        report.error, report.exit_code = str(exc), EXIT_SPEC
    except NonClosedTwist as exc:
        report.error, report.exit_code = f"{exc}; use --force to build anyway", EXIT_SPEC
    except CheckFailed as exc:
        if exc.report is not None:
            report.reports.append(exc.report)
        report.error, report.exit_code = str(exc), EXIT_FAIL
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        report.error = f"internal error: {type(exc).__name__}: {exc}"
        report.exit_code = EXIT_INTERNAL
        if os.environ.get("DORFMAN_DEBUG"):
            traceback.print_exc()
    return report


# -- click wiring --------------------------------------------------------------------------


def _common(fn):
    options = [
        click.option("--seed", type=int, default=None, help="Seed for randomized sections."),
        click.option("--samples", type=click.IntRange(min=1), default=None, help="Randomized samples per check."),
        click.option("--max-degree", type=click.IntRange(min=0), default=None,
                     help="Maximum degree of random polynomial coefficients."),
        click.option("--force", is_flag=True, help="Build despite failed preconditions."),
        click.option("--target", default=None, help="Name of the section to act on."),
        click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default="text",
                     show_default=True),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return click.argument("spec")(fn)


@click.group()
@click.version_option(package_name="dorfman")
def main():
    """Exact verification of Courant algebroids, matched pairs and Dirac structures."""


def _register(name: str, doc: str):
    @_common
    def command(spec, seed, samples, max_degree, force, target, fmt):
        rep = run(name, spec, seed=seed, samples=samples, max_degree=max_degree, force=force, target=target)
        click.echo(rep.to_json() if fmt == "machine" else rep.to_text())
        sys.exit(rep.exit)

    command.__doc__ = doc
    main.command(name)(command)


_register("check-axioms", "Check the six Courant axioms.")
_register("check-matched-pair", "Check the matched-pair conditions (and the sum isomorphism for complex pairs).")
_register("matched-sum", "Print the matched sum as a spec.")
_register("split", "Split a structure along two orthogonal frames and check the result.")
_register("check-dirac", "Check that a frame spans a Dirac structure.")
_register("check-matched-dirac", "Check a matched pair of Dirac structures and its Lie algebroids.")
_register("build-regular", "Check the compatibility conditions and print the regular structure.")
_register("check-regular", "Check compatibility conditions and the axioms of the regular structure.")
_register("flat-decompose", "Write a flat regular structure as a matched sum.")
_register("audit-normalization", "Find the unique pairing scale for which the regular structure is Courant.")


@main.command("gallery")
@click.argument("name")
def gallery_cmd(name):
    """Print a built-in example spec."""
    try:
        click.echo(gallery.text(name), nl=False)
    except KeyError as exc:
        click.echo(f"error: {exc.args[0]}", err=True)
        sys.exit(EXIT_SPEC)


@main.command("list-gallery")
def list_gallery():
    """List the built-in example specs."""
    for name in gallery.names():
        prov = gallery.get("standard-r3" if name == "standard-rN" else name).provenance
        if name == "standard-rN":
            prov = "textbook untwisted T + T* of R^N, for any N from 0 to 8"
        click.echo(f"{name}: {prov}")


if __name__ == "__main__":  # pragma: no cover
    main()
