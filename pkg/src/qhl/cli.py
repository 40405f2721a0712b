"""Command-line interface.

Exit codes: 0 on success, 1 when ``--strict`` is set and some result is
invalid, meaningless, inconsistent or an error, 2 on input errors.
"""

from __future__ import annotations

import re
import sys

import click

from . import numeric
from .errors import QHLError
from .formula import atoms, parse, render as render_formula, truth_table
from .framework import Argument, assess, consistency_audit
from .scenarios import Scenario, demo_ghz, demo_spin_boxes, render
from .scenarios.report import Report
from .subspace import Projector, spin_projector

_FACTOR_RE = re.compile(r"^(?:([xyz])([+-])|(I|0)(\d*))$")


def parse_ref(ref: str, scenario: Scenario | None = None) -> Projector:
    """Resolve a ``--bind`` reference.

    A reference is a tensor product of factors joined by ``*`` or ``⊗``.
    Factors are spin projectors (``x+``, ``z-``, ...), ``I`` or ``0``
    optionally followed by a dimension (default 2), or projector names from
    the ``--from`` scenario file.
    """
    mats = []
    for raw in re.split(r"\s*[*⊗]\s*", ref.strip()):
        if scenario is not None and raw in scenario.projectors:
            mats.append(scenario.projector(raw).matrix)
            continue
        m = _FACTOR_RE.match(raw)
        if m is None:
            raise click.BadParameter(f"unknown projector factor {raw!r} in {ref!r}")
        if m.group(1):
            mats.append(spin_projector(m.group(1), 1 if m.group(2) == "+" else -1).matrix)
        else:
            d = int(m.group(4) or 2)
            p = Projector.identity(d) if m.group(3) == "I" else Projector.zero(d)
            mats.append(p.matrix)
    return Projector(numeric.tensor(*mats))


class Context:
    def __init__(self, tolerance, fmt, strict, label_dim):
        self.tolerance = tolerance
        self.fmt = fmt
        self.strict = strict
        self.label_dim = label_dim

    def emit(self, report: Report):
        click.echo(render(report, self.fmt))
        if self.strict and report.failed():
            sys.exit(1)


@click.group()
@click.option("--tolerance", type=float, default=None,
              help="Structural tolerance (default 1e-10, or $QHL_TOLERANCE).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--strict", is_flag=True, help="Exit 1 on invalid/meaningless/inconsistent results.")
@click.option("--label-dim", type=int, default=2, show_default=True,
              help="Label space dimension for the spin-boxes demo.")
@click.pass_context
def cli(ctx, tolerance, fmt, strict, label_dim):
    """Quantum logic and consistent-histories reasoning."""
    if tolerance is not None:
        if tolerance <= 0:
            raise click.BadParameter("tolerance must be positive", param_hint="--tolerance")
        ctx.with_resource(numeric.tolerance(tolerance))
    ctx.obj = Context(numeric.get_tolerance(), fmt, strict, label_dim)


@cli.group()
def demo():
    """Run one of the built-in demonstrations."""


@demo.command("spin-boxes")
@click.option("--label-overlap", type=click.FloatRange(0, 1), default=0.0, show_default=True)
@click.pass_obj
def demo_spin_boxes_cmd(obj: Context, label_overlap):
    """Labeled spin preparations and the single framework rule."""
    if obj.label_dim < 2:
        raise click.BadParameter("must be at least 2", param_hint="--label-dim")
    obj.emit(demo_spin_boxes(obj.label_dim, label_overlap, obj.tolerance))


@demo.command("ghz")
@click.pass_obj
def demo_ghz_cmd(obj: Context):
    """GHZ eigenvalues and the exhaustive value-assignment search."""
    obj.emit(demo_ghz(obj.tolerance))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def check(obj: Context, path):
    """Run a JSON scenario file."""
    try:
        scenario = Scenario.load(path)
    except QHLError as e:
        raise click.UsageError(f"{path}: {e}") from None
    obj.emit(scenario.run(obj.tolerance))


@cli.command()
@click.argument("argument")
@click.option("--bind", "binds", multiple=True, metavar="NAME=REF",
              help="Bind an atom, e.g. A=z+*I or B=x+.")
@click.option("--from", "source", type=click.Path(exists=True, dir_okay=False),
              help="Scenario file whose projectors may be named in --bind.")
@click.pass_obj
def prove(obj: Context, argument, binds, source):
    """Assess "P1; P2 |- C" under the single framework rule."""
    try:
        scenario = Scenario.load(source) if source else None
        binding = {}
        for b in binds:
            name, sep, ref = b.partition("=")
            if not sep or not name.strip():
                raise click.BadParameter(f"expected NAME=REF, got {b!r}", param_hint="--bind")
            binding[name.strip()] = parse_ref(ref, scenario)
        arg = Argument.from_text(argument, binding)
        verdict = assess(arg, obj.tolerance)
    except QHLError as e:
        raise click.UsageError(str(e)) from None
    text = "; ".join(render_formula(p) for p in arg.premises) + " |- " + render_formula(arg.conclusion)
    report = Report("prove", obj.tolerance)
    report.add("argument", "argument", verdict.kind, argument=text.strip(), **verdict.to_dict())
    obj.emit(report)


@cli.command("truth-table")
@click.argument("formula")
@click.pass_obj
def truth_table_cmd(obj: Context, formula):
    """Print the classical truth table of a formula."""
    try:
        f = parse(formula)
        rows = truth_table(f)
    except QHLError as e:
        raise click.UsageError(str(e)) from None
    names = sorted(atoms(f))
    if obj.fmt == "json":
        report = Report("truth-table", obj.tolerance)
        report.add("formula", "truth-table", "ok", formula=render_formula(f), atoms=names,
                   rows=[[a[n] for n in names] + [v] for a, v in rows])
        click.echo(render(report, "json"))
        return
    header = names + [render_formula(f)]
    widths = [max(len(h), 1) for h in header]
    click.echo(" | ".join(h.ljust(w) for h, w in zip(header, widths)))
    click.echo("-+-".join("-" * w for w in widths))
    for a, v in rows:
        cells = ["T" if a[n] else "F" for n in names] + ["T" if v else "F"]
        click.echo(" | ".join(c.ljust(w) for c, w in zip(cells, widths)))


@cli.command()
@click.option("--dim", type=click.IntRange(1, 8), required=True)
@click.option("--trials", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_obj
def audit(obj: Context, dim, trials, seed):
    """Randomized search for a within-framework contradiction."""
    result = consistency_audit(dim, trials, seed)
    report = Report("audit", obj.tolerance)
    report.add("consistency-audit", "audit",
               "consistent" if result.violations == 0 else "inconsistent", **result.to_dict())
    obj.emit(report)


def main():
    cli(prog_name="qhl")


if __name__ == "__main__":
    main()
