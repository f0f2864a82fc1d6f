"""Command-line entry point: one subcommand per registered analysis."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from shadowlab import __version__
from shadowlab.cli.analyses import BaseAnalysis, default_registry
from shadowlab.cli.runner import Report, run
from shadowlab.cli.specs import parse_system_spec, print_system_spec
from shadowlab.config import ExperimentParams, ExperimentSpec, Settings
from shadowlab.errors import AnalysisError, SpecValidationError

console = Console(stderr=True)

EXIT_VALIDATION = 2
EXIT_ANALYSIS = 3


def _setup_logging(debug: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False, rich_tracebacks=debug)],
        force=True,
    )


def _experiment_options(fn: Callable) -> Callable:
    options = [
        click.option(
            "--spec",
            "spec_path",
            required=True,
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="System spec (JSON)",
        ),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None),
        click.option("--seed", type=int, default=None),
        click.option("--horizon", type=int, default=None),
        click.option("--m", "m", type=int, default=None, help="delta = 2^-m"),
        click.option("--theta", type=float, default=None),
        click.option("--tail", type=float, default=None),
        click.option("--ratio", type=float, default=None),
        click.option("--trials", type=int, default=None),
        click.option("--length", type=int, default=None),
        click.option("--epsilon", type=float, default=None),
        click.option("--start", default=None, help="Start point, e.g. 01(10)"),
        click.option("--other", default=None, help="Second point for pair analyses"),
        click.option("--point", "points", multiple=True, help="Family member (repeatable)"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _summary(report: Report, out: Path | None) -> Table:
    table = Table(title=f"shadowlab {report.command}")
    table.add_column("Key", style="bold")
    table.add_column("Value")
    for key, value in sorted(report.payload.items()):
        if isinstance(value, (bool, int, float, str)):
            table.add_row(key, str(value))
    table.add_row("input hash", report.input_hash[:16], style="dim")
    if out is not None:
        table.add_row("report", str(out), style="dim")
    return table


def _fail(ctx: click.Context, error: Exception, code: int, debug: bool) -> None:
    if debug:
        console.print_exception(show_locals=False)
    stage = getattr(error, "stage", None)
    title = f"{type(error).__name__}" + (f" in {stage}" if stage else "")
    console.print(Panel(str(error), title=title, border_style="red"))
    ctx.exit(code)


def _make_command(analysis: BaseAnalysis) -> click.Command:
    @click.command(name=analysis.name, help=analysis.description)
    @_experiment_options
    @click.pass_context
    def command(ctx: click.Context, spec_path: Path, out: Path | None, **options: Any) -> None:
        settings: Settings = ctx.obj["settings"]
        debug: bool = ctx.obj["debug"]
        points = options.pop("points")
        raw = {k: v for k, v in options.items() if v is not None}
        if points:
            raw["points"] = list(points)
        try:
            spec = ExperimentSpec(
                command=analysis.name, system=spec_path, params=ExperimentParams(**raw), out=out
            )
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in first["loc"]) or "spec"
            message = f"{where}: {first['msg']}"
            console.print(Panel(message, title="invalid parameters", border_style="red"))
            ctx.exit(EXIT_VALIDATION)
            return
        try:
            report = run(spec, settings)
        except SpecValidationError as e:
            _fail(ctx, e, EXIT_VALIDATION, debug)
            return
        except AnalysisError as e:
            _fail(ctx, e, EXIT_ANALYSIS, debug)
            return
        console.print(_summary(report, out))
        if out is None:
            click.echo(report.to_json())

    return command


@click.group()
@click.version_option(__version__, prog_name="shadowlab")
@click.option("-c", "--config", "config_path", default=None, help="Path to config file")
@click.option(
    "--debug/--no-debug",
    default=None,
    help="Verbose logging and full tracebacks",
)
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, debug: bool | None) -> None:
    """shadowlab: shadowing and statistical chaos detectors for desk-scale systems."""
    settings = Settings.load(config_path)
    effective_debug = settings.runtime.debug if debug is None else debug
    _setup_logging(effective_debug)
    ctx.obj = {"settings": settings, "debug": effective_debug}


for _analysis in default_registry().all_analyses():
    cli.add_command(_make_command(_analysis))


@cli.command("analyses")
def list_analyses() -> None:
    """List the available analyses."""
    table = Table(title="Analyses")
    table.add_column("Command", style="cyan")
    table.add_column("Seed", justify="center")
    table.add_column("Description")
    for analysis in default_registry().all_analyses():
        table.add_row(analysis.name, "yes" if analysis.randomized else "", analysis.description)
    console.print(table)


@cli.command("print-spec")
@click.option(
    "--spec",
    "spec_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.pass_context
def print_spec(ctx: click.Context, spec_path: Path) -> None:
    """Parse a system spec and print its canonical form."""
    try:
        system = parse_system_spec(spec_path.read_text(encoding="utf-8"))
    except SpecValidationError as e:
        _fail(ctx, e, EXIT_VALIDATION, ctx.obj["debug"])
        return
    click.echo(print_system_spec(system))


def main() -> None:
    """Entry point."""
    cli()


if __name__ == "__main__":
    main()
