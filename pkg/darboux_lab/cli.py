"""Darboux Lab CLI - Main entry point."""

import sys
from pathlib import Path
from typing import Callable

import click
from rich import print as rprint
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from darboux_lab.checks import SuiteReport, list_suites, run_suite
from darboux_lab.export import CsvTable, write_json, write_tables
from darboux_lab.figures import coherent_tables, potential_tables, states_tables
from darboux_lab.models import Scenario, list_presets, load_scenario, parse_complex
from darboux_lab.utils import get_logger, load_config, resolve_threads
from darboux_lab.utils.errors import DarbouxLabError, VerificationFailed

console = Console()
logger = get_logger(__name__)

REPORT_NAME = "verify_report.json"


def scenario_options(func: Callable) -> Callable:
    """--config, --preset, --out and --threads shared by every computing command."""
    func = click.option(
        "--threads", type=int, default=None, help="Worker threads (default: DARBOUX_LAB_THREADS)"
    )(func)
    func = click.option("--out", type=click.Path(file_okay=False), help="Output directory")(func)
    func = click.option("--preset", "-p", help="Named preset (see 'darboux-lab presets')")(func)
    func = click.option(
        "--config", "-c", type=click.Path(dir_okay=False), help="Scenario JSON file"
    )(func)
    return func


def _output_dir(scenario: Scenario, out: str | None) -> Path:
    """--out first, then the scenario's output_dir, then DARBOUX_LAB_OUT."""
    return Path(out or scenario.output_dir or load_config()["output_dir"])


def _header(command: str, scenario: Scenario, out_dir: Path) -> None:
    model = scenario.model
    lines = [
        f"[bold cyan]Darboux Lab[/bold cyan] · {command}",
        f"Scenario: [blue]{scenario.name}[/blue]",
        f"a={model.a:g}, b={model.b:g}, c={model.c:g}, lambda={model.lam:g}",
    ]
    if scenario.darboux is not None:
        spec = scenario.darboux
        lines.append(f"epsilon={spec.epsilon:g}, k_a={spec.k_a:g}, k_b={spec.k_b:g}")
    lines.append(f"[dim]Output: {out_dir}[/dim]")
    rprint(Panel("\n".join(lines), title_align="center"))


def _fail(e: DarbouxLabError) -> None:
    rprint(f"\n[bold red]Error:[/bold red] {e}")
    logger.debug("Command failed", exc_info=True)
    sys.exit(e.exit_code)


def _export(
    command: str,
    config: str | None,
    preset: str | None,
    out: str | None,
    threads: int | None,
    build: Callable[[Scenario, Path, int], dict[Path, CsvTable]],
) -> None:
    try:
        scenario = load_scenario(config, preset)
        workers = resolve_threads(threads)
        out_dir = _output_dir(scenario, out)
        _header(command, scenario, out_dir)
        with console.status(f"[bold cyan]▶ Computing {command} tables...", spinner="dots"):
            tables = build(scenario, out_dir, workers)
        paths = write_tables(tables)
    except DarbouxLabError as e:
        _fail(e)
        return
    rprint(f"\n[bold green]Wrote {len(paths)} file(s)[/bold green] to {out_dir}")
    for path in paths:
        rprint(f"  [blue]{path.name}[/blue]")


@click.group()
@click.version_option(version="0.1.0", prog_name="darboux-lab")
def cli() -> None:
    """Darboux Lab - nonstationary oscillators from time-dependent Darboux transformations."""
    pass


@cli.command()
@scenario_options
def potential(config: str | None, preset: str | None, out: str | None, threads: int | None) -> None:
    """Write V0, V1 and V1 - V0 curves and space-time maps."""
    _export("potential", config, preset, out, threads, potential_tables)


@cli.command()
@scenario_options
@click.option("--n", "n_list", type=click.IntRange(min=0), multiple=True, help="State index")
def states(
    config: str | None,
    preset: str | None,
    out: str | None,
    threads: int | None,
    n_list: tuple[int, ...],
) -> None:
    """Write |psi_n(x, t)|**2 density maps (|phi_n|**2 without a darboux section)."""

    def build(scenario: Scenario, out_dir: Path, workers: int) -> dict[Path, CsvTable]:
        if n_list:
            scenario = scenario.model_copy(update={"n_list": list(n_list)})
        return states_tables(scenario, out_dir, workers)

    _export("states", config, preset, out, threads, build)


@cli.command()
@scenario_options
@click.option("--z", "z_texts", multiple=True, help="Eigenvalue such as 1j or 3-3i")
@click.option(
    "--family",
    type=click.Choice(["phi", "psi", "psi_tilde"]),
    default=None,
    help="Coherent family (default: scenario family)",
)
def coherent(
    config: str | None,
    preset: str | None,
    out: str | None,
    threads: int | None,
    z_texts: tuple[str, ...],
    family: str | None,
) -> None:
    """Write coherent-state density maps."""

    def build(scenario: Scenario, out_dir: Path, workers: int) -> dict[Path, CsvTable]:
        z_values = [parse_complex(text) for text in z_texts] or None
        return coherent_tables(scenario, out_dir, workers, family, z_values)

    _export("coherent", config, preset, out, threads, build)


def _print_report(report: SuiteReport) -> None:
    table = Table(title=f"{report.suite} checks · {report.scenario}")
    table.add_column("Suite", style="dim")
    table.add_column("Check")
    table.add_column("Measured", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Result")
    for result in report.results:
        if result.skipped:
            status = "[yellow]skipped[/yellow]"
        elif result.passed:
            status = "[green]pass[/green]" + (" (control)" if result.expected_failure else "")
        else:
            status = "[red]FAIL[/red]"
        sign = "<" if result.comparison == "below" else ">"
        measured = "-" if result.measured != result.measured else f"{result.measured:.3e}"
        table.add_row(
            result.suite, result.name, measured, f"{sign} {result.tolerance:.1e}", status
        )
    console.print(table)
    for result in report.failures:
        if result.detail:
            rprint(f"  [red]{result.name}[/red]: {result.detail}")


@cli.command()
@scenario_options
@click.option(
    "--suite",
    type=click.Choice(list_suites()),
    default="all",
    show_default=True,
    help="Verification suite",
)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), help="JSON report path")
def verify(
    config: str | None,
    preset: str | None,
    out: str | None,
    threads: int | None,
    suite: str,
    report_path: str | None,
) -> None:
    """Run verification checks and write a JSON report."""
    try:
        scenario = load_scenario(config, preset)
        workers = resolve_threads(threads)
        out_dir = _output_dir(scenario, out)
        _header(f"verify {suite}", scenario, out_dir)
        with console.status(f"[bold cyan]▶ Running {suite} checks...", spinner="dots"):
            report = run_suite(suite, scenario, workers)
        _print_report(report)
        write_json(Path(report_path) if report_path else out_dir / REPORT_NAME, report.to_dict())
        if not report.passed:
            names = ", ".join(result.name for result in report.failures)
            raise VerificationFailed(f"{len(report.failures)} check(s) failed: {names}")
    except DarbouxLabError as e:
        _fail(e)
        return
    rprint(f"\n[bold green]All {len(report.results)} checks passed[/bold green]")


@cli.command()
def presets() -> None:
    """List the shipped scenario presets."""
    console.print("\n[bold cyan]Available Presets[/bold cyan]\n")
    for name, desc in list_presets().items():
        console.print(f"  [blue]{name}[/blue]: {desc}")
    console.print()


@cli.command()
@click.option("--config", "-c", type=click.Path(dir_okay=False), help="Scenario JSON file")
@click.option("--preset", "-p", help="Named preset")
def status(config: str | None, preset: str | None) -> None:
    """Show resolved configuration and, if given, the scenario."""
    try:
        settings = load_config()
        console.print("\n[bold cyan]Darboux Lab Status[/bold cyan]\n")
        console.print(f"  Threads: {settings['threads']}")
        console.print(f"  Output Dir: {settings['output_dir']}")
        console.print(f"  Log Dir: {settings['log_dir'] or '~/.darboux_lab/logs'}")
        if config or preset:
            scenario = load_scenario(config, preset)
            console.print(f"  Scenario: [blue]{scenario.name}[/blue]")
            for key, value in scenario.metadata().items():
                console.print(f"    {key}: {value}")
            console.print(f"    trajectories: {len(scenario.trajectories)}")
            console.print(f"    times: {len(scenario.times)}")
        console.print()
    except DarbouxLabError as e:
        _fail(e)


def main() -> None:
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
