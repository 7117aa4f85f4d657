"""Command-line entry points.

    tourneysim simulate --design new --seeding uefa --draws 1000 --scenarios 1000
    tourneysim decompose --draws 200 --scenarios 500 --out results/
    tourneysim draw --design old --seed 7
    tourneysim validate results/draw.csv --seeding uefa

Exit status: 0 success, 1 failed validation or infeasible draw,
2 usage, configuration, input or I/O error.
"""
from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Iterator, Optional

import typer
from rich.console import Console
from rich.live import Live
from rich.logging import RichHandler

from .config import ConfigError, RunManifest, load_config, resolve_manifest
from .models import (
    Design,
    GroupAssignment,
    PotAssignmentError,
    RosterError,
    SeasonRoster,
    SeedingPolicy,
    assign_pots,
    pot_strengths,
)
from .services import (
    DecompositionError,
    DrawInfeasibleError,
    DumpParseError,
    decompose,
    draw_groups,
    draw_league,
    dump_draw,
    read_dump,
    run_config,
    summarize,
    validate_draw,
)
from .services.figures import figure_frames
from .services.montecarlo import DrawProbabilityMatrix, config_tag, participants
from .services.reports import decomposition_frame, per_draw_frame, probabilities_frame, write_csv
from .services.streams import draw_stream
from .theme import load_theme_colors
from .widgets import (
    ProgressView,
    decomposition_table,
    group_table,
    league_table,
    pot_table,
    probability_table,
    show_error,
    summary_panel,
    validation_table,
)

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2

# (design, seeding) of the five decomposition runs, in report order
DECOMPOSITION_RUNS = (
    (Design.OLD, SeedingPolicy.UEFA),
    (Design.NEW, SeedingPolicy.UEFA),
    (Design.OLD, SeedingPolicy.ELO),
    (Design.NEW, SeedingPolicy.ELO),
    (Design.NEW_T16, SeedingPolicy.ELO),
)

app = typer.Typer(
    help="Monte Carlo simulation of draw uncertainty in the old and new Champions League designs.",
    no_args_is_help=True,
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


SeasonOpt = Annotated[Optional[str], typer.Option("--season", help="Bundled season, e.g. 2024-25")]
TeamsOpt = Annotated[Optional[Path], typer.Option("--teams", help="Season CSV overriding --season")]
DesignOpt = Annotated[Optional[str], typer.Option("--design", help="old | new | new-t16")]
SeedingOpt = Annotated[Optional[str], typer.Option("--seeding", help="uefa | elo")]
DrawsOpt = Annotated[Optional[int], typer.Option("--draws", help="Number of draws D")]
ScenariosOpt = Annotated[Optional[int], typer.Option("--scenarios", help="Scenarios S per draw")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="Master seed (non-negative)")]
WorkersOpt = Annotated[
    Optional[int],
    typer.Option("--workers", help="Worker processes (default: $TOURNEYSIM_WORKERS, then all CPUs)"),
]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="Output directory")]
ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="TOML config file")]


def _setup_logging(level: int) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@app.callback()
def main_options(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log progress")] = False,
    debug: Annotated[bool, typer.Option("--debug", help="Log solver and sampler details")] = False,
) -> None:
    _setup_logging(logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING)


def _fail(message: str, code: int) -> typer.Exit:
    show_error(err_console, message)
    return typer.Exit(code)


@contextmanager
def _errors() -> Iterator[None]:
    """Map library errors to exit codes."""
    try:
        yield
    except (DrawInfeasibleError, DecompositionError) as e:
        raise _fail(str(e), EXIT_FAILURE) from e
    except (ConfigError, RosterError, PotAssignmentError, DumpParseError, ValueError) as e:
        raise _fail(str(e), EXIT_USAGE) from e
    except OSError as e:
        raise _fail(f"{e.strerror or e}: {e.filename}" if e.filename else str(e), EXIT_USAGE) from e


def _manifest(config_path: Path | None, **flags) -> RunManifest:
    if flags.get("teams") is not None:
        flags["teams"] = str(flags["teams"])
    if flags.get("out") is not None:
        flags["out"] = str(flags["out"])
    return resolve_manifest(load_config(config_path), **flags)


def _run(manifest: RunManifest, roster: SeasonRoster, runs, title: str) -> list[DrawProbabilityMatrix]:
    """Run several configurations under one live progress view."""
    colors = load_theme_colors(manifest.theme)
    view = ProgressView(title, [config_tag(d, s) for d, s in runs], colors)
    matrices = []
    with Live(view, console=err_console, transient=True, refresh_per_second=8):
        for index, (design, seeding) in enumerate(runs):
            view.start_step(index, manifest.draws)
            try:
                matrices.append(
                    run_config(roster, manifest.experiment(design, seeding), manifest.workers, view.advance)
                )
            except Exception:
                view.mark_error(index)
                raise
            view.finish_step(index)
    return matrices


@app.command()
def simulate(
    season: SeasonOpt = None,
    teams: TeamsOpt = None,
    design: DesignOpt = None,
    seeding: SeedingOpt = None,
    draws: DrawsOpt = None,
    scenarios: ScenariosOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    out: OutOpt = None,
    config: ConfigOpt = None,
) -> None:
    """Qualification probability and draw impact of every team for one design."""
    with _errors():
        manifest = _manifest(
            config, season=season, teams=teams, design=design, seeding=seeding, draws=draws,
            scenarios=scenarios, seed=seed, workers=workers, out=out,
        )
        roster = manifest.load_roster()
        colors = load_theme_colors(manifest.theme)
        (matrix,) = _run(manifest, roster, [(manifest.design, manifest.seeding)], "Simulating")

        pots = assign_pots(participants(roster, manifest.design), manifest.design, manifest.seeding)
        frame = probabilities_frame(matrix, roster, pots)
        write_csv(frame, manifest.out / "probabilities.csv")
        write_csv(per_draw_frame(matrix), manifest.out / "per_draw.csv")

        console.print(pot_table(pots, pot_strengths(pots, roster.by_id), roster.by_id, colors))
        console.print(probability_table(
            frame, colors, title=f"Round of 16 qualification ({config_tag(manifest.design, manifest.seeding)})"
        ))
        console.print(f"Reports written to {manifest.out}")


@app.command("decompose")
def decompose_command(
    season: SeasonOpt = None,
    teams: TeamsOpt = None,
    draws: DrawsOpt = None,
    scenarios: ScenariosOpt = None,
    seed: SeedOpt = None,
    workers: WorkersOpt = None,
    out: OutOpt = None,
    config: ConfigOpt = None,
) -> None:
    """Run the five configurations and split the reform's effect on draw impact."""
    with _errors():
        manifest = _manifest(
            config, season=season, teams=teams, draws=draws, scenarios=scenarios,
            seed=seed, workers=workers, out=out,
        )
        roster = manifest.load_roster()
        colors = load_theme_colors(manifest.theme)
        o_uefa, n_uefa, o_elo, n_elo, n_elo_t16 = _run(manifest, roster, DECOMPOSITION_RUNS, "Decomposing")

        report = decompose(n_uefa, o_uefa, n_elo, o_elo, n_elo_t16)
        write_csv(decomposition_frame(report, roster), manifest.out / "decomposition.csv")
        for stem, frame in figure_frames(report, roster).items():
            write_csv(frame, manifest.out / f"{stem}.csv")

        names = {t.id: t.name for t in roster.teams}
        console.print(decomposition_table(report, names, colors))
        console.print(summary_panel(summarize(report), names))
        console.print(f"Reports written to {manifest.out}")


@app.command()
def draw(
    season: SeasonOpt = None,
    teams: TeamsOpt = None,
    design: DesignOpt = None,
    seeding: SeedingOpt = None,
    seed: SeedOpt = None,
    index: Annotated[int, typer.Option("--index", min=0, help="Draw index within the seed")] = 0,
    output: Annotated[Optional[Path], typer.Option("--output", "-o", help="Dump file (default: OUT/draw.csv)")] = None,
    out: OutOpt = None,
    config: ConfigOpt = None,
) -> None:
    """Sample one draw, dump it as CSV and check every constraint."""
    with _errors():
        manifest = _manifest(
            config, season=season, teams=teams, design=design, seeding=seeding, seed=seed, out=out,
        )
        roster = manifest.load_roster()
        colors = load_theme_colors(manifest.theme)
        by_id = roster.by_id
        pots = assign_pots(participants(roster, manifest.design), manifest.design, manifest.seeding)

        rng = draw_stream(manifest.seed, config_tag(manifest.design, manifest.seeding), index)
        if manifest.design is Design.OLD:
            outcome = draw_groups(pots, by_id, rng, manifest.retry_budget)
            view = group_table(outcome, pots, by_id, colors)
        else:
            outcome = draw_league(pots, by_id, rng)
            view = league_table(outcome, pots, by_id, colors)

        path = output or manifest.out / "draw.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(dump_draw(outcome))
        logger.info(f"Wrote {path}")

        report = validate_draw(outcome, pots, by_id)
        console.print(pot_table(pots, pot_strengths(pots, by_id), by_id, colors))
        console.print(view)
        console.print(validation_table(report, colors))
        console.print(f"Draw written to {path}")
        if not report.ok:
            raise typer.Exit(EXIT_FAILURE)


@app.command()
def validate(
    path: Annotated[Path, typer.Argument(help="Group or league draw dump")],
    season: SeasonOpt = None,
    teams: TeamsOpt = None,
    seeding: SeedingOpt = None,
    config: ConfigOpt = None,
) -> None:
    """Check a draw dump against every draw constraint (exit 1 on violations)."""
    with _errors():
        manifest = _manifest(config, season=season, teams=teams, seeding=seeding)
        outcome = read_dump(path.read_bytes())
        roster = manifest.load_roster()
        colors = load_theme_colors(manifest.theme)

        design = Design.OLD if isinstance(outcome, GroupAssignment) else Design.NEW
        pots = assign_pots(participants(roster, design), design, manifest.seeding)
        report = validate_draw(outcome, pots, roster.by_id)

    console.print(validation_table(report, colors))
    if not report.ok:
        for violation in report.violations:
            err_console.print(f"  {violation}", highlight=False)
        raise _fail(f"{path} violates {len(report.violations)} draw constraint(s)", EXIT_FAILURE)
    console.print(f"{path}: all draw constraints hold")
