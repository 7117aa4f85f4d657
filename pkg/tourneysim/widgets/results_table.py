import pandas as pd
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..services.decomposition import DecompositionReport, ReformSummary
from ..theme import ThemeColors, get_change_style, get_pot_style


def _percent(value: float | None, digits: int = 2) -> str:
    return "-" if value is None else f"{100 * value:.{digits}f}"


def _sigma(value: float | None) -> str:
    return "-" if value is None else f"{value:.4f}"


def probability_table(frame: pd.DataFrame, colors: ThemeColors, title: str = "") -> Table:
    """Summary of probabilities.csv: one row per team, best chance first."""
    table = Table(title=title, header_style="bold", row_styles=["", "dim"])
    table.add_column("Team", min_width=20)
    table.add_column("Elo", justify="right")
    table.add_column("Pot", justify="center")
    table.add_column("P(R16) %", justify="right")
    table.add_column("σ", justify="right")
    table.add_column("se", justify="right")

    for row in frame.sort_values("p_qualify", ascending=False, kind="stable").itertuples(index=False):
        table.add_row(
            row.name,
            f"{row.elo:.0f}",
            Text(str(row.pot), style=get_pot_style(int(row.pot), colors)),
            _percent(row.p_qualify),
            _sigma(row.sigma),
            _sigma(row.se_p),
        )
    return table


def decomposition_table(
    report: DecompositionReport,
    names: dict[str, str],
    colors: ThemeColors,
) -> Table:
    """Per-team draw impact in both designs and the three effects."""
    table = Table(title="Draw impact, old vs new design", header_style="bold")
    table.add_column("Team", min_width=20)
    for header in ("σ old", "σ new", "change %", "seeding", "play-offs", "format"):
        table.add_column(header, justify="right")

    for t in report.teams:
        icon, color = get_change_style(t.pct_change, colors)
        change = "-" if t.pct_change is None else f"{icon} {t.pct_change:.2f}"
        table.add_row(
            names.get(t.team_id, t.team_id),
            _sigma(t.sigma_o),
            _sigma(t.sigma_n),
            Text(change, style=color),
            _sigma(t.dV1),
            _sigma(t.dV2),
            _sigma(t.dV3),
        )
    return table


def summary_panel(summary: ReformSummary, names: dict[str, str]) -> Panel:
    """Headline numbers of the reform."""
    team, change = summary.smallest_reduction
    absolute, abs_old, abs_new = summary.largest_absolute_loser
    relative, rel_old, rel_new = summary.largest_relative_loser
    lines = [
        f"Draw impact fell for {summary.reduced_count} of {summary.comparable_count} teams, "
        f"by {-summary.mean_pct_change:.1f}% on average.",
        f"Smallest reduction: {names.get(team, team)} ({change:+.2f}%).",
        f"Largest absolute loss: {names.get(absolute, absolute)} "
        f"({_percent(abs_old, 1)}% → {_percent(abs_new, 1)}%).",
        f"Largest relative loss: {names.get(relative, relative)} "
        f"({_percent(rel_old, 1)}% → {_percent(rel_new, 1)}%).",
    ]
    return Panel("\n".join(lines), title="Reform summary", expand=False)
