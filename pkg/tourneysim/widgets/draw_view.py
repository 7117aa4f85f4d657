from typing import Mapping

from rich.table import Table
from rich.text import Text

from ..models import GroupAssignment, LeagueSchedule, PotAssignment, Team
from ..theme import ThemeColors, get_pot_style


def _team_text(team_id: str, pots: PotAssignment, teams: Mapping[str, Team], colors: ThemeColors) -> Text:
    name = teams[team_id].name if team_id in teams else team_id
    return Text(name, style=get_pot_style(pots.pot_of.get(team_id, -1) + 1, colors))


def pot_table(pots: PotAssignment, strengths: list[float], teams: Mapping[str, Team], colors: ThemeColors) -> Table:
    """Pots side by side with their mean Elo in the footer."""
    table = Table(
        title=f"Pots ({pots.design.value} design, {pots.policy.value} seeding)",
        header_style="bold",
        show_footer=True,
    )
    for p, strength in enumerate(strengths, start=1):
        table.add_column(f"Pot {p}", footer=f"mean Elo {strength:.2f}", style=get_pot_style(p, colors))
    for row in zip(*pots.pots):
        table.add_row(*(teams[t].name for t in row))
    return table


def group_table(
    assignment: GroupAssignment,
    pots: PotAssignment,
    teams: Mapping[str, Team],
    colors: ThemeColors,
) -> Table:
    """Groups as columns, one row per pot."""
    table = Table(title="Group stage draw", header_style="bold")
    for label in assignment.group_labels:
        table.add_column(f"Group {label}")
    for p in range(len(pots.pots)):
        table.add_row(*(_team_text(members[p], pots, teams, colors) for members in assignment.groups))
    return table


def league_table(
    schedule: LeagueSchedule,
    pots: PotAssignment,
    teams: Mapping[str, Team],
    colors: ThemeColors,
) -> Table:
    """One row per team: its home and away opponent from every pot."""
    table = Table(title="League phase draw", header_style="bold")
    table.add_column("Team", min_width=20)
    for p in range(1, len(pots.pots) + 1):
        table.add_column(f"Pot {p} home")
        table.add_column(f"Pot {p} away")

    home_vs: dict[tuple[str, int], str] = {}
    away_vs: dict[tuple[str, int], str] = {}
    for h, a in schedule.fixtures:
        home_vs[h, pots.pot_of.get(a, -1)] = a
        away_vs[a, pots.pot_of.get(h, -1)] = h

    for t in pots.team_ids:
        cells = [_team_text(t, pots, teams, colors)]
        for p in range(len(pots.pots)):
            for lookup in (home_vs, away_vs):
                opponent = lookup.get((t, p))
                cells.append(_team_text(opponent, pots, teams, colors) if opponent else Text("-"))
        table.add_row(*cells)
    return table
