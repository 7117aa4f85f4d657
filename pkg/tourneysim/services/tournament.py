"""One tournament realization: first stage, ranking and Round-of-16 qualifiers."""
from __future__ import annotations

from itertools import permutations
from typing import Mapping

import numpy as np

from ..models import (
    Design,
    DrawOutcome,
    GroupAssignment,
    LeagueSchedule,
    QualificationOutcome,
    QualificationRoute,
    RankedTable,
    Team,
)
from ..models.match import R16_SIZE
from .match_simulator import DEFAULT_GOAL_MODEL, GoalModel, sample_fixtures, sample_tie_winner
from .ranking import rank_group, rank_league, tabulate

GROUP_QUALIFIERS = 2
DIRECT_QUALIFIERS = 8
PLAYOFF_FIRST_RANK = 9
PLAYOFF_LAST_RANK = 24


def group_tables(
    assignment: GroupAssignment,
    teams: Mapping[str, Team],
    model: GoalModel,
    rng: np.random.Generator,
) -> list[RankedTable]:
    """Simulate every group as a double round-robin and rank it."""
    group_fixtures = [list(permutations(members, 2)) for members in assignment.groups]
    results = sample_fixtures(
        [(teams[h], teams[a]) for fixtures in group_fixtures for h, a in fixtures], model, rng
    )

    tables = []
    start = 0
    for members, fixtures in zip(assignment.groups, group_fixtures):
        played = results[start:start + len(fixtures)]
        start += len(fixtures)
        tables.append(rank_group(tabulate(played, members), played, rng))
    return tables


def play_group_stage(
    assignment: GroupAssignment,
    teams: Mapping[str, Team],
    model: GoalModel,
    rng: np.random.Generator,
) -> QualificationOutcome:
    """Old design: the top two of each group qualify."""
    qualified = [
        t for table in group_tables(assignment, teams, model, rng)
        for t in table.ordering[:GROUP_QUALIFIERS]
    ]
    return QualificationOutcome(
        r16=frozenset(qualified),
        via={t: QualificationRoute.GROUP_TOP2 for t in qualified},
    )


def play_league_phase(
    schedule: LeagueSchedule,
    teams: Mapping[str, Team],
    model: GoalModel,
    rng: np.random.Generator,
) -> RankedTable:
    """Simulate all league fixtures and rank the single table."""
    fixtures = schedule.sorted_fixtures()
    results = sample_fixtures([(teams[h], teams[a]) for h, a in fixtures], model, rng)
    participants = sorted({t for fixture in fixtures for t in fixture})
    return rank_league(tabulate(results, participants), rng)


def playoff_pairs(table: RankedTable) -> list[tuple[tuple[str, str], tuple[str, str]]]:
    """Seeded pair k (ranks 9/10, 11/12, ...) against unseeded pair 5-k (... 21/22, 23/24)."""
    if len(table.ordering) < PLAYOFF_LAST_RANK:
        raise ValueError(f"play-offs need at least {PLAYOFF_LAST_RANK} teams, got {len(table.ordering)}")
    ranked = table.ordering
    seeded = [ranked[i:i + 2] for i in range(PLAYOFF_FIRST_RANK - 1, 16, 2)]
    unseeded = [ranked[i:i + 2] for i in range(16, PLAYOFF_LAST_RANK, 2)]
    return [(tuple(seeded[k]), tuple(unseeded[len(unseeded) - 1 - k])) for k in range(len(seeded))]


def playoff_round(
    table: RankedTable,
    teams: Mapping[str, Team],
    rng: np.random.Generator,
) -> QualificationOutcome:
    """New design: ranks 1-8 qualify, ranks 9-24 play two-legged play-offs.

    Within each pairing of a seeded and an unseeded pair, a fair coin decides
    which unseeded team each seeded team meets.
    """
    via = {t: QualificationRoute.LEAGUE_TOP8 for t in table.ordering[:DIRECT_QUALIFIERS]}
    for (s1, s2), (u1, u2) in playoff_pairs(table):
        if rng.random() < 0.5:
            u1, u2 = u2, u1
        for seeded, unseeded in ((s1, u1), (s2, u2)):
            winner = sample_tie_winner(teams[seeded], teams[unseeded], rng)
            via[winner] = QualificationRoute.PLAYOFF_WIN
    return QualificationOutcome(r16=frozenset(via), via=via)


def qualifiers_t16(table: RankedTable) -> QualificationOutcome:
    """Play-off-free variant: the top 16 of the league table qualify."""
    if len(table.ordering) < R16_SIZE:
        raise ValueError(f"need at least {R16_SIZE} teams, got {len(table.ordering)}")
    top = table.ordering[:R16_SIZE]
    return QualificationOutcome(
        r16=frozenset(top),
        via={t: QualificationRoute.LEAGUE_TOP16 for t in top},
    )


def play_tournament(
    design: Design,
    draw: DrawOutcome,
    teams: Mapping[str, Team],
    rng: np.random.Generator,
    model: GoalModel = DEFAULT_GOAL_MODEL,
) -> QualificationOutcome:
    """Play one scenario of a design on a fixed draw."""
    if design is Design.OLD:
        if not isinstance(draw, GroupAssignment):
            raise TypeError("old design needs a group assignment")
        return play_group_stage(draw, teams, model, rng)

    if not isinstance(draw, LeagueSchedule):
        raise TypeError(f"{design.value} design needs a league schedule")
    table = play_league_phase(draw, teams, model, rng)
    if design is Design.NEW_T16:
        return qualifiers_t16(table)
    return playoff_round(table, teams, rng)
