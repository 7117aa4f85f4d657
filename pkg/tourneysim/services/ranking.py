from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..models import MatchResult, RankedTable, TeamStats, TiebreakEntry

logger = logging.getLogger(__name__)

POINTS_FOR_WIN = 3
POINTS_FOR_DRAW = 1

GROUP_CRITERIA = (
    "points",
    "head_to_head_points",
    "head_to_head_goal_difference",
    "head_to_head_goals_scored",
    "goal_difference",
    "goals_scored",
)

LEAGUE_CRITERIA = (
    "points",
    "goal_difference",
    "goals_scored",
    "away_goals_scored",
    "wins",
    "away_wins",
    "opponent_points",
    "opponent_goal_difference",
    "opponent_goals_scored",
)

RANDOM_CRITERION = "random"


def tabulate(results: Iterable[MatchResult], team_ids: Iterable[str] = ()) -> dict[str, TeamStats]:
    """Aggregate match results into per-team records.

    Args:
        results: Played matches
        team_ids: Teams to include even without a result (in this order first)

    Returns:
        Map team id -> TeamStats; opponents are listed in match order
    """
    rows: dict[str, dict] = {}

    def row(team_id: str) -> dict:
        if team_id not in rows:
            rows[team_id] = defaultdict(int, opponents=[])
        return rows[team_id]

    for team_id in team_ids:
        row(team_id)

    for m in results:
        home, away = row(m.home), row(m.away)
        home["opponents"].append(m.away)
        away["opponents"].append(m.home)
        home["goals_for"] += m.home_goals
        home["goals_against"] += m.away_goals
        away["goals_for"] += m.away_goals
        away["goals_against"] += m.home_goals
        away["away_goals_for"] += m.away_goals
        if m.home_goals > m.away_goals:
            home["wins"] += 1
            away["losses"] += 1
        elif m.home_goals < m.away_goals:
            away["wins"] += 1
            away["away_wins"] += 1
            home["losses"] += 1
        else:
            home["draws"] += 1
            away["draws"] += 1

    return {
        team_id: TeamStats(
            team_id=team_id,
            points=POINTS_FOR_WIN * r["wins"] + POINTS_FOR_DRAW * r["draws"],
            wins=r["wins"],
            draws=r["draws"],
            losses=r["losses"],
            goals_for=r["goals_for"],
            goals_against=r["goals_against"],
            away_goals_for=r["away_goals_for"],
            away_wins=r["away_wins"],
            opponents=tuple(r["opponents"]),
        )
        for team_id, r in rows.items()
    }


def _order(
    stats: Mapping[str, TeamStats],
    keys: Mapping[str, tuple],
    criteria: Sequence[str],
    rng: np.random.Generator,
) -> RankedTable:
    """Sort by descending criterion keys, then by a uniformly random priority.

    The random priorities are drawn for the teams in sorted id order, so the
    stream is consumed identically however `stats` was built.
    """
    team_ids = sorted(stats)
    priority = dict(zip(team_ids, rng.permutation(len(team_ids)).tolist()))
    ordering = sorted(team_ids, key=lambda t: (keys[t], priority[t]), reverse=True)

    log = []
    for upper, lower in zip(ordering, ordering[1:]):
        if stats[upper].points != stats[lower].points:
            continue
        criterion = next(
            (name for name, a, b in zip(criteria, keys[upper], keys[lower]) if a != b),
            RANDOM_CRITERION,
        )
        log.append(TiebreakEntry(upper=upper, lower=lower, criterion=criterion))

    return RankedTable(ordering=tuple(ordering), stats=dict(stats), tiebreak_log=tuple(log))


def _mini_table(tied: set[str], results: Iterable[MatchResult]) -> dict[str, tuple[int, int, int]]:
    """(points, goal difference, goals scored) in the matches among `tied` only."""
    among = tabulate((m for m in results if m.home in tied and m.away in tied), sorted(tied))
    return {t: (s.points, s.goal_difference, s.goals_for) for t, s in among.items()}


def rank_group(
    stats: Mapping[str, TeamStats],
    results: Sequence[MatchResult],
    rng: np.random.Generator,
) -> RankedTable:
    """Rank one old-design group.

    Teams level on points are separated by a head-to-head table over the
    matches among all of them, computed once for the whole tied set and
    never re-applied to a remaining sub-tie. Then overall goal difference,
    overall goals scored and finally a random draw decide.

    Args:
        stats: Records of the group's teams
        results: The group's matches (for head-to-head)
        rng: Random stream for the final tiebreak
    """
    by_points: dict[int, set[str]] = defaultdict(set)
    for team_id, s in stats.items():
        by_points[s.points].add(team_id)

    head_to_head: dict[str, tuple[int, int, int]] = {}
    for tied in by_points.values():
        if len(tied) > 1:
            head_to_head.update(_mini_table(tied, results))
        else:
            head_to_head.update({t: (0, 0, 0) for t in tied})

    keys = {
        t: (s.points, *head_to_head[t], s.goal_difference, s.goals_for)
        for t, s in stats.items()
    }
    return _order(stats, keys, GROUP_CRITERIA, rng)


def rank_league(stats: Mapping[str, TeamStats], rng: np.random.Generator) -> RankedTable:
    """Rank the league phase table.

    Criteria in order: points, goal difference, goals scored, away goals
    scored, wins, away wins, then the collective points, goal difference and
    goals scored of the team's opponents, then a random draw.
    """
    keys = {}
    for t, s in stats.items():
        opponents = [stats[o] for o in s.opponents]
        keys[t] = (
            s.points,
            s.goal_difference,
            s.goals_for,
            s.away_goals_for,
            s.wins,
            s.away_wins,
            sum(o.points for o in opponents),
            sum(o.goal_difference for o in opponents),
            sum(o.goals_for for o in opponents),
        )
    return _order(stats, keys, LEAGUE_CRITERIA, rng)
