from itertools import permutations

import numpy as np
import pytest

from tourneysim.models import TeamStats
from tourneysim.services.ranking import (
    GROUP_CRITERIA,
    LEAGUE_CRITERIA,
    rank_group,
    rank_league,
    tabulate,
)

from conftest import result


# -----------------------------------------------------------------------------
# Independent criteria evaluator
# -----------------------------------------------------------------------------


def _record(team: str, matches) -> dict:
    """Points, goal difference, goals, away goals, wins, away wins from raw results."""
    r = dict(points=0, gd=0, gf=0, away_gf=0, wins=0, away_wins=0)
    for m in matches:
        if team not in (m.home, m.away):
            continue
        scored, conceded = (m.home_goals, m.away_goals) if m.home == team else (m.away_goals, m.home_goals)
        r["gf"] += scored
        r["gd"] += scored - conceded
        if m.away == team:
            r["away_gf"] += scored
        if scored > conceded:
            r["points"] += 3
            r["wins"] += 1
            if m.away == team:
                r["away_wins"] += 1
        elif scored == conceded:
            r["points"] += 1
    return r


def _group_keys(teams, matches) -> dict[str, tuple]:
    overall = {t: _record(t, matches) for t in teams}
    keys = {}
    for t in teams:
        tied = {u for u in teams if overall[u]["points"] == overall[t]["points"]}
        among = [m for m in matches if m.home in tied and m.away in tied]
        h2h = _record(t, among) if len(tied) > 1 else dict(points=0, gd=0, gf=0)
        keys[t] = (
            overall[t]["points"], h2h["points"], h2h["gd"], h2h["gf"],
            overall[t]["gd"], overall[t]["gf"],
        )
    return keys


def _league_keys(teams, matches) -> dict[str, tuple]:
    overall = {t: _record(t, matches) for t in teams}
    opponents = {t: [m.away if m.home == t else m.home for m in matches if t in (m.home, m.away)] for t in teams}
    return {
        t: (
            overall[t]["points"], overall[t]["gd"], overall[t]["gf"], overall[t]["away_gf"],
            overall[t]["wins"], overall[t]["away_wins"],
            sum(overall[o]["points"] for o in opponents[t]),
            sum(overall[o]["gd"] for o in opponents[t]),
            sum(overall[o]["gf"] for o in opponents[t]),
        )
        for t in teams
    }


def _assert_agrees(table, keys, criteria) -> None:
    ordering = table.ordering
    assert sorted(ordering) == sorted(keys)
    for upper, lower in zip(ordering, ordering[1:]):
        assert keys[upper] >= keys[lower]

    expected_log = []
    for upper, lower in zip(ordering, ordering[1:]):
        if keys[upper][0] != keys[lower][0]:
            continue
        differing = [c for c, a, b in zip(criteria, keys[upper], keys[lower]) if a != b]
        expected_log.append((upper, lower, differing[0] if differing else "random"))
    assert [(e.upper, e.lower, e.criterion) for e in table.tiebreak_log] == expected_log


def _random_group(rng):
    teams = ["a", "b", "c", "d"]
    goals = rng.integers(0, 3, size=(12, 2))
    matches = [
        result(h, a, int(g[0]), int(g[1]))
        for (h, a), g in zip(permutations(teams, 2), goals)
    ]
    return teams, matches


def _random_league(rng):
    teams = [f"t{i}" for i in range(8)]
    fixtures = [(h, a) for h, a in permutations(teams, 2) if h < a and rng.random() < 0.6]
    goals = rng.integers(0, 3, size=(len(fixtures), 2))
    flip = rng.random(len(fixtures)) < 0.5
    matches = [
        result(a, h, int(g[0]), int(g[1])) if f else result(h, a, int(g[0]), int(g[1]))
        for (h, a), g, f in zip(fixtures, goals, flip)
    ]
    return teams, matches


def _check_group_oracle(instances: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        teams, matches = _random_group(rng)
        table = rank_group(tabulate(matches, teams), matches, rng)
        _assert_agrees(table, _group_keys(teams, matches), GROUP_CRITERIA)


def _check_league_oracle(instances: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        teams, matches = _random_league(rng)
        table = rank_league(tabulate(matches, teams), rng)
        _assert_agrees(table, _league_keys(teams, matches), LEAGUE_CRITERIA)


def test_group_ranking_matches_oracle():
    _check_group_oracle(2000, seed=1)


def test_league_ranking_matches_oracle():
    _check_league_oracle(2000, seed=2)


@pytest.mark.slow
def test_rankings_match_oracle_large_sample():
    _check_group_oracle(10_000, seed=3)
    _check_league_oracle(10_000, seed=4)


# -----------------------------------------------------------------------------
# Hand-built cases
# -----------------------------------------------------------------------------


def test_tabulate_counts_points_and_away_figures():
    stats = tabulate([result("a", "b", 0, 2), result("b", "a", 1, 1)])
    b = stats["b"]
    assert (b.points, b.wins, b.draws, b.losses) == (4, 1, 1, 0)
    assert (b.goals_for, b.goals_against, b.away_goals_for, b.away_wins) == (3, 1, 2, 1)
    assert stats["a"].opponents == ("b", "b")


def test_distinct_points_order(rng):
    matches = [result(h, a, 1, 0) if h < a else result(h, a, 0, 0) for h, a in permutations("abcd", 2)]
    table = rank_group(tabulate(matches, "abcd"), matches, rng)
    assert table.ordering == ("a", "b", "c", "d")
    assert table.tiebreak_log == ()


def test_head_to_head_points_decide(rng):
    matches = [
        result("a", "b", 1, 0), result("b", "a", 0, 1),
        # b has the better overall goal difference
        result("b", "c", 5, 0), result("c", "b", 0, 5),
        result("a", "c", 0, 1), result("c", "a", 1, 0),
        result("a", "d", 1, 0), result("d", "a", 0, 1),
        result("b", "d", 5, 0), result("d", "b", 0, 5),
        result("c", "d", 0, 0), result("d", "c", 0, 0),
    ]
    stats = tabulate(matches, "abcd")
    assert stats["a"].points == stats["b"].points
    table = rank_group(stats, matches, rng)
    assert table.position("a") < table.position("b")
    assert any(e.criterion == "head_to_head_points" for e in table.tiebreak_log)


def test_mini_table_goal_difference_decides_three_way_tie(rng):
    matches = [
        result("a", "b", 2, 0), result("b", "c", 1, 0), result("c", "a", 1, 0),
        result("b", "a", 0, 0), result("c", "b", 0, 0), result("a", "c", 0, 0),
        # b has the best overall goal difference thanks to d
        result("a", "d", 1, 0), result("d", "a", 0, 1),
        result("b", "d", 5, 0), result("d", "b", 0, 1),
        result("c", "d", 1, 0), result("d", "c", 0, 1),
    ]
    table = rank_group(tabulate(matches, "abcd"), matches, rng)
    assert table.ordering == ("a", "c", "b", "d")
    assert [e.criterion for e in table.tiebreak_log] == ["head_to_head_goal_difference"] * 2


def test_goals_scored_decide_league_tie(rng):
    stats = {
        "x": TeamStats("x", points=10, wins=3, draws=1, losses=4, goals_for=12, goals_against=10),
        "y": TeamStats("y", points=10, wins=3, draws=1, losses=4, goals_for=11, goals_against=9),
    }
    table = rank_league(stats, rng)
    assert table.ordering == ("x", "y")
    assert table.tiebreak_log[0].criterion == "goals_scored"


def test_opponent_points_decide_league_tie(rng):
    shared = dict(points=12, wins=4, draws=0, losses=4, goals_for=10, goals_against=8,
                  away_goals_for=4, away_wins=2)
    stats = {
        "x": TeamStats("x", opponents=("strong",), **shared),
        "y": TeamStats("y", opponents=("weak",), **shared),
        "strong": TeamStats("strong", points=20, wins=6, draws=2, opponents=("x",)),
        "weak": TeamStats("weak", points=3, wins=1, losses=7, opponents=("y",)),
    }
    table = rank_league(stats, rng)
    assert table.position("x") < table.position("y")
    entry = next(e for e in table.tiebreak_log if e.upper == "x")
    assert entry.criterion == "opponent_points"


def test_full_ties_are_random_but_reproducible():
    stats = {t: TeamStats(t) for t in "abcdef"}
    orderings = {rank_league(stats, np.random.default_rng(seed)).ordering for seed in range(30)}
    assert len(orderings) > 1
    again = rank_league(stats, np.random.default_rng(4)).ordering
    assert again == rank_league(dict(reversed(stats.items())), np.random.default_rng(4)).ordering
    assert all(e.criterion == "random" for e in rank_league(stats, np.random.default_rng(4)).tiebreak_log)
