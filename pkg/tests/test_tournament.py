from collections import Counter

import numpy as np
import pytest

from tourneysim.models import Design, QualificationRoute, RankedTable
from tourneysim.services import tournament
from tourneysim.services.group_draw import draw_groups
from tourneysim.services.league_draw import draw_league
from tourneysim.services.tournament import (
    play_group_stage,
    play_league_phase,
    play_tournament,
    playoff_pairs,
    playoff_round,
    qualifiers_t16,
)

from conftest import make_team


@pytest.fixture(scope="module")
def schedule(new_pots, teams):
    return draw_league(new_pots, teams, np.random.default_rng(7))


@pytest.fixture(scope="module")
def groups(old_pots, teams):
    return draw_groups(old_pots, teams, np.random.default_rng(7))


def _ranked(n: int = 36) -> tuple[RankedTable, dict]:
    """Table r01 (first) .. rNN (last) of equally rated teams."""
    ids = [f"r{i:02d}" for i in range(1, n + 1)]
    return RankedTable(ordering=tuple(ids), stats={}), {t: make_team(t) for t in ids}


def test_group_stage_takes_top_two_per_group(groups, teams, rng):
    tables = tournament.group_tables(groups, teams, tournament.DEFAULT_GOAL_MODEL, rng)
    outcome = play_group_stage(groups, teams, tournament.DEFAULT_GOAL_MODEL, np.random.default_rng(1))
    assert len(tables) == 8
    assert all(len(table.ordering) == 4 and all(s.played == 6 for s in table.rows()) for table in tables)
    assert len(outcome.r16) == 16
    for members in groups.groups:
        assert len(outcome.r16 & set(members)) == 2
    assert set(outcome.via.values()) == {QualificationRoute.GROUP_TOP2}


def test_dominant_team_tops_its_group(groups, teams):
    rigged = dict(teams)
    favourite = groups.groups[0][3]
    rigged[favourite] = make_team(favourite, teams[favourite].association, elo=9000.0)
    rng = np.random.default_rng(2)
    qualified = sum(
        favourite in play_group_stage(groups, rigged, tournament.DEFAULT_GOAL_MODEL, rng).r16
        for _ in range(100)
    )
    assert qualified >= 95


def test_league_phase_plays_eight_matches_each(schedule, teams, rng):
    table = play_league_phase(schedule, teams, tournament.DEFAULT_GOAL_MODEL, rng)
    assert sorted(table.ordering) == sorted(teams)
    for row in table.rows():
        assert row.played == 8
        assert sorted(row.opponents) == sorted(schedule.opponents(row.team_id))


def test_playoff_pairs_follow_the_bracket():
    table, _ = _ranked()
    assert playoff_pairs(table) == [
        (("r09", "r10"), ("r23", "r24")),
        (("r11", "r12"), ("r21", "r22")),
        (("r13", "r14"), ("r19", "r20")),
        (("r15", "r16"), ("r17", "r18")),
    ]


def test_playoff_pairs_need_24_teams():
    table, _ = _ranked(20)
    with pytest.raises(ValueError, match="at least 24"):
        playoff_pairs(table)


def test_playoff_round_qualifiers():
    table, teams = _ranked()
    ranks = {t: i + 1 for i, t in enumerate(table.ordering)}
    rng = np.random.default_rng(3)
    seen = set()
    for _ in range(200):
        outcome = playoff_round(table, teams, rng)
        assert {t for t in outcome.r16 if ranks[t] <= 8} == set(table.ordering[:8])
        assert all(ranks[t] <= 24 for t in outcome.r16)
        for seeded, unseeded in playoff_pairs(table):
            assert len(outcome.r16 & {*seeded, *unseeded}) == 2
        seen |= outcome.r16
        assert all(
            route is QualificationRoute.PLAYOFF_WIN
            for t, route in outcome.via.items() if ranks[t] > 8
        )
    assert seen == set(table.ordering[:24])


def test_playoff_coin_decides_opponents(monkeypatch):
    table, teams = _ranked()
    ties = []

    def seeded_wins(seeded, unseeded, rng):
        ties.append((seeded.id, unseeded.id))
        return seeded.id

    monkeypatch.setattr(tournament, "sample_tie_winner", seeded_wins)
    rng = np.random.default_rng(4)
    for _ in range(400):
        playoff_round(table, teams, rng)

    opponents_of_9 = Counter(u for s, u in ties if s == "r09")
    assert set(opponents_of_9) == {"r23", "r24"}
    assert abs(opponents_of_9["r23"] - 200) < 4 * 10
    assert {u for s, u in ties if s == "r11"} == {"r21", "r22"}
    assert {u for s, u in ties if s == "r16"} == {"r17", "r18"}


def test_t16_takes_the_top_sixteen(schedule, teams, rng):
    table = play_league_phase(schedule, teams, tournament.DEFAULT_GOAL_MODEL, rng)
    outcome = qualifiers_t16(table)
    assert outcome.r16 == frozenset(table.ordering[:16])
    assert set(outcome.via.values()) == {QualificationRoute.LEAGUE_TOP16}


@pytest.mark.parametrize("design", list(Design))
def test_play_tournament_is_reproducible(design, schedule, groups, teams):
    draw = groups if design is Design.OLD else schedule
    first = play_tournament(design, draw, teams, np.random.default_rng(9))
    second = play_tournament(design, draw, teams, np.random.default_rng(9))
    assert first == second
    assert len(first.r16) == 16


def test_play_tournament_rejects_mismatched_draw(schedule, groups, teams, rng):
    with pytest.raises(TypeError, match="group assignment"):
        play_tournament(Design.OLD, schedule, teams, rng)
    with pytest.raises(TypeError, match="league schedule"):
        play_tournament(Design.NEW, groups, teams, rng)
