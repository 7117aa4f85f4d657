from itertools import permutations, product

import numpy as np
import pytest

from tourneysim.models import (
    Design,
    MatchResult,
    PotAssignment,
    SeedingPolicy,
    Team,
    assign_pots,
    load_season,
    old_design_roster,
)
from tourneysim.services.montecarlo import ExperimentConfig, run_config


@pytest.fixture(scope="session")
def roster():
    return load_season("2024-25")


@pytest.fixture(scope="session")
def teams(roster):
    return roster.by_id


@pytest.fixture(scope="session")
def new_pots(roster):
    return assign_pots(roster.teams, Design.NEW, SeedingPolicy.UEFA)


@pytest.fixture(scope="session")
def old_pots(roster):
    return assign_pots(old_design_roster(roster), Design.OLD, SeedingPolicy.UEFA)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def reduced_grid(roster):
    """The five decomposition configurations at D=200, S=500, keyed by (design, seeding)."""
    runs = (
        (Design.OLD, SeedingPolicy.UEFA),
        (Design.NEW, SeedingPolicy.UEFA),
        (Design.OLD, SeedingPolicy.ELO),
        (Design.NEW, SeedingPolicy.ELO),
        (Design.NEW_T16, SeedingPolicy.ELO),
    )
    return {
        run: run_config(roster, ExperimentConfig(*run, num_draws=200, num_scenarios=500))
        for run in runs
    }


def make_team(team_id: str, association: str = "AAA", elo: float = 1700.0, rank: int = 1) -> Team:
    return Team(id=team_id, name=team_id.title(), association=association, elo=elo, uefa_rank=rank)


def result(home: str, away: str, home_goals: int, away_goals: int) -> MatchResult:
    return MatchResult(home=home, away=away, home_goals=home_goals, away_goals=away_goals)


# -----------------------------------------------------------------------------
# Micro league instances with an exhaustive list of valid schedules
# -----------------------------------------------------------------------------


def micro_instance(n_pots: int, pot_size: int, associations: list[str]):
    """Pots t0..t{n-1} filled in order, teams with the given associations."""
    n = n_pots * pot_size
    teams = {
        f"t{i}": make_team(f"t{i}", associations[i], elo=1500.0 + i, rank=i + 1)
        for i in range(n)
    }
    pots = PotAssignment(
        design=Design.NEW,
        policy=SeedingPolicy.UEFA,
        pots=tuple(tuple(f"t{p * pot_size + j}" for j in range(pot_size)) for p in range(n_pots)),
    )
    return pots, teams


def _intra_pot_maps(size: int) -> list[tuple[int, ...]]:
    """Host maps inside a pot: permutations whose cycles all have length >= 3."""
    return [
        perm for perm in permutations(range(size))
        if all(perm[i] != i and perm[perm[i]] != i for i in range(size))
    ]


def _schedule_is_valid(fixtures, teams) -> bool:
    faced: dict[tuple[str, str], int] = {}
    for h, a in fixtures:
        if teams[h].association == teams[a].association:
            return False
        for team, opponent in ((h, a), (a, h)):
            key = (team, teams[opponent].association)
            faced[key] = faced.get(key, 0) + 1
            if faced[key] > 2:
                return False
    return True


def all_schedules(pots: PotAssignment, teams) -> list[frozenset]:
    """Brute force: every schedule meeting all league-draw constraints."""
    n_pots, size = len(pots.pots), pots.pot_size
    blocks = []
    for p in range(n_pots):
        for q in range(n_pots):
            maps = _intra_pot_maps(size) if p == q else list(permutations(range(size)))
            blocks.append([
                frozenset((pots.pots[p][i], pots.pots[q][m[i]]) for i in range(size))
                for m in maps
            ])

    schedules = []
    for choice in product(*blocks):
        fixtures = frozenset().union(*choice)
        if any((a, h) in fixtures for h, a in fixtures):
            continue
        if _schedule_is_valid(fixtures, teams):
            schedules.append(fixtures)
    return schedules
