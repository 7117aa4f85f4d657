from dataclasses import replace

import numpy as np
import pytest

from tourneysim.models import Design, SeedingPolicy, SeasonRoster
from tourneysim.services.montecarlo import (
    DrawProbabilityMatrix,
    ExperimentConfig,
    config_tag,
    participants,
    run_config,
)
from tourneysim.services.streams import derive_stream, draw_stream


# -----------------------------------------------------------------------------
# Streams
# -----------------------------------------------------------------------------


def test_same_tuple_same_stream():
    a = derive_stream(42, "new-uefa", 3, 7).random(16)
    b = derive_stream(42, "new-uefa", 3, 7).random(16)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("other", [
    (42, "new-uefa", 3, 8),
    (42, "new-uefa", 4, 7),
    (42, "old-uefa", 3, 7),
    (43, "new-uefa", 3, 7),
])
def test_neighbouring_tuples_differ(other):
    a = derive_stream(42, "new-uefa", 3, 7).random(16)
    b = derive_stream(*other).random(16)
    assert not np.array_equal(a, b)


def test_draw_stream_is_separate_from_scenario_streams():
    a = draw_stream(42, "new-uefa", 0).random(16)
    b = derive_stream(42, "new-uefa", 0, 0).random(16)
    assert not np.array_equal(a, b)


def test_negative_index_rejected():
    with pytest.raises(ValueError, match="non-negative"):
        derive_stream(1, "old-uefa", -1, 0)


# -----------------------------------------------------------------------------
# Configuration and matrix
# -----------------------------------------------------------------------------


def test_config_tag():
    assert config_tag(Design.NEW_T16, SeedingPolicy.ELO) == "new-t16-elo"
    assert ExperimentConfig(Design.OLD, SeedingPolicy.UEFA).tag == "old-uefa"


@pytest.mark.parametrize("kwargs, message", [
    (dict(num_draws=1), "at least 2 draws"),
    (dict(num_scenarios=0), "at least 1 scenario"),
    (dict(master_seed=-5), "non-negative"),
])
def test_config_validation(kwargs, message):
    with pytest.raises(ValueError, match=message):
        ExperimentConfig(Design.NEW, SeedingPolicy.UEFA, **kwargs)


def test_matrix_statistics():
    counts = np.array([[4, 4, 4, 4], [0, 2, 4, 2]])
    matrix = DrawProbabilityMatrix(team_ids=("a", "b"), counts=counts, num_scenarios=4)
    assert matrix.num_draws == 4
    assert matrix.p("a") == 1.0
    assert matrix.sigma_of("a") == 0.0
    assert matrix.p("b") == pytest.approx(0.5)
    assert matrix.sigma_of("b") == pytest.approx(np.sqrt(0.125))
    assert matrix.standard_error[1] == pytest.approx(np.std([0, 0.5, 1, 0.5], ddof=1) / 2)


def test_matrix_needs_one_row_per_team():
    with pytest.raises(ValueError, match="one row"):
        DrawProbabilityMatrix(team_ids=("a",), counts=np.zeros((2, 3)), num_scenarios=1)


def test_participants(roster):
    assert len(participants(roster, Design.OLD)) == 32
    assert len(participants(roster, Design.NEW_T16)) == 36


# -----------------------------------------------------------------------------
# Grid runs
# -----------------------------------------------------------------------------


@pytest.mark.parametrize("design", [Design.OLD, Design.NEW, Design.NEW_T16])
def test_every_scenario_has_sixteen_qualifiers(roster, design):
    config = ExperimentConfig(design, SeedingPolicy.UEFA, num_draws=2, num_scenarios=1, master_seed=7)
    matrix = run_config(roster, config, workers=1)
    assert matrix.counts.shape == (32 if design is Design.OLD else 36, 2)
    assert set(np.unique(matrix.q)) <= {0.0, 1.0}
    assert matrix.counts.sum(axis=0).tolist() == [16, 16]


def test_worker_count_does_not_change_results(roster):
    config = ExperimentConfig(Design.OLD, SeedingPolicy.ELO, num_draws=4, num_scenarios=3, master_seed=11)
    serial = run_config(roster, config, workers=1)
    parallel = run_config(roster, config, workers=2)
    assert serial.team_ids == parallel.team_ids
    assert np.array_equal(serial.counts, parallel.counts)


def test_progress_is_reported_per_draw(roster):
    ticks = []
    config = ExperimentConfig(Design.OLD, SeedingPolicy.UEFA, num_draws=3, num_scenarios=1)
    run_config(roster, config, workers=1, progress=ticks.append)
    assert ticks == [1, 1, 1]


def test_stronger_teams_qualify_more_often(roster):
    config = ExperimentConfig(Design.OLD, SeedingPolicy.UEFA, num_draws=4, num_scenarios=50, master_seed=3)
    matrix = run_config(roster, config, workers=1)
    by_elo = sorted(matrix.team_ids, key=lambda t: roster.by_id[t].elo)
    assert matrix.p(by_elo[-1]) > matrix.p(by_elo[0])
    assert matrix.mean.sum() == pytest.approx(16.0)


# -----------------------------------------------------------------------------
# Reproduction of the 2024-25 figures at reduced scale
# -----------------------------------------------------------------------------


def _with_elo_bonus(roster, team_id: str, bonus: float) -> SeasonRoster:
    return SeasonRoster(
        season_label=roster.season_label,
        teams=tuple(replace(t, elo=t.elo + bonus) if t.id == team_id else t for t in roster.teams),
    )


@pytest.mark.slow
@pytest.mark.parametrize("design", [Design.OLD, Design.NEW])
def test_overwhelming_favourite_has_no_draw_impact(roster, design):
    boosted = _with_elo_bonus(roster, "girona", 2000.0)
    config = ExperimentConfig(design, SeedingPolicy.UEFA, num_draws=20, num_scenarios=100, master_seed=5)
    matrix = run_config(boosted, config)
    assert matrix.p("girona") == 1.0
    assert matrix.sigma_of("girona") == 0.0


@pytest.mark.slow
@pytest.mark.parametrize("team_id", ["girona", "celtic", "young-boys"])
def test_stronger_rating_never_lowers_qualification(roster, team_id):
    # UEFA pots ignore Elo, so both runs share every draw and scenario stream
    config = ExperimentConfig(Design.OLD, SeedingPolicy.UEFA, num_draws=40, num_scenarios=200, master_seed=9)
    base = run_config(roster, config)
    boosted = run_config(_with_elo_bonus(roster, team_id, 400.0), config)
    assert boosted.p(team_id) >= base.p(team_id)


@pytest.mark.slow
def test_reduced_scale_probabilities(reduced_grid):
    old = reduced_grid[Design.OLD, SeedingPolicy.UEFA]
    new = reduced_grid[Design.NEW, SeedingPolicy.UEFA]
    assert old.p("manchester-city") == pytest.approx(0.9535, abs=0.03)
    assert new.p("manchester-city") == pytest.approx(0.9666, abs=0.03)
    assert new.p("slovan-bratislava") == pytest.approx(0.0039, abs=0.03)


@pytest.mark.slow
def test_reduced_scale_draw_impact(reduced_grid):
    old = reduced_grid[Design.OLD, SeedingPolicy.UEFA]
    new = reduced_grid[Design.NEW, SeedingPolicy.UEFA]
    for expected, measured in ((0.1394, old.sigma_of("girona")), (0.0637, new.sigma_of("girona"))):
        assert abs(measured - expected) <= max(0.015, 0.225 * expected)
    increased = [t for t in old.team_ids if new.sigma_of(t) >= old.sigma_of(t)]
    assert increased == []
