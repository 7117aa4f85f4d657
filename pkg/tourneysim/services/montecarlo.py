"""Draws x scenarios experiment grid.

Every draw is an independent job: its draw and all its scenarios use
streams derived from (seed, configuration, draw index, scenario index),
and its qualification counts land in the draw's own column. The result is
therefore identical for any worker count.
"""
from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Iterable

import numpy as np

from ..models import (
    Design,
    PotAssignment,
    SeasonRoster,
    SeedingPolicy,
    Team,
    assign_pots,
    old_design_roster,
)
from .group_draw import DEFAULT_RETRY_BUDGET, draw_groups
from .league_draw import draw_league
from .streams import derive_stream, draw_stream
from .tournament import play_tournament

logger = logging.getLogger(__name__)

DEFAULT_DRAWS = 1000
DEFAULT_SCENARIOS = 1000
DEFAULT_SEED = 20240829


def config_tag(design: Design, seeding: SeedingPolicy) -> str:
    """Stream tag of a configuration, e.g. "old-uefa" or "new-t16-elo"."""
    return f"{design.value}-{seeding.value}"


@dataclass(frozen=True)
class ExperimentConfig:
    """One (design, seeding) configuration of the experiment grid."""
    design: Design
    seeding: SeedingPolicy
    num_draws: int = DEFAULT_DRAWS
    num_scenarios: int = DEFAULT_SCENARIOS
    master_seed: int = DEFAULT_SEED
    retry_budget: int = DEFAULT_RETRY_BUDGET

    def __post_init__(self) -> None:
        if self.num_draws < 2:
            raise ValueError(f"at least 2 draws are needed for a standard deviation, got {self.num_draws}")
        if self.num_scenarios < 1:
            raise ValueError(f"at least 1 scenario per draw is needed, got {self.num_scenarios}")
        if self.master_seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.master_seed}")

    @property
    def tag(self) -> str:
        return config_tag(self.design, self.seeding)


@dataclass(frozen=True, eq=False)
class DrawProbabilityMatrix:
    """Qualification counts per team (rows) and draw (columns)."""
    team_ids: tuple[str, ...]
    counts: np.ndarray
    num_scenarios: int

    def __post_init__(self) -> None:
        if self.counts.shape[0] != len(self.team_ids):
            raise ValueError("one row of counts per team is required")

    @property
    def num_draws(self) -> int:
        return self.counts.shape[1]

    @property
    def q(self) -> np.ndarray:
        """Per-draw qualification frequencies q[i, d]."""
        return self.counts / self.num_scenarios

    @property
    def mean(self) -> np.ndarray:
        return self.q.mean(axis=1)

    @property
    def sigma(self) -> np.ndarray:
        """Population standard deviation of q over draws."""
        return self.q.std(axis=1, ddof=0)

    @property
    def standard_error(self) -> np.ndarray:
        """Standard error of the mean probability over draws."""
        return self.q.std(axis=1, ddof=1) / np.sqrt(self.num_draws)

    def index(self, team_id: str) -> int:
        return self.team_ids.index(team_id)

    def p(self, team_id: str) -> float:
        return float(self.mean[self.index(team_id)])

    def sigma_of(self, team_id: str) -> float:
        return float(self.sigma[self.index(team_id)])


@dataclass(frozen=True)
class _DrawJob:
    teams: tuple[Team, ...]
    pots: PotAssignment
    config: ExperimentConfig


_worker_job: _DrawJob | None = None


def _init_worker(job: _DrawJob) -> None:
    global _worker_job
    _worker_job = job


def simulate_draw(job: _DrawJob, draw_index: int) -> np.ndarray:
    """Sample draw `draw_index` and count qualifications over its scenarios."""
    config = job.config
    by_id = {t.id: t for t in job.teams}
    rng = draw_stream(config.master_seed, config.tag, draw_index)
    if config.design is Design.OLD:
        draw = draw_groups(job.pots, by_id, rng, config.retry_budget)
    else:
        draw = draw_league(job.pots, by_id, rng)

    row = {t.id: i for i, t in enumerate(job.teams)}
    counts = np.zeros(len(job.teams), dtype=np.int64)
    for s in range(config.num_scenarios):
        scenario_rng = derive_stream(config.master_seed, config.tag, draw_index, s)
        outcome = play_tournament(config.design, draw, by_id, scenario_rng)
        for team_id in outcome.r16:
            counts[row[team_id]] += 1
    return counts


def _simulate_in_worker(draw_index: int) -> np.ndarray:
    return simulate_draw(_worker_job, draw_index)


def participants(roster: SeasonRoster, design: Design) -> list[Team]:
    """Teams taking part in a design, in roster order."""
    return old_design_roster(roster) if design is Design.OLD else list(roster.teams)


def run_config(
    roster: SeasonRoster,
    config: ExperimentConfig,
    workers: int | None = None,
    progress: Callable[[int], None] | None = None,
) -> DrawProbabilityMatrix:
    """Run the full draws x scenarios grid of one configuration.

    Args:
        roster: Season roster
        config: Configuration to run
        workers: Worker processes; None means all CPUs, 1 runs in-process
        progress: Called with 1 after each finished draw

    Returns:
        DrawProbabilityMatrix over the design's participants

    Raises:
        DrawInfeasibleError: If a draw cannot be generated
    """
    teams = participants(roster, config.design)
    job = _DrawJob(
        teams=tuple(teams),
        pots=assign_pots(teams, config.design, config.seeding),
        config=config,
    )
    workers = workers or os.cpu_count() or 1
    workers = min(workers, config.num_draws)
    logger.info(
        f"Running {config.tag}: {config.num_draws} draws x {config.num_scenarios} scenarios "
        f"on {workers} worker(s)"
    )
    started = time.perf_counter()

    counts = np.zeros((len(teams), config.num_draws), dtype=np.int64)

    def collect(columns: Iterable[np.ndarray]) -> None:
        for d, column in enumerate(columns):
            counts[:, d] = column
            if progress is not None:
                progress(1)

    if workers == 1:
        collect(simulate_draw(job, d) for d in range(config.num_draws))
    else:
        with Pool(processes=workers, initializer=_init_worker, initargs=(job,)) as pool:
            collect(pool.imap(_simulate_in_worker, range(config.num_draws)))

    logger.info(f"Finished {config.tag} in {time.perf_counter() - started:.1f}s")
    return DrawProbabilityMatrix(
        team_ids=tuple(t.id for t in teams),
        counts=counts,
        num_scenarios=config.num_scenarios,
    )
