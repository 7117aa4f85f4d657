from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

R16_SIZE = 16


@dataclass(frozen=True)
class MatchResult:
    """Sampled score of one match."""
    home: str
    away: str
    home_goals: int
    away_goals: int

    def __post_init__(self) -> None:
        if self.home == self.away:
            raise ValueError(f"a team cannot play itself: {self.home}")
        if self.home_goals < 0 or self.away_goals < 0:
            raise ValueError("goal counts must be non-negative")


@dataclass(frozen=True)
class TeamStats:
    """Aggregated first-stage record of one team."""
    team_id: str
    points: int = 0
    wins: int = 0
    draws: int = 0
    losses: int = 0
    goals_for: int = 0
    goals_against: int = 0
    away_goals_for: int = 0
    away_wins: int = 0
    opponents: tuple[str, ...] = ()

    @property
    def goal_difference(self) -> int:
        return self.goals_for - self.goals_against

    @property
    def played(self) -> int:
        return self.wins + self.draws + self.losses


@dataclass(frozen=True)
class TiebreakEntry:
    """Which criterion separated two adjacent teams level on points."""
    upper: str
    lower: str
    criterion: str


@dataclass(frozen=True)
class RankedTable:
    """Final standings, best first."""
    ordering: tuple[str, ...]
    stats: Mapping[str, TeamStats] = field(hash=False)
    tiebreak_log: tuple[TiebreakEntry, ...] = ()

    def position(self, team_id: str) -> int:
        """1-based rank of a team."""
        return self.ordering.index(team_id) + 1

    def rows(self) -> list[TeamStats]:
        return [self.stats[t] for t in self.ordering]


class QualificationRoute(Enum):
    """How a team reached the Round of 16."""

    GROUP_TOP2 = "group-top2"
    LEAGUE_TOP8 = "league-top8"
    PLAYOFF_WIN = "playoff-win"
    LEAGUE_TOP16 = "league-top16"


@dataclass(frozen=True)
class QualificationOutcome:
    """The sixteen Round-of-16 qualifiers of one tournament realization."""
    r16: frozenset[str]
    via: Mapping[str, QualificationRoute] = field(hash=False)

    def __post_init__(self) -> None:
        if len(self.r16) != R16_SIZE:
            raise ValueError(f"expected {R16_SIZE} qualifiers, got {len(self.r16)}")
        if set(self.via) != set(self.r16):
            raise ValueError("qualification routes must cover exactly the qualifiers")
