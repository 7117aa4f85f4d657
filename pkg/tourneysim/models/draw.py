from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class GroupAssignment:
    """Old-design draw: groups[g][p] is the team drawn from pot p into group g."""
    groups: tuple[tuple[str, ...], ...]

    @property
    def group_labels(self) -> list[str]:
        return [chr(ord("A") + g) for g in range(len(self.groups))]


@dataclass(frozen=True)
class LeagueSchedule:
    """New-design draw: the directed fixtures (home id, away id) of the league phase.

    repeated holds extra copies of fixtures read from a dump that lists them
    more than once; a drawn schedule never has any.
    """
    fixtures: frozenset[tuple[str, str]]
    repeated: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def sorted_fixtures(self) -> list[tuple[str, str]]:
        return sorted(self.fixtures)

    def listed_fixtures(self) -> list[tuple[str, str]]:
        """Every fixture row, repeats included."""
        return sorted([*self.fixtures, *self.repeated])

    def home_opponents(self, team_id: str) -> list[str]:
        return sorted(a for h, a in self.fixtures if h == team_id)

    def away_opponents(self, team_id: str) -> list[str]:
        return sorted(h for h, a in self.fixtures if a == team_id)

    def opponents(self, team_id: str) -> list[str]:
        return self.home_opponents(team_id) + self.away_opponents(team_id)


DrawOutcome = Union[GroupAssignment, LeagueSchedule]
