from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from .team import NEW_DESIGN_SIZE, OLD_DESIGN_SIZE, Team

POT_COUNT = 4


class PotAssignmentError(ValueError):
    """Raised when teams cannot be split into pots for a design."""


class Design(Enum):
    """Tournament design of the first stage."""

    OLD = "old"  # 8 groups of 4, top two qualify
    NEW = "new"  # 36-team league phase + knockout play-offs
    NEW_T16 = "new-t16"  # league phase, top 16 qualify directly

    @classmethod
    def from_string(cls, value: str) -> "Design":
        """Parse a CLI/config value, raising ValueError on unknown names."""
        try:
            return cls(value.strip().lower())
        except ValueError:
            names = ", ".join(d.value for d in cls)
            raise ValueError(f"unknown design {value!r} (expected one of: {names})") from None

    @property
    def draw_design(self) -> "Design":
        """Design whose draw is used (the T16 variant shares the league draw)."""
        return Design.OLD if self is Design.OLD else Design.NEW

    @property
    def team_count(self) -> int:
        return OLD_DESIGN_SIZE if self is Design.OLD else NEW_DESIGN_SIZE

    @property
    def pot_size(self) -> int:
        return self.team_count // POT_COUNT


class SeedingPolicy(Enum):
    """Rule used to fill the pots."""

    UEFA = "uefa"  # club coefficient order, titleholder forced into Pot 1
    ELO = "elo"  # Elo order, no exceptions

    @classmethod
    def from_string(cls, value: str) -> "SeedingPolicy":
        try:
            return cls(value.strip().lower())
        except ValueError:
            names = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown seeding policy {value!r} (expected one of: {names})") from None


@dataclass(frozen=True)
class PotAssignment:
    """Teams split into equally sized pots, best pot first."""
    design: Design
    policy: SeedingPolicy
    pots: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        sizes = {len(p) for p in self.pots}
        if len(sizes) != 1:
            raise PotAssignmentError(f"pots must have equal sizes, got {sorted(sizes)}")
        ids = [t for pot in self.pots for t in pot]
        if len(ids) != len(set(ids)):
            raise PotAssignmentError("a team appears in more than one pot")

    @cached_property
    def pot_of(self) -> dict[str, int]:
        """Map team id -> 0-based pot index."""
        return {t: i for i, pot in enumerate(self.pots) for t in pot}

    @property
    def pot_size(self) -> int:
        return len(self.pots[0])

    @property
    def team_ids(self) -> list[str]:
        return [t for pot in self.pots for t in pot]


def seeding_order(teams: Iterable[Team], policy: SeedingPolicy) -> list[Team]:
    """Order teams for seeding, best first.

    UEFA: uefa_rank ascending with the titleholder moved to the front.
    Elo: Elo descending, exact ties broken by uefa_rank.
    """
    teams = list(teams)
    if policy is SeedingPolicy.ELO:
        return sorted(teams, key=lambda t: (-t.elo, t.uefa_rank))

    ordered = sorted(teams, key=lambda t: t.uefa_rank)
    holders = [t for t in ordered if t.titleholder]
    if holders:
        ordered.remove(holders[0])
        ordered.insert(0, holders[0])
    return ordered


def assign_pots(teams: Iterable[Team], design: Design, policy: SeedingPolicy) -> PotAssignment:
    """Split the design's teams into four consecutive pots.

    Args:
        teams: 32 teams (old design) or 36 teams (new designs)
        design: Tournament design; NEW_T16 uses the league-phase pots
        policy: Seeding policy

    Returns:
        PotAssignment with 4 pots of 8 or 9 teams

    Raises:
        PotAssignmentError: If the team count does not match the design
    """
    teams = list(teams)
    draw_design = design.draw_design
    if len(teams) != draw_design.team_count:
        raise PotAssignmentError(
            f"{draw_design.value} design needs {draw_design.team_count} teams, got {len(teams)}"
        )

    ordered = [t.id for t in seeding_order(teams, policy)]
    size = draw_design.pot_size
    pots = tuple(tuple(ordered[i * size:(i + 1) * size]) for i in range(POT_COUNT))
    return PotAssignment(design=draw_design, policy=policy, pots=pots)


def pot_strengths(assignment: PotAssignment, teams: Mapping[str, Team]) -> list[float]:
    """Mean Elo of each pot."""
    return [sum(teams[t].elo for t in pot) / len(pot) for pot in assignment.pots]
