from .team import (
    RosterError,
    SeasonRoster,
    Team,
    dump_roster,
    load_roster,
    load_season,
    old_design_roster,
)
from .pots import (
    Design,
    PotAssignment,
    PotAssignmentError,
    SeedingPolicy,
    assign_pots,
    pot_strengths,
)
from .draw import DrawOutcome, GroupAssignment, LeagueSchedule
from .match import (
    MatchResult,
    QualificationOutcome,
    QualificationRoute,
    RankedTable,
    TeamStats,
    TiebreakEntry,
)

__all__ = [
    "Design",
    "DrawOutcome",
    "GroupAssignment",
    "LeagueSchedule",
    "MatchResult",
    "PotAssignment",
    "PotAssignmentError",
    "QualificationOutcome",
    "QualificationRoute",
    "RankedTable",
    "RosterError",
    "SeasonRoster",
    "SeedingPolicy",
    "Team",
    "TeamStats",
    "TiebreakEntry",
    "assign_pots",
    "dump_roster",
    "load_roster",
    "load_season",
    "old_design_roster",
    "pot_strengths",
]
