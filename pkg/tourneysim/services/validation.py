"""Draw dumps and independent checks of every draw constraint.

Group dumps have the columns group,pot,team_id (group label A-H, pot
1-based); league dumps have the columns home_id,away_id.
"""
from __future__ import annotations

import io
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping

import pandas as pd

from ..models import DrawOutcome, GroupAssignment, LeagueSchedule, PotAssignment, Team
from .league_draw import MAX_OPPONENTS_PER_ASSOCIATION

logger = logging.getLogger(__name__)

GROUP_DUMP_COLUMNS = ["group", "pot", "team_id"]
LEAGUE_DUMP_COLUMNS = ["home_id", "away_id"]


class DumpParseError(ValueError):
    """Raised when a draw dump cannot be read."""


@dataclass
class ValidationReport:
    """Violations found per checked constraint (empty list means satisfied)."""
    kind: str
    constraints: dict[str, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.constraints.values())

    @property
    def violations(self) -> list[str]:
        return [v for found in self.constraints.values() for v in found]


# =============================================================================
# Dumps
# =============================================================================


def _to_csv(frame: pd.DataFrame) -> bytes:
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


def dump_draw(draw: DrawOutcome) -> bytes:
    """Serialise a draw as CSV."""
    if isinstance(draw, GroupAssignment):
        rows = [
            (label, p + 1, team_id)
            for label, members in zip(draw.group_labels, draw.groups)
            for p, team_id in enumerate(members)
        ]
        return _to_csv(pd.DataFrame(rows, columns=GROUP_DUMP_COLUMNS))
    return _to_csv(pd.DataFrame(draw.sorted_fixtures(), columns=LEAGUE_DUMP_COLUMNS))


def _read_groups(frame: pd.DataFrame) -> GroupAssignment:
    try:
        pots = frame["pot"].astype(int)
    except ValueError as e:
        raise DumpParseError(f"pot column must hold integers: {e}") from None
    if (pots < 1).any():
        raise DumpParseError("pots are numbered from 1")

    members: dict[str, dict[int, str]] = defaultdict(dict)
    for group, pot, team_id in zip(frame["group"], pots, frame["team_id"]):
        if pot in members[group]:
            raise DumpParseError(f"group {group} has two teams from pot {pot}")
        members[group][pot] = team_id

    n_pots = int(pots.max())
    groups = []
    for label in sorted(members):
        if sorted(members[label]) != list(range(1, n_pots + 1)):
            raise DumpParseError(f"group {label} does not hold one team from each of pots 1-{n_pots}")
        groups.append(tuple(members[label][p] for p in range(1, n_pots + 1)))
    return GroupAssignment(groups=tuple(groups))


def read_dump(data: bytes) -> DrawOutcome:
    """Parse a group or league dump.

    Raises:
        DumpParseError: If the CSV is malformed or has neither dump layout
    """
    try:
        frame = pd.read_csv(io.BytesIO(data), dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DumpParseError(f"cannot parse draw dump: {e}") from None

    columns = [c.strip() for c in frame.columns]
    frame.columns = columns
    if frame.empty:
        raise DumpParseError("draw dump has no rows")
    frame = frame.apply(lambda col: col.str.strip())
    if (frame == "").any().any():
        raise DumpParseError("draw dump has empty cells")

    if columns == GROUP_DUMP_COLUMNS:
        return _read_groups(frame)
    if columns == LEAGUE_DUMP_COLUMNS:
        rows = Counter(zip(frame["home_id"], frame["away_id"]))
        repeated = tuple(f for f, n in sorted(rows.items()) for _ in range(n - 1))
        if repeated:
            logger.info(f"League dump lists {len(repeated)} fixture row(s) more than once")
        return LeagueSchedule(fixtures=frozenset(rows), repeated=repeated)
    raise DumpParseError(
        f"unrecognised columns {columns}; expected {GROUP_DUMP_COLUMNS} or {LEAGUE_DUMP_COLUMNS}"
    )


# =============================================================================
# Checks
# =============================================================================


def validate_groups(
    assignment: GroupAssignment,
    pots: PotAssignment,
    teams: Mapping[str, Team],
) -> ValidationReport:
    """Check an old-design group draw against its pots."""
    report = ValidationReport(kind="groups")
    shape = report.constraints.setdefault("group shape", [])
    if len(assignment.groups) != pots.pot_size:
        shape.append(f"expected {pots.pot_size} groups, found {len(assignment.groups)}")
    for label, members in zip(assignment.group_labels, assignment.groups):
        if len(members) != len(pots.pots):
            shape.append(f"group {label} has {len(members)} teams, expected {len(pots.pots)}")

    drawn = Counter(t for members in assignment.groups for t in members)
    coverage = report.constraints.setdefault("each team drawn once", [])
    coverage += [f"{t} is drawn {n} times" for t, n in sorted(drawn.items()) if n > 1]
    coverage += [f"{t} is not drawn" for t in pots.team_ids if t not in drawn]
    coverage += [f"{t} is not in any pot" for t in sorted(drawn) if t not in pots.pot_of]

    pot_check = report.constraints.setdefault("one team per pot", [])
    for label, members in zip(assignment.group_labels, assignment.groups):
        for p, team_id in enumerate(members):
            actual = pots.pot_of.get(team_id)
            if actual is not None and actual != p:
                pot_check.append(f"group {label}: {team_id} is in pot {actual + 1}, drawn as pot {p + 1}")

    separation = report.constraints.setdefault("association separation", [])
    for label, members in zip(assignment.group_labels, assignment.groups):
        known = [t for t in members if t in teams]
        per_association = Counter(teams[t].association for t in known)
        for association, n in sorted(per_association.items()):
            if n > 1:
                clubs = ", ".join(t for t in known if teams[t].association == association)
                separation.append(f"group {label} has {n} {association} clubs: {clubs}")
    return report


def validate_schedule(
    schedule: LeagueSchedule,
    pots: PotAssignment,
    teams: Mapping[str, Team],
) -> ValidationReport:
    """Check a league-phase schedule against its pots."""
    report = ValidationReport(kind="league")
    listed = schedule.listed_fixtures()

    known = report.constraints.setdefault("known teams", [])
    for h, a in listed:
        for t in (h, a):
            if t not in pots.pot_of or t not in teams:
                known.append(f"{h} v {a}: unknown team {t}")
        if h == a:
            known.append(f"{h} is drawn against itself")
    fixtures = [(h, a) for h, a in listed if h != a and {h, a} <= pots.pot_of.keys() and {h, a} <= teams.keys()]

    # each team hosts one opponent per pot
    expected = len(pots.team_ids) * len(pots.pots)
    count = report.constraints.setdefault("fixture count", [])
    if len(listed) != expected:
        count.append(f"expected {expected} fixtures, found {len(listed)}")
    duplicates = report.constraints.setdefault("no duplicate fixture", [])
    duplicates += [f"{h} v {a} is listed {n + 1} times" for (h, a), n in sorted(Counter(schedule.repeated).items())]

    home_per_pot: Counter = Counter()
    away_per_pot: Counter = Counter()
    for h, a in fixtures:
        home_per_pot[h, pots.pot_of[a]] += 1
        away_per_pot[a, pots.pot_of[h]] += 1
    balance = report.constraints.setdefault("home/away per pot", [])
    for t in pots.team_ids:
        home = sum(home_per_pot[t, p] for p in range(len(pots.pots)))
        away = sum(away_per_pot[t, p] for p in range(len(pots.pots)))
        if home != len(pots.pots):
            balance.append(f"{t} has {home} home fixtures, expected {len(pots.pots)}")
        if away != len(pots.pots):
            balance.append(f"{t} has {away} away fixtures, expected {len(pots.pots)}")
        for p in range(len(pots.pots)):
            if home_per_pot[t, p] != 1 or away_per_pot[t, p] != 1:
                balance.append(
                    f"{t} plays pot {p + 1} {home_per_pot[t, p]} time(s) at home "
                    f"and {away_per_pot[t, p]} time(s) away"
                )

    pairings = Counter(frozenset(f) for f in fixtures)
    repeated = report.constraints.setdefault("no repeated pairing", [])
    repeated += [f"{' and '.join(sorted(pair))} meet {n} times" for pair, n in pairings.items() if n > 1]

    separation = report.constraints.setdefault("association separation", [])
    separation += [
        f"{h} v {a} are both {teams[h].association}"
        for h, a in fixtures
        if teams[h].association == teams[a].association
    ]

    faced: dict[str, Counter] = defaultdict(Counter)
    for h, a in fixtures:
        faced[h][teams[a].association] += 1
        faced[a][teams[h].association] += 1
    cap = report.constraints.setdefault("association cap", [])
    cap += [
        f"{t} faces {n} {association} clubs"
        for t in sorted(faced)
        for association, n in sorted(faced[t].items())
        if n > MAX_OPPONENTS_PER_ASSOCIATION
    ]

    if not report.ok:
        logger.info(f"League schedule has {len(report.violations)} violation(s)")
    return report


def validate_draw(
    draw: DrawOutcome,
    pots: PotAssignment,
    teams: Mapping[str, Team],
) -> ValidationReport:
    if isinstance(draw, GroupAssignment):
        return validate_groups(draw, pots, teams)
    return validate_schedule(draw, pots, teams)
