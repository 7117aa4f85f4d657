from __future__ import annotations

import io
import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import BinaryIO

import pandas as pd

logger = logging.getLogger(__name__)

ROSTER_COLUMNS = (
    "id",
    "name",
    "association",
    "elo",
    "uefa_rank",
    "titleholder",
    "in_old_design",
)
NEW_DESIGN_SIZE = 36
OLD_DESIGN_SIZE = 32
# Four clubs per association at most in the 32-team group stage.
MAX_OLD_DESIGN_PER_ASSOCIATION = 4

BUNDLED_SEASONS = ("2024-25",)


class RosterError(ValueError):
    """Raised when a season roster cannot be loaded or violates an invariant."""


@dataclass(frozen=True)
class Team:
    """A club entered in one season.

    Elo is the strength used by the match model; uefa_rank only drives
    the official seeding (1 = highest club coefficient).
    """
    id: str
    name: str
    association: str
    elo: float
    uefa_rank: int
    titleholder: bool = False
    in_old_design: bool = True

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("team id must not be empty")
        if not math.isfinite(self.elo) or self.elo <= 0:
            raise ValueError(f"elo must be a positive finite number, got {self.elo}")
        if self.uefa_rank < 1:
            raise ValueError(f"uefa_rank must be positive, got {self.uefa_rank}")


@dataclass(frozen=True)
class SeasonRoster:
    """The 36 clubs of a season, 32 of which also play the old design."""
    season_label: str
    teams: tuple[Team, ...]

    def __post_init__(self) -> None:
        if len(self.teams) != NEW_DESIGN_SIZE:
            raise RosterError(
                f"wrong team count: expected {NEW_DESIGN_SIZE}, got {len(self.teams)}"
            )

        ids = Counter(t.id for t in self.teams)
        duplicated = sorted(i for i, n in ids.items() if n > 1)
        if duplicated:
            raise RosterError(f"duplicate id(s): {', '.join(duplicated)}")

        ranks = Counter(t.uefa_rank for t in self.teams)
        duplicated_ranks = sorted(r for r, n in ranks.items() if n > 1)
        if duplicated_ranks:
            raise RosterError(f"duplicate uefa_rank value(s): {duplicated_ranks}")

        holders = [t.id for t in self.teams if t.titleholder]
        if len(holders) != 1:
            raise RosterError(
                f"expected exactly one titleholder, got {len(holders)}: {holders}"
            )

        old = [t for t in self.teams if t.in_old_design]
        if len(old) != OLD_DESIGN_SIZE:
            raise RosterError(
                f"expected {OLD_DESIGN_SIZE} old-design teams, got {len(old)}"
            )

        per_association = Counter(t.association for t in old)
        crowded = {a: n for a, n in per_association.items() if n > MAX_OLD_DESIGN_PER_ASSOCIATION}
        if crowded:
            raise RosterError(
                f"too many old-design teams from one association "
                f"(max {MAX_OLD_DESIGN_PER_ASSOCIATION}): {crowded}"
            )

    @cached_property
    def by_id(self) -> dict[str, Team]:
        return {t.id: t for t in self.teams}

    @property
    def titleholder(self) -> Team:
        return next(t for t in self.teams if t.titleholder)


def old_design_roster(roster: SeasonRoster) -> list[Team]:
    """Return the 32 teams that also take part in the old design."""
    return [t for t in roster.teams if t.in_old_design]


def _parse_bool(value: str, column: str) -> bool:
    normalized = value.strip().lower()
    if normalized == "true":
        return True
    if normalized == "false":
        return False
    raise ValueError(f"{column} must be 'true' or 'false', got {value!r}")


def _parse_row(row: dict[str, str]) -> Team:
    return Team(
        id=row["id"].strip(),
        name=row["name"].strip(),
        association=row["association"].strip(),
        elo=float(row["elo"]),
        uefa_rank=int(row["uefa_rank"]),
        titleholder=_parse_bool(row["titleholder"], "titleholder"),
        in_old_design=_parse_bool(row["in_old_design"], "in_old_design"),
    )


def _rows(teams: list[Team], keep) -> str:
    return ", ".join(str(i) for i, t in enumerate(teams, start=1) if keep(t))


def _check_rows(teams: list[Team]) -> None:
    """Raise roster-level errors with the CSV rows that cause them."""
    if len(teams) > NEW_DESIGN_SIZE:
        raise RosterError(
            f"wrong team count: expected {NEW_DESIGN_SIZE}, got {len(teams)}; "
            f"row {NEW_DESIGN_SIZE + 1} onward is extra"
        )
    if len(teams) < NEW_DESIGN_SIZE:
        raise RosterError(
            f"wrong team count: expected {NEW_DESIGN_SIZE}, got {len(teams)}; "
            f"file ends after row {len(teams)}"
        )

    holders = [t for t in teams if t.titleholder]
    if len(holders) != 1:
        where = f"rows {_rows(teams, lambda t: t.titleholder)}" if holders else "no row"
        raise RosterError(
            f"expected exactly one titleholder, got {len(holders)} ({where} flagged)"
        )

    old = [t for t in teams if t.in_old_design]
    if len(old) != OLD_DESIGN_SIZE:
        raise RosterError(
            f"expected {OLD_DESIGN_SIZE} old-design teams, got {len(old)}; "
            f"rows with in_old_design=false: {_rows(teams, lambda t: not t.in_old_design) or 'none'}"
        )

    per_association = Counter(t.association for t in old)
    for association, n in sorted(per_association.items()):
        if n > MAX_OLD_DESIGN_PER_ASSOCIATION:
            rows = _rows(teams, lambda t: t.in_old_design and t.association == association)
            raise RosterError(
                f"rows {rows}: {n} old-design teams from {association} "
                f"(max {MAX_OLD_DESIGN_PER_ASSOCIATION})"
            )


def load_roster(source: BinaryIO | bytes, season_label: str = "") -> SeasonRoster:
    """Load and validate a season CSV.

    Args:
        source: Binary stream (or raw bytes) of a UTF-8 season CSV
        season_label: Label stored on the roster (e.g. '2024-25')

    Returns:
        Validated SeasonRoster

    Raises:
        RosterError: If the file is malformed or violates a roster invariant
    """
    raw = source if isinstance(source, bytes) else source.read()
    try:
        frame = pd.read_csv(io.BytesIO(raw), dtype=str, keep_default_na=False, encoding="utf-8")
    except (UnicodeDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise RosterError(f"cannot parse season CSV: {e}") from e

    missing = [c for c in ROSTER_COLUMNS if c not in frame.columns]
    if missing:
        raise RosterError(f"missing column(s): {', '.join(missing)}")

    teams = []
    for index, row in enumerate(frame.to_dict(orient="records"), start=1):
        try:
            teams.append(_parse_row(row))
        except ValueError as e:
            raise RosterError(f"row {index} ({row.get('id', '?')!r}): {e}") from e

    for index, team in enumerate(teams, start=1):
        if any(t.id == team.id for t in teams[: index - 1]):
            raise RosterError(f"row {index}: duplicate id {team.id!r}")
        if any(t.uefa_rank == team.uefa_rank for t in teams[: index - 1]):
            raise RosterError(f"row {index} ({team.id!r}): duplicate uefa_rank {team.uefa_rank}")
    _check_rows(teams)

    roster = SeasonRoster(season_label=season_label, teams=tuple(teams))
    logger.info(f"Loaded roster {season_label or '<unnamed>'}: {len(teams)} teams")
    return roster


def dump_roster(roster: SeasonRoster) -> bytes:
    """Serialize a roster to the season CSV format (inverse of load_roster)."""
    frame = pd.DataFrame(
        [
            {
                "id": t.id,
                "name": t.name,
                "association": t.association,
                "elo": format(t.elo, ".6f").rstrip("0").rstrip("."),
                "uefa_rank": t.uefa_rank,
                "titleholder": "true" if t.titleholder else "false",
                "in_old_design": "true" if t.in_old_design else "false",
            }
            for t in roster.teams
        ],
        columns=list(ROSTER_COLUMNS),
    )
    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


def load_season(season: str | None = None, teams_path: Path | None = None) -> SeasonRoster:
    """Load a bundled season by name, or a user-supplied CSV.

    Raises:
        RosterError: If the season is unknown or the file is invalid
        FileNotFoundError: If teams_path does not exist
    """
    if teams_path is not None:
        with open(teams_path, "rb") as f:
            return load_roster(f, season_label=teams_path.stem)

    name = season or BUNDLED_SEASONS[-1]
    if name not in BUNDLED_SEASONS:
        raise RosterError(
            f"unknown bundled season {name!r}; available: {', '.join(BUNDLED_SEASONS)}"
        )
    data = resources.files("tourneysim").joinpath("data", f"season_{name}.csv").read_bytes()
    return load_roster(data, season_label=name)
