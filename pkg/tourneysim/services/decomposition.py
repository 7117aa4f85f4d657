from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .montecarlo import DrawProbabilityMatrix


class DecompositionError(ValueError):
    """Raised when the matrices of a decomposition cover different teams."""


@dataclass(frozen=True)
class TeamDecomposition:
    """Draw-impact figures of one team across the five configurations.

    Old-design fields are None for teams that only play in the new design.
    """
    team_id: str
    sigma_n: float
    sigma_n_elo: float
    sigma_n_elo_t16: float
    p_n: float
    p_n_elo: float
    p_n_elo_t16: float
    sigma_o: float | None = None
    sigma_o_elo: float | None = None
    p_o: float | None = None
    p_o_elo: float | None = None
    dV: float | None = None
    dV1: float | None = None  # inaccurate seeding
    dV2: float | None = None  # knockout play-offs
    dV3: float | None = None  # first-stage format

    @property
    def comparable(self) -> bool:
        return self.sigma_o is not None

    @property
    def pct_change(self) -> float | None:
        """Relative change of the draw impact, in percent."""
        if self.sigma_o is None or self.sigma_o == 0:
            return None
        return 100.0 * (self.sigma_n - self.sigma_o) / self.sigma_o


@dataclass(frozen=True)
class DecompositionReport:
    teams: tuple[TeamDecomposition, ...]

    @cached_property
    def by_id(self) -> dict[str, TeamDecomposition]:
        return {t.team_id: t for t in self.teams}

    def comparable(self) -> list[TeamDecomposition]:
        return [t for t in self.teams if t.comparable]


@dataclass(frozen=True)
class ReformSummary:
    """Headline numbers of the reform's effect on the comparable teams."""
    comparable_count: int
    reduced_count: int
    mean_pct_change: float
    smallest_reduction: tuple[str, float]
    largest_absolute_loser: tuple[str, float, float]
    largest_relative_loser: tuple[str, float, float]


def _check_same_teams(reference: DrawProbabilityMatrix, other: DrawProbabilityMatrix, label: str) -> None:
    missing = set(reference.team_ids) ^ set(other.team_ids)
    if missing:
        raise DecompositionError(f"{label} covers different teams; unmatched: {sorted(missing)}")


def decompose(
    n_uefa: DrawProbabilityMatrix,
    o_uefa: DrawProbabilityMatrix,
    n_elo: DrawProbabilityMatrix,
    o_elo: DrawProbabilityMatrix,
    n_elo_t16: DrawProbabilityMatrix,
) -> DecompositionReport:
    """Split each team's change in draw impact into three effects.

    dV1 (seeding) is what Elo seeding removes from the change, dV2 (play-offs)
    is the new-design impact minus its top-16 variant, dV3 (format) compares
    the top-16 variant with the Elo-seeded old design. dV is their sum, which
    equals sigma_n - sigma_o up to rounding.

    Raises:
        DecompositionError: If the new-design matrices differ in teams, the
            old-design matrices differ in teams, or an old-design team is
            missing from the new design
    """
    _check_same_teams(n_uefa, n_elo, "new-elo")
    _check_same_teams(n_uefa, n_elo_t16, "new-t16-elo")
    _check_same_teams(o_uefa, o_elo, "old-elo")
    outside = set(o_uefa.team_ids) - set(n_uefa.team_ids)
    if outside:
        raise DecompositionError(f"old-design teams missing from the new design: {sorted(outside)}")

    def stats(matrix: DrawProbabilityMatrix) -> dict[str, tuple[float, float]]:
        return {t: (float(p), float(s)) for t, p, s in zip(matrix.team_ids, matrix.mean, matrix.sigma)}

    n, ne, nt = stats(n_uefa), stats(n_elo), stats(n_elo_t16)
    o, oe = stats(o_uefa), stats(o_elo)

    rows = []
    for team_id in n_uefa.team_ids:
        (p_n, s_n), (p_ne, s_ne), (p_nt, s_nt) = n[team_id], ne[team_id], nt[team_id]
        row = dict(
            team_id=team_id,
            sigma_n=s_n, sigma_n_elo=s_ne, sigma_n_elo_t16=s_nt,
            p_n=p_n, p_n_elo=p_ne, p_n_elo_t16=p_nt,
        )
        if team_id in o:
            (p_o, s_o), (p_oe, s_oe) = o[team_id], oe[team_id]
            dV1 = (s_n - s_ne) - (s_o - s_oe)
            dV2 = s_ne - s_nt
            dV3 = s_nt - s_oe
            row.update(
                sigma_o=s_o, sigma_o_elo=s_oe, p_o=p_o, p_o_elo=p_oe,
                dV=(dV1 + dV2) + dV3, dV1=dV1, dV2=dV2, dV3=dV3,
            )
        rows.append(TeamDecomposition(**row))
    return DecompositionReport(teams=tuple(rows))


def summarize(report: DecompositionReport) -> ReformSummary:
    """Headline effects over the teams present in both designs.

    Raises:
        DecompositionError: If no team is present in both designs
    """
    teams = [t for t in report.comparable() if t.pct_change is not None]
    if not teams:
        raise DecompositionError("no team is present in both designs")

    changes = [t.pct_change for t in teams]
    smallest = max(teams, key=lambda t: t.pct_change)
    absolute = min(teams, key=lambda t: t.p_n - t.p_o)
    relative = min(
        (t for t in teams if t.p_o > 0),
        key=lambda t: (t.p_n - t.p_o) / t.p_o,
        default=absolute,
    )
    return ReformSummary(
        comparable_count=len(teams),
        reduced_count=sum(c < 0 for c in changes),
        mean_pct_change=sum(changes) / len(changes),
        smallest_reduction=(smallest.team_id, smallest.pct_change),
        largest_absolute_loser=(absolute.team_id, absolute.p_o, absolute.p_n),
        largest_relative_loser=(relative.team_id, relative.p_o, relative.p_n),
    )
