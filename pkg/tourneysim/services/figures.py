"""Plot-ready data for the result figures (no rendering)."""
from __future__ import annotations

import pandas as pd

from ..models import Design, SeasonRoster, SeedingPolicy, assign_pots, old_design_roster
from .decomposition import DecompositionReport

SIGMA_SERIES = ("sigma_o", "sigma_n", "sigma_o_elo", "sigma_n_elo", "sigma_n_elo_t16")

# file stem -> (old-design seeding used for the pot column, (x, y) columns)
_SCATTERS = {
    "figure1_data": (SeedingPolicy.UEFA, ("p_o", "p_n")),
    "figure2_data": (SeedingPolicy.UEFA, ("sigma_o", "sigma_n")),
    "figure3_data": (SeedingPolicy.ELO, ("sigma_o_elo", "sigma_n_elo")),
    "figure4_data": (SeedingPolicy.ELO, ("sigma_o_elo", "sigma_n_elo_t16")),
}


def _old_pots(roster: SeasonRoster, policy: SeedingPolicy) -> dict[str, int]:
    pots = assign_pots(old_design_roster(roster), Design.OLD, policy)
    return {t: p + 1 for t, p in pots.pot_of.items()}


def figure_frames(report: DecompositionReport, roster: SeasonRoster) -> dict[str, pd.DataFrame]:
    """All figure data sets keyed by file stem.

    The four scatters compare old and new design per team, coloured by the
    team's old-design pot. figure5_data holds the three decomposition
    effects in descending Elo order; figure6_data is the long-format Elo vs
    draw-impact table of all five configurations.
    """
    teams = roster.by_id
    comparable = report.comparable()
    frames: dict[str, pd.DataFrame] = {}

    for stem, (policy, (x, y)) in _SCATTERS.items():
        pot = _old_pots(roster, policy)
        frames[stem] = pd.DataFrame(
            [
                {
                    "team_id": t.team_id,
                    "name": teams[t.team_id].name,
                    "elo": teams[t.team_id].elo,
                    "old_pot": pot[t.team_id],
                    x: getattr(t, x),
                    y: getattr(t, y),
                }
                for t in comparable
            ],
            columns=["team_id", "name", "elo", "old_pot", x, y],
        )

    by_strength = sorted(comparable, key=lambda t: -teams[t.team_id].elo)
    frames["figure5_data"] = pd.DataFrame(
        [
            {
                "team_id": t.team_id,
                "name": teams[t.team_id].name,
                "elo": teams[t.team_id].elo,
                "dV1": t.dV1,
                "dV2": t.dV2,
                "dV3": t.dV3,
            }
            for t in by_strength
        ],
        columns=["team_id", "name", "elo", "dV1", "dV2", "dV3"],
    )

    frames["figure6_data"] = pd.DataFrame(
        [
            {
                "team_id": t.team_id,
                "name": teams[t.team_id].name,
                "elo": teams[t.team_id].elo,
                "series": series,
                "sigma": getattr(t, series),
            }
            for series in SIGMA_SERIES
            for t in report.teams
            if getattr(t, series) is not None
        ],
        columns=["team_id", "name", "elo", "series", "sigma"],
    )
    return frames
