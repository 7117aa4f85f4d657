from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd

from ..models import PotAssignment, SeasonRoster
from .decomposition import DecompositionReport
from .montecarlo import DrawProbabilityMatrix

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.6f"

PROBABILITY_COLUMNS = ["team_id", "name", "elo", "pot", "p_qualify", "sigma", "se_p"]
PER_DRAW_COLUMNS = ["team_id", "draw_index", "q"]
DECOMPOSITION_COLUMNS = [
    "team_id", "name", "elo",
    "sigma_o", "sigma_n", "sigma_o_elo", "sigma_n_elo", "sigma_n_elo_t16",
    "dV", "dV1", "dV2", "dV3", "pct_change",
]


def probabilities_frame(
    matrix: DrawProbabilityMatrix,
    roster: SeasonRoster,
    pots: PotAssignment,
) -> pd.DataFrame:
    """One row per team: pot (1-based), mean probability, draw impact and its standard error."""
    teams = roster.by_id
    return pd.DataFrame({
        "team_id": list(matrix.team_ids),
        "name": [teams[t].name for t in matrix.team_ids],
        "elo": [teams[t].elo for t in matrix.team_ids],
        "pot": [pots.pot_of[t] + 1 for t in matrix.team_ids],
        "p_qualify": matrix.mean,
        "sigma": matrix.sigma,
        "se_p": matrix.standard_error,
    }, columns=PROBABILITY_COLUMNS)


def per_draw_frame(matrix: DrawProbabilityMatrix) -> pd.DataFrame:
    """Long format q[i, d]: one row per (team, draw)."""
    q = matrix.q
    n_teams, n_draws = q.shape
    return pd.DataFrame({
        "team_id": [t for t in matrix.team_ids for _ in range(n_draws)],
        "draw_index": list(range(n_draws)) * n_teams,
        "q": q.reshape(-1),
    }, columns=PER_DRAW_COLUMNS)


def decomposition_frame(report: DecompositionReport, roster: SeasonRoster) -> pd.DataFrame:
    """One row per new-design team; old-design columns are empty for new entrants."""
    teams = roster.by_id
    rows = [
        {
            "team_id": t.team_id,
            "name": teams[t.team_id].name,
            "elo": teams[t.team_id].elo,
            "sigma_o": t.sigma_o,
            "sigma_n": t.sigma_n,
            "sigma_o_elo": t.sigma_o_elo,
            "sigma_n_elo": t.sigma_n_elo,
            "sigma_n_elo_t16": t.sigma_n_elo_t16,
            "dV": t.dV,
            "dV1": t.dV1,
            "dV2": t.dV2,
            "dV3": t.dV3,
            "pct_change": t.pct_change,
        }
        for t in report.teams
    ]
    return pd.DataFrame(rows, columns=DECOMPOSITION_COLUMNS)


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Write a report as UTF-8 CSV with six-decimal floats."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    logger.info(f"Wrote {path} ({len(frame)} rows)")
    return path
