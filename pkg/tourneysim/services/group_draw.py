from __future__ import annotations

import logging
from collections import Counter
from typing import Mapping

import numpy as np

from ..models import GroupAssignment, PotAssignment, Team

logger = logging.getLogger(__name__)

DEFAULT_RETRY_BUDGET = 1_000_000


class DrawInfeasibleError(RuntimeError):
    """Raised when a draw cannot satisfy its constraints."""


def _association_codes(pots: PotAssignment, teams: Mapping[str, Team]) -> np.ndarray:
    """Integer association code for every pot slot, shape (pots, pot_size)."""
    codes: dict[str, int] = {}
    return np.array(
        [[codes.setdefault(teams[t].association, len(codes)) for t in pot] for pot in pots.pots],
        dtype=np.int64,
    )


def draw_groups(
    pots: PotAssignment,
    teams: Mapping[str, Team],
    rng: np.random.Generator,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> GroupAssignment:
    """Draw the old-design groups by rejection sampling.

    Each attempt permutes every pot uniformly and reads the groups off
    column-wise; the attempt is kept only if no group holds two teams of
    one association. Accepted draws are uniform over all valid assignments.

    Args:
        pots: Pots of equal size; the pot size is the number of groups
        teams: Team lookup by id (for associations)
        rng: Random stream
        retry_budget: Maximum number of attempts

    Returns:
        GroupAssignment with groups[g][p] drawn from pot p

    Raises:
        DrawInfeasibleError: If an association has more teams than there are
            groups, or no valid draw is found within the budget
    """
    n_groups = pots.pot_size
    per_association = Counter(teams[t].association for t in pots.team_ids)
    crowded = {a: n for a, n in per_association.items() if n > n_groups}
    if crowded:
        raise DrawInfeasibleError(
            f"{n_groups} groups cannot separate association counts {crowded}"
        )

    codes = _association_codes(pots, teams)
    n_pots = len(pots.pots)

    for attempt in range(1, retry_budget + 1):
        order = np.stack([rng.permutation(n_groups) for _ in range(n_pots)])
        # drawn[p, g] = association of the pot-p team placed in group g
        drawn = np.take_along_axis(codes, order, axis=1)
        column_sorted = np.sort(drawn, axis=0)
        if not np.any(column_sorted[1:] == column_sorted[:-1]):
            logger.debug(f"Group draw accepted after {attempt} attempt(s)")
            groups = tuple(
                tuple(pots.pots[p][order[p, g]] for p in range(n_pots))
                for g in range(n_groups)
            )
            return GroupAssignment(groups=groups)

    raise DrawInfeasibleError(
        f"no valid group draw in {retry_budget} attempts; association counts: "
        f"{dict(per_association.most_common())}"
    )
