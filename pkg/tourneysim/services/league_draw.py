"""Sequential league-phase draw with exact deadlock avoidance.

Teams are indexed pot by pot. The draw state keeps, per team and pot, the
home opponent it hosts and the away opponent it visits, plus bitmasks that
make the candidate sets of an open slot a handful of integer operations.

A fixture (h, a) fills two slots: h's home slot towards pot(a) and a's
away slot towards pot(h). Every schedule therefore consists of one fixture
per home slot, which is what the completion search branches on.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..models import LeagueSchedule, PotAssignment, Team
from .group_draw import DrawInfeasibleError

logger = logging.getLogger(__name__)

# No team may face more than two clubs of one association.
MAX_OPPONENTS_PER_ASSOCIATION = 2

Edge = tuple[int, int]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class LeagueDrawContext:
    """Static data of one league draw: team order, pots and associations."""
    ids: tuple[str, ...]
    pot_of: tuple[int, ...]
    association_of: tuple[int, ...]
    pot_masks: tuple[int, ...]
    association_masks: tuple[int, ...]

    @classmethod
    def from_pots(cls, pots: PotAssignment, teams: Mapping[str, Team]) -> "LeagueDrawContext":
        if pots.pot_size < 3:
            raise ValueError("league draw needs at least 3 teams per pot")
        ids = tuple(pots.team_ids)
        codes: dict[str, int] = {}
        association_of = tuple(codes.setdefault(teams[t].association, len(codes)) for t in ids)
        pot_of = tuple(pots.pot_of[t] for t in ids)

        pot_masks = [0] * len(pots.pots)
        for i, p in enumerate(pot_of):
            pot_masks[p] |= 1 << i
        association_masks = [0] * len(codes)
        for i, a in enumerate(association_of):
            association_masks[a] |= 1 << i

        return cls(
            ids=ids,
            pot_of=pot_of,
            association_of=association_of,
            pot_masks=tuple(pot_masks),
            association_masks=tuple(association_masks),
        )

    @property
    def n_teams(self) -> int:
        return len(self.ids)

    @property
    def n_pots(self) -> int:
        return len(self.pot_masks)

    def index(self, team_id: str) -> int:
        return self.ids.index(team_id)


@dataclass
class DrawState:
    """Partial league draw.

    home_opp[h][q] is the pot-q team that h hosts (-1 while open);
    away_opp[a][p] is the pot-p team that a visits.
    """
    ctx: LeagueDrawContext
    home_opp: list[list[int]]
    away_opp: list[list[int]]
    home_open: list[int]  # per pot q: teams still needing a home opponent from q
    away_open: list[int]  # per pot p: teams still needing an away opponent from p
    met: list[int]
    association_count: list[list[int]]
    blocked: list[int]  # teams each team may no longer face for association reasons
    saturated: list[int]  # per association: teams that already face two of its clubs
    fixtures: list[Edge] = field(default_factory=list)

    @classmethod
    def empty(cls, ctx: LeagueDrawContext) -> "DrawState":
        n, n_pots = ctx.n_teams, ctx.n_pots
        everyone = (1 << n) - 1
        return cls(
            ctx=ctx,
            home_opp=[[-1] * n_pots for _ in range(n)],
            away_opp=[[-1] * n_pots for _ in range(n)],
            home_open=[everyone] * n_pots,
            away_open=[everyone] * n_pots,
            met=[0] * n,
            association_count=[[0] * len(ctx.association_masks) for _ in range(n)],
            # same-association opponents are excluded from the start
            blocked=[ctx.association_masks[ctx.association_of[i]] for i in range(n)],
            saturated=[0] * len(ctx.association_masks),
        )

    def copy(self) -> "DrawState":
        return DrawState(
            ctx=self.ctx,
            home_opp=[row[:] for row in self.home_opp],
            away_opp=[row[:] for row in self.away_opp],
            home_open=self.home_open[:],
            away_open=self.away_open[:],
            met=self.met[:],
            association_count=[row[:] for row in self.association_count],
            blocked=self.blocked[:],
            saturated=self.saturated[:],
            fixtures=self.fixtures[:],
        )

    # Slot queries

    def home_candidates(self, h: int, q: int) -> int:
        """Bitmask of pot-q teams that h could still host."""
        ctx = self.ctx
        return (
            ctx.pot_masks[q]
            & self.away_open[ctx.pot_of[h]]
            & ~self.blocked[h]
            & ~self.met[h]
            & ~self.saturated[ctx.association_of[h]]
        )

    def can_assign(self, h: int, a: int) -> bool:
        ctx = self.ctx
        return (
            h != a
            and self.home_opp[h][ctx.pot_of[a]] < 0
            and bool(self.home_candidates(h, ctx.pot_of[a]) >> a & 1)
        )

    @property
    def is_complete(self) -> bool:
        return not any(self.home_open)

    # Mutation

    def assign(self, h: int, a: int) -> None:
        ctx = self.ctx
        ph, pa = ctx.pot_of[h], ctx.pot_of[a]
        self.home_opp[h][pa] = a
        self.away_opp[a][ph] = h
        self.home_open[pa] &= ~(1 << h)
        self.away_open[ph] &= ~(1 << a)
        self.met[h] |= 1 << a
        self.met[a] |= 1 << h
        self._count(h, ctx.association_of[a], +1)
        self._count(a, ctx.association_of[h], +1)
        self.fixtures.append((h, a))

    def unassign(self, h: int, a: int) -> None:
        ctx = self.ctx
        ph, pa = ctx.pot_of[h], ctx.pot_of[a]
        self.home_opp[h][pa] = -1
        self.away_opp[a][ph] = -1
        self.home_open[pa] |= 1 << h
        self.away_open[ph] |= 1 << a
        self.met[h] &= ~(1 << a)
        self.met[a] &= ~(1 << h)
        self._count(h, ctx.association_of[a], -1)
        self._count(a, ctx.association_of[h], -1)
        self.fixtures.remove((h, a))

    def _count(self, team: int, association: int, delta: int) -> None:
        before = self.association_count[team][association]
        after = before + delta
        self.association_count[team][association] = after
        if after == MAX_OPPONENTS_PER_ASSOCIATION:
            self.blocked[team] |= self.ctx.association_masks[association]
            self.saturated[association] |= 1 << team
        elif before == MAX_OPPONENTS_PER_ASSOCIATION:
            self.blocked[team] &= ~self.ctx.association_masks[association]
            self.saturated[association] &= ~(1 << team)

    def add_fixture(self, home_id: str, away_id: str) -> None:
        """Commit a fixture by team ids.

        Raises:
            ValueError: If the fixture breaks a draw constraint
        """
        h, a = self.ctx.index(home_id), self.ctx.index(away_id)
        if not self.can_assign(h, a):
            raise ValueError(f"fixture {home_id} v {away_id} violates the draw constraints")
        self.assign(h, a)

    def to_schedule(self) -> LeagueSchedule:
        ids = self.ctx.ids
        return LeagueSchedule(fixtures=frozenset((ids[h], ids[a]) for h, a in self.fixtures))


# =============================================================================
# Exact completion search
# =============================================================================


def _augment(h: int, adjacency: dict[int, int], owner: dict[int, int], seen: list[int]) -> bool:
    for a in _bits(adjacency[h] & ~seen[0]):
        seen[0] |= 1 << a
        if a not in owner or _augment(owner[a], adjacency, owner, seen):
            owner[a] = h
            return True
    return False


def _blocks_matchable(state: DrawState, candidates: dict[tuple[int, int], int]) -> bool:
    """Every (pot p -> pot q) block must still admit a perfect matching."""
    ctx = state.ctx
    for q in range(ctx.n_pots):
        open_q = state.home_open[q]
        for p in range(ctx.n_pots):
            left = open_q & ctx.pot_masks[p]
            if not left:
                continue
            adjacency = {h: candidates[(h, q)] for h in _bits(left)}
            owner: dict[int, int] = {}
            for h in adjacency:
                if not _augment(h, adjacency, owner, [0]):
                    return False
    return True


def _search(state: DrawState, stats: Counter) -> list[Edge] | None:
    stats["nodes"] += 1
    ctx = state.ctx
    candidates: dict[tuple[int, int], int] = {}
    best: tuple[int, int] | None = None
    best_count = ctx.n_teams + 1

    for q in range(ctx.n_pots):
        for h in _bits(state.home_open[q]):
            cand = state.home_candidates(h, q)
            count = cand.bit_count()
            if count == 0:
                return None
            candidates[(h, q)] = cand
            if count < best_count:
                best, best_count = (h, q), count

    if best is None:
        return []
    if not _blocks_matchable(state, candidates):
        stats["pruned"] += 1
        return None

    h, q = best
    for a in _bits(candidates[best]):
        state.assign(h, a)
        rest = _search(state, stats)
        state.unassign(h, a)
        if rest is not None:
            return [(h, a)] + rest
    return None


def find_completion(state: DrawState) -> frozenset[Edge] | None:
    """Return a full schedule extending the state, or None if none exists.

    The search is exhaustive, so None proves that the state is a deadlock.
    The state is left unchanged.
    """
    stats: Counter = Counter()
    rest = _search(state, stats)
    logger.debug(f"Completion search: {stats['nodes']} nodes, {stats['pruned']} pruned")
    if rest is None:
        return None
    return frozenset(state.fixtures) | frozenset(rest)


def check_completion_feasible(state: DrawState) -> bool:
    """True iff the partial draw extends to at least one valid schedule."""
    return find_completion(state) is not None


# =============================================================================
# Candidate pairs
# =============================================================================


def _pair_edges(t: int, pair: tuple[int, int]) -> tuple[Edge, Edge]:
    """Fixtures of team t for (team it hosts, team it visits)."""
    hosted, visited = pair
    return (t, hosted), (visited, t)


def _local_pairs(state: DrawState, t: int, pot: int) -> list[tuple[int, int]]:
    """Ordered (hosted, visited) pairs from `pot` that keep every local constraint."""
    ctx = state.ctx
    p_t = ctx.pot_of[t]
    hosted_fixed = state.home_opp[t][pot]
    visited_fixed = state.away_opp[t][pot]

    hosted_options = [hosted_fixed] if hosted_fixed >= 0 else list(_bits(state.home_candidates(t, pot)))
    pairs = []
    for x in hosted_options:
        if hosted_fixed < 0:
            state.assign(t, x)
        if visited_fixed >= 0:
            visited_options = [visited_fixed]
        else:
            visited_options = [
                y for y in _bits(ctx.pot_masks[pot] & state.home_open[p_t]) if state.can_assign(y, t)
            ]
        pairs.extend((x, y) for y in visited_options)
        if hosted_fixed < 0:
            state.unassign(t, x)
    return pairs


def _apply_pair(state: DrawState, t: int, pair: tuple[int, int]) -> list[Edge]:
    """Assign the open fixtures of a pair; returns what was added."""
    added = []
    for h, a in _pair_edges(t, pair):
        if state.home_opp[h][state.ctx.pot_of[a]] != a:
            state.assign(h, a)
            added.append((h, a))
    return added


def _pair_feasible(
    state: DrawState,
    t: int,
    pair: tuple[int, int],
    witnesses: list[frozenset[Edge]],
) -> bool:
    edges = _pair_edges(t, pair)
    if any(edges[0] in w and edges[1] in w for w in witnesses):
        return True
    added = _apply_pair(state, t, pair)
    completion = find_completion(state)
    for h, a in reversed(added):
        state.unassign(h, a)
    if completion is None:
        return False
    witnesses.append(completion)
    return True


def enumerate_candidate_pairs(state: DrawState, team_id: str, pot: int) -> set[tuple[str, str]]:
    """All feasible (hosted, visited) opponent pairs for a team from one pot.

    A side that is already drawn stays fixed in every pair. Pairs are kept
    only if the draw can still be completed after choosing them.

    Args:
        state: Current draw state (not modified)
        team_id: Team whose pot-`pot` opponents are drawn
        pot: 0-based pot index

    Returns:
        Set of (home-opponent id, away-opponent id); empty means deadlock
    """
    ctx = state.ctx
    t = ctx.index(team_id)
    witnesses: list[frozenset[Edge]] = []
    return {
        (ctx.ids[x], ctx.ids[y])
        for x, y in _local_pairs(state, t, pot)
        if _pair_feasible(state, t, (x, y), witnesses)
    }


# =============================================================================
# Sequential draw
# =============================================================================


def draw_league(
    pots: PotAssignment,
    teams: Mapping[str, Team],
    rng: np.random.Generator,
) -> LeagueSchedule:
    """Run the sequential league-phase draw.

    Pots are processed in order; within a pot an unprocessed team is picked
    uniformly at random and its opponents are drawn pot by pot as
    (hosted, visited) pairs, uniformly among pairs that cannot lead to a
    deadlock. The locally valid pairs are tried in a uniformly shuffled
    order and the first feasible one is taken, which is a uniform choice
    among the feasible pairs without proving feasibility for all of them.

    Raises:
        DrawInfeasibleError: If the empty draw cannot be completed
    """
    ctx = LeagueDrawContext.from_pots(pots, teams)
    state = DrawState.empty(ctx)

    first = find_completion(state)
    if first is None:
        counts = Counter(teams[t].association for t in ctx.ids)
        raise DrawInfeasibleError(
            f"league draw cannot be completed; association counts: {dict(counts.most_common())}"
        )
    witnesses = [first]

    for pot_index, pot_ids in enumerate(pots.pots):
        remaining = [ctx.index(t) for t in pot_ids]
        while remaining:
            t = remaining.pop(int(rng.integers(len(remaining))))
            for p in range(ctx.n_pots):
                if state.home_opp[t][p] >= 0 and state.away_opp[t][p] >= 0:
                    continue
                pairs = _local_pairs(state, t, p)
                for k in rng.permutation(len(pairs)):
                    pair = pairs[int(k)]
                    if _pair_feasible(state, t, pair, witnesses):
                        added = _apply_pair(state, t, pair)
                        witnesses = [w for w in witnesses if all(e in w for e in added)]
                        break
                else:
                    raise AssertionError(
                        f"deadlock reached drawing pot {p + 1} opponents of {ctx.ids[t]}"
                    )
        logger.debug(f"League draw: pot {pot_index + 1} processed, {len(state.fixtures)} fixtures")

    return state.to_schedule()
