from .match_simulator import (
    DEFAULT_GOAL_MODEL,
    GoalModel,
    Venue,
    expected_goals,
    sample_match,
    sample_tie_winner,
    two_legged_win_prob,
    win_expectancy,
)
from .group_draw import DrawInfeasibleError, draw_groups
from .league_draw import (
    DrawState,
    LeagueDrawContext,
    check_completion_feasible,
    draw_league,
    enumerate_candidate_pairs,
)
from .ranking import rank_group, rank_league, tabulate
from .tournament import (
    play_group_stage,
    play_league_phase,
    play_tournament,
    playoff_round,
    qualifiers_t16,
)
from .streams import derive_stream
from .montecarlo import DrawProbabilityMatrix, ExperimentConfig, run_config
from .decomposition import (
    DecompositionError,
    DecompositionReport,
    TeamDecomposition,
    decompose,
    summarize,
)
from .validation import DumpParseError, ValidationReport, dump_draw, read_dump, validate_draw

__all__ = [
    "DEFAULT_GOAL_MODEL",
    "DecompositionError",
    "DecompositionReport",
    "DrawInfeasibleError",
    "DrawProbabilityMatrix",
    "DrawState",
    "DumpParseError",
    "ExperimentConfig",
    "GoalModel",
    "LeagueDrawContext",
    "TeamDecomposition",
    "ValidationReport",
    "Venue",
    "check_completion_feasible",
    "decompose",
    "derive_stream",
    "draw_groups",
    "draw_league",
    "dump_draw",
    "enumerate_candidate_pairs",
    "expected_goals",
    "play_group_stage",
    "play_league_phase",
    "play_tournament",
    "playoff_round",
    "qualifiers_t16",
    "rank_group",
    "rank_league",
    "read_dump",
    "run_config",
    "sample_match",
    "sample_tie_winner",
    "summarize",
    "tabulate",
    "two_legged_win_prob",
    "validate_draw",
    "win_expectancy",
]
