from .draw_view import group_table, league_table, pot_table
from .error_view import error_markup, show_error
from .progress_view import ProgressView, StepStatus
from .results_table import decomposition_table, probability_table, summary_panel
from .validation_view import validation_table

__all__ = [
    "ProgressView",
    "StepStatus",
    "decomposition_table",
    "error_markup",
    "group_table",
    "league_table",
    "pot_table",
    "probability_table",
    "show_error",
    "summary_panel",
    "validation_table",
]
