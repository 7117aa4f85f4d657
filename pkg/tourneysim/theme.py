"""Centralized theme colors and result styling.

Single source of truth for:
- Theme palettes (onedark, onelight)
- Pot colours, change arrows, check marks and progress steps used by the widgets
"""
import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThemeColors:
    """Color palette of a theme."""
    green: str
    red: str
    yellow: str
    orange: str
    blue: str
    purple: str
    cyan: str
    dim: str


DEFAULT_COLORS = ThemeColors(
    green="#98c379",
    red="#e06c75",
    yellow="#e5c07b",
    orange="#d19a66",
    blue="#61afef",
    purple="#c678dd",
    cyan="#56b6c2",
    dim="#5c6370",
)

THEMES: dict[str, ThemeColors] = {
    "onedark": DEFAULT_COLORS,
    "onelight": ThemeColors(
        green="#50a14f",
        red="#e45649",
        yellow="#c18401",
        orange="#986801",
        blue="#4078f2",
        purple="#a626a4",
        cyan="#0184bc",
        dim="#a0a1a7",
    ),
}


def load_theme_colors(theme_name: str) -> ThemeColors:
    """Return the palette of a theme, falling back to onedark."""
    colors = THEMES.get(theme_name)
    if colors is None:
        logger.warning(f"Theme '{theme_name}' not found, falling back to 'onedark'")
        return DEFAULT_COLORS
    return colors


# =============================================================================
# Style mappings - SINGLE SOURCE OF TRUTH for icons and colors
# =============================================================================

# Pot number (1-based): color_attr
_POT_STYLES: dict[int, str] = {
    1: "blue",
    2: "cyan",
    3: "yellow",
    4: "orange",
}

# Check outcome: (icon, color_attr)
_CHECK_STYLES: dict[bool, tuple[str, str]] = {
    True: ("✓", "green"),
    False: ("✗", "red"),
}

# Sign of a change in draw impact: (icon, color_attr); a lower impact is good
_CHANGE_STYLES: dict[int, tuple[str, str]] = {
    -1: ("▼", "green"),
    0: ("=", "dim"),
    1: ("▲", "red"),
}


def get_pot_style(pot: int, colors: ThemeColors) -> str:
    """Hex color of a 1-based pot number."""
    return getattr(colors, _POT_STYLES.get(pot, "dim"))


def get_check_style(ok: bool, colors: ThemeColors) -> tuple[str, str]:
    """Return (icon, color_hex) for a passed or failed check."""
    icon, color_attr = _CHECK_STYLES[bool(ok)]
    return (icon, getattr(colors, color_attr))


def get_change_style(change: float | None, colors: ThemeColors) -> tuple[str, str]:
    """Return (icon, color_hex) for a change; None (no old value) is dimmed."""
    if change is None:
        return ("-", colors.dim)
    sign = (change > 0) - (change < 0)
    icon, color_attr = _CHANGE_STYLES[sign]
    return (icon, getattr(colors, color_attr))


# StepStatus: (icon, color_attr) - string keys to avoid importing the widget
_STEP_STYLES: dict[str, tuple[str, str]] = {
    "pending": ("○", "dim"),
    "active": ("◐", "cyan"),
    "done": ("●", "green"),
    "error": ("✗", "red"),
}


def get_step_style(status: str, colors: ThemeColors) -> tuple[str, str]:
    """Return (icon, color_hex) for a StepStatus value."""
    icon, color_attr = _STEP_STYLES.get(status, ("?", "dim"))
    return (icon, getattr(colors, color_attr))
