from rich.table import Table
from rich.text import Text

from ..services.validation import ValidationReport
from ..theme import ThemeColors, get_check_style

# Violations listed per constraint before the rest is summarised
MAX_LISTED = 10


def validation_table(report: ValidationReport, colors: ThemeColors) -> Table:
    """One row per checked constraint with its violations."""
    table = Table(title=f"Constraint check ({report.kind})", header_style="bold")
    table.add_column("", width=1)
    table.add_column("Constraint")
    table.add_column("Violations")

    for name, violations in report.constraints.items():
        icon, color = get_check_style(not violations, colors)
        listed = violations[:MAX_LISTED]
        if len(violations) > MAX_LISTED:
            listed.append(f"... and {len(violations) - MAX_LISTED} more")
        table.add_row(Text(icon, style=color), name, "\n".join(listed) or "-")
    return table
