from enum import Enum

from rich.console import Group, RenderableType
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from ..theme import DEFAULT_COLORS, ThemeColors, get_step_style


class StepStatus(Enum):
    PENDING = "pending"
    ACTIVE = "active"
    DONE = "done"
    ERROR = "error"


class ProgressView:
    """Configuration checklist above a draw-level progress bar.

    Render it inside `rich.live.Live`; each configuration is a step whose
    bar advances once per finished draw.
    """

    def __init__(self, title: str, step_names: list[str], colors: ThemeColors = DEFAULT_COLORS):
        self.title = title
        self.colors = colors
        self.steps = [[name, StepStatus.PENDING] for name in step_names]
        self.progress = Progress(
            TextColumn("{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            TimeElapsedColumn(),
        )
        self._task = None

    def start_step(self, index: int, total: int) -> None:
        """Mark a step ACTIVE and reset the bar to `total` draws."""
        self.steps[index][1] = StepStatus.ACTIVE
        if self._task is not None:
            self.progress.remove_task(self._task)
        self._task = self.progress.add_task(self.steps[index][0], total=total)

    def advance(self, draws: int = 1) -> None:
        if self._task is not None:
            self.progress.advance(self._task, draws)

    def finish_step(self, index: int) -> None:
        self.steps[index][1] = StepStatus.DONE

    def mark_error(self, index: int) -> None:
        self.steps[index][1] = StepStatus.ERROR

    def __rich__(self) -> RenderableType:
        lines = [f"[bold]{self.title}[/bold]", ""]
        for name, status in self.steps:
            icon, color = get_step_style(status.value, self.colors)
            lines.append(f"  [{color}]{icon}[/{color}] {name}")
        return Group("\n".join(lines), self.progress)
