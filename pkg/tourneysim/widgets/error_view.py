from rich.console import Console


def error_markup(message: str) -> str:
    """Rich markup of an error line."""
    return f"[bold red]Error:[/bold red] {message}"


def show_error(console: Console, message: str) -> None:
    """Print an error message (the console is usually bound to stderr)."""
    console.print(error_markup(message), highlight=False)
