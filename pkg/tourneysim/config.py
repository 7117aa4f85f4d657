import logging
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .models import Design, SeasonRoster, SeedingPolicy, load_season
from .services.group_draw import DEFAULT_RETRY_BUDGET
from .services.montecarlo import DEFAULT_DRAWS, DEFAULT_SCENARIOS, DEFAULT_SEED, ExperimentConfig

logger = logging.getLogger(__name__)


# Configuration paths
CONFIG_DIR = Path.home() / ".config" / "tourneysim"
CONFIG_FILE = CONFIG_DIR / "config.toml"

WORKERS_ENV = "TOURNEYSIM_WORKERS"


class ConfigError(ValueError):
    """Raised when a run cannot be configured from the given settings."""


@dataclass
class Config:
    """Run settings with sensible defaults; every key may appear in config.toml."""

    # Roster: a bundled season name, or a CSV path that takes precedence
    season: str = "2024-25"
    teams: str | None = None

    design: str = "new"  # old, new, new-t16
    seeding: str = "uefa"  # uefa, elo
    draws: int = DEFAULT_DRAWS
    scenarios: int = DEFAULT_SCENARIOS
    seed: int = DEFAULT_SEED
    workers: int | None = None  # None: all CPUs
    retry_budget: int = DEFAULT_RETRY_BUDGET

    out: str = "results"
    theme: str = "onedark"  # onedark or onelight


_KEY_TYPES: dict[str, type] = {
    "season": str,
    "teams": str,
    "design": str,
    "seeding": str,
    "draws": int,
    "scenarios": int,
    "seed": int,
    "workers": int,
    "retry_budget": int,
    "out": str,
    "theme": str,
}


def load_config(path: Path | None = None) -> Config:
    """Load configuration from a TOML file, falling back to defaults.

    Without `path` the user config file is read if it exists. Unknown keys
    and wrongly typed values are skipped with a warning.

    Raises:
        ConfigError: If an explicitly given path does not exist
    """
    config = Config()
    explicit = path is not None
    path = path or CONFIG_FILE

    if not path.exists():
        if explicit:
            raise ConfigError(f"config file not found: {path}")
        return config

    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        logger.warning(f"Invalid config file {path}: {e}")
        return config

    known = {f.name for f in fields(Config)}
    for key, value in data.items():
        if key not in known:
            logger.warning(f"Skipping unknown config key {key!r}")
            continue
        expected = _KEY_TYPES[key]
        # bool is an int subclass but never a valid count or seed
        if not isinstance(value, expected) or isinstance(value, bool):
            logger.warning(f"Skipping config key {key!r}: expected {expected.__name__}, got {value!r}")
            continue
        setattr(config, key, value)

    logger.info(f"Loaded config from {path}")
    return config


@dataclass(frozen=True)
class RunManifest:
    """Fully resolved settings of one CLI run."""
    season: str
    teams_path: Path | None
    design: Design
    seeding: SeedingPolicy
    draws: int
    scenarios: int
    seed: int
    workers: int | None
    out: Path
    retry_budget: int = DEFAULT_RETRY_BUDGET
    theme: str = "onedark"

    def load_roster(self) -> SeasonRoster:
        return load_season(self.season, self.teams_path)

    def experiment(
        self,
        design: Design | None = None,
        seeding: SeedingPolicy | None = None,
    ) -> ExperimentConfig:
        """ExperimentConfig of this run, optionally for another design/seeding."""
        return ExperimentConfig(
            design=design or self.design,
            seeding=seeding or self.seeding,
            num_draws=self.draws,
            num_scenarios=self.scenarios,
            master_seed=self.seed,
            retry_budget=self.retry_budget,
        )


def _workers_from_env() -> int | None:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def resolve_manifest(config: Config, **flags) -> RunManifest:
    """Merge command-line flags over the environment and config file.

    Flags left at None fall through to `TOURNEYSIM_WORKERS` (workers only),
    then to the config file, then to the defaults.

    Raises:
        ConfigError: If a value is out of range, a name is unknown or the
            roster file does not exist
    """
    overrides = {k: v for k, v in flags.items() if v is not None}
    unknown = set(overrides) - set(_KEY_TYPES)
    if unknown:
        raise ConfigError(f"unknown setting(s): {sorted(unknown)}")

    if "workers" not in overrides:
        env_workers = _workers_from_env()
        if env_workers is not None:
            overrides["workers"] = env_workers
    merged = replace(config, **overrides)

    try:
        design = Design.from_string(merged.design)
        seeding = SeedingPolicy.from_string(merged.seeding)
    except ValueError as e:
        raise ConfigError(str(e)) from None

    for key in ("draws", "scenarios", "retry_budget"):
        if getattr(merged, key) < 1:
            raise ConfigError(f"{key} must be at least 1, got {getattr(merged, key)}")
    if merged.seed < 0:
        raise ConfigError(f"seed must be non-negative, got {merged.seed}")
    if merged.workers is not None and merged.workers < 1:
        raise ConfigError(f"workers must be at least 1, got {merged.workers}")

    teams_path = Path(merged.teams).expanduser() if merged.teams else None
    if teams_path is not None and not teams_path.is_file():
        raise ConfigError(f"roster file not found: {teams_path}")

    return RunManifest(
        season=merged.season,
        teams_path=teams_path,
        design=design,
        seeding=seeding,
        draws=merged.draws,
        scenarios=merged.scenarios,
        seed=merged.seed,
        workers=merged.workers,
        out=Path(merged.out).expanduser(),
        retry_budget=merged.retry_budget,
        theme=merged.theme,
    )
