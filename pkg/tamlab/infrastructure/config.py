"""Configuration: resource caps, parallelism and golden-file paths.

This module provides:
- EngineConfig: caps and worker settings shared by every command
- GoldenPaths: where marks-table golden files live

Environment (read from the process and an optional .env file):
    TAMLAB_MAX_ORDER     group order cap (default 120)
    TAMLAB_MAX_POINTS    G-set enumeration cap (default 20_000_000)
    TAMLAB_WORKERS       process pool size for per-k fan-out (default 1)
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path

from dotenv import find_dotenv, load_dotenv

from tamlab.domain.errors import ConfigError
from tamlab.domain.gset import DEFAULT_MAX_POINTS
from tamlab.domain.perm_core import DEFAULT_MAX_ORDER


ENV_MAX_ORDER = "TAMLAB_MAX_ORDER"
ENV_MAX_POINTS = "TAMLAB_MAX_POINTS"
ENV_WORKERS = "TAMLAB_WORKERS"


def _positive_int(name: str, raw: str) -> int:
    try:
        value = int(raw.replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name} must be an integer", repr(raw))
    if value < 1:
        raise ConfigError(f"{name} must be positive", repr(raw))
    return value


@dataclass(frozen=True)
class EngineConfig:
    """Settings for one engine run.

    Attributes:
        max_order: Largest group order accepted (closure and lattice)
        max_points: Largest G-set enumerated explicitly
        workers: Process pool size; 1 runs sequentially
        seed: Seed for every sampled check
    """

    max_order: int = DEFAULT_MAX_ORDER
    max_points: int = DEFAULT_MAX_POINTS
    workers: int = 1
    seed: int = 0

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "EngineConfig":
        """Defaults overridden by TAMLAB_* variables.

        Raises:
            ConfigError: A variable is not a positive integer.
        """
        if dotenv:
            load_dotenv(find_dotenv(usecwd=True), override=False)
        config = cls()
        overrides = {}
        for env, field_name in (
            (ENV_MAX_ORDER, "max_order"),
            (ENV_MAX_POINTS, "max_points"),
            (ENV_WORKERS, "workers"),
        ):
            raw = os.environ.get(env)
            if raw is not None and raw.strip():
                overrides[field_name] = _positive_int(env, raw.strip())
        return replace(config, **overrides)

    def with_overrides(self, **values) -> "EngineConfig":
        """Replace only the values that were actually given (None = keep)."""
        given = {k: v for k, v in values.items() if v is not None}
        for name in ("max_order", "max_points", "workers"):
            if name in given and given[name] < 1:
                raise ConfigError(f"{name} must be positive", str(given[name]))
        return replace(self, **given)


@dataclass(frozen=True)
class GoldenPaths:
    """Golden-file locations.

    Attributes:
        root: Directory holding one marks JSON per group
    """

    root: Path = Path("tests") / "golden"

    def marks_path(self, group_label: str) -> Path:
        """Path to a group's marks table (e.g. tests/golden/marks_S3.json)."""
        return self.root / f"marks_{group_label}.json"

    def list_groups(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.stem.removeprefix("marks_") for p in self.root.glob("marks_*.json"))

    def ensure_dirs(self) -> None:
        self.root.mkdir(parents=True, exist_ok=True)


# Default instances
DEFAULT_CONFIG = EngineConfig()
DEFAULT_GOLDEN = GoldenPaths()
