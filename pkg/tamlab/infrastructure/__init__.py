"""Infrastructure layer for tamlab.

Contains:
- config: resource caps, workers, golden-file paths
- repositories: golden marks-table storage
"""

from tamlab.infrastructure.config import (
    EngineConfig,
    GoldenPaths,
    DEFAULT_CONFIG,
    DEFAULT_GOLDEN,
)
from tamlab.infrastructure.repositories import (
    Repository,
    RepositoryError,
    GoldenMarksRepository,
)

__all__ = [
    # Config
    "EngineConfig",
    "GoldenPaths",
    "DEFAULT_CONFIG",
    "DEFAULT_GOLDEN",
    # Repositories
    "Repository",
    "RepositoryError",
    "GoldenMarksRepository",
]
