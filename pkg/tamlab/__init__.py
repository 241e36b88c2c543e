"""tamlab: exact Burnside rings and Tambara functors for small finite groups.

Computes tables of marks, Burnside ring arithmetic through the ghost map,
norms of integers, Dress prime descriptors and units of localizations, and
checks Tambara functor instances level by level.

Architecture:
- domain/: Pure mathematics (groups, G-sets, Burnside ring, Tambara functors)
- infrastructure/: Config and golden-file repositories
- application/: Verification and Tambara services
- interfaces/: CLI and spec-string parsing
"""

__version__ = "0.1.0"

from tamlab.infrastructure import (
    EngineConfig,
    GoldenPaths,
    DEFAULT_CONFIG,
    RepositoryError,
)
from tamlab.domain.errors import TamlabError

__all__ = [
    "__version__",
    "EngineConfig",
    "GoldenPaths",
    "DEFAULT_CONFIG",
    "RepositoryError",
    "TamlabError",
]
