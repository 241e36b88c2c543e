"""Golden Repository: marks tables stored as JSON.

File format is exactly the `marks --json` payload:
    {"group": "S3", "classes": ["1a", ...], "matrix": [[6, 3, 2, 1], ...]}
"""

import json

from tamlab.infrastructure.config import DEFAULT_GOLDEN, GoldenPaths
from tamlab.infrastructure.repositories.base import Repository, RepositoryError

REQUIRED_KEYS = ("group", "classes", "matrix")


def dumps(payload: dict) -> str:
    """Stable JSON text (also used for stdout)."""
    return json.dumps(payload, indent=2, ensure_ascii=False)


class GoldenMarksRepository(Repository[dict]):
    """Read and write marks-table golden files.

    Example:
        >>> repo = GoldenMarksRepository()
        >>> repo.get("S3")["matrix"][0]
        [6, 3, 2, 1]
    """

    def __init__(self, paths: GoldenPaths = DEFAULT_GOLDEN):
        self._paths = paths
        self._cache: dict[str, dict] = {}

    def get(self, key: str) -> dict:
        """Load a golden marks table.

        Raises:
            RepositoryError: File missing, unreadable, or missing keys.
        """
        if key in self._cache:
            return self._cache[key]
        path = self._paths.marks_path(key)
        if not path.exists():
            raise RepositoryError(f"No golden marks table for {key}", str(path))
        try:
            with open(path, encoding="utf-8") as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise RepositoryError(f"Failed to read golden file: {e}", str(path))
        missing = [k for k in REQUIRED_KEYS if k not in payload]
        if missing:
            raise RepositoryError(f"Golden file lacks keys {missing}", str(path))
        self._cache[key] = payload
        return payload

    def save(self, key: str, value: dict) -> None:
        path = self._paths.marks_path(key)
        try:
            self._paths.ensure_dirs()
            path.write_text(dumps(value) + "\n", encoding="utf-8")
        except OSError as e:
            raise RepositoryError(f"Failed to write golden file: {e}", str(path))
        self._cache[key] = value

    def matches(self, key: str, value: dict) -> bool:
        """True iff the stored table equals `value` on every required key."""
        stored = self.get(key)
        return all(stored[k] == value[k] for k in REQUIRED_KEYS)

    def list_keys(self) -> list[str]:
        return self._paths.list_groups()

    def clear_cache(self) -> None:
        self._cache.clear()
