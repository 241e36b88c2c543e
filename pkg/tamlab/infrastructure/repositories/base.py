"""Base Repository: abstract interface for persisted artifacts."""

from abc import ABC, abstractmethod
from typing import TypeVar, Generic

T = TypeVar("T")


class Repository(ABC, Generic[T]):
    """Abstract base class for repositories keyed by group label."""

    @abstractmethod
    def get(self, key: str) -> T:
        """Load one stored artifact."""
        pass

    @abstractmethod
    def save(self, key: str, value: T) -> None:
        """Store one artifact."""
        pass

    @abstractmethod
    def clear_cache(self) -> None:
        """Forget artifacts loaded so far so the next get rereads the file."""
        pass


class RepositoryError(Exception):
    """A golden marks file could not be loaded or written.

    path names the offending file so the CLI can report it next to the reason.
    """

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{message} [{path}]" if path else message)
