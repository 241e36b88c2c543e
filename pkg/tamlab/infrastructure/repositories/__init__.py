"""Repositories: persisted artifacts (golden marks tables)."""

from tamlab.infrastructure.repositories.base import Repository, RepositoryError
from tamlab.infrastructure.repositories.golden_repo import GoldenMarksRepository, dumps

__all__ = [
    "Repository",
    "RepositoryError",
    "GoldenMarksRepository",
    "dumps",
]
