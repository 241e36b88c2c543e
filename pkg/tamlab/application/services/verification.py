"""Verification Service: marks tables, norms, the Lemma and the main theorem.

Per-k work fans out over a ProcessPoolExecutor when workers > 1. Results
are merged by k, so output is identical for any worker count.
"""

import sys
from concurrent.futures import ProcessPoolExecutor, as_completed

from tamlab.domain.burnside import (
    BurnsideElement,
    LemmaCell,
    LemmaReport,
    TableOfMarks,
    TheoremCase,
    TheoremReport,
    lemma_cells,
    norm_int,
    table_of_marks,
    theorem_case,
)
from tamlab.domain.gset import coset_gset, count_fixed_points
from tamlab.domain.perm_core import PermGroup, Permutation, enumerate_elements
from tamlab.infrastructure.config import DEFAULT_CONFIG, EngineConfig
from tamlab.infrastructure.repositories import GoldenMarksRepository


class VerificationService:
    """Burnside-ring verifications for one engine configuration.

    Example:
        >>> service = VerificationService()
        >>> service.theorem(symmetric(4), 10).passed
        True
    """

    def __init__(self, config: EngineConfig = DEFAULT_CONFIG, progress: bool = False):
        self.config = config
        self.progress = progress and sys.stderr.isatty()

    # --- Marks ---

    def marks(self, G: PermGroup) -> TableOfMarks:
        return table_of_marks(G, self.config.max_order)

    def oracle_marks(self, G: PermGroup) -> list[list[int]]:
        """Every entry recounted as fixed points on the coset G-sets (no triangular shortcut)."""
        reps = self.marks(G).lattice.class_reps
        columns = [coset_gset(G, rep) for rep in reps]
        return [[count_fixed_points(X, H) for X in columns] for H in reps]

    def write_golden(self, G: PermGroup, repo: GoldenMarksRepository) -> None:
        repo.save(G.label, self.marks(G).to_dict())

    def check_golden(self, G: PermGroup, repo: GoldenMarksRepository) -> bool:
        return repo.matches(G.label, self.marks(G).to_dict())

    # --- Norms ---

    def norm(self, G: PermGroup, k: int, method: str = "auto") -> BurnsideElement:
        return norm_int(self.marks(G), k, method=method, max_points=self.config.max_points)

    # --- Lemma and theorem ---

    def lemma(self, G: PermGroup, k_max: int) -> LemmaReport:
        """chi^H(nm_e^G(k)) = k^[G:H] for 0 <= k <= k_max."""
        _require_k_max(k_max)
        table = self.marks(G)
        per_k = self._fan_out(G, "lemma", range(k_max + 1))
        cells: list[LemmaCell] = []
        for k in range(k_max + 1):
            cells.extend(per_k[k])
        return LemmaReport(table.group.label, k_max, tuple(cells))

    def theorem(self, G: PermGroup, k_max: int) -> TheoremReport:
        """k·1 is a unit in A(G)[1/nm_e^G(k)] for 1 <= k <= k_max."""
        _require_k_max(k_max)
        table = self.marks(G)
        per_k = self._fan_out(G, "theorem", range(k_max + 1))
        cases = tuple(per_k[k] for k in range(1, k_max + 1))
        return TheoremReport(table, k_max, cases, per_k[0])

    def _fan_out(self, G: PermGroup, task: str, ks: range) -> dict:
        total = len(ks)
        results: dict = {}
        if self.config.workers <= 1 or total <= 1:
            table = self.marks(G)
            for done, k in enumerate(ks, start=1):
                results[k] = _run_task(table, task, k, self.config.max_points)
                self._report(G, task, done, total)
        else:
            payload = _group_payload(G)
            with ProcessPoolExecutor(max_workers=self.config.workers) as executor:
                futures = {
                    executor.submit(
                        _task_worker, payload, task, k,
                        self.config.max_points, self.config.max_order,
                    ): k
                    for k in ks
                }
                for done, future in enumerate(as_completed(futures), start=1):
                    k = futures[future]
                    try:
                        results[k] = future.result()
                    except Exception as e:
                        sys.stderr.write(f"\n  Warning: {G.label} k={k} failed: {e}\n")
                        raise
                    self._report(G, task, done, total)
        if self.progress:
            sys.stderr.write("\n")
        return results

    def _report(self, G: PermGroup, task: str, done: int, total: int) -> None:
        if self.progress:
            sys.stderr.write(f"\r  [{done}/{total}] {task} {G.label}")
            sys.stderr.flush()


def _require_k_max(k_max: int) -> None:
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")


def _run_task(table: TableOfMarks, task: str, k: int, max_points: int) -> tuple[LemmaCell, ...] | TheoremCase:
    if task == "lemma":
        return lemma_cells(table, k, max_points)
    return theorem_case(table, k)


def _group_payload(G: PermGroup) -> tuple[int, tuple[tuple[int, ...], ...], str]:
    return G.degree, tuple(g.images for g in G.generators), G.name


# Module-level worker for ProcessPoolExecutor (pickle-friendly)
def _task_worker(
    payload: tuple[int, tuple[tuple[int, ...], ...], str],
    task: str,
    k: int,
    max_points: int,
    max_order: int,
):
    """Rebuild the group from generator images, then run one k."""
    degree, images, name = payload
    G = enumerate_elements([Permutation(im) for im in images], degree, max_order=max_order, name=name)
    return _run_task(table_of_marks(G, max_order), task, k, max_points)
