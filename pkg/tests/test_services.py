"""Unit tests for application/services/ and the golden repository.

Tests verify:
1. VerificationService marks, golden files, Lemma and theorem runs
2. Parallel fan-out gives the same reports as sequential runs
3. TambaraService builds instances and merges axiom reports
4. GoldenMarksRepository reads, writes and rejects bad files
"""

import json
from pathlib import Path

import pytest

from tamlab.application import LevelsReport, TambaraService, VerificationService
from tamlab.domain.catalog import cyclic, symmetric
from tamlab.domain.errors import SpecParseError
from tamlab.domain.tambara import AXIOMS, BurnsideInstance, FixedPointInstance
from tamlab.domain.tambara.checks import CANONICAL_CHECKS
from tamlab.infrastructure import EngineConfig, GoldenPaths
from tamlab.infrastructure.repositories import GoldenMarksRepository, RepositoryError
from tamlab.interfaces.specs import FunctorSpec

GOLDEN_DIR = Path(__file__).parent / "golden"


# =============================================================================
# VerificationService Tests
# =============================================================================

class TestVerificationService:
    """Tests for VerificationService."""

    @pytest.fixture
    def service(self):
        """A VerificationService on default settings."""
        return VerificationService(EngineConfig())

    def test_marks(self, service):
        """marks should return the table of marks."""
        assert service.marks(cyclic(2)).m == ((2, 1), (0, 1))

    def test_oracle(self, service):
        """oracle_marks should recount the S3 table from fixed points."""
        G = symmetric(3)
        assert service.oracle_marks(G) == [[6, 3, 2, 1], [0, 1, 0, 1], [0, 0, 2, 1], [0, 0, 0, 1]]

    def test_checked_in_golden_files(self, service):
        """The checked-in golden files should match."""
        repo = GoldenMarksRepository(GoldenPaths(GOLDEN_DIR))
        assert service.check_golden(symmetric(3), repo)
        assert service.check_golden(cyclic(2), repo)

    def test_golden_round_trip(self, service, tmp_path):
        """write_golden output matches the checked-in file byte for byte."""
        repo = GoldenMarksRepository(GoldenPaths(tmp_path))
        service.write_golden(symmetric(3), repo)
        repo.clear_cache()
        assert service.check_golden(symmetric(3), repo)
        written = (tmp_path / "marks_S3.json").read_text(encoding="utf-8")
        assert written == (GOLDEN_DIR / "marks_S3.json").read_text(encoding="utf-8")

    def test_golden_mismatch(self, service, tmp_path):
        """A wrong golden matrix should not match."""
        repo = GoldenMarksRepository(GoldenPaths(tmp_path))
        repo.save("C2", {"group": "C2", "classes": ["1a", "2a"], "matrix": [[2, 1], [0, 2]]})
        assert not service.check_golden(cyclic(2), repo)

    def test_norm(self, service):
        """norm should agree for auto and marks methods."""
        assert service.norm(cyclic(2), 2).coeffs == (1, 2)
        assert service.norm(cyclic(2), 2, method="marks").coeffs == (1, 2)

    def test_lemma(self, service):
        """C2 with k <= 3 should pass with no failures."""
        report = service.lemma(cyclic(2), 3)
        assert report.passed
        assert len(report.cells) == 8
        assert report.to_dict()["failures"] == []

    def test_theorem(self, service):
        """S4 with k <= 6 should pass every case."""
        report = service.theorem(symmetric(4), 6)
        assert report.passed
        assert report.pass_count == 6

    @pytest.mark.parametrize("run", ["lemma", "theorem"])
    def test_negative_k_max(self, service, run):
        """A negative k_max should raise ValueError."""
        with pytest.raises(ValueError, match="k_max must be non-negative"):
            getattr(service, run)(cyclic(2), -1)

    def test_parallel_matches_sequential(self):
        """Per-k work merged by k: same report for any worker count."""
        G = cyclic(3)
        sequential = VerificationService(EngineConfig(workers=1))
        parallel = VerificationService(EngineConfig(workers=2))
        assert parallel.theorem(G, 4).to_dict() == sequential.theorem(G, 4).to_dict()
        assert parallel.lemma(G, 3).to_dict() == sequential.lemma(G, 3).to_dict()


# =============================================================================
# TambaraService Tests
# =============================================================================

class TestTambaraService:
    """Tests for TambaraService."""

    @pytest.fixture
    def service(self):
        """A TambaraService on default settings."""
        return TambaraService(EngineConfig())

    def test_build_instances(self, service):
        """burnside and fixed specs should build the matching instances."""
        G = cyclic(2)
        assert isinstance(service.build_instance(G, FunctorSpec.parse("burnside")), BurnsideInstance)
        fixed = service.build_instance(G, FunctorSpec.parse("fixed:n=5"))
        assert isinstance(fixed, FixedPointInstance)
        assert fixed.name == "fixed:n=5"
        diag = service.build_instance(G, FunctorSpec.parse("fixed:n=4,diag"))
        assert diag.name == "fixed:n=4,diag"
        assert diag.dimension == 1

    def test_unknown_kind(self, service):
        """An unknown functor kind should raise SpecParseError."""
        with pytest.raises(SpecParseError):
            service.build_instance(cyclic(2), FunctorSpec("sheaf"))

    def test_axioms_merge_canonical_checks(self, service):
        """axioms should list structure checks then canonical-map checks."""
        report = service.axioms(cyclic(2), FunctorSpec.parse("fixed:n=5"), samples=10)
        assert report.passed
        assert [c.name for c in report.checks] == AXIOMS + CANONICAL_CHECKS

    def test_axioms_burnside(self, service):
        """The Burnside instance should pass its axioms."""
        assert service.axioms(cyclic(2), FunctorSpec.parse("burnside"), samples=4).passed

    def test_levels(self, service):
        """Units of Z/5 at the trivial class should be the k prime to 5."""
        report = service.levels(cyclic(2), FunctorSpec.parse("fixed:n=5"), 6)
        assert isinstance(report, LevelsReport)
        assert report.consistent
        assert [r.k for r in report.rows] == list(range(7))
        assert [r.units[0] for r in report.rows] == [False, True, True, True, True, False, True]

    def test_levels_frame(self, service):
        """to_frame should have one column per class."""
        frame = service.levels(symmetric(3), FunctorSpec.parse("fixed:n=4"), 3).to_frame()
        assert frame.columns == ["k", "1a", "2a", "3a", "6a", "consistent"]
        assert frame["1a"].to_list() == [False, True, False, True]

    def test_levels_negative_k_max(self, service):
        """A negative k_max should raise ValueError."""
        with pytest.raises(ValueError, match="k_max must be non-negative"):
            service.levels(cyclic(2), FunctorSpec.parse("fixed:n=5"), -1)


# =============================================================================
# GoldenMarksRepository Tests
# =============================================================================

class TestGoldenMarksRepository:
    """Tests for GoldenMarksRepository."""

    def test_get(self):
        """get should load a checked-in table."""
        repo = GoldenMarksRepository(GoldenPaths(GOLDEN_DIR))
        assert repo.get("S3")["matrix"][0] == [6, 3, 2, 1]

    def test_list_keys(self):
        """list_keys should return the group labels on disk."""
        assert GoldenMarksRepository(GoldenPaths(GOLDEN_DIR)).list_keys() == ["C2", "S3"]

    def test_missing(self, tmp_path):
        """A missing file should raise RepositoryError naming the file."""
        with pytest.raises(RepositoryError) as exc:
            GoldenMarksRepository(GoldenPaths(tmp_path)).get("S9")
        assert exc.value.path == str(tmp_path / "marks_S9.json")
        assert str(exc.value) == f"No golden marks table for S9 [{exc.value.path}]"

    def test_corrupt(self, tmp_path):
        """Malformed JSON should raise RepositoryError."""
        (tmp_path / "marks_C2.json").write_text("{", encoding="utf-8")
        with pytest.raises(RepositoryError):
            GoldenMarksRepository(GoldenPaths(tmp_path)).get("C2")

    def test_missing_keys(self, tmp_path):
        """A file without matrix and classes should fail with its path."""
        (tmp_path / "marks_C2.json").write_text(json.dumps({"group": "C2"}), encoding="utf-8")
        with pytest.raises(RepositoryError) as exc:
            GoldenMarksRepository(GoldenPaths(tmp_path)).get("C2")
        assert exc.value.path.endswith("marks_C2.json")

    def test_save_creates_directory(self, tmp_path):
        """save should create the golden directory."""
        paths = GoldenPaths(tmp_path / "nested")
        GoldenMarksRepository(paths).save("C1", {"group": "C1", "classes": ["1a"], "matrix": [[1]]})
        assert paths.marks_path("C1").exists()
