"""Unit tests for infrastructure/config.py."""

import pytest

from tamlab.domain.errors import ConfigError
from tamlab.domain.gset import DEFAULT_MAX_POINTS
from tamlab.domain.perm_core import DEFAULT_MAX_ORDER
from tamlab.infrastructure import DEFAULT_CONFIG, EngineConfig, GoldenPaths
from tamlab.infrastructure.config import ENV_MAX_ORDER, ENV_MAX_POINTS, ENV_WORKERS


@pytest.fixture
def clean_env(monkeypatch):
    """Clear tamlab variables, including ones a .env file may set."""
    for name in (ENV_MAX_ORDER, ENV_MAX_POINTS, ENV_WORKERS):
        monkeypatch.setenv(name, "1")
        monkeypatch.delenv(name)
    return monkeypatch


class TestEngineConfig:
    """Tests for EngineConfig."""

    def test_defaults(self, clean_env):
        """With no environment the config should equal the defaults."""
        config = EngineConfig.from_env(dotenv=False)
        assert config == DEFAULT_CONFIG
        assert config.max_order == DEFAULT_MAX_ORDER == 120
        assert config.max_points == DEFAULT_MAX_POINTS == 20_000_000
        assert config.workers == 1

    def test_environment_overrides(self, clean_env):
        """Environment values should override defaults, underscores allowed."""
        clean_env.setenv(ENV_MAX_POINTS, "1_000")
        clean_env.setenv(ENV_WORKERS, "4")
        config = EngineConfig.from_env(dotenv=False)
        assert config.max_points == 1000
        assert config.workers == 4
        assert config.max_order == DEFAULT_MAX_ORDER

    def test_blank_variable_ignored(self, clean_env):
        """A blank variable should fall back to the default."""
        clean_env.setenv(ENV_MAX_ORDER, "  ")
        assert EngineConfig.from_env(dotenv=False).max_order == DEFAULT_MAX_ORDER

    @pytest.mark.parametrize("raw", ["abc", "0", "-5", "1.5"])
    def test_bad_values(self, clean_env, raw):
        """Non-integer or non-positive values should raise ConfigError."""
        clean_env.setenv(ENV_MAX_ORDER, raw)
        with pytest.raises(ConfigError):
            EngineConfig.from_env(dotenv=False)

    def test_dotenv_file(self, clean_env, tmp_path):
        """A .env in the working directory fills unset variables only."""
        (tmp_path / ".env").write_text(f"{ENV_MAX_ORDER}=60\n{ENV_WORKERS}=3\n", encoding="utf-8")
        clean_env.chdir(tmp_path)
        clean_env.setenv(ENV_WORKERS, "2")
        config = EngineConfig.from_env()
        assert config.max_order == 60
        assert config.workers == 2

    def test_with_overrides_keeps_none(self):
        """None overrides should leave fields unchanged."""
        config = EngineConfig(max_points=500).with_overrides(max_points=None, seed=7)
        assert config.max_points == 500
        assert config.seed == 7

    def test_with_overrides_rejects_non_positive(self):
        """A zero override should raise ConfigError."""
        with pytest.raises(ConfigError):
            EngineConfig().with_overrides(workers=0)

    def test_frozen(self):
        """Fields should not be assignable."""
        with pytest.raises(AttributeError):
            DEFAULT_CONFIG.workers = 8


class TestGoldenPaths:
    """Tests for GoldenPaths."""

    def test_marks_path(self, tmp_path):
        """marks_path should name marks_<group>.json."""
        assert GoldenPaths(tmp_path).marks_path("S3") == tmp_path / "marks_S3.json"

    def test_list_groups(self, tmp_path):
        """list_groups should return sorted labels of marks files only."""
        for label in ("S3", "C2"):
            (tmp_path / f"marks_{label}.json").write_text("{}", encoding="utf-8")
        (tmp_path / "notes.txt").write_text("", encoding="utf-8")
        assert GoldenPaths(tmp_path).list_groups() == ["C2", "S3"]

    def test_list_groups_missing_dir(self, tmp_path):
        """A missing directory should list no groups."""
        assert GoldenPaths(tmp_path / "absent").list_groups() == []
