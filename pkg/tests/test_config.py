import json

import pytest

from twistloop.config.manager import DEFAULT_CONFIG, ConfigManager, SuiteConfig
from twistloop.errors import ConfigError


@pytest.fixture
def config_path(tmp_path):
    return str(tmp_path / "config.json")


class TestSuiteConfig:
    def test_type_is_uppercased(self):
        cfg = SuiteConfig(suite="signs", type="d", rank=4, r=3)
        assert cfg.type == "D"
        assert cfg.case == "D4^(3)"

    def test_untwisted_case_label(self):
        assert SuiteConfig(suite="signs", rank=3, r=1).case == "A3"

    @pytest.mark.parametrize("values", [{"type": "D", "rank": 5, "r": 3}, {"type": "A", "rank": 1, "r": 2}])
    def test_unsupported_case(self, values):
        with pytest.raises(ValueError):
            SuiteConfig(suite="signs", **values)

    def test_bounds(self):
        with pytest.raises(ValueError):
            SuiteConfig(suite="signs", samples=0)
        with pytest.raises(ValueError):
            SuiteConfig(suite="signs", model="spin")


class TestConfigManager:
    def test_creates_a_default_file(self, config_path):
        manager = ConfigManager(config_path)
        assert manager.get_config() == DEFAULT_CONFIG
        with open(config_path, encoding="utf-8") as f:
            assert json.load(f) == DEFAULT_CONFIG

    def test_invalid_json_falls_back(self, config_path):
        with open(config_path, "w", encoding="utf-8") as f:
            f.write("{not json")
        manager = ConfigManager(config_path)
        assert manager.get_settings() == DEFAULT_CONFIG["settings"]

    def test_missing_settings_use_defaults(self, config_path):
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump({"settings": {"seed": 7}}, f)
        manager = ConfigManager(config_path)
        assert manager.get_setting("seed") == 7
        assert manager.get_setting("log_level") == DEFAULT_CONFIG["settings"]["log_level"]
        assert manager.get_setting("nothing", "x") == "x"

    def test_update_setting_is_written_back(self, config_path):
        ConfigManager(config_path).update_setting("samples", 9)
        assert ConfigManager(config_path).get_setting("samples") == 9

    def test_suite_overrides(self, config_path):
        manager = ConfigManager(config_path)
        assert manager.get_suite_overrides("alaws") == {"samples": 200}
        assert manager.get_suite_overrides("signs") == {}

    def test_shipped_sample_counts(self, config_path):
        manager = ConfigManager(config_path)
        # matrep draws one root and its negative per sample
        assert 2 * manager.build_suite_config("matrep").samples >= 100
        assert manager.build_suite_config("kernel").samples >= 50
        assert manager.build_suite_config("diagram").samples >= 50
        assert manager.build_suite_config("su3").samples >= 200

    def test_merge_order(self, config_path):
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump({"settings": {"samples": 3, "seed": 5, "log_level": "INFO"},
                       "suites": {"alaws": {"samples": 11, "nmax": 1}}}, f)
        manager = ConfigManager(config_path)
        cfg = manager.build_suite_config("alaws", samples=None, seed=8, type="a", rank=4, r=2)
        assert (cfg.samples, cfg.seed, cfg.nmax) == (11, 8, 1)
        assert cfg.case == "A4^(2)"
        cfg = manager.build_suite_config("alaws", samples=2)
        assert cfg.samples == 2
        assert manager.build_suite_config("signs").samples == 3

    def test_invalid_merge_raises_config_error(self, config_path):
        manager = ConfigManager(config_path)
        with pytest.raises(ConfigError):
            manager.build_suite_config("signs", type="E", rank=7, r=2)
        with pytest.raises(ConfigError):
            manager.build_suite_config("signs", workers=0)
