# twistloop/config/manager.py
import copy
import json
import logging
import os
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from twistloop.errors import ConfigError, UnsupportedCaseError
from twistloop.roots import diagram_aut

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "default_config.json")

with open(DEFAULT_CONFIG_PATH, "r", encoding="utf-8") as _f:
    DEFAULT_CONFIG = json.load(_f)

SUITE_FIELDS = ("samples", "seed", "nmax", "slow", "model", "workers")


class SuiteConfig(BaseModel):
    """Everything one verification suite needs to build and scan its case."""

    suite: str
    type: Literal["A", "D", "E"] = "A"
    rank: int = 2
    r: int = 2
    samples: int = Field(default=4, ge=1)
    seed: int = 0
    nmax: int = Field(default=2, ge=0)
    slow: bool = False
    model: Optional[Literal["natural", "adjoint"]] = None
    workers: int = Field(default=1, ge=1)

    @field_validator("type", mode="before")
    @classmethod
    def _upper_type(cls, v):
        return v.upper() if isinstance(v, str) else v

    @model_validator(mode="after")
    def _supported_case(self):
        try:
            diagram_aut(self.type, self.rank, self.r)
        except UnsupportedCaseError as e:
            raise ValueError(str(e)) from e
        return self

    @property
    def case(self):
        base = f"{self.type}{self.rank}"
        return base if self.r == 1 else f"{base}^({self.r})"


class ConfigManager:
    """Loads project settings and per-suite overrides from a JSON file."""

    def __init__(self, config_path="config.json"):
        self.config_path = config_path
        self.config_data = {}
        self._load_or_create_config()

    def _load_or_create_config(self):
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    self.config_data = json.load(f)
                logger.info("ConfigManager: Configuration loaded from '%s'", self.config_path)
            except json.JSONDecodeError:
                logger.error("ConfigManager: Invalid JSON in '%s'. Using default config.", self.config_path)
                self.config_data = copy.deepcopy(DEFAULT_CONFIG)
            except OSError as e:
                logger.error("ConfigManager: Failed to load config file '%s': %s", self.config_path, e)
                self.config_data = copy.deepcopy(DEFAULT_CONFIG)
        else:
            logger.info("ConfigManager: Config file not found at '%s'. Creating default.", self.config_path)
            self.config_data = copy.deepcopy(DEFAULT_CONFIG)
            self._save_config()

    def _save_config(self):
        try:
            with open(self.config_path, "w", encoding="utf-8") as f:
                json.dump(self.config_data, f, indent=4)
            return True
        except OSError as e:
            logger.error("ConfigManager: Failed to save config file '%s': %s", self.config_path, e)
            return False

    def get_config(self):
        return self.config_data

    def get_settings(self):
        return self.config_data.get("settings", {})

    def get_setting(self, key, default=None):
        return self.get_settings().get(key, DEFAULT_CONFIG["settings"].get(key, default))

    def update_setting(self, key, value):
        """Sets one global setting and writes the file back."""
        self.config_data.setdefault("settings", {})[key] = value
        return self._save_config()

    def get_suite_overrides(self, suite_id):
        return dict(self.config_data.get("suites", {}).get(suite_id, {}))

    def build_suite_config(self, suite, **cli_overrides):
        """Settings, then suite overrides, then explicit CLI values (None means unset).

        Raises ConfigError when the merged values do not describe a supported case.
        """
        values = {k: v for k, v in self.get_settings().items() if k in SUITE_FIELDS}
        values.update({k: v for k, v in self.get_suite_overrides(suite).items() if k in SUITE_FIELDS})
        values.update({k: v for k, v in cli_overrides.items() if v is not None})
        try:
            return SuiteConfig(suite=suite, **values)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration for suite '{suite}': {e}") from e
