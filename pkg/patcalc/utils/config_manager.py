import os
import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from patcalc.utils.constants import Constants
from patcalc.utils.errors import ConfigError

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Limits(BaseModel):
    """Bounds on a reduction-graph exploration"""

    model_config = ConfigDict(frozen=True)

    depth: int = Field(Constants.defaultDepth, ge=1)
    nodes: int = Field(Constants.defaultNodes, ge=1)


class WorkbenchSettings(BaseModel):
    """Per-user defaults read from the configuration file"""

    model_config = ConfigDict(extra="forbid")

    depth: int = Field(Constants.defaultDepth, ge=1)
    nodes: int = Field(Constants.defaultNodes, ge=1)
    strict_cond: bool = Constants.strictCond
    log_level: str = Constants.defaultLogLevel

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value):
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level

    def limits(self, depth=None, nodes=None):
        """Exploration limits, command line values taking precedence"""
        return Limits(
            depth=self.depth if depth is None else depth,
            nodes=self.nodes if nodes is None else nodes,
        )


class ConfigManager:
    def __init__(self, config_dir=None):
        home = os.environ.get(Constants.configHomeVar)
        if config_dir is not None:
            self.config_dir = Path(config_dir)
        elif home:
            self.config_dir = Path(home)
        else:
            self.config_dir = Path.home() / Constants.configDirName
        self.config_file = self.config_dir / "config.json"
        self.settings = WorkbenchSettings()

    def load_config(self):
        """
        Load settings from the configuration file

        A missing file leaves the defaults in place.

        Returns:
            WorkbenchSettings: The loaded settings

        Raises:
            ConfigError: when the file is unreadable or does not validate
        """
        if not self.config_file.exists():
            logger.debug(f"No configuration at {self.config_file}, using defaults")
            return self.settings
        try:
            with open(self.config_file, "r") as f:
                data = json.load(f)
            self.settings = WorkbenchSettings.model_validate(data)
        except (OSError, json.JSONDecodeError, ValidationError) as e:
            raise ConfigError(f"invalid configuration {self.config_file}: {e}") from e
        logger.info(f"Loaded configuration from {self.config_file}")
        return self.settings

    def save_config(self):
        """Write the current settings, creating the directory if needed"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, "w") as f:
                f.write(self.settings.model_dump_json(indent=4))
        except OSError as e:
            logger.error(f"Error saving config: {str(e)}")
            raise ConfigError(f"cannot write {self.config_file}: {e}") from e

    def update(self, **changes):
        """
        Change some settings and save them

        Raises:
            ConfigError: when a value does not validate
        """
        try:
            self.settings = WorkbenchSettings.model_validate({**self.settings.model_dump(), **changes})
        except ValidationError as e:
            raise ConfigError(f"invalid setting: {e}") from e
        self.save_config()
        return self.settings
