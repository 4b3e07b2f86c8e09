import logging
import os
from enum import Enum
from functools import lru_cache
from pathlib import Path

from dotenv import dotenv_values
from pydantic import Field
from pydantic_settings import BaseSettings as PydanticBaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class AppSettings(Enum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TESTING = "testing"


class BaseSettings(PydanticBaseSettings):
    """
    Base settings class using pydantic-settings.
    Settings are automatically loaded from environment variables.

    Physical constants are deliberately absent: they are compiled in so that
    reproduced numbers never depend on the environment.
    """

    APP_NAME: str = "spacelike"
    DEBUG: bool = False
    ENVIRONMENT: str = AppSettings.DEVELOPMENT.value
    TESTING: bool = False
    LOG_LEVEL: str = "WARNING"

    # Default relative tolerance and evaluation budget of the momentum-integral
    # quadrature. SPACELIKE_TOL is the documented override used by the tests.
    SPACELIKE_TOL: float = Field(default=1e-9, gt=0.0, lt=1.0)
    SPACELIKE_MAX_EVALS: int = Field(default=2_000_000, ge=1_000)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # Ignore extra env vars not defined in the model
    )

    @property
    def log_level(self) -> int:
        if self.DEBUG:
            return logging.DEBUG
        level = logging.getLevelName(self.LOG_LEVEL.upper())
        return level if isinstance(level, int) else logging.WARNING


class DevelopmentSettings(BaseSettings):
    """
    Development specific settings.
    """

    LOG_LEVEL: str = "INFO"


class ProductionSettings(BaseSettings):
    """
    Production specific settings: quiet logs, no .env lookup surprises.
    """

    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"


class TestingSettings(BaseSettings):
    """
    Testing specific settings.
    """

    TESTING: bool = True
    LOG_LEVEL: str = "DEBUG"

    model_config = SettingsConfigDict(
        env_file=None,  # Don't read .env file during testing
        env_file_encoding="utf-8",
        extra="ignore",
    )


@lru_cache()
def get_settings() -> BaseSettings:
    """
    Returns the settings object based on the ENVIRONMENT variable.
    Uses lru_cache to only instantiate the settings once; call
    ``get_settings.cache_clear()`` after changing the environment.
    """
    env = os.environ.get("ENVIRONMENT", AppSettings.DEVELOPMENT.value).lower()
    if env == AppSettings.DEVELOPMENT.value:
        return DevelopmentSettings()
    elif env == AppSettings.PRODUCTION.value:
        return ProductionSettings()
    elif env == AppSettings.TESTING.value:
        return TestingSettings()
    else:
        logger.warning(f"Unknown environment '{env}'. Falling back to BaseSettings.")
        return BaseSettings()


def load_scenario(path: Path) -> dict[str, str]:
    """
    Read a flat ``key = value`` scenario file.

    Keys are long CLI flag names without the leading dashes; entries without
    a value are dropped.
    """
    values = dotenv_values(path, encoding="utf-8")
    scenario = {
        key.strip(): value.strip() for key, value in values.items() if value is not None
    }
    logger.debug(f"Loaded {len(scenario)} scenario entries from {path}")
    return scenario
