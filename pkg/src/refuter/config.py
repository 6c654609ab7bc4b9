"""
Runtime configuration for the refuter toolkit.

Values come from environment variables prefixed ``REFUTER_`` or from a
local ``.env`` file; command-line flags override them per run.
"""

import logging
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class RefuterSettings(BaseSettings):
    """Toolkit settings from environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="REFUTER_",
        env_file=".env",
        extra="ignore",
    )

    # DWL resource budget (the polynomial bound instantiated as numbers)
    budget_vertices: int = Field(default=256, gt=0, description="Maximum cloud vertices")
    budget_steps: int = Field(default=64, gt=0, description="Maximum DWL operations")

    # Execution
    jobs: int = Field(default=1, ge=1, description="Worker threads for refinement")
    oracle_max_side: int = Field(default=6, ge=1, description="Oracle size limit per side")

    # Proof emission
    restricted_ext: bool = Field(default=True, description="Enforce restricted extension forms")
    recheck_fragments: bool = Field(
        default=True, description="Re-check emitted proofs before reporting"
    )

    log_level: str = Field(default="WARNING", description="Root logging level")

    def configure_logging(self, verbose: bool = False) -> None:
        """Configure root logging once for command-line use"""
        level = logging.DEBUG if verbose else getattr(logging, self.log_level.upper(), logging.WARNING)
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


# Singleton instance for global use
_settings: Optional[RefuterSettings] = None


def get_settings() -> RefuterSettings:
    """Get the global settings instance"""
    global _settings
    if _settings is None:
        _settings = RefuterSettings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment"""
    global _settings
    _settings = None
