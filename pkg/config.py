#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuration du projet, lue depuis l'environnement (préfixe EDWARDS_CENSUS_)
ou un fichier .env. Les options du CLI surchargent ces valeurs pour un run.

Exemple:
    EDWARDS_CENSUS_MAX_Q=4096 python -m cli.main census --p 61
"""

import logging
import warnings
from functools import lru_cache
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_MAX_Q = 1 << 20
# Au-delà, les scans exhaustifs deviennent très lents
SLOW_MAX_Q = 1 << 24

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="EDWARDS_CENSUS_", env_file=".env", extra="ignore")

    max_q: int = Field(default=DEFAULT_MAX_Q, ge=3)
    threads: int = Field(default=1, ge=1)
    output_format: Literal["csv", "json"] = "csv"
    homomorphism_samples: int = Field(default=1000, ge=1)
    random_seed: int = 0
    log_level: str = "WARNING"

    @field_validator("max_q")
    @classmethod
    def warn_on_large_bound(cls, value: int) -> int:
        if value > SLOW_MAX_Q:
            warnings.warn(f"⚠️  max_q={value} is above {SLOW_MAX_Q}: exhaustive censuses will be slow")
        return value

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level '{value}'")
        return level


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Settings du process (mises en cache; get_settings.cache_clear() pour relire l'environnement)."""
    return Settings()


def configure_logging(level: Optional[str] = None) -> None:
    """Configure le logging racine une seule fois, au démarrage du CLI."""
    chosen = (level or get_settings().log_level).upper()
    logging.basicConfig(level=chosen, format=LOG_FORMAT)
    logging.getLogger().setLevel(chosen)
