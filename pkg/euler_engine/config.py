# euler_engine/config.py
"""
Configuration: numerical tolerances, search depth and seed, plus logging setup.

Values come from the defaults below, then from a JSON file named by the
EULER_ENGINE_CONFIG environment variable (a local .env is loaded first), then
from an explicit path passed by the caller (the CLI's --config flag).
"""

import json
import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()

CONFIG_ENV_VAR = "EULER_ENGINE_CONFIG"
LOG_LEVEL_ENV_VAR = "EULER_ENGINE_LOG_LEVEL"
LOG_FORMAT = "[%(name)s] %(message)s"


class ToleranceConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    tau_cls: float = Field(1e-9, gt=0, description="trace classification tolerance")
    tau_rel: float = Field(1e-8, gt=0, description="surface relation residual")
    tau_real: float = Field(1e-8, gt=0, description="realization residual / angle error")
    tau_rnd: float = Field(0.01, gt=0, description="Euler class rounding slack")
    tau_det: float = Field(1e-300, gt=0, description="smallest accepted determinant")
    jorgensen_depth: int = Field(4, ge=1)
    seed: int = 0


DEFAULT_CONFIG = ToleranceConfig()


def load_config(path: Optional[str] = None) -> ToleranceConfig:
    """
    Build the effective configuration.

    Args:
        path: optional JSON file overriding the environment-selected file

    Returns:
        validated ToleranceConfig
    """
    values = {}
    env_path = os.getenv(CONFIG_ENV_VAR)
    for candidate in (env_path, path):
        if not candidate:
            continue
        if not os.path.exists(candidate):
            raise FileNotFoundError(f"config file not found: {candidate}")
        with open(candidate, "r", encoding="utf-8") as f:
            values.update(json.load(f))
    return ToleranceConfig(**values)


def configure_logging(level: Optional[str] = None) -> None:
    """Install the bracketed console format once; level from arg or environment."""
    level_name = (level or os.getenv(LOG_LEVEL_ENV_VAR, "WARNING")).upper()
    logging.basicConfig(format=LOG_FORMAT, level=getattr(logging, level_name, logging.WARNING))
