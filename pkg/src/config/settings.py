"""
Runtime configuration for the loop engine.

Values come from the environment (optionally a .env file) with sensible
desk-scale defaults. Call ``get_settings()``; the result is cached.
"""

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# --- Load environment ---
load_dotenv()


class Settings(BaseModel):
    """Search bounds, budgets and worker defaults."""

    aut_search_bound: int = Field(8, ge=1)
    brute_force_bound: int = Field(5, ge=1)
    holomorph_budget: int = Field(512, ge=1)
    closure_bound: int = Field(40320, ge=1)
    enum_full_bound: int = Field(6, ge=1)
    enum_limited_bound: int = Field(8, ge=1)
    jobs: int = Field(1, ge=1)
    log_level: str = "INFO"
    results_dir: str = "results"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Build settings from LOOPS_* environment variables.

    Returns:
        Validated Settings instance
    """
    return Settings(
        aut_search_bound=_env_int("LOOPS_AUT_SEARCH_BOUND", 8),
        brute_force_bound=_env_int("LOOPS_BRUTE_FORCE_BOUND", 5),
        holomorph_budget=_env_int("LOOPS_HOLOMORPH_BUDGET", 512),
        closure_bound=_env_int("LOOPS_CLOSURE_BOUND", 40320),
        enum_full_bound=_env_int("LOOPS_ENUM_FULL_BOUND", 6),
        enum_limited_bound=_env_int("LOOPS_ENUM_LIMITED_BOUND", 8),
        jobs=_env_int("LOOPS_JOBS", 1),
        log_level=os.getenv("LOOPS_LOG_LEVEL", "INFO").upper(),
        results_dir=os.getenv("LOOPS_RESULTS_DIR", "results"),
    )
