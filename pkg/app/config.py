"""
Runtime settings for the rank mixture toolkit.

Every tunable constant lives here and can be overridden through the
environment (prefix RANKMIX_) or a local .env file.
"""
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Caps, tolerances and sampler choices shared by all services."""

    model_config = SettingsConfigDict(env_prefix="RANKMIX_", env_file=".env", extra="ignore")

    # Oracles enumerate all of S_n up to this size (9! = 362,880 elements)
    enumeration_cap: int = Field(9, ge=1, le=10)
    # Largest hook permutation representation materialized as a dense matrix
    tabloid_dim_cap: int = Field(5040, ge=1)

    sigma_min_floor: float = Field(1e-6, gt=0)
    poisson_tail: float = Field(1e-12, gt=0, lt=1)
    weight_tolerance: float = Field(1e-9, gt=0)

    mallows_sampler: Literal["auto", "exact", "metropolis", "restaurant"] = "auto"
    metropolis_burn_in_factor: int = Field(20, ge=1)
    # Upper bound on fresh noise draws when the noise matrix is estimated empirically
    max_noise_samples: int = Field(200_000, ge=1)

    lp_method: Literal["highs", "highs-ds", "highs-ipm"] = "highs"
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    return Settings()
