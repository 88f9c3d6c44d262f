"""Run configurations for the estimator, the learner and CLI experiments."""
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

from app.config import get_settings


class EstimatorConfig(BaseModel):
    """Accuracy target and failure probability for estimate_marginal_matrix."""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(0.05, gt=0, lt=1)
    tau: float = Field(0.05, gt=0, lt=1)
    noise_matrix_mode: Literal["exact", "empirical"] = "exact"
    sigma_min_floor: Optional[float] = Field(None, gt=0)
    repetitions: Optional[PositiveInt] = None
    # Entrywise median over `repetitions` disjoint sample batches
    median: bool = False
    # Fresh noise draws for the empirical noise matrix; None means "the budget, capped by settings"
    noise_samples: Optional[PositiveInt] = None
    strict: bool = False

    @model_validator(mode="before")
    @classmethod
    def _defaults(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        if data.get("sigma_min_floor") is None:
            data["sigma_min_floor"] = get_settings().sigma_min_floor
        if data.get("repetitions") is None:
            tau = float(data.get("tau", 0.05))
            if 0 < tau < 1:
                data["repetitions"] = max(1, math.ceil(8 * math.log(1 / tau)))
        return data


class LearnConfig(BaseModel):
    """Sparsity bound, heaviness floor and LP tolerances for learn()."""

    model_config = ConfigDict(frozen=True)

    k: PositiveInt
    epsilon: float = Field(gt=0, le=1)
    delta_conf: float = Field(0.05, gt=0, lt=1)
    lp_slack: Optional[float] = Field(None, ge=0)
    # Junta-constraint size during support stages and at the final LP
    j_max: Optional[PositiveInt] = None
    final_j_max: Optional[PositiveInt] = None
    max_candidates: Optional[PositiveInt] = None

    @property
    def log_k(self) -> int:
        return max(1, math.ceil(math.log2(self.k)))

    @property
    def stage_j_max(self) -> int:
        return self.j_max or 2 * self.log_k

    @property
    def last_j_max(self) -> int:
        return self.final_j_max or self.log_k

    @property
    def candidate_cap(self) -> int:
        return self.max_candidates or max(1, self.k * self.k)


class ExperimentConfig(BaseModel):
    """Everything a CLI run depends on; logged verbatim at startup."""

    model_config = ConfigDict(extra="ignore")

    command: str
    seed: int = 0
    noise: Optional[dict] = None
    mixture: Optional[str] = None
    samples: Optional[int] = None
    ell: Optional[int] = None
    outputs: dict[str, Optional[str]] = Field(default_factory=dict)
    extra: dict = Field(default_factory=dict)
