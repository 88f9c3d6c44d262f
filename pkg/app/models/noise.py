"""Class-function noise models, parsed from JSON by their "model" tag."""
import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat, PositiveInt, TypeAdapter, model_validator

from app.utils.messages import MSG


class _NoiseBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: PositiveInt


class SymmetricNoise(_NoiseBase):
    """Pick j with probability pbar[j], then a uniform permutation of a uniform j-subset."""

    model: Literal["symmetric"] = "symmetric"
    pbar: tuple[NonNegativeFloat, ...]

    @model_validator(mode="after")
    def _check_pbar(self):
        if len(self.pbar) != self.n + 1:
            raise ValueError(MSG.PBAR_LENGTH.format(n=self.n, expected=self.n + 1, got=len(self.pbar)))
        total = math.fsum(self.pbar)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(MSG.PBAR_SUM.format(total=total))
        return self


class HeatKernelNoise(_NoiseBase):
    """Poisson(t) steps of the lazy random-transposition walk."""

    model: Literal["heat"] = "heat"
    t: PositiveFloat


class CayleyMallowsNoise(_NoiseBase):
    """Probability proportional to exp(-theta * d_Cayley(pi, e)). theta = 0 is uniform."""

    model: Literal["mallows"] = "mallows"
    theta: NonNegativeFloat

    @property
    def q(self) -> float:
        return math.exp(self.theta)


NoiseModel = Annotated[
    Union[SymmetricNoise, HeatKernelNoise, CayleyMallowsNoise],
    Field(discriminator="model"),
]

NOISE_ADAPTER: TypeAdapter = TypeAdapter(NoiseModel)
