"""Distributions over S_n: sparse mixtures of rankings and dense pmfs."""
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional
from math import factorial

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt

from app.config import get_settings
from app.models.permutation import Permutation
from app.utils.errors import InvalidDistributionError, SizeMismatchError
from app.utils.messages import MSG


@dataclass(frozen=True)
class SparseRankingMixture:
    """
    Finitely many distinct rankings with positive weights summing to 1.

    Use from_atoms() to build one from raw weights; it renormalizes when the
    total is within the weight tolerance of 1.
    """

    n: int
    atoms: tuple[tuple[Permutation, float], ...]
    epsilon: Optional[float] = None
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if not self.atoms:
            raise InvalidDistributionError(MSG.EMPTY_MIXTURE)
        seen = set()
        for perm, w in self.atoms:
            if perm.n != self.n:
                raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=self.n, right=perm.n))
            if not w > 0:
                raise InvalidDistributionError(MSG.NON_POSITIVE_WEIGHT.format(w=w, perm=perm))
            if perm in seen:
                raise InvalidDistributionError(MSG.DUPLICATE_ATOM.format(perm=perm))
            seen.add(perm)
            if self.epsilon is not None and w < self.epsilon:
                raise InvalidDistributionError(MSG.NOT_HEAVY.format(perm=perm, w=w, epsilon=self.epsilon))
        total = sum(w for _, w in self.atoms)
        if abs(total - 1.0) > 1e-12:
            raise InvalidDistributionError(MSG.WEIGHTS_NOT_NORMALIZED.format(total=total, tol=1e-12))

    @classmethod
    def from_atoms(
        cls,
        atoms: Iterable[tuple[Permutation, float]],
        epsilon: Optional[float] = None,
        tolerance: Optional[float] = None,
    ) -> "SparseRankingMixture":
        atoms = sorted(((p, float(w)) for p, w in atoms), key=lambda pw: pw[0])
        if not atoms:
            raise InvalidDistributionError(MSG.EMPTY_MIXTURE)
        tol = tolerance if tolerance is not None else get_settings().weight_tolerance
        total = sum(w for _, w in atoms)
        if abs(total - 1.0) > tol:
            raise InvalidDistributionError(MSG.WEIGHTS_NOT_NORMALIZED.format(total=total, tol=tol))
        atoms = [(p, w / total) for p, w in atoms]
        # absorb the last rounding error so the stored sum is 1 to machine precision
        residue = 1.0 - sum(w for _, w in atoms)
        atoms[-1] = (atoms[-1][0], atoms[-1][1] + residue)
        return cls(n=atoms[0][0].n, atoms=tuple(atoms), epsilon=epsilon)

    def __iter__(self) -> Iterator[tuple[Permutation, float]]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def support(self) -> list[Permutation]:
        return [p for p, _ in self.atoms]

    def weight(self, perm: Permutation) -> float:
        return self.as_dict().get(perm, 0.0)

    def as_dict(self) -> dict[Permutation, float]:
        return dict(self.atoms)


@dataclass(frozen=True)
class DensePmf:
    """Probability vector over all of S_n in lexicographic order."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (factorial(self.n),):
            raise InvalidDistributionError(
                MSG.PMF_SHAPE.format(n=self.n, expected=factorial(self.n), got=values.shape)
            )
        if values.min() < -1e-12:
            raise InvalidDistributionError(MSG.PMF_NEGATIVE.format(value=values.min()))
        total = values.sum()
        if abs(total - 1.0) > 1e-10:
            raise InvalidDistributionError(MSG.PMF_NOT_NORMALIZED.format(total=total))
        values = np.clip(values, 0.0, None)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


# ==================== FILE FORMAT ====================

class AtomDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    perm: str
    w: PositiveFloat


class MixtureDocument(BaseModel):
    """JSON layout of a mixture file: {"n": 3, "atoms": [{"perm": "2,3,1", "w": 0.5}, ...]}."""

    model_config = ConfigDict(extra="forbid")

    n: PositiveInt
    atoms: list[AtomDocument] = Field(min_length=1)
    epsilon: Optional[PositiveFloat] = None

    def to_mixture(self) -> SparseRankingMixture:
        atoms = [(Permutation.parse(a.perm), a.w) for a in self.atoms]
        for perm, _ in atoms:
            if perm.n != self.n:
                raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=self.n, right=perm.n))
        return SparseRankingMixture.from_atoms(atoms, epsilon=self.epsilon)

    @classmethod
    def from_mixture(cls, mixture: SparseRankingMixture) -> "MixtureDocument":
        return cls(
            n=mixture.n,
            atoms=[AtomDocument(perm=str(p), w=w) for p, w in mixture],
            epsilon=mixture.epsilon,
        )
