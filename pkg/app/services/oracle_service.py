"""Marginal oracles: the query interface the learner runs against."""
import logging
from abc import ABC, abstractmethod
from typing import Optional, Sequence, Union

import numpy as np

from app.models.config import EstimatorConfig
from app.models.marginals import MarginalMatrix
from app.models.mixture import DensePmf, SparseRankingMixture
from app.models.noise import NoiseModel
from app.services.distribution_service import exact_marginal, validate_tuples
from app.services.estimator_service import Samples, estimate_from_config, query_marginal
from app.utils.errors import InvalidTupleError
from app.utils.messages import MSG

logger = logging.getLogger(__name__)


class MarginalOracle(ABC):
    """Answers (ibar, jbar) marginal queries to within `delta`."""

    n: int
    delta: float

    @abstractmethod
    def query(self, ibar: Sequence[int], jbar: Sequence[int]) -> float:
        ...


class ExactMarginalOracle(MarginalOracle):
    def __init__(self, f: Union[SparseRankingMixture, DensePmf]):
        self.f = f
        self.n = f.n
        self.delta = 0.0
        self.queries = 0

    def query(self, ibar: Sequence[int], jbar: Sequence[int]) -> float:
        self.queries += 1
        return exact_marginal(self.f, ibar, jbar)


class SampledMarginalOracle(MarginalOracle):
    """
    Backed by one estimated marginal matrix per tuple length.

    A query on positions J reads the matrix of length |J| directly; the
    matrices are built once and shared by every learner stage.
    """

    def __init__(self, matrices: dict[int, MarginalMatrix], delta: float):
        self.matrices = matrices
        self.n = next(iter(matrices.values())).n
        self.delta = delta

    @classmethod
    def from_samples(
        cls,
        samples: Samples,
        K: NoiseModel,
        max_len: int,
        cfg: Optional[EstimatorConfig] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> "SampledMarginalOracle":
        cfg = cfg or EstimatorConfig()
        matrices = {s: estimate_from_config(samples, K, s, cfg, rng) for s in range(1, max_len + 1)}
        delta = max(m.metadata["declared_delta"] for m in matrices.values())
        logger.info(
            f"[Oracle] Estimated marginals for lengths 1..{max_len} from {len(samples)} samples "
            f"(declared delta {delta:.3e})"
        )
        return cls(matrices, delta)

    def query(self, ibar: Sequence[int], jbar: Sequence[int]) -> float:
        ibar, jbar = validate_tuples(self.n, ibar, jbar)
        if not ibar:
            return 1.0
        matrix = self.matrices.get(len(ibar))
        if matrix is None:
            raise InvalidTupleError(MSG.NO_MATRIX_FOR_LENGTH.format(s=len(ibar), available=sorted(self.matrices)))
        return query_marginal(matrix, ibar, jbar)
