"""Hook (tabloid) matrices: ell-way marginals and their estimates."""
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

import numpy as np

from app.utils.errors import InvalidTupleError
from app.utils.messages import MSG


def hook_tuples(n: int, ell: int) -> list[tuple[int, ...]]:
    """Ordered ell-tuples of distinct elements of {1..n}, lexicographic."""
    return list(permutations(range(1, n + 1), ell))


def tuple_code(values: np.ndarray, n: int) -> np.ndarray:
    """Base-n code of 0-based tuples along the last axis; preserves lexicographic order."""
    ell = values.shape[-1]
    weights = n ** np.arange(ell - 1, -1, -1, dtype=np.int64)
    return (values.astype(np.int64) * weights).sum(axis=-1)


@dataclass
class MarginalMatrix:
    """
    D x D matrix indexed by hook tuples; entry (ibar, jbar) ~ Pr[sigma(i_r) = j_r for all r].

    `raw` keeps the unclamped estimate when one exists; `metadata` records
    provenance (sample count, sigma_min, clamped queries, ...).
    """

    n: int
    ell: int
    entries: np.ndarray
    raw: Optional[np.ndarray] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self._tuples = hook_tuples(self.n, self.ell)
        self._index = {t: i for i, t in enumerate(self._tuples)}
        self.metadata.setdefault("clamped_queries", set())

    @property
    def dim(self) -> int:
        return len(self._tuples)

    @property
    def tuples(self) -> list[tuple[int, ...]]:
        return self._tuples

    def index_of(self, tup: tuple[int, ...]) -> int:
        try:
            return self._index[tuple(tup)]
        except KeyError:
            raise InvalidTupleError(MSG.TUPLE_RANGE.format(n=self.n, tup=tup)) from None

    def entry(self, ibar: tuple[int, ...], jbar: tuple[int, ...]) -> float:
        return float(self.entries[self.index_of(ibar), self.index_of(jbar)])

    def was_clamped(self, ibar: tuple[int, ...], jbar: tuple[int, ...]) -> bool:
        key = (tuple(ibar), tuple(jbar))
        if key in self.metadata["clamped_queries"]:
            return True
        if self.raw is None:
            return False
        value = self.raw[self.index_of(ibar), self.index_of(jbar)]
        return bool(value < 0.0 or value > 1.0)
