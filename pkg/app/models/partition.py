"""Integer partitions, used both as irrep labels and as cycle types."""
from dataclasses import dataclass
from typing import Iterator

from app.utils.errors import InvalidPartitionError
from app.utils.messages import MSG


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts. The empty partition has weight 0."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartitionError(MSG.NOT_A_PARTITION.format(parts=parts))
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "()"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        try:
            return cls(tuple(int(p) for p in text.split(",")))
        except ValueError as e:
            if isinstance(e, InvalidPartitionError):
                raise
            raise InvalidPartitionError(MSG.BAD_PARTITION_TEXT.format(text=text)) from e

    def cells(self) -> Iterator[tuple[int, int]]:
        """Young diagram cells (row, column), 1-based."""
        for row, length in enumerate(self.parts, start=1):
            for col in range(1, length + 1):
                yield row, col

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= c) for c in range(1, self.parts[0] + 1)))

    def contains(self, other: "Partition") -> bool:
        """True when the diagram of `other` fits inside this one."""
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other.parts, self.parts))
