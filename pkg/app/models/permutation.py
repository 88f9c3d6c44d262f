"""Permutations of {1..n} in one-line notation."""
from dataclasses import dataclass

from app.utils.errors import InvalidPermutationError, SizeMismatchError
from app.utils.messages import MSG


@dataclass(frozen=True, order=True)
class Permutation:
    """
    A bijection of {1..n}, stored as its 1-based image tuple.

    Ordering is lexicographic on the image, which is also the order
    in which enumerate_sn lists the group.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidPermutationError(MSG.NOT_A_PERMUTATION.format(n=len(image), image=image))
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __len__(self) -> int:
        return len(self.image)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        image = list(range(1, n + 1))
        image[a - 1], image[b - 1] = b, a
        return cls(tuple(image))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            return cls(tuple(int(part) for part in text.strip().split(",")))
        except ValueError as e:
            if isinstance(e, InvalidPermutationError):
                raise
            raise InvalidPermutationError(MSG.BAD_PERMUTATION_TEXT.format(text=text)) from e

    def zero_based(self) -> tuple[int, ...]:
        return tuple(v - 1 for v in self.image)

    def check_same_size(self, other: "Permutation") -> None:
        if self.n != other.n:
            raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=self.n, right=other.n))
