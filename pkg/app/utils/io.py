"""File formats: permutation lists, mixture and noise JSON, CSV tables."""
import csv
import json
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np
from pydantic import ValidationError

from app.models.marginals import MarginalMatrix
from app.models.mixture import MixtureDocument, SparseRankingMixture
from app.models.noise import NOISE_ADAPTER, NoiseModel
from app.models.permutation import Permutation
from app.utils.errors import InputFileError
from app.utils.messages import MSG


def read_permutations(path: str) -> list[Permutation]:
    with open(path, encoding="utf-8") as handle:
        return [Permutation.parse(line) for line in handle if line.strip()]


def format_images(images: np.ndarray) -> list[str]:
    """0-based image rows as 1-based comma lines."""
    return [",".join(str(int(v) + 1) for v in row) for row in images]


def write_lines(lines: Iterable[str], out: Optional[str], stdout: TextIO) -> None:
    text = "".join(f"{line}\n" for line in lines)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def load_mixture(path: str) -> SparseRankingMixture:
    try:
        document = MixtureDocument.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise InputFileError(MSG.BAD_INPUT_FILE.format(path=path, what="mixture", error=e)) from e
    return document.to_mixture()


def dump_mixture(mixture: SparseRankingMixture) -> str:
    return MixtureDocument.from_mixture(mixture).model_dump_json(indent=2, exclude_none=True)


def load_noise(path: str) -> NoiseModel:
    try:
        return NOISE_ADAPTER.validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise InputFileError(MSG.BAD_INPUT_FILE.format(path=path, what="noise", error=e)) from e


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=str)


def write_rows(header: Sequence[str], rows: Iterable[Sequence], out: Optional[str], stdout: TextIO) -> None:
    """CSV with a header row, RFC 4180 quoting."""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            _write_csv(handle, header, rows)
    else:
        _write_csv(stdout, header, rows)


def _write_csv(handle: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def matrix_rows(matrix: MarginalMatrix) -> tuple[list[str], list[list]]:
    """Header of column tuples, then one row per row tuple."""
    labels = [",".join(str(v) for v in t) for t in matrix.tuples]
    rows = [[label] + [repr(float(v)) for v in row] for label, row in zip(labels, matrix.entries)]
    return ["tuple"] + labels, rows
