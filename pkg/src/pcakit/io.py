"""CSV and JSON file handling for the CLI.

CSV convention: UTF-8, comma-separated, '.' decimal point. The default
"samples" orientation puts one sample per row under a header of measurement
names; the "measurements" orientation puts one measurement per row as
`name,v1,...,vn` with no header. Floats are written with repr(), the shortest
representation that round-trips float64 exactly, so outputs are byte-stable.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .matrix import Matrix
from .pca import Dataset

ORIENT_SAMPLES = "samples"
ORIENT_MEASUREMENTS = "measurements"


class CsvFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _fmt(value) -> str:
    return repr(float(value))


def _ensure_parent(path) -> None:
    parent = Path(path).parent
    if parent and not parent.exists():
        parent.mkdir(parents=True, exist_ok=True)


def _parse_float(token: str, line: int, column: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise CsvFormatError(
            f"invalid number {token!r} in column {column}", line=line
        ) from None


def write_dataset_csv(path, dataset: Dataset, orientation: str = ORIENT_SAMPLES) -> None:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if orientation == ORIENT_SAMPLES:
            writer.writerow(dataset.names)
            for col in dataset.data.data.T:
                writer.writerow([_fmt(x) for x in col])
        elif orientation == ORIENT_MEASUREMENTS:
            for name, row in zip(dataset.names, dataset.data.data):
                writer.writerow([name] + [_fmt(x) for x in row])
        else:
            raise ValueError(f"unknown orientation {orientation!r}")


def read_dataset_csv(path, orientation: str = ORIENT_SAMPLES) -> Dataset:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        rows = [(i, row) for i, row in enumerate(csv.reader(handle), start=1) if row]
    if orientation == ORIENT_SAMPLES:
        if not rows:
            raise CsvFormatError("no samples: file is empty")
        header_line, header = rows[0]
        names = [name.strip() for name in header]
        if any(not name for name in names):
            raise CsvFormatError("empty measurement name in header", line=header_line)
        samples = []
        for line, row in rows[1:]:
            if len(row) != len(names):
                raise CsvFormatError(
                    f"expected {len(names)} columns, got {len(row)}", line=line
                )
            samples.append([_parse_float(tok, line, c + 1) for c, tok in enumerate(row)])
        if not samples:
            raise CsvFormatError("no samples: file has a header but no data rows")
        data = np.array(samples, dtype=float).T
    elif orientation == ORIENT_MEASUREMENTS:
        if not rows:
            raise CsvFormatError("no samples: file is empty")
        names = []
        measurement_rows = []
        width = None
        for line, row in rows:
            if len(row) < 2:
                raise CsvFormatError("expected a name followed by values", line=line)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise CsvFormatError(
                    f"expected {width} columns, got {len(row)}", line=line
                )
            names.append(row[0].strip())
            measurement_rows.append(
                [_parse_float(tok, line, c + 2) for c, tok in enumerate(row[1:])]
            )
        data = np.array(measurement_rows, dtype=float)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return Dataset(Matrix(data), tuple(names))


def write_table_csv(path, header: list[str], rows) -> None:
    """Generic columnar output; floats get exact repr, everything else str()."""
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [_fmt(cell) if isinstance(cell, (float, np.floating)) else str(cell) for cell in row]
            )


def write_json(path, doc: dict) -> None:
    _ensure_parent(path)
    text = json.dumps(doc, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
