"""Loading, validation, and description of binarized datasets.

Inputs are CSV files with a mandatory header row, cell values that are
exactly "0" or "1", and the label in the last column.  A header cell of
the form ``source:range`` (e.g. ``prior:>3``) declares which raw feature
a binarized condition came from and which range it covers; a header
without ``:`` is treated as a standalone source feature.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import SchemaError, ValidationError

LABEL_HEADER = "label"


@dataclass(frozen=True)
class SplitCondition:
    """A binarized feature test, branching on truth of ``source range``."""

    id: int
    source_feature: str
    range_label: str

    @property
    def display_name(self) -> str:
        return f"{self.source_feature}{self.range_label}"


def _parse_header_cell(index: int, cell: str) -> SplitCondition:
    if ":" in cell:
        source, rng = cell.split(":", 1)
    else:
        source, rng = cell, ""
    return SplitCondition(id=index, source_feature=source, range_label=rng)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable binary feature matrix with binary labels.

    ``samples`` is an N x F uint8 matrix, ``labels`` a length-N uint8
    vector; both contain only 0/1.  ``content_hash`` is a SHA-256 digest
    of the canonical serialization and is stable under save/load.
    """

    conditions: tuple[SplitCondition, ...]
    samples: np.ndarray
    labels: np.ndarray
    content_hash: str = field(default="")

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.uint8)
        labels = np.ascontiguousarray(self.labels, dtype=np.uint8)
        if samples.ndim != 2:
            raise ValidationError("samples must be a 2-d matrix")
        n, f = samples.shape
        if n < 1 or f < 1:
            raise ValidationError("dataset needs at least one row and one feature")
        if labels.shape != (n,):
            raise ValidationError("labels length must match the sample count")
        if f != len(self.conditions):
            raise ValidationError("condition list must match the matrix width")
        if not np.isin(samples, (0, 1)).all() or not np.isin(labels, (0, 1)).all():
            raise ValidationError("all cells and labels must be 0 or 1")
        ids = [c.id for c in self.conditions]
        if ids != list(range(f)):
            raise ValidationError("condition ids must be dense 0..F-1")
        pairs = {(c.source_feature, c.range_label) for c in self.conditions}
        if len(pairs) != f:
            raise ValidationError("duplicate (source_feature, range_label) pair")
        samples.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "content_hash", _content_hash(self.conditions, samples, labels))

    @property
    def n_samples(self) -> int:
        return int(self.samples.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.samples.shape[1])

    def source_features(self) -> list[str]:
        """Distinct source features in first-appearance order."""
        seen: list[str] = []
        for cond in self.conditions:
            if cond.source_feature not in seen:
                seen.append(cond.source_feature)
        return seen


def _content_hash(conditions, samples, labels) -> str:
    doc = {
        "conditions": [[c.source_feature, c.range_label] for c in conditions],
        "samples": samples.tolist(),
        "labels": labels.tolist(),
    }
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def from_arrays(feature_names: Sequence[str], samples, labels) -> Dataset:
    """Build a Dataset from in-memory arrays, parsing names like headers."""
    conditions = tuple(_parse_header_cell(i, name) for i, name in enumerate(feature_names))
    return Dataset(conditions=conditions, samples=np.asarray(samples), labels=np.asarray(labels))


def load_dataset(path: str | Path) -> Dataset:
    """Parse and validate a binarized CSV file (label column last)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.strip() == "":
        raise SchemaError(f"{path}: file is empty")
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    if len(header) < 2:
        raise SchemaError(f"{path}: need at least one feature column plus the label")
    conditions = tuple(_parse_header_cell(i, cell) for i, cell in enumerate(header[:-1]))
    pairs: dict[tuple[str, str], str] = {}
    for cond, cell in zip(conditions, header[:-1]):
        key = (cond.source_feature, cond.range_label)
        if key in pairs:
            raise SchemaError(f"{path}: duplicate header {cell!r}")
        pairs[key] = cell
    data_rows = [r for r in rows[1:] if r != []]
    if not data_rows:
        raise SchemaError(f"{path}: no data rows")
    width = len(header)
    matrix = np.empty((len(data_rows), width - 1), dtype=np.uint8)
    labels = np.empty(len(data_rows), dtype=np.uint8)
    for i, row in enumerate(data_rows):
        if len(row) != width:
            raise ValidationError(f"{path}: row {i + 1} has {len(row)} cells, expected {width}")
        for j, cell in enumerate(row):
            if cell not in ("0", "1"):
                name = header[j]
                raise ValidationError(
                    f"{path}: row {i + 1}, column {name!r}: cell {cell!r} is not 0 or 1"
                )
            if j < width - 1:
                matrix[i, j] = int(cell)
            else:
                labels[i] = int(cell)
    return Dataset(conditions=conditions, samples=matrix, labels=labels)


def save_dataset(dataset: Dataset, path: str | Path) -> Path:
    """Write the dataset back to CSV; load_dataset(save(d)) reproduces d."""
    path = Path(path)
    header = []
    for cond in dataset.conditions:
        if cond.range_label:
            header.append(f"{cond.source_feature}:{cond.range_label}")
        else:
            header.append(cond.source_feature)
    header.append(LABEL_HEADER)
    lines = [",".join(header)]
    for row, y in zip(dataset.samples, dataset.labels):
        lines.append(",".join(str(int(v)) for v in row) + f",{int(y)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@dataclass(frozen=True)
class DatasetSummary:
    n_samples: int
    n_features: int
    positives: int
    negatives: int
    feature_groups: dict[str, tuple[int, ...]]

    @property
    def label_balance(self) -> float:
        return self.positives / self.n_samples


def describe(dataset: Dataset) -> DatasetSummary:
    groups: dict[str, list[int]] = {}
    for cond in dataset.conditions:
        groups.setdefault(cond.source_feature, []).append(cond.id)
    positives = int(dataset.labels.sum())
    return DatasetSummary(
        n_samples=dataset.n_samples,
        n_features=dataset.n_features,
        positives=positives,
        negatives=dataset.n_samples - positives,
        feature_groups={k: tuple(v) for k, v in groups.items()},
    )
