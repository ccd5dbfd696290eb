"""Loading, validating and per-epoch class balancing of the labeled tweet corpus.

Tweets are kept verbatim. No hashtag splitting, stop-word removal or stemming
is applied anywhere in the harness.
"""

from __future__ import annotations

import csv
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DatasetValidationError, SchemaError, UnbalanceableError

SPLIT_NAMES = ("training", "validation", "test")
REQUIRED_COLUMNS = ("id", "text", "label")


@dataclass(frozen=True)
class LabeledExample:
    id: str
    text: str
    label: int

    def __post_init__(self):
        if not isinstance(self.text, str) or not self.text.strip():
            raise DatasetValidationError(f"example {self.id!r} has empty text")
        if type(self.label) is not int or self.label not in (0, 1):
            raise DatasetValidationError(f"example {self.id!r} has label {self.label!r}, expected 0 or 1")


@dataclass(frozen=True)
class ClassDistribution:
    count_pos: int
    count_neg: int

    @property
    def total(self) -> int:
        return self.count_pos + self.count_neg


@dataclass(frozen=True)
class DatasetSplit:
    """An ordered collection of examples.

    Ids must be unique unless ``resampled`` is set, which marks the output of
    :func:`balance_epoch` where minority examples are deliberately repeated.
    """

    name: str
    examples: tuple[LabeledExample, ...] = field(default_factory=tuple)
    resampled: bool = False

    def __post_init__(self):
        if self.name not in SPLIT_NAMES:
            raise DatasetValidationError(f"unknown split name {self.name!r}; expected one of {SPLIT_NAMES}")
        object.__setattr__(self, "examples", tuple(self.examples))
        if not self.resampled:
            seen = set()
            for i, ex in enumerate(self.examples, start=1):
                if ex.id in seen:
                    raise DatasetValidationError(f"duplicate id {ex.id!r}", row=i)
                seen.add(ex.id)

    def __len__(self):
        return len(self.examples)

    def __iter__(self):
        return iter(self.examples)


def load_split(path, delimiter: str = "\t", name: str = "training") -> DatasetSplit:
    """Read a delimited UTF-8 file with an ``id``/``text``/``label`` header.

    Row numbers in errors count data rows from 1 (the header is not counted).
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaError(REQUIRED_COLUMNS[0], path) from None
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise SchemaError(col, path)
        idx = {col: header.index(col) for col in REQUIRED_COLUMNS}

        examples = []
        seen = set()
        for row_no, row in enumerate(reader, start=1):
            if not row:
                continue
            if len(row) < len(header):
                raise DatasetValidationError(f"expected {len(header)} fields, got {len(row)}", row=row_no)
            ex_id, text, raw_label = (row[idx[c]] for c in REQUIRED_COLUMNS)
            if raw_label.strip() not in ("0", "1"):
                raise DatasetValidationError(f"label {raw_label!r} is not 0 or 1", row=row_no)
            if not text.strip():
                raise DatasetValidationError("empty text", row=row_no)
            if ex_id in seen:
                raise DatasetValidationError(f"duplicate id {ex_id!r}", row=row_no)
            seen.add(ex_id)
            examples.append(LabeledExample(ex_id, text, int(raw_label.strip())))
    return DatasetSplit(name, tuple(examples))


def write_split(split: DatasetSplit | Iterable[LabeledExample], path, delimiter: str = "\t") -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow(REQUIRED_COLUMNS)
        for ex in split:
            writer.writerow((ex.id, ex.text, ex.label))


def distribution(split: DatasetSplit | Iterable[LabeledExample]) -> ClassDistribution:
    pos = neg = 0
    for ex in split:
        if ex.label == 1:
            pos += 1
        else:
            neg += 1
    return ClassDistribution(pos, neg)


def balance_epoch(split: DatasetSplit, seed: int) -> DatasetSplit:
    """Oversample the minority class to exact parity, then shuffle.

    The minority class is replicated ``majority // minority`` times and topped up
    with a seeded sample (without replacement) of the remaining shortfall.
    Majority examples appear exactly once.
    """
    pos = [ex for ex in split.examples if ex.label == 1]
    neg = [ex for ex in split.examples if ex.label == 0]
    if not pos or not neg:
        missing = 1 if not pos else 0
        raise UnbalanceableError(f"split {split.name!r} has no examples with label {missing}")

    majority, minority = (pos, neg) if len(pos) >= len(neg) else (neg, pos)
    factor, shortfall = divmod(len(majority), len(minority))

    rng = random.Random(seed)
    out = list(majority) + minority * factor + rng.sample(minority, shortfall)
    rng.shuffle(out)
    return DatasetSplit(split.name, tuple(out), resampled=True)


def epoch_seed(base_seed: int, epoch: int) -> int:
    return base_seed + epoch
