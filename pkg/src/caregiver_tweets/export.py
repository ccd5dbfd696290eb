"""Instruction-tuning dataset export and fine-tuning config manifest."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .dataset import DatasetSplit, balance_epoch, epoch_seed
from .errors import ConfigError
from .prompts import InstructionRecord, PromptStrategy, render_training_instance

__all__ = ["InstructionRecord", "TrainConfig", "AdapterConfig", "export_sft_dataset", "emit_train_config", "read_sft_dataset"]


@dataclass(frozen=True)
class AdapterConfig:
    method: str = "lora"
    quantization_bits: int | None = 4
    # not reported for the original runs; left for the trainer to fill in
    rank: int | None = None
    alpha: float | None = None
    dropout: float | None = None
    target_modules: list[str] | None = None


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float
    epochs: int
    optimizer: str
    schedule: str
    adapter: AdapterConfig = field(default_factory=AdapterConfig)
    seed: int = 0
    oversampling: str = "per-epoch minority replication to parity"
    batch_size: int | None = None
    warmup_steps: int | None = None
    unreported: tuple[str, ...] = (
        "adapter.rank", "adapter.alpha", "adapter.dropout", "adapter.target_modules", "batch_size", "warmup_steps",
    )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["unreported"] = list(self.unreported)
        return d


PRESETS = {
    "paper_default": dict(
        learning_rate=2e-4,
        epochs=5,
        optimizer="adamw",
        schedule="constant",
        adapter=AdapterConfig(method="lora", quantization_bits=4),
    ),
}


def emit_train_config(preset: str = "paper_default", seed: int = 0) -> TrainConfig:
    try:
        values = PRESETS[preset]
    except KeyError:
        raise ConfigError(f"unknown preset {preset!r}; available: {sorted(PRESETS)}") from None
    return TrainConfig(**values, seed=seed)


def export_sft_dataset(split: DatasetSplit, strategy: PromptStrategy | str, epochs: int, seed: int, path) -> dict:
    """Write ``epochs`` independently rebalanced passes over ``split`` as JSON lines.

    Epoch ``e`` (1-based) is balanced with seed ``seed + e``. Returns the number
    of records and the per-epoch label histogram.
    """
    strategy = PromptStrategy(strategy)
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    path = Path(path)
    per_epoch = {}
    n = 0
    with path.open("w", encoding="utf-8") as fh:
        for epoch in range(1, epochs + 1):
            balanced = balance_epoch(split, epoch_seed(seed, epoch))
            hist = Counter()
            for ex in balanced:
                record = render_training_instance(strategy, ex, epoch_index=epoch)
                fh.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")
                hist[ex.label] += 1
                n += 1
            per_epoch[epoch] = {0: hist[0], 1: hist[1]}
    return {"records": n, "strategy": strategy.value, "epochs": epochs, "per_epoch": per_epoch}


def read_sft_dataset(path) -> list[InstructionRecord]:
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            record = InstructionRecord.from_dict(json.loads(line))
            record.validate()
            records.append(record)
    return records
