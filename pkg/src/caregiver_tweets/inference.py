"""Batch experiment runner and run-directory persistence.

A run directory holds ``manifest.json`` and ``predictions.jsonl``. Predictions
are appended in split order as they complete, so an interrupted run can be
resumed by skipping ids that are already on disk.
"""

from __future__ import annotations

import json
import logging
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from pathlib import Path

from . import prompts
from .backend import Decoding, default_decoding
from .cascade import run_cascade
from .dataset import DatasetSplit, LabeledExample
from .errors import (
    BackendError,
    CascadeParseError,
    RunIncompleteError,
    UnparseableLabelError,
)
from .parsing import extract_binary_label
from .prompts import PromptStrategy

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
PREDICTIONS = "predictions.jsonl"
ERROR_OUT = "error_out"
DEFAULT_FALLBACK = 1  # majority class


@dataclass
class Prediction:
    tweet_id: str
    gold: int
    predicted: int | None
    raw_completion: str
    parse_error: str | None = None
    strategy: str = PromptStrategy.ZERO_SHOT.value
    latency_ms: float = 0.0
    fallback_applied: bool = False
    excluded: bool = False
    text: str = ""

    @property
    def correct(self) -> bool:
        return not self.excluded and self.predicted == self.gold

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Prediction":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})


@dataclass
class RunRecord:
    run_id: str
    strategy: str
    model_name: str
    config: dict
    seed: int | None
    started: str
    finished: str | None = None
    complete: bool = False
    fallback: int | str = DEFAULT_FALLBACK
    predictions: list[Prediction] = field(default_factory=list)

    def manifest(self) -> dict:
        d = asdict(self)
        del d["predictions"]
        d["n_predictions"] = len(self.predictions)
        return d


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def write_manifest(record: RunRecord, run_dir: Path) -> None:
    tmp = run_dir / (MANIFEST + ".tmp")
    tmp.write_text(json.dumps(record.manifest(), indent=2, sort_keys=True), encoding="utf-8")
    tmp.replace(run_dir / MANIFEST)


def load_run(run_dir) -> RunRecord:
    run_dir = Path(run_dir)
    manifest = json.loads((run_dir / MANIFEST).read_text(encoding="utf-8"))
    manifest.pop("n_predictions", None)
    preds = []
    pred_path = run_dir / PREDICTIONS
    if pred_path.exists():
        with pred_path.open(encoding="utf-8") as fh:
            preds = [Prediction.from_dict(json.loads(line)) for line in fh if line.strip()]
    return RunRecord(**manifest, predictions=preds)


def _apply_fallback(pred: Prediction, fallback) -> Prediction:
    if pred.parse_error is None:
        return pred
    if fallback == ERROR_OUT:
        pred.excluded = True
    else:
        pred.predicted = int(fallback)
        pred.fallback_applied = True
    return pred


def predict_one(backend, strategy: PromptStrategy, example: LabeledExample, decoding: Decoding) -> Prediction:
    """Classify one example. Parse failures are recorded, backend failures raise."""
    started = time.perf_counter()
    pred = Prediction(example.id, example.label, None, "", strategy=strategy.value, text=example.text)
    if strategy is PromptStrategy.CASCADE:
        try:
            session = run_cascade(backend, example, decoding=decoding)
        except CascadeParseError as exc:
            pred.raw_completion = exc.session.transcript_text() if exc.session else exc.raw
            pred.parse_error = str(exc)
        else:
            pred.raw_completion = session.transcript_text()
            pred.predicted = session.final_label
    else:
        prompt = prompts.render(strategy, example)
        resp = backend.complete(prompt.messages, decoding)
        pred.raw_completion = resp.content
        try:
            pred.predicted = extract_binary_label(resp.content).label
        except UnparseableLabelError as exc:
            pred.parse_error = str(exc)
    pred.latency_ms = (time.perf_counter() - started) * 1000
    return pred


def run_experiment(
    backend,
    strategy: PromptStrategy | str,
    split: DatasetSplit,
    fallback: int | str = DEFAULT_FALLBACK,
    *,
    run_dir=None,
    seed: int | None = None,
    decoding: Decoding | None = None,
    config: dict | None = None,
    resume: bool = False,
) -> RunRecord:
    """Apply ``strategy`` to every example in ``split``.

    ``fallback`` is either ``"error_out"`` (unparseable predictions are kept but
    excluded from metrics) or the label to substitute. Examples run concurrently
    up to ``backend.max_parallel``; predictions keep split order. If the backend
    fails, the partial record is persisted and :class:`RunIncompleteError` raised.
    """
    strategy = PromptStrategy(strategy)
    if fallback != ERROR_OUT and fallback not in (0, 1):
        raise ValueError(f"fallback must be {ERROR_OUT!r}, 0 or 1, not {fallback!r}")
    if not len(split):
        raise ValueError("cannot run on an empty split")
    decoding = decoding or default_decoding(strategy)

    run_dir = Path(run_dir) if run_dir is not None else None
    done: list[Prediction] = []
    if run_dir is not None and resume and (run_dir / MANIFEST).exists():
        record = load_run(run_dir)
        if record.strategy != strategy.value:
            raise ValueError(f"cannot resume {record.strategy} run with strategy {strategy.value}")
        done = record.predictions
        record.complete, record.finished = False, None
        logger.info("resuming run %s with %d predictions on disk", record.run_id, len(done))
    else:
        record = RunRecord(
            run_id=uuid.uuid4().hex,
            strategy=strategy.value,
            model_name=getattr(backend, "model_name", type(backend).__name__),
            config=dict(config or {}),
            seed=seed,
            started=_now(),
            fallback=fallback,
        )
    record.predictions = list(done)

    if run_dir is not None:
        run_dir.mkdir(parents=True, exist_ok=True)
        write_manifest(record, run_dir)
        if not done:
            (run_dir / PREDICTIONS).write_text("", encoding="utf-8")

    done_ids = {p.tweet_id for p in done}
    todo = [ex for ex in split if ex.id not in done_ids]
    sink = (run_dir / PREDICTIONS).open("a", encoding="utf-8") if run_dir is not None else None
    workers = max(1, int(getattr(backend, "max_parallel", 1)))
    try:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(lambda ex: predict_one(backend, strategy, ex, decoding), todo)
            try:
                for pred in results:
                    pred = _apply_fallback(pred, record.fallback)
                    record.predictions.append(pred)
                    if sink is not None:
                        sink.write(json.dumps(pred.to_dict(), ensure_ascii=False) + "\n")
                        sink.flush()
            except BackendError as exc:
                pool.shutdown(wait=True, cancel_futures=True)
                if run_dir is not None:
                    write_manifest(record, run_dir)
                raise RunIncompleteError(record, exc) from exc
    finally:
        if sink is not None:
            sink.close()

    # a resumed run may have appended out of split order
    order = {ex.id: i for i, ex in enumerate(split)}
    on_disk = list(record.predictions)
    record.predictions.sort(key=lambda p: order.get(p.tweet_id, len(order)))
    record.finished = _now()
    record.complete = True
    if run_dir is not None:
        if on_disk != record.predictions:
            tmp = run_dir / (PREDICTIONS + ".tmp")
            with tmp.open("w", encoding="utf-8") as fh:
                for p in record.predictions:
                    fh.write(json.dumps(p.to_dict(), ensure_ascii=False) + "\n")
            tmp.replace(run_dir / PREDICTIONS)
        write_manifest(record, run_dir)
    return record
