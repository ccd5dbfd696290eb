import json

import httpx
import pytest

from caregiver_tweets.backend import BackendConfig, HTTPBackend, ScriptedBackend, StubBackend
from caregiver_tweets.dataset import DatasetSplit
from caregiver_tweets.errors import RunIncompleteError
from caregiver_tweets.inference import ERROR_OUT, load_run, run_experiment
from caregiver_tweets.metrics import confusion
from caregiver_tweets.synthetic import synthetic_split


def test_zero_shot_stub_all_correct(tiny_split):
    record = run_experiment(StubBackend(), "zero_shot", tiny_split)
    assert len(record.predictions) == 4
    assert [p.tweet_id for p in record.predictions] == ["a", "b", "c", "d"]
    assert all(p.correct for p in record.predictions)
    assert not any(p.parse_error for p in record.predictions)
    assert record.complete


def test_error_out_keeps_prediction(tiny_split):
    backend = ScriptedBackend(["1", "0", "no idea", "0"])
    record = run_experiment(backend, "zero_shot", tiny_split, fallback=ERROR_OUT)
    bad = record.predictions[2]
    assert bad.parse_error and bad.excluded and bad.predicted is None
    assert bad.raw_completion == "no idea"
    assert confusion(record.predictions).excluded == 1


def test_default_fallback_majority(tiny_split):
    backend = ScriptedBackend(["1", "0", "no idea", "0"])
    record = run_experiment(backend, "zero_shot", tiny_split)
    bad = record.predictions[2]
    assert bad.predicted == 1 and bad.fallback_applied and not bad.excluded


def test_fallback_validated(tiny_split):
    with pytest.raises(ValueError):
        run_experiment(StubBackend(), "zero_shot", tiny_split, fallback=2)


def test_cascade_raw_is_transcript(tiny_split):
    record = run_experiment(StubBackend(), "cascade", tiny_split)
    for p in record.predictions:
        assert p.raw_completion.startswith("[system] You are a helpful assistant.")
        assert "[assistant]" in p.raw_completion
    assert all(p.correct for p in record.predictions)


def test_cascade_parse_error_recorded(tiny_split):
    backend = ScriptedBackend(["Yes", "Yes", "No", "Yes", "dunno", "No"])
    record = run_experiment(backend, "cascade", tiny_split, fallback=ERROR_OUT)
    assert [p.excluded for p in record.predictions] == [False, False, True, False]
    assert "[assistant] dunno" in record.predictions[2].raw_completion


def test_persist_and_reload(tmp_path, tiny_split):
    record = run_experiment(StubBackend(), "few_shot", tiny_split, run_dir=tmp_path / "run", seed=9)
    assert load_run(tmp_path / "run") == record
    manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
    assert {"run_id", "strategy", "model_name", "config", "seed", "started", "finished"} <= set(manifest)
    line = json.loads((tmp_path / "run" / "predictions.jsonl").read_text().splitlines()[0])
    assert {"tweet_id", "gold", "predicted", "raw_completion", "parse_error", "latency_ms", "fallback_applied"} <= set(line)


def test_deterministic_runs():
    split = synthetic_split(30, 20, seed=3, name="validation")
    a = run_experiment(StubBackend(max_parallel=4), "chain_of_thought", split)
    b = run_experiment(StubBackend(max_parallel=4), "chain_of_thought", split)
    assert [(p.tweet_id, p.predicted) for p in a.predictions] == [(p.tweet_id, p.predicted) for p in b.predictions]


def test_parallel_preserves_order():
    split = synthetic_split(40, 40, seed=4, name="validation")
    record = run_experiment(StubBackend(max_parallel=8), "zero_shot", split)
    assert [p.tweet_id for p in record.predictions] == [ex.id for ex in split]


def _flaky_backend(fail_after):
    calls = []

    def handler(request):
        calls.append(1)
        if len(calls) > fail_after:
            return httpx.Response(503)
        return httpx.Response(200, json={"choices": [{"message": {"content": "1"}}]})

    cfg = BackendConfig("http://x/v1", "m", max_retries=1, max_parallel=1)
    return HTTPBackend(cfg, client=httpx.Client(transport=httpx.MockTransport(handler)), sleep=lambda s: None)


def test_backend_failure_persists_partial_then_resume(tmp_path, tiny_split):
    run_dir = tmp_path / "run"
    with pytest.raises(RunIncompleteError) as err:
        run_experiment(_flaky_backend(2), "zero_shot", tiny_split, run_dir=run_dir)
    partial = load_run(run_dir)
    assert not partial.complete
    assert [p.tweet_id for p in partial.predictions] == ["a", "b"]
    assert err.value.record.run_id == partial.run_id

    backend = ScriptedBackend(["1", "0"])
    record = run_experiment(backend, "zero_shot", tiny_split, run_dir=run_dir, resume=True)
    assert len(backend.calls) == 2
    assert record.complete and record.run_id == partial.run_id
    assert [p.tweet_id for p in record.predictions] == ["a", "b", "c", "d"]
    assert load_run(run_dir) == record


def test_empty_split_rejected():
    with pytest.raises(ValueError):
        run_experiment(StubBackend(), "zero_shot", DatasetSplit("test"))
