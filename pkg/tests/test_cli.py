import json

import pytest

from caregiver_tweets.cli import main
from caregiver_tweets.dataset import write_split
from caregiver_tweets.synthetic import synthetic_split


@pytest.fixture
def data(tmp_path):
    path = tmp_path / "train.tsv"
    write_split(synthetic_split(12, 5, seed=0), path)
    return path


def test_inspect(data, capsys):
    assert main(["inspect", "--data", str(data)]) == 0
    assert "label 1: 12" in capsys.readouterr().out


def test_balance(data, tmp_path):
    out = tmp_path / "bal.tsv"
    assert main(["--seed", "3", "balance", "--data", str(data), "--out", str(out)]) == 0
    rows = out.read_text().splitlines()[1:]
    assert len(rows) == 24
    assert sum(r.endswith("\t0") for r in rows) == 12


def test_render(capsys):
    assert main(["render", "--strategy", "few_shot", "--text", "my dad forgets things"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("=== system ===") and out.rstrip().endswith("my dad forgets things")


def test_run_eval_report(data, tmp_path, capsys):
    run = tmp_path / "run"
    assert main(["run", "--data", str(data), "--strategy", "cascade", "--backend", "stub", "--out", str(run)]) == 0
    assert "macro F1: 1.0000" in capsys.readouterr().out
    assert main(["eval", str(run), "--json", str(tmp_path / "m.json")]) == 0
    assert json.loads((tmp_path / "m.json").read_text())["macro_f1"] == 1.0
    assert main(["report", str(run)]) == 0
    assert "false_positives: 0" in capsys.readouterr().out


def test_export_and_config(data, tmp_path, capsys):
    out = tmp_path / "sft.jsonl"
    assert main(["export-sft", "--data", str(data), "--epochs", "2", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 48
    assert main(["emit-config", "--out", str(tmp_path / "cfg.json")]) == 0
    assert json.loads((tmp_path / "cfg.json").read_text())["epochs"] == 5


def test_http_backend_needs_config(data, tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("LLM_BASE_URL", raising=False)
    monkeypatch.delenv("LLM_MODEL", raising=False)
    assert main(["run", "--data", str(data), "--strategy", "zero_shot", "--out", str(tmp_path / "r")]) == 1
    assert "base URL" in capsys.readouterr().err
