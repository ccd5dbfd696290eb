"""Command-line entry point: ``python -m caregiver_tweets <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import analysis, dataset, export, inference, metrics, prompts
from .backend import BackendConfig, HTTPBackend, StubBackend
from .errors import ConfigError, HarnessError, RunIncompleteError
from .prompts import PromptStrategy

STRATEGIES = [s.value for s in PromptStrategy]


def _load_split(args, name="training"):
    return dataset.load_split(args.data, delimiter=args.delimiter, name=args.split or name)


def _write_json(obj, path):
    text = json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True)
    if path in (None, "-"):
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def make_backend(args):
    if args.backend == "stub":
        return StubBackend(), {"backend": "stub"}
    cfg = {}
    if args.config:
        cfg = json.loads(Path(args.config).read_text(encoding="utf-8")).get("backend", {})
    base_url = os.environ.get(args.base_url_env) or cfg.get("base_url")
    model = os.environ.get(args.model_env) or cfg.get("model_name")
    if not base_url or not model:
        raise ConfigError(
            f"http backend needs a base URL and model (set ${args.base_url_env} / ${args.model_env} or use --config)"
        )
    cfg = {**cfg, "base_url": base_url, "model_name": model, "api_key_ref": args.api_key_env}
    config = BackendConfig(**cfg)
    return HTTPBackend(config), config.to_dict()


def cmd_inspect(args):
    d = dataset.distribution(_load_split(args))
    print(f"label 1: {d.count_pos}\nlabel 0: {d.count_neg}\ntotal:   {d.total}")


def cmd_balance(args):
    split = _load_split(args)
    out = dataset.balance_epoch(split, dataset.epoch_seed(args.seed, args.epoch))
    d = dataset.distribution(out)
    dataset.write_split(out, args.out, delimiter=args.delimiter)
    print(f"wrote {d.total} rows ({d.count_pos} / {d.count_neg}) to {args.out}", file=sys.stderr)


def cmd_render(args):
    if args.text is not None:
        example = dataset.LabeledExample("cli", args.text, 0)
    else:
        split = _load_split(args)
        matches = [ex for ex in split if ex.id == args.id]
        if not matches:
            raise HarnessError(f"no example with id {args.id!r}")
        example = matches[0]
    sys.stdout.write(prompts.format_transcript(prompts.render(args.strategy, example).messages))


def cmd_run(args):
    split = _load_split(args, name="validation")
    backend, snapshot = make_backend(args)
    fallback = args.fallback if args.fallback == inference.ERROR_OUT else int(args.fallback)
    try:
        record = inference.run_experiment(
            backend, args.strategy, split, fallback,
            run_dir=args.out, seed=args.seed, config=snapshot, resume=args.resume,
        )
    except RunIncompleteError as exc:
        print(f"run aborted: {exc}", file=sys.stderr)
        return 2
    print(metrics.format_report(metrics.confusion(record.predictions)))
    print(f"run {record.run_id} written to {args.out}", file=sys.stderr)


def cmd_eval(args):
    record = inference.load_run(args.run)
    cm = metrics.confusion(record.predictions)
    if not record.complete:
        print("warning: run is incomplete", file=sys.stderr)
    print(metrics.format_report(cm))
    if args.json:
        _write_json(metrics.report_dict(cm), args.json)


def cmd_report(args):
    record = inference.load_run(args.run)
    lexicon = analysis.Lexicon.from_file(args.lexicon) if args.lexicon else analysis.Lexicon()
    report = analysis.build_error_report(record, lexicon)
    print(report.digest(max_examples=args.max_examples))
    if args.json:
        _write_json(report.to_dict(), args.json)


def cmd_export_sft(args):
    split = _load_split(args)
    summary = export.export_sft_dataset(split, args.strategy, args.epochs, args.seed, args.out)
    _write_json(summary, None)


def cmd_emit_config(args):
    _write_json(export.emit_train_config(args.preset, seed=args.seed).to_dict(), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="caregiver-tweets", description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="JSON file with a 'backend' section")
    p.add_argument("--api-key-env", default="LLM_API_KEY", help="env var holding the API key")
    p.add_argument("--base-url-env", default="LLM_BASE_URL", help="env var holding the endpoint URL")
    p.add_argument("--model-env", default="LLM_MODEL", help="env var holding the served model name")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def data_cmd(name, func, help, data_required=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--data", required=data_required, help="delimited file with id/text/label columns")
        sp.add_argument("--delimiter", default="\t")
        sp.add_argument("--split", choices=dataset.SPLIT_NAMES)
        sp.set_defaults(func=func)
        return sp

    data_cmd("inspect", cmd_inspect, "print the class distribution")

    sp = data_cmd("balance", cmd_balance, "write one oversampled epoch")
    sp.add_argument("--epoch", type=int, default=1)
    sp.add_argument("--out", required=True)

    sp = data_cmd("render", cmd_render, "print one rendered prompt", data_required=False)
    sp.add_argument("--strategy", choices=STRATEGIES, default="zero_shot")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--id")
    g.add_argument("--text")

    sp = data_cmd("run", cmd_run, "run a prompting strategy over a split")
    sp.add_argument("--strategy", choices=STRATEGIES, required=True)
    sp.add_argument("--backend", choices=["stub", "http"], default="http")
    sp.add_argument("--fallback", choices=["error_out", "0", "1"], default="1")
    sp.add_argument("--out", required=True, help="run directory")
    sp.add_argument("--resume", action="store_true")

    sp = sub.add_parser("eval", help="score a run directory")
    sp.add_argument("run")
    sp.add_argument("--json", help="also write the JSON report here ('-' for stdout)")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("report", help="error analysis for a run directory")
    sp.add_argument("run")
    sp.add_argument("--lexicon", help="JSON file with family_terms / condition_terms")
    sp.add_argument("--max-examples", type=int, default=5)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_report)

    sp = data_cmd("export-sft", cmd_export_sft, "write the instruction-tuning JSONL")
    sp.add_argument("--strategy", choices=STRATEGIES, default="zero_shot")
    sp.add_argument("--epochs", type=int, default=5)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("emit-config", help="write the fine-tuning config manifest")
    sp.add_argument("--preset", default="paper_default")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_emit_config)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args) or 0
    except HarnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
