"""Run every prompting strategy against the keyword stub on a synthetic split.

    python scripts/stub_sweep.py --n-pos 234 --n-neg 119 --noise 0.1 --out runs/
"""

import argparse
import random
from pathlib import Path

from caregiver_tweets.analysis import build_error_report
from caregiver_tweets.backend import StubBackend
from caregiver_tweets.dataset import DatasetSplit, LabeledExample
from caregiver_tweets.inference import run_experiment
from caregiver_tweets.metrics import confusion, evaluate
from caregiver_tweets.prompts import PromptStrategy
from caregiver_tweets.synthetic import synthetic_split


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-pos", type=int, default=234)
    ap.add_argument("--n-neg", type=int, default=119)
    ap.add_argument("--noise", type=float, default=0.0, help="fraction of gold labels to flip")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    split = synthetic_split(args.n_pos, args.n_neg, seed=args.seed, name="validation")
    if args.noise:
        rng = random.Random(args.seed)
        flip = set(rng.sample(range(len(split)), int(args.noise * len(split))))
        split = DatasetSplit(
            "validation",
            tuple(LabeledExample(e.id, e.text, 1 - e.label) if i in flip else e for i, e in enumerate(split)),
        )

    print(f"{'strategy':<18}{'P(1)':>8}{'R(1)':>8}{'F1(1)':>8}{'macroF1':>9}{'FP':>5}{'FN':>5}")
    for strategy in PromptStrategy:
        run_dir = args.out / strategy.value if args.out else None
        record = run_experiment(StubBackend(max_parallel=4), strategy, split, run_dir=run_dir, seed=args.seed)
        m = evaluate(confusion(record.predictions))
        report = build_error_report(record)
        print(
            f"{strategy.value:<18}{m.positive.precision:>8.3f}{m.positive.recall:>8.3f}{m.positive.f1:>8.3f}"
            f"{m.macro_f1:>9.3f}{len(report.false_positives):>5}{len(report.false_negatives):>5}"
        )


if __name__ == "__main__":
    main()
