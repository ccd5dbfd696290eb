"""Synthetic tweets whose keyword-stub label is known by construction."""

from __future__ import annotations

import random

from .dataset import DatasetSplit, LabeledExample

_POSITIVE = (
    "My {fam} has {cond} and some days she forgets my name.",
    "Visited my {fam} today. The {cond} is getting worse but we laughed a lot.",
    "Our {fam} was diagnosed with {cond} last spring #caregiving",
    "Nobody tells you how lonely it is caring for my {fam} with {cond}.",
    "3am again. My {fam} keeps asking for people who died years ago. {cond} is cruel.",
)
_NEGATIVE = (
    "New study links sleep quality to {cond} risk.",
    "{cond} awareness walk this Saturday, come support the cause!",
    "Watching a documentary about {cond}. Heartbreaking.",
    "My {fam} made pancakes this morning and they were perfect.",
    "Her {fam} has {cond}, thinking of their whole family.",
    "The senator's {fam} reportedly has {cond}.",
)
_FAMILY = ("mom", "dad", "mother", "father", "grandma", "grandpa", "wife", "husband", "sister", "brother")
_CONDITION = ("dementia", "Alzheimer's", "alzheimers", "Dementia")


def synthetic_tweet(label: int, rng: random.Random) -> str:
    template = rng.choice(_POSITIVE if label else _NEGATIVE)
    return template.format(fam=rng.choice(_FAMILY), cond=rng.choice(_CONDITION))


def synthetic_split(n_pos: int, n_neg: int, seed: int = 0, name: str = "training") -> DatasetSplit:
    """Build a split of ``n_pos`` positive and ``n_neg`` negative tweets in shuffled order."""
    rng = random.Random(seed)
    labels = [1] * n_pos + [0] * n_neg
    rng.shuffle(labels)
    examples = tuple(
        LabeledExample(f"syn-{i:06d}", synthetic_tweet(label, rng), label) for i, label in enumerate(labels)
    )
    return DatasetSplit(name, examples)
