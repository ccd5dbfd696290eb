"""Seeded generator of synthetic completions with a known expected parse."""

import random

WORDS = [
    "the", "tweet", "author", "mentions", "their", "mother", "dementia", "Yes", "no", "maybe",
    "labeled", "labels", "class", "one", "zero", "Reasoning:", "Conclusion:", "family", "Alzheimer's",
    "answer", "is", "😊", "über", "因此", "#caregiver", "@user", "LABELLING",
]
# numbers that must never be read as a standalone 0/1
DECOYS = [
    "2", "10", "01", "100", "0.5", "1.0", "1,000", "-1", "+0", "x1", "1st", "v0", "3.1", "0x1", "11", "a0b",
    "2021", "0%", "1/2", "(10)",
]
PUNCT = [".", ",", "!", "?", "(", ")", ":", ";", "...", "—"]
SEPS = [" ", " ", " ", "\n", "  ", "\t"]


def _noise(rng, n, decoys=True):
    pool = WORDS + PUNCT + (DECOYS if decoys else [])
    return [rng.choice(pool) for _ in range(n)]


def _join(rng, tokens):
    out = []
    for i, tok in enumerate(tokens):
        if i:
            out.append(rng.choice(SEPS))
        out.append(tok)
    return "".join(out)


def make_completion(rng: random.Random):
    """Return ``(completion, expected)`` where expected is 0, 1 or None (must error)."""
    kind = rng.choice(["single", "label_line", "none"])
    if kind == "single":
        digit = rng.choice("01")
        tokens = _noise(rng, rng.randint(0, 25))
        tokens.insert(rng.randint(0, len(tokens)), digit)
        return _join(rng, tokens), int(digit)
    if kind == "label_line":
        tokens = _noise(rng, rng.randint(0, 20))
        # earlier standalone digits and an echoed label line must lose to the final one
        for _ in range(rng.randint(0, 3)):
            tokens.insert(rng.randint(0, len(tokens)), rng.choice("01"))
        if rng.random() < 0.5:
            tokens.insert(rng.randint(0, len(tokens)), "\nLabel: " + rng.choice("01") + "\n")
        digit = rng.choice("01")
        prefix = rng.choice(["Label: ", "label : ", "**Label**: ", "Final label = ", "LABEL - ", "Label:"])
        tail = rng.choice(["", ".", "\n", " (family member)"])
        return _join(rng, tokens) + "\n" + prefix + digit + tail, int(digit)
    return _join(rng, _noise(rng, rng.randint(0, 30))), None
