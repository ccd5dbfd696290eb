"""Extraction of labels and Yes/No answers from free-form completions."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import UnparseableAnswerError, UnparseableLabelError

RULE_EXACT = "exact"
RULE_LABEL_PREFIX = "label_prefix"
RULE_STANDALONE = "standalone_digit"

# A binary digit is standalone when it is not glued to a word character, is not
# part of a decimal, fraction or percentage (0.5, 1,000, 1/2, 0%), and carries no sign.
_DIGIT_BEFORE = r"(?<![\w+\-])(?<!\d[.,/])"
_DIGIT_AFTER = r"(?![\w%])(?![.,/]\d)"

_LABEL_PREFIX_RE = re.compile(
    r"\blabel[\s*_]*[:=\-][\s*_\"'\[(<]*" + r"([01])" + _DIGIT_AFTER,
    re.IGNORECASE,
)
_STANDALONE_RE = re.compile(_DIGIT_BEFORE + r"([01])" + _DIGIT_AFTER)
_YES_NO_RE = re.compile(r"(?<!\w)(yes|no)(?!\w)", re.IGNORECASE)


@dataclass(frozen=True)
class ParsedLabel:
    label: int
    source_span: tuple[int, int]
    rule_used: str


def extract_binary_label(completion: str) -> ParsedLabel:
    """Pull a 0/1 label out of ``completion``.

    Rules, first match wins:

    1. the whole completion, trimmed, is ``0`` or ``1``;
    2. ``Label`` followed by a separator and a digit; the *last* such
       occurrence is used, since reasoning completions may restate the prompt
       (including an echoed tweet) before concluding;
    3. the first standalone ``0``/``1`` token.
    """
    stripped = completion.strip()
    if stripped in ("0", "1"):
        start = completion.index(stripped)
        return ParsedLabel(int(stripped), (start, start + 1), RULE_EXACT)

    last = None
    for last in _LABEL_PREFIX_RE.finditer(completion):
        pass
    if last is not None:
        return ParsedLabel(int(last.group(1)), last.span(1), RULE_LABEL_PREFIX)

    m = _STANDALONE_RE.search(completion)
    if m is not None:
        return ParsedLabel(int(m.group(1)), m.span(1), RULE_STANDALONE)

    raise UnparseableLabelError(completion)


def extract_yes_no(completion: str) -> str:
    m = _YES_NO_RE.search(completion)
    if m is None:
        raise UnparseableAnswerError(completion)
    return "Yes" if m.group(1).lower() == "yes" else "No"


def has_label_prefix(completion: str) -> bool:
    return _LABEL_PREFIX_RE.search(completion) is not None


def standalone_digits(completion: str) -> list[str]:
    return [m.group(1) for m in _STANDALONE_RE.finditer(completion)]
