"""Rendering of the four prompting strategies into role-tagged chat messages.

Template text lives in ``templates/*.txt``; each user template carries a single
``<Input Text>`` placeholder. The ``Label : <Label>`` slot printed at the end
of each template is the assistant turn, so it is never part of a rendered
inference prompt.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .dataset import LabeledExample
from .errors import RenderError

PLACEHOLDER = "<Input Text>"
ROLES = ("system", "user", "assistant")

_CONDITION_RE = re.compile(r"dementia|alzheimer", re.IGNORECASE)


class PromptStrategy(str, enum.Enum):
    ZERO_SHOT = "zero_shot"
    FEW_SHOT = "few_shot"
    CHAIN_OF_THOUGHT = "chain_of_thought"
    CASCADE = "cascade"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if not self.content:
            raise ValueError(f"empty {self.role} message")

    def to_dict(self) -> dict:
        return {"role": self.role, "content": self.content}

    @classmethod
    def from_dict(cls, d: dict) -> "ChatMessage":
        return cls(d["role"], d["content"])


@dataclass(frozen=True)
class RenderedPrompt:
    strategy: PromptStrategy
    messages: tuple[ChatMessage, ...]
    tweet_id: str


@dataclass(frozen=True)
class FewShotExemplar:
    tweet: str
    label: int


FEW_SHOT_EXEMPLARS = (
    FewShotExemplar("My mom has dementia and doesn't recognize me sometimes.", 1),
    FewShotExemplar("Dementia is such a cruel disease. Watching the news about it is heartbreaking.", 0),
    FewShotExemplar("My friend’s grandmother has Alzheimer’s; it’s so sad to see.", 0),
)


@dataclass(frozen=True)
class InstructionRecord:
    """One supervised fine-tuning conversation."""

    messages: tuple[ChatMessage, ...]
    meta: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.messages or self.messages[-1].role != "assistant":
            raise ValueError("instruction record must end with an assistant turn")
        if self.messages[0].role != "system":
            raise ValueError("instruction record must start with a system turn")
        gold = self.meta.get("gold_label")
        if gold not in (0, 1):
            raise ValueError(f"gold_label {gold!r} is not 0 or 1")
        if self.messages[-1].content != str(gold):
            raise ValueError(f"final assistant turn {self.messages[-1].content!r} disagrees with gold {gold}")
        if self.meta.get("strategy") == PromptStrategy.CASCADE.value:
            answers = [m.content for m in self.messages if m.role == "assistant"]
            if len(answers) != 3 or (answers[1] == "Yes") != (gold == 1):
                raise ValueError(f"cascade answers {answers} inconsistent with gold {gold}")

    def to_dict(self) -> dict:
        return {"messages": [m.to_dict() for m in self.messages], "meta": dict(self.meta)}

    @classmethod
    def from_dict(cls, d: dict) -> "InstructionRecord":
        return cls(tuple(ChatMessage.from_dict(m) for m in d["messages"]), dict(d["meta"]))


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    text = resources.files(__package__).joinpath("templates", f"{name}.txt").read_text(encoding="utf-8")
    return text.removesuffix("\n")


@lru_cache(maxsize=None)
def _split_template(name: str) -> tuple[str, str]:
    parts = load_template(name).split(PLACEHOLDER)
    if len(parts) != 2:
        raise RenderError(f"template {name!r} must contain exactly one {PLACEHOLDER} placeholder")
    return parts[0], parts[1]


# template carrying the tweet for each strategy
_SUBJECT_TEMPLATE = {
    PromptStrategy.ZERO_SHOT: "zero_shot.user",
    PromptStrategy.FEW_SHOT: "few_shot.user",
    PromptStrategy.CHAIN_OF_THOUGHT: "chain_of_thought.user",
    PromptStrategy.CASCADE: "cascade.step1",
}


def _fill(name: str, text: str) -> str:
    head, tail = _split_template(name)
    return head + text + tail


def system_message(strategy: PromptStrategy) -> ChatMessage:
    strategy = PromptStrategy(strategy)
    return ChatMessage("system", load_template(f"{strategy.value}.system"))


def cascade_step2_message() -> ChatMessage:
    return ChatMessage("user", load_template("cascade.step2"))


def cascade_final_message() -> ChatMessage:
    return ChatMessage("user", load_template("cascade.final"))


def render(strategy: PromptStrategy | str, example: LabeledExample) -> RenderedPrompt:
    """Build the inference conversation for ``example``.

    For the cascade strategy only the step-1 exchange is returned; later turns
    are appended by :mod:`caregiver_tweets.cascade`.
    """
    strategy = PromptStrategy(strategy)
    if not example.text or not example.text.strip():
        raise RenderError(f"example {example.id!r} has empty text")
    messages = (
        system_message(strategy),
        ChatMessage("user", _fill(_SUBJECT_TEMPLATE[strategy], example.text)),
    )
    return RenderedPrompt(strategy, messages, example.id)


def is_cascade_turn(content: str, step: str) -> bool:
    """True if ``content`` is the cascade ``step1``, ``step2`` or ``final`` user turn."""
    if step != "step1":
        return content == load_template(f"cascade.{step}")
    head, tail = _split_template("cascade.step1")
    return content.startswith(head) and content.endswith(tail)


def mentions_condition(text: str) -> bool:
    return _CONDITION_RE.search(text) is not None


def cascade_training_answers(example: LabeledExample) -> tuple[str, str, str]:
    if example.label == 1:
        return "Yes", "Yes", "1"
    return ("Yes" if mentions_condition(example.text) else "No"), "No", "0"


def render_training_instance(
    strategy: PromptStrategy | str, example: LabeledExample, epoch_index: int | None = None
) -> InstructionRecord:
    strategy = PromptStrategy(strategy)
    prompt = render(strategy, example)
    messages = list(prompt.messages)
    if strategy is PromptStrategy.CASCADE:
        step1, step2, label = cascade_training_answers(example)
        messages += [
            ChatMessage("assistant", step1),
            cascade_step2_message(),
            ChatMessage("assistant", step2),
            cascade_final_message(),
            ChatMessage("assistant", label),
        ]
    else:
        messages.append(ChatMessage("assistant", str(example.label)))
    meta = {
        "tweet_id": example.id,
        "strategy": strategy.value,
        "gold_label": example.label,
        "epoch_index": epoch_index,
    }
    return InstructionRecord(tuple(messages), meta)


def extract_tweet(messages) -> str:
    """Recover the substituted tweet from a rendered conversation.

    Matches each user message against the known subject templates by exact
    prefix and suffix, so tweets containing template-like text round-trip.
    Raises ``LookupError`` when no user message fits a template.
    """
    for msg in messages:
        if msg.role != "user":
            continue
        for name in _SUBJECT_TEMPLATE.values():
            head, tail = _split_template(name)
            content = msg.content
            if len(content) > len(head) + len(tail) and content.startswith(head) and content.endswith(tail):
                return content[len(head) : len(content) - len(tail)]
    raise LookupError("no user message matches a known prompt template")


def format_transcript(messages) -> str:
    """Plain-text transcript used for golden files and CLI output."""
    return "".join(f"=== {m.role} ===\n{m.content}\n" for m in messages)
