"""Two-step cascade classification as a small state machine over backend calls.

Step 1 asks whether the tweet mentions dementia/Alzheimer's; a "No" ends the
session with label 0. Step 2 asks whether a family member is affected and its
answer decides the label. The optional third turn (asking the model for the
label itself) is only a cross-check; the label derived from the answers wins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import prompts
from .backend import Decoding, default_decoding
from .dataset import LabeledExample
from .errors import CascadeParseError, UnparseableAnswerError, UnparseableLabelError
from .parsing import extract_binary_label, extract_yes_no
from .prompts import ChatMessage, PromptStrategy

logger = logging.getLogger(__name__)

DECISION_TABLE = {
    ("No",): 0,
    ("Yes", "No"): 0,
    ("Yes", "Yes"): 1,
}


@dataclass
class CascadeSession:
    tweet_id: str
    step1_answer: str | None = None
    step2_answer: str | None = None
    final_label: int | None = None
    model_label: int | None = None
    transcript: list[ChatMessage] = field(default_factory=list)

    @property
    def terminal(self) -> bool:
        return self.final_label is not None

    @property
    def n_calls(self) -> int:
        return sum(m.role == "assistant" for m in self.transcript)

    def append(self, message: ChatMessage) -> None:
        if self.terminal:
            raise RuntimeError("session is already terminal")
        self.transcript.append(message)

    def transcript_text(self) -> str:
        return "\n".join(f"[{m.role}] {m.content}" for m in self.transcript)


def decide(step1: str, step2: str | None = None) -> int:
    key = (step1,) if step1 == "No" else (step1, step2)
    try:
        return DECISION_TABLE[key]
    except KeyError:
        raise ValueError(f"no decision for answers {key}") from None


def _ask(backend, session: CascadeSession, decoding: Decoding, step: int) -> str:
    resp = backend.complete(tuple(session.transcript), decoding)
    session.append(ChatMessage("assistant", resp.content or " "))
    try:
        return extract_yes_no(resp.content)
    except UnparseableAnswerError:
        raise CascadeParseError(resp.content, step, session) from None


def run_cascade(
    backend,
    example: LabeledExample,
    model_labels: bool = False,
    decoding: Decoding | None = None,
) -> CascadeSession:
    """Classify ``example`` with the cascade protocol.

    Issues one backend call when step 1 says "No", two otherwise, plus the final
    label turn when ``model_labels`` is set.
    """
    decoding = decoding or default_decoding(PromptStrategy.CASCADE)
    prompt = prompts.render(PromptStrategy.CASCADE, example)
    session = CascadeSession(example.id, transcript=list(prompt.messages))

    session.step1_answer = _ask(backend, session, decoding, step=1)
    if session.step1_answer == "No":
        session.final_label = decide("No")
        return session

    session.append(prompts.cascade_step2_message())
    session.step2_answer = _ask(backend, session, decoding, step=2)
    label = decide(session.step1_answer, session.step2_answer)

    if model_labels:
        session.append(prompts.cascade_final_message())
        resp = backend.complete(tuple(session.transcript), decoding)
        session.append(ChatMessage("assistant", resp.content or " "))
        try:
            session.model_label = extract_binary_label(resp.content).label
        except UnparseableLabelError:
            logger.warning("cascade %s: final turn unparseable: %r", example.id, resp.content)
        else:
            if session.model_label != label:
                logger.warning(
                    "cascade %s: model label %d disagrees with derived label %d", example.id, session.model_label, label
                )

    session.final_label = label
    return session
