"""Chat-completion backends.

``HTTPBackend`` talks to any chat-completions style endpoint (``POST
{base_url}/chat/completions``) and retries transient failures with exponential
backoff. ``StubBackend`` is a deterministic keyword classifier used as a test
oracle, and ``ScriptedBackend`` replays canned completions.
"""

from __future__ import annotations

import logging
import os
import re
import threading
import time
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field

import httpx

from . import prompts
from .errors import (
    BackendAuthError,
    BackendRequestError,
    BackendUnavailableError,
    ConfigError,
    StubError,
)
from .prompts import ChatMessage, PromptStrategy

logger = logging.getLogger(__name__)

RETRYABLE_STATUS = frozenset({408, 409, 425, 429, 500, 502, 503, 504})
AUTH_STATUS = frozenset({401, 403})


@dataclass(frozen=True)
class BackendConfig:
    base_url: str
    model_name: str
    api_key_ref: str = "LLM_API_KEY"
    timeout: float = 60.0
    max_retries: int = 3
    max_parallel: int = 4
    backoff_base: float = 1.0
    backoff_max: float = 30.0

    def __post_init__(self):
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be >= 0")
        if self.max_parallel < 1:
            raise ConfigError("max_parallel must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Decoding:
    temperature: float = 0.0
    max_new_tokens: int = 16


def default_decoding(strategy: PromptStrategy | str) -> Decoding:
    # reasoning has to fit before the label
    if PromptStrategy(strategy) is PromptStrategy.CHAIN_OF_THOUGHT:
        return Decoding(0.0, 256)
    return Decoding(0.0, 16)


@dataclass(frozen=True)
class ChatResponse:
    content: str
    latency: float
    attempt_count: int = 1


def _check_messages(messages: Sequence[ChatMessage]) -> None:
    if not messages:
        raise ValueError("messages must be non-empty")
    if messages[0].role != "system":
        raise ValueError("first message must have the system role")


def backoff_delays(base: float, cap: float, retries: int) -> list[float]:
    return [min(cap, base * 2**i) for i in range(retries)]


class HTTPBackend:
    def __init__(
        self,
        config: BackendConfig,
        client: httpx.Client | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.model_name = config.model_name
        self.max_parallel = config.max_parallel
        self._client = client or httpx.Client(timeout=config.timeout)
        self._sleep = sleep
        self._slots = threading.Semaphore(config.max_parallel)

    def payload(self, messages: Sequence[ChatMessage], decoding: Decoding) -> dict:
        return {
            "model": self.config.model_name,
            "messages": [m.to_dict() for m in messages],
            "temperature": decoding.temperature,
            "max_tokens": decoding.max_new_tokens,
        }

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.config.api_key_ref)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, messages: Sequence[ChatMessage], decoding: Decoding | None = None) -> ChatResponse:
        _check_messages(messages)
        decoding = decoding or Decoding()
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        body = self.payload(messages, decoding)
        delays = backoff_delays(self.config.backoff_base, self.config.backoff_max, self.config.max_retries)

        last_status = None
        last_error = None
        started = time.perf_counter()
        for attempt in range(1, self.config.max_retries + 2):
            try:
                with self._slots:
                    resp = self._client.post(url, json=body, headers=self._headers())
            except httpx.TransportError as exc:
                last_status, last_error = None, exc
                logger.warning("attempt %d: transport error %r", attempt, exc)
            else:
                if resp.status_code == 200:
                    content = _content_of(resp, attempt)
                    return ChatResponse(content, time.perf_counter() - started, attempt)
                last_status = resp.status_code
                last_error = resp.text[:500]
                if resp.status_code in AUTH_STATUS:
                    raise BackendAuthError(f"authentication failed ({resp.status_code})", resp.status_code, attempt)
                if resp.status_code not in RETRYABLE_STATUS:
                    raise BackendRequestError(
                        f"request rejected ({resp.status_code}): {last_error}", resp.status_code, attempt
                    )
                logger.warning("attempt %d: retryable status %d", attempt, resp.status_code)
            if attempt <= len(delays):
                self._sleep(delays[attempt - 1])
        raise BackendUnavailableError(
            f"giving up after {self.config.max_retries + 1} attempts: {last_error}",
            last_status,
            self.config.max_retries + 1,
        )

    def close(self):
        self._client.close()


def _content_of(resp: httpx.Response, attempt: int) -> str:
    try:
        return resp.json()["choices"][0]["message"]["content"] or ""
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise BackendRequestError(f"malformed completion body: {exc!r}", resp.status_code, attempt) from exc


def complete(config: BackendConfig, messages: Sequence[ChatMessage], decoding: Decoding | None = None) -> ChatResponse:
    backend = HTTPBackend(config)
    try:
        return backend.complete(messages, decoding)
    finally:
        backend.close()


FAMILY_TERMS = (
    "mom", "dad", "mother", "father", "grandma", "grandpa",
    "grandmother", "grandfather", "wife", "husband", "sister", "brother",
)
CONDITION_TERMS = ("dementia", "alzheimer")
POSSESSIVES = ("my", "our")


@dataclass(frozen=True)
class KeywordRule:
    """Matches a first-person possessive followed later by a family term, plus a condition term."""

    possessives: tuple[str, ...] = POSSESSIVES
    family_terms: tuple[str, ...] = FAMILY_TERMS
    condition_terms: tuple[str, ...] = CONDITION_TERMS
    _relation: re.Pattern = field(init=False, repr=False, compare=False)
    _condition: re.Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        poss = "|".join(map(re.escape, self.possessives))
        fam = "|".join(map(re.escape, self.family_terms))
        cond = "|".join(map(re.escape, self.condition_terms))
        relation = re.compile(rf"\b(?:{poss})\b.*?\b(?:{fam})\b", re.IGNORECASE | re.DOTALL)
        object.__setattr__(self, "_relation", relation)
        object.__setattr__(self, "_condition", re.compile(cond, re.IGNORECASE))

    def mentions_condition(self, text: str) -> bool:
        return bool(self.condition_terms) and self._condition.search(text) is not None

    def matches(self, text: str) -> bool:
        if not (self.possessives and self.family_terms and self.condition_terms):
            return False
        return self.mentions_condition(text) and self._relation.search(text) is not None


DEFAULT_RULESET = (KeywordRule(),)


def stub_label(rules: Sequence[KeywordRule], text: str) -> int:
    return int(any(rule.matches(text) for rule in rules))


def stub_complete(rules: Sequence[KeywordRule], messages: Sequence[ChatMessage]) -> ChatResponse:
    """Answer like a perfect keyword classifier.

    Label prompts get ``"1"``/``"0"``. Cascade conversations are answered by
    the step of the last user turn: step 1 asks whether a condition term is
    mentioned, step 2 whether the full rule holds, the final turn gets the label.
    """
    try:
        tweet = prompts.extract_tweet(messages)
    except LookupError as exc:
        raise StubError(str(exc)) from None

    label = stub_label(rules, tweet)
    last_user = next((m.content for m in reversed(messages) if m.role == "user"), None)
    if last_user is not None and prompts.is_cascade_turn(last_user, "step1"):
        answer = "Yes" if any(r.mentions_condition(tweet) for r in rules) else "No"
    elif last_user is not None and prompts.is_cascade_turn(last_user, "step2"):
        answer = "Yes" if label else "No"
    else:
        answer = str(label)
    return ChatResponse(answer, 0.0, 1)


class StubBackend:
    model_name = "keyword-stub"
    max_parallel = 1

    def __init__(self, rules: Sequence[KeywordRule] = DEFAULT_RULESET, max_parallel: int = 1):
        self.rules = tuple(rules)
        self.max_parallel = max_parallel

    def complete(self, messages: Sequence[ChatMessage], decoding: Decoding | None = None) -> ChatResponse:
        _check_messages(messages)
        return stub_complete(self.rules, messages)


class ScriptedBackend:
    """Returns canned completions in order and records every call."""

    model_name = "scripted"
    max_parallel = 1

    def __init__(self, replies: Sequence[str]):
        self._replies = list(replies)
        self.calls: list[tuple[ChatMessage, ...]] = []
        self._lock = threading.Lock()

    def complete(self, messages: Sequence[ChatMessage], decoding: Decoding | None = None) -> ChatResponse:
        _check_messages(messages)
        with self._lock:
            if len(self.calls) >= len(self._replies):
                raise StubError(f"script exhausted after {len(self.calls)} calls")
            reply = self._replies[len(self.calls)]
            self.calls.append(tuple(messages))
        return ChatResponse(reply, 0.0, 1)
