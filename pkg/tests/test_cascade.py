import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caregiver_tweets.backend import StubBackend, stub_label, DEFAULT_RULESET, ScriptedBackend
from caregiver_tweets.cascade import DECISION_TABLE, decide, run_cascade
from caregiver_tweets.dataset import LabeledExample
from caregiver_tweets.errors import CascadeParseError
from caregiver_tweets.synthetic import synthetic_tweet

EX = LabeledExample("c1", "Our grandpa has Alzheimer's and we visit every Sunday.", 1)


@pytest.mark.parametrize(
    "replies,label,calls",
    [(["No"], 0, 1), (["Yes", "No"], 0, 2), (["Yes", "Yes"], 1, 2)],
)
def test_truth_table(replies, label, calls):
    backend = ScriptedBackend(replies)
    session = run_cascade(backend, EX)
    assert session.final_label == label
    assert len(backend.calls) == calls
    assert session.n_calls == calls
    assert session.terminal


def test_step2_sent_in_same_conversation():
    backend = ScriptedBackend(["Yes.", "yes, their grandpa"])
    session = run_cascade(backend, EX)
    first, second = backend.calls
    assert second[: len(first)] == first
    assert second[len(first)].content == "Yes."
    assert second[-1].content.startswith("Step 2:")
    assert (session.step1_answer, session.step2_answer) == ("Yes", "Yes")
    assert [m.role for m in session.transcript] == ["system", "user", "assistant", "user", "assistant"]


def test_step2_absent_after_no():
    session = run_cascade(ScriptedBackend(["No"]), EX)
    assert session.step2_answer is None


@pytest.mark.parametrize("replies,step", [(["hmm"], 1), (["Yes", "can't tell"], 2)])
def test_parse_error(replies, step):
    with pytest.raises(CascadeParseError) as err:
        run_cascade(ScriptedBackend(replies), EX)
    assert err.value.step == step
    assert err.value.raw == replies[-1]
    assert err.value.session.final_label is None


def test_model_label_turn_cross_check(caplog):
    backend = ScriptedBackend(["Yes", "Yes", "0"])
    with caplog.at_level(logging.WARNING):
        session = run_cascade(backend, EX, model_labels=True)
    assert len(backend.calls) == 3
    assert session.final_label == 1
    assert session.model_label == 0
    assert "disagrees" in caplog.text


def test_model_label_turn_skipped_on_no():
    backend = ScriptedBackend(["No"])
    assert run_cascade(backend, EX, model_labels=True).final_label == 0
    assert len(backend.calls) == 1


def test_decision_table_total():
    outcomes = {}
    for s1 in ("Yes", "No"):
        for s2 in ((None,) if s1 == "No" else ("Yes", "No")):
            outcomes[(s1, s2)] = decide(s1, s2)
    assert outcomes == {("No", None): 0, ("Yes", "No"): 0, ("Yes", "Yes"): 1}
    assert set(DECISION_TABLE.values()) == {0, 1}


@settings(max_examples=200)
@given(text=st.text(min_size=1).filter(str.strip) | st.builds(synthetic_tweet, st.sampled_from([0, 1]), st.randoms()))
def test_stub_agrees_with_direct_rule(text):
    session = run_cascade(StubBackend(), LabeledExample("p", text, 0))
    assert session.final_label == stub_label(DEFAULT_RULESET, text)
    assert session.n_calls in (1, 2)
