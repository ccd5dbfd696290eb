"""Published numbers for SMM4H 2025 Task 3 used by consistency checks."""

from __future__ import annotations

from typing import NamedTuple

from .dataset import ClassDistribution

TRAINING_DISTRIBUTION = ClassDistribution(count_pos=4523, count_neg=2201)
VALIDATION_DISTRIBUTION = ClassDistribution(count_pos=234, count_neg=119)


class ReportedScore(NamedTuple):
    system: str
    setting: str
    precision: float
    recall: float
    f1: float


# validation set, fine-tuned models
VALIDATION_SCORES = (
    ReportedScore("Llama-3.1-8B-Instruct", "zero_shot", 0.919, 0.974, 0.946),
    ReportedScore("Llama-3.1-8B-Instruct", "few_shot", 0.897, 0.855, 0.875),
    ReportedScore("Llama-3.1-8B-Instruct", "chain_of_thought", 0.891, 0.838, 0.863),
    ReportedScore("Llama-3.1-8B-Instruct", "cascade", 0.851, 0.927, 0.888),
    ReportedScore("Mistral-7B-Instruct-v0.3", "zero_shot", 0.956, 0.932, 0.944),
    ReportedScore("Mistral-7B-Instruct-v0.3", "few_shot", 0.721, 0.996, 0.837),
    ReportedScore("Mistral-7B-Instruct-v0.3", "chain_of_thought", 0.828, 0.966, 0.892),
    ReportedScore("Mistral-7B-Instruct-v0.3", "cascade", 0.866, 0.868, 0.867),
)

# official test-set results; Mean and Median aggregate all participating teams
TEST_SCORES = (
    ReportedScore("BERTweet baseline", "test", 0.946, 0.979, 0.962),
    ReportedScore("submission", "test", 0.946, 0.962, 0.954),
    ReportedScore("mean", "test", 0.925, 0.892, 0.885),
    ReportedScore("median", "test", 0.946, 0.969, 0.953),
)
