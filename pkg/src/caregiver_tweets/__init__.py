"""Prompting-strategy harness for classifying dementia caregiver tweets."""

from .dataset import ClassDistribution, DatasetSplit, LabeledExample, balance_epoch, distribution, load_split
from .prompts import ChatMessage, InstructionRecord, PromptStrategy, render, render_training_instance

__all__ = [
    "ChatMessage",
    "ClassDistribution",
    "DatasetSplit",
    "InstructionRecord",
    "LabeledExample",
    "PromptStrategy",
    "balance_epoch",
    "distribution",
    "load_split",
    "render",
    "render_training_instance",
]
