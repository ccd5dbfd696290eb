import pytest

from caregiver_tweets.dataset import DatasetSplit, LabeledExample
from caregiver_tweets.synthetic import synthetic_split


@pytest.fixture
def tiny_split():
    return DatasetSplit(
        "validation",
        (
            LabeledExample("a", "My mom has dementia and doesn't recognize me sometimes.", 1),
            LabeledExample("b", "Dementia is such a cruel disease. Watching the news about it is heartbreaking.", 0),
            LabeledExample("c", "Our grandpa has Alzheimer's and we visit every Sunday.", 1),
            LabeledExample("d", "Read a great article on alzheimer research today.", 0),
        ),
    )


@pytest.fixture
def table1_shaped():
    return synthetic_split(4523, 2201, seed=7)


def write_tsv(path, rows, header=("id", "text", "label")):
    lines = ["\t".join(header)] + ["\t".join(map(str, r)) for r in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


ACCEPTANCE_RESULTS = []


def record_criterion(name, passed, detail=""):
    ACCEPTANCE_RESULTS.append((name, passed, detail))
    assert passed, f"{name}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))
