"""Error analysis: list misclassified tweets and count keyword co-occurrence.

Most observed errors are false positives where family words and dementia
words co-occur without the author's own relative being affected, so the report
counts family-term hits, condition-term hits and both within each error class.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_FAMILY_TERMS = (
    "family", "mom", "mum", "mother", "dad", "father", "parent", "stepdad", "stepmom",
    "grandma", "grandpa", "grandmother", "grandfather", "grandparent", "nana", "granny",
    "wife", "husband", "spouse", "sister", "brother", "sibling", "aunt", "uncle",
    "son", "daughter",
)
DEFAULT_CONDITION_TERMS = ("dementia", "alzheimer")


@dataclass(frozen=True)
class Lexicon:
    family_terms: tuple[str, ...] = DEFAULT_FAMILY_TERMS
    condition_terms: tuple[str, ...] = DEFAULT_CONDITION_TERMS

    @classmethod
    def from_file(cls, path) -> "Lexicon":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            tuple(data.get("family_terms", DEFAULT_FAMILY_TERMS)),
            tuple(data.get("condition_terms", DEFAULT_CONDITION_TERMS)),
        )


def _term_pattern(term: str) -> re.Pattern:
    # plural and possessive forms count as hits
    return re.compile(rf"\b{re.escape(term)}(?:s|'s|’s|s'|s’)?\b", re.IGNORECASE)


@dataclass(frozen=True)
class ErrorCase:
    tweet_id: str
    text: str
    raw_completion: str


@dataclass
class ErrorReport:
    false_positives: list[ErrorCase] = field(default_factory=list)
    false_negatives: list[ErrorCase] = field(default_factory=list)
    keyword_stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "false_positives": [vars(c) for c in self.false_positives],
            "false_negatives": [vars(c) for c in self.false_negatives],
            "keyword_stats": self.keyword_stats,
        }

    def digest(self, max_examples: int = 5) -> str:
        out = []
        for name, cases in (("false_positives", self.false_positives), ("false_negatives", self.false_negatives)):
            stats = self.keyword_stats[name]
            out.append(
                f"{name}: {len(cases)} (family term {stats['family']}, "
                f"condition term {stats['condition']}, both {stats['both']})"
            )
            top = sorted(stats["terms"].items(), key=lambda kv: (-kv[1], kv[0]))
            hits = ", ".join(f"{t}={n}" for t, n in top if n)
            if hits:
                out.append(f"  terms: {hits}")
            for case in cases[:max_examples]:
                out.append(f"  - [{case.tweet_id}] {case.text}")
        return "\n".join(out)


def _keyword_stats(cases: list[ErrorCase], lexicon: Lexicon) -> dict:
    fam = {t: _term_pattern(t) for t in lexicon.family_terms}
    cond = {t: _term_pattern(t) for t in lexicon.condition_terms}
    terms = {t: 0 for t in (*lexicon.family_terms, *lexicon.condition_terms)}
    family = condition = both = 0
    for case in cases:
        fam_hits = [t for t, pat in fam.items() if pat.search(case.text)]
        cond_hits = [t for t, pat in cond.items() if pat.search(case.text)]
        for t in (*fam_hits, *cond_hits):
            terms[t] += 1
        family += bool(fam_hits)
        condition += bool(cond_hits)
        both += bool(fam_hits and cond_hits)
    return {"family": family, "condition": condition, "both": both, "terms": terms}


def build_error_report(run, lexicon: Lexicon | None = None) -> ErrorReport:
    lexicon = lexicon or Lexicon()
    report = ErrorReport()
    for p in run.predictions:
        if p.excluded or p.predicted is None or p.predicted == p.gold:
            continue
        case = ErrorCase(p.tweet_id, p.text, p.raw_completion)
        (report.false_positives if p.predicted == 1 else report.false_negatives).append(case)
    report.keyword_stats = {
        "false_positives": _keyword_stats(report.false_positives, lexicon),
        "false_negatives": _keyword_stats(report.false_negatives, lexicon),
    }
    return report
