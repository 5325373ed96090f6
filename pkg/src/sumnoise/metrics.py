"""Summary redundancy and quality metrics.

Repeat rate measures how much of each sentence's vocabulary already occurs
elsewhere in the same summary. ROUGE-1/2/L compare a candidate summary to a
reference. Both are computed without stemming or stopword removal, so
absolute values are only meaningful relative to each other, not to scores
from other toolkits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyDocumentError, InvalidThresholdError, ZeroNgramsError
from .text import SummaryDoc, unigram_overlap

DEFAULT_OVERLAP_THRESHOLD = 0.8


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, match: float, candidate_total: int, reference_total: int) -> "RougeScore":
        precision = match / candidate_total if candidate_total else 0.0
        recall = match / reference_total if reference_total else 0.0
        return cls(precision, recall, f1_score(precision, recall))


@dataclass(frozen=True)
class RedundancyReport:
    """Per-document redundancy summary: Repeat rate plus size statistics."""

    repeat_rate: float
    repetition_count: int
    sentence_count: int
    token_count: int


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def repeat_rate(doc: SummaryDoc) -> float:
    """Mean containment of each sentence's unigrams in the rest of the summary, times 100.

    For each sentence, the fraction of its distinct tokens that also occur in
    the union of all other sentences. A single-sentence summary scores 0.
    """
    if len(doc) == 0:
        raise EmptyDocumentError("repeat rate needs at least one sentence")
    type_counts: Counter[str] = Counter()
    for sent in doc.sentences:
        type_counts.update(sent.token_types)
    total = 0.0
    for sent in doc.sentences:
        # A token is in the complement iff some other sentence also has it.
        shared = sum(1 for token in sent.token_types if type_counts[token] >= 2)
        total += shared / len(sent.token_types)
    return 100.0 * total / len(doc)


def rouge_n(candidate: SummaryDoc, reference: SummaryDoc, n: int) -> RougeScore:
    """Clipped n-gram precision/recall/F1 over the flattened token sequences."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if len(candidate) == 0 or len(reference) == 0:
        raise EmptyDocumentError("ROUGE needs non-empty documents")
    cand_total = max(len(candidate.all_tokens) - n + 1, 0)
    ref_total = max(len(reference.all_tokens) - n + 1, 0)
    if cand_total == 0 and ref_total == 0:
        raise ZeroNgramsError(f"n={n} exceeds both documents' token counts")
    cand_counts = _ngram_counts(candidate.all_tokens, n)
    ref_counts = _ngram_counts(reference.all_tokens, n)
    match = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
    return RougeScore.from_counts(match, cand_total, ref_total)


def rouge_l(candidate: SummaryDoc, reference: SummaryDoc) -> RougeScore:
    """Longest-common-subsequence F1 over the flattened token sequences."""
    if len(candidate) == 0 or len(reference) == 0:
        raise EmptyDocumentError("ROUGE needs non-empty documents")
    lcs = _lcs_length(candidate.all_tokens, reference.all_tokens)
    return RougeScore.from_counts(lcs, len(candidate.all_tokens), len(reference.all_tokens))


def repetition_count(doc: SummaryDoc, threshold: float = DEFAULT_OVERLAP_THRESHOLD) -> int:
    """Count sentences whose overlap with some earlier sentence exceeds ``threshold``.

    Each near-duplicate beyond the first occurrence in its group counts once,
    so a summary repeating one sentence three times scores 2.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidThresholdError(f"threshold must be in [0, 1], got {threshold}")
    if len(doc) == 0:
        raise EmptyDocumentError("repetition count needs at least one sentence")
    count = 0
    for i, sent in enumerate(doc.sentences):
        if any(unigram_overlap(sent, doc.sentences[j]) > threshold for j in range(i)):
            count += 1
    return count


def summary_stats(doc: SummaryDoc) -> tuple[int, int]:
    """Sentence count and total token occurrences."""
    return len(doc), len(doc.all_tokens)


def redundancy_report(doc: SummaryDoc, threshold: float = DEFAULT_OVERLAP_THRESHOLD) -> RedundancyReport:
    sentences, tokens = summary_stats(doc)
    return RedundancyReport(
        repeat_rate=repeat_rate(doc),
        repetition_count=repetition_count(doc, threshold),
        sentence_count=sentences,
        token_count=tokens,
    )


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter[tuple[str, ...]]:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _lcs_length(xs: Sequence[str], ys: Sequence[str]) -> int:
    # Single-row dynamic program; the full table is never needed.
    if not xs or not ys:
        return 0
    row = [0] * (len(ys) + 1)
    for x in xs:
        prev = 0
        for j, y in enumerate(ys, start=1):
            current = row[j]
            row[j] = prev + 1 if x == y else max(row[j], row[j - 1])
            prev = current
    return row[-1]
