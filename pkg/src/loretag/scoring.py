"""Span-level evaluation and label remapping.

Scoring is exact-match: a predicted span counts as a true positive only if
a gold span with the same sentence, token range and label exists. All of
precision, recall and F1 define 0/0 as 0, which keeps a no-hit baseline
row (0.00/0.00/0.00) well-defined.

Label remapping supports cross-tagset comparison: a general-domain model's
PER predictions can be mapped onto the domain label before scoring, with
all other labels dropped to O.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .biotags import decode_bio, extract_spans_from_bio, parse_tag, repair_bio
from .corpus import BioCorpus, BioDocument, TaggedSentence
from .errors import TokenMismatchError

__all__ = [
    "SpanKey",
    "EvalReport",
    "LabelMap",
    "UnmappedPolicy",
    "extract_spans_from_bio",
    "corpus_spans",
    "harmonic_f1",
    "score",
    "remap_labels",
]


@dataclass(frozen=True)
class SpanKey:
    """Identity of a span for exact matching: global sentence ordinal, token
    range (end exclusive) and label."""

    sentence_index: int
    token_start: int
    token_end: int
    label: str


def harmonic_f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "EvalReport":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        return cls(
            tp=tp,
            fp=fp,
            fn=fn,
            precision=precision,
            recall=recall,
            f1=harmonic_f1(precision, recall),
        )

    def to_json_dict(self) -> dict:
        """Counts plus percentages rounded to 2 decimals."""
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": round(100 * self.precision, 2),
            "recall": round(100 * self.recall, 2),
            "f1": round(100 * self.f1, 2),
        }

    def summary(self) -> str:
        return (
            f"P {100 * self.precision:.2f} R {100 * self.recall:.2f} "
            f"F1 {100 * self.f1:.2f} (tp={self.tp} fp={self.fp} fn={self.fn})"
        )


def corpus_spans(corpus: BioCorpus) -> set[SpanKey]:
    """All spans of a corpus, keyed by global sentence ordinal."""
    spans: set[SpanKey] = set()
    for sentence_index, tagged in enumerate(corpus.iter_sentences()):
        for start, end, label in decode_bio(tagged.tags).spans:
            spans.add(SpanKey(sentence_index, start, end, label))
    return spans


def _check_token_alignment(pred: BioCorpus, gold: BioCorpus) -> None:
    pred_sentences = list(pred.iter_sentences())
    gold_sentences = list(gold.iter_sentences())
    if len(pred_sentences) != len(gold_sentences):
        raise TokenMismatchError(
            f"sentence count mismatch: pred has {len(pred_sentences)}, "
            f"gold has {len(gold_sentences)}"
        )
    for index, (p, g) in enumerate(zip(pred_sentences, gold_sentences)):
        pred_tokens = [token.text for token in p.sentence.tokens]
        gold_tokens = [token.text for token in g.sentence.tokens]
        if pred_tokens == gold_tokens:
            continue
        for position, (pt, gt) in enumerate(zip(pred_tokens, gold_tokens)):
            if pt != gt:
                raise TokenMismatchError(
                    f"token mismatch at sentence {index}, token {position}: "
                    f"pred {pt!r} != gold {gt!r}",
                    sentence_index=index,
                    token_index=position,
                )
        raise TokenMismatchError(
            f"token count mismatch at sentence {index}: pred has "
            f"{len(pred_tokens)} tokens, gold has {len(gold_tokens)}",
            sentence_index=index,
            token_index=min(len(pred_tokens), len(gold_tokens)),
        )


def score(
    pred: BioCorpus,
    gold: BioCorpus,
    target_labels: set[str] | None = None,
) -> EvalReport:
    """Exact-span precision/recall/F1 of predictions against gold.

    Both corpora must carry identical token sequences sentence by sentence;
    the first divergence raises TokenMismatchError. When target_labels is
    given, spans with other labels are excluded from both sides.
    """
    _check_token_alignment(pred, gold)
    pred_spans = corpus_spans(pred)
    gold_spans = corpus_spans(gold)
    if target_labels is not None:
        pred_spans = {s for s in pred_spans if s.label in target_labels}
        gold_spans = {s for s in gold_spans if s.label in target_labels}
    tp = len(pred_spans & gold_spans)
    return EvalReport.from_counts(
        tp=tp, fp=len(pred_spans) - tp, fn=len(gold_spans) - tp
    )


class UnmappedPolicy(enum.Enum):
    DROP_TO_O = "drop_to_O"
    KEEP = "keep"


@dataclass(frozen=True)
class LabelMap:
    mapping: dict[str, str] = field(default_factory=dict)
    unmapped_policy: UnmappedPolicy = UnmappedPolicy.DROP_TO_O


def remap_labels(corpus: BioCorpus, label_map: LabelMap) -> BioCorpus:
    """Replace each tag's label per the map, preserving B/I prefixes.

    Unmapped labels become O (DROP_TO_O) or pass through (KEEP). The output
    is re-validated: remapping can orphan an I tag, which is repaired to B.
    """
    documents: list[BioDocument] = []
    for doc in corpus.documents:
        sentences: list[TaggedSentence] = []
        for tagged in doc.sentences:
            new_tags: list[str] = []
            for tag in tagged.tags:
                prefix, label = parse_tag(tag)
                if prefix == "O":
                    new_tags.append("O")
                elif label in label_map.mapping:
                    new_tags.append(f"{prefix}-{label_map.mapping[label]}")
                elif label_map.unmapped_policy is UnmappedPolicy.KEEP:
                    new_tags.append(tag)
                else:
                    new_tags.append("O")
            repaired, _ = repair_bio(new_tags)
            sentences.append(
                TaggedSentence(sentence=tagged.sentence, tags=repaired)
            )
        documents.append(BioDocument(owner=doc.owner, sentences=sentences))
    return BioCorpus(documents=documents)
