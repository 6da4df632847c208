"""Span-level F1 used for checkpoint selection during training.

IOB2 decoding with the usual lenient repair (an I tag without a matching
B opens a new span), micro-averaged exact-match F1. Mirrors the scorer the
corpus tooling applies afterwards, so the best checkpoint is picked on the
same metric the predictions are ultimately judged by.
"""

from __future__ import annotations

from typing import Sequence


def decode_spans(tags: Sequence[str]) -> set[tuple[int, int, str]]:
    spans: set[tuple[int, int, str]] = set()
    start = None
    label = None
    for index, tag in enumerate(tags):
        prefix, _, tag_label = tag.partition("-")
        begins = prefix == "B" or (prefix == "I" and label != tag_label)
        if start is not None and (prefix == "O" or begins):
            spans.add((start, index, label))
            start, label = None, None
        if prefix in ("B", "I") and begins:
            start, label = index, tag_label
    if start is not None:
        spans.add((start, len(tags), label))
    return spans


def span_f1(
    pred_tag_lists: Sequence[Sequence[str]],
    gold_tag_lists: Sequence[Sequence[str]],
) -> float:
    tp = fp = fn = 0
    for pred_tags, gold_tags in zip(pred_tag_lists, gold_tag_lists, strict=True):
        pred = decode_spans(pred_tags)
        gold = decode_spans(gold_tags)
        tp += len(pred & gold)
        fp += len(pred - gold)
        fn += len(gold - pred)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)
