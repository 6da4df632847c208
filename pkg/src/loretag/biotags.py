"""BIO tag-string primitives shared by the corpus, tagging and scoring code.

Tag grammar: "O", "B-<LABEL>", "I-<LABEL>". An I tag is well-formed only
when the previous tag is B or I with the same label; anything else is
repaired to B (never rejected, since prediction files from external models
are not guaranteed well-formed)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataFormatError


def parse_tag(tag: str) -> tuple[str, str | None]:
    """Split a tag into (prefix, label). Raises DataFormatError for strings
    outside the tag grammar."""
    if tag == "O":
        return "O", None
    if len(tag) > 2 and tag[1] == "-" and tag[0] in "BI":
        return tag[0], tag[2:]
    raise DataFormatError(f"invalid BIO tag {tag!r}")


def repair_bio(tags: list[str]) -> tuple[list[str], int]:
    """Rewrite orphan I tags (after O, at sentence start, or after a tag with
    a different label) to B. Returns the repaired sequence and repair count."""
    repaired: list[str] = []
    repairs = 0
    prev_prefix, prev_label = "O", None
    for tag in tags:
        prefix, label = parse_tag(tag)
        if prefix == "I" and not (prev_prefix in ("B", "I") and prev_label == label):
            prefix = "B"
            tag = f"B-{label}"
            repairs += 1
        repaired.append(tag)
        prev_prefix, prev_label = prefix, label
    return repaired, repairs


@dataclass(frozen=True)
class SpanDecoding:
    spans: tuple[tuple[int, int, str], ...]
    repairs: int


def decode_bio(tags: list[str]) -> SpanDecoding:
    """Decode one sentence's tags into (token_start, token_end, label) spans,
    end exclusive. Malformed I tags are repaired to B first."""
    repaired, repairs = repair_bio(tags)
    spans: list[tuple[int, int, str]] = []
    start = None
    label = None
    for index, tag in enumerate(repaired):
        prefix, tag_label = parse_tag(tag)
        if start is not None and (prefix in ("B", "O")):
            spans.append((start, index, label))
            start, label = None, None
        if prefix == "B":
            start, label = index, tag_label
    if start is not None:
        spans.append((start, len(repaired), label))
    return SpanDecoding(spans=tuple(spans), repairs=repairs)


def extract_spans_from_bio(tags: list[str]) -> set[tuple[int, int, str]]:
    """Span set of one tag sequence, with the standard I-to-B repair applied."""
    return set(decode_bio(tags).spans)
