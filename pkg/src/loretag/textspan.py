"""Deterministic sentence segmentation and word tokenization.

Both operations are rule based and offset preserving. The tokenizer can
never emit a token containing whitespace, which the one-token-per-line
corpus format downstream depends on.

Sentence boundaries: a '.', '!' or '?' followed by whitespace ends a
sentence (the terminator stays with it), and a blank line always ends one.
A small configurable abbreviation list ("Mr.", "Dr.", "e.g.", "i.e.",
"vs.") suppresses the period rule. No text is lost: the gaps between
consecutive sentences are pure whitespace.

Tokens: maximal runs of letters and digits, where an apostrophe or hyphen
joins a run only when flanked by letters/digits on both sides ("owlbear's",
"well-known"). Every other non-whitespace character is a single-character
token.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

DEFAULT_ABBREVIATIONS = frozenset({"Mr.", "Dr.", "e.g.", "i.e.", "vs."})

_TERMINATORS = ".!?"
_JOINERS = "'’-"


def is_word_char(char: str) -> bool:
    """Word characters for boundary checks: letters, digits, apostrophe,
    hyphen. Matches the tokenizer's notion of what can sit inside a word."""
    return char.isalnum() or char in _JOINERS


class SentenceSpan(NamedTuple):
    """A sentence with its [start, end) character offsets in the document."""

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class Token:
    """A token with its [start, end) character offsets in the sentence."""

    text: str
    start: int
    end: int


@dataclass
class Sentence:
    text: str
    tokens: list[Token] = field(default_factory=list)
    doc_owner: str = ""


def _ends_abbreviation(text: str, dot_index: int, abbreviations: frozenset[str]) -> bool:
    start = dot_index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : dot_index + 1] in abbreviations


def split_sentences(
    text: str, abbreviations: Iterable[str] = DEFAULT_ABBREVIATIONS
) -> list[SentenceSpan]:
    """Split a document into sentences with document offsets."""
    abbreviations = frozenset(abbreviations)
    spans: list[SentenceSpan] = []
    length = len(text)
    pos = 0
    while pos < length:
        while pos < length and text[pos].isspace():
            pos += 1
        if pos == length:
            break
        start = pos
        end = length
        i = pos
        while i < length:
            char = text[i]
            if char in _TERMINATORS and i + 1 < length and text[i + 1].isspace():
                if char != "." or not _ends_abbreviation(text, i, abbreviations):
                    end = i + 1
                    break
            elif char.isspace():
                gap_end = i
                newlines = 0
                while gap_end < length and text[gap_end].isspace():
                    newlines += text[gap_end] == "\n"
                    gap_end += 1
                if newlines >= 2:
                    end = i
                    break
                i = gap_end
                continue
            i += 1
        while end > start and text[end - 1].isspace():
            end -= 1
        spans.append(SentenceSpan(text=text[start:end], start=start, end=end))
        pos = end
    return spans


def tokenize(sentence: str) -> list[Token]:
    """Tokenize one sentence string into offset-exact, whitespace-free tokens."""
    tokens: list[Token] = []
    i = 0
    length = len(sentence)
    while i < length:
        char = sentence[i]
        if char.isspace():
            i += 1
        elif char.isalnum():
            j = i + 1
            while j < length:
                nxt = sentence[j]
                if nxt.isalnum():
                    j += 1
                elif nxt in _JOINERS and j + 1 < length and sentence[j + 1].isalnum():
                    j += 2
                else:
                    break
            tokens.append(Token(text=sentence[i:j], start=i, end=j))
            i = j
        else:
            tokens.append(Token(text=char, start=i, end=i + 1))
            i += 1
    return tokens
