"""Minimal CoNLL reader/writer.

The exchange format with the corpus tooling: one ``<token> <tag>`` pair per
line, a blank line after each sentence, optional ``# doc: <owner>`` marker
lines before documents. The writer reproduces the document structure and
the token column of the input byte for byte; a prediction file may differ
from its input only in the tag column.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .errors import ConllFormatError

_DOC_MARKER = "# doc:"


@dataclass
class ConllSentence:
    tokens: list[str]
    tags: list[str]


@dataclass
class ConllDocument:
    owner: str | None  # None: the input had no marker line for this block
    sentences: list[ConllSentence] = field(default_factory=list)


def parse(text: str, source: str = "<string>") -> list[ConllDocument]:
    documents: list[ConllDocument] = []
    current: ConllDocument | None = None
    tokens: list[str] = []
    tags: list[str] = []

    def flush_sentence():
        nonlocal current, tokens, tags
        if not tokens:
            return
        if current is None:
            current = ConllDocument(owner=None)
            documents.append(current)
        current.sentences.append(ConllSentence(tokens=tokens, tags=tags))
        tokens, tags = [], []

    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.startswith(_DOC_MARKER):
            flush_sentence()
            current = ConllDocument(owner=line[len(_DOC_MARKER) :].strip())
            documents.append(current)
        elif not line.strip():
            flush_sentence()
        else:
            fields = line.split()
            if len(fields) != 2:
                raise ConllFormatError(
                    f"{source}:{lineno}: expected '<token> <tag>', got {line!r}"
                )
            tokens.append(fields[0])
            tags.append(fields[1])
    flush_sentence()
    return documents


def render(documents: Sequence[ConllDocument]) -> str:
    lines: list[str] = []
    for doc in documents:
        if doc.owner is not None:
            lines.append(f"{_DOC_MARKER} {doc.owner}")
        for sentence in doc.sentences:
            lines.extend(
                f"{token} {tag}" for token, tag in zip(sentence.tokens, sentence.tags)
            )
            lines.append("")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def read_conll_file(path: str | os.PathLike) -> list[ConllDocument]:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), source=str(path))


def write_conll_file(documents: Sequence[ConllDocument], path: str | os.PathLike) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(render(documents), encoding="utf-8", newline="\n")


def iter_sentences(documents: Sequence[ConllDocument]) -> Iterator[ConllSentence]:
    for doc in documents:
        yield from doc.sentences


def with_tags(
    documents: Sequence[ConllDocument], tag_lists: Sequence[list[str]]
) -> list[ConllDocument]:
    """Copy of the documents with the tag column replaced, token column and
    document structure untouched."""
    sentences = list(iter_sentences(documents))
    if len(tag_lists) != len(sentences):
        raise ValueError(f"{len(tag_lists)} tag lists for {len(sentences)} sentences")
    replaced = iter(tag_lists)
    out: list[ConllDocument] = []
    for doc in documents:
        new_doc = ConllDocument(owner=doc.owner)
        for sentence in doc.sentences:
            tags = list(next(replaced))
            if len(tags) != len(sentence.tokens):
                raise ValueError(
                    f"{len(tags)} tags for {len(sentence.tokens)} tokens"
                )
            new_doc.sentences.append(
                ConllSentence(tokens=list(sentence.tokens), tags=tags)
            )
        out.append(new_doc)
    return out
