"""Tagged corpus container, lore-boundary-preserving splits, CoNLL-style
serialization and corpus statistics.

File format (UTF-8, "\\n" line endings): one token per line as
``<token> <tag>`` separated by a single space, a blank line after every
sentence, and a ``# doc: <owner>`` comment line before each document so
owner provenance survives a round trip. Tabs are accepted as separators on
read. A token line whose first field happens to be "#" is unambiguous
because document markers carry the full ``# doc:`` prefix and a third
field would be an invalid tag anyway.
"""

from __future__ import annotations

import logging
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .biotags import decode_bio, parse_tag, repair_bio
from .errors import DataFormatError
from .fileio import atomic_write_text
from .textspan import Sentence, Token

logger = logging.getLogger(__name__)

_DOC_MARKER = "# doc:"


@dataclass
class TaggedSentence:
    """A sentence plus one BIO tag per token."""

    sentence: Sentence
    tags: list[str]

    def __post_init__(self):
        if len(self.tags) != len(self.sentence.tokens):
            raise ValueError(
                f"{len(self.tags)} tags for {len(self.sentence.tokens)} tokens"
            )


@dataclass
class BioDocument:
    owner: str
    sentences: list[TaggedSentence] = field(default_factory=list)


@dataclass
class BioCorpus:
    documents: list[BioDocument] = field(default_factory=list)

    def __post_init__(self):
        owners = [doc.owner for doc in self.documents]
        if len(owners) != len(set(owners)):
            duplicate = next(o for o in owners if owners.count(o) > 1)
            raise ValueError(f"duplicate document owner {duplicate!r}")

    def iter_sentences(self) -> Iterator[TaggedSentence]:
        for doc in self.documents:
            yield from doc.sentences

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class SplitSpec:
    """Train/dev/test ratios (must sum to 1) and an optional shuffle seed.
    Without a seed, documents are assigned in corpus order."""

    ratios: tuple[float, float, float] = (2 / 3, 1 / 6, 1 / 6)
    shuffle_seed: int | None = None

    def __post_init__(self):
        if len(self.ratios) != 3 or any(r < 0 for r in self.ratios):
            raise ValueError("ratios must be three non-negative fractions")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise ValueError(f"ratios must sum to 1, got {sum(self.ratios)}")


def _choose_split(counts: list[int], quotas: list[float], size: int) -> int:
    # earliest split the document fits in without overshooting its quota;
    # if it fits nowhere, earliest split still below quota (bounded overshoot)
    for index in range(3):
        if counts[index] + size <= quotas[index]:
            return index
    for index in range(3):
        if counts[index] < quotas[index]:
            return index
    return max(range(3), key=lambda index: quotas[index] - counts[index])


def split_corpus(
    corpus: BioCorpus, spec: SplitSpec = SplitSpec()
) -> tuple[BioCorpus, BioCorpus, BioCorpus]:
    """Partition a corpus into train/dev/test without splitting documents.

    Whole documents are assigned greedily, in (optionally seed-shuffled)
    order: each goes to the earliest split it fits in without exceeding that
    split's quota (ratio times total sentences), or failing that to the
    earliest split still below quota. Every sentence lands in exactly one
    split, and each split's size misses its quota by less than the largest
    single document.
    """
    if not corpus.documents:
        raise ValueError("cannot split an empty corpus")
    documents = list(corpus.documents)
    if spec.shuffle_seed is not None:
        random.Random(spec.shuffle_seed).shuffle(documents)
    total = sum(len(doc.sentences) for doc in documents)
    quotas = [ratio * total for ratio in spec.ratios]
    counts = [0, 0, 0]
    buckets: tuple[list[BioDocument], ...] = ([], [], [])
    for doc in documents:
        target = _choose_split(counts, quotas, len(doc.sentences))
        buckets[target].append(doc)
        counts[target] += len(doc.sentences)
    for name, bucket in zip(("train", "dev", "test"), buckets):
        if not bucket:
            logger.warning("%s split is empty", name)
    return tuple(BioCorpus(documents=list(bucket)) for bucket in buckets)


def render_conll(corpus: BioCorpus) -> str:
    """The corpus as CoNLL-format text (see the module docstring)."""
    lines: list[str] = []
    for doc in corpus.documents:
        lines.append(f"{_DOC_MARKER} {doc.owner}")
        for tagged in doc.sentences:
            for token, tag in zip(tagged.sentence.tokens, tagged.tags):
                lines.append(f"{token.text} {tag}")
            lines.append("")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def write_conll(corpus: BioCorpus, path: str | os.PathLike) -> None:
    atomic_write_text(path, render_conll(corpus))


@dataclass(frozen=True)
class ConllReadReport:
    """Tag-grammar repairs applied while reading (orphan I rewritten to B)."""

    repairs: int = 0


def parse_conll(text: str, source: str = "<string>") -> tuple[BioCorpus, ConllReadReport]:
    """Parse CoNLL text. Sentence text is reconstructed by joining tokens
    with single spaces, so offsets are canonical rather than original.
    Files without document markers become one synthetic unnamed document."""
    documents: list[BioDocument] = []
    owner: str | None = None
    sentences: list[TaggedSentence] = []
    tokens: list[str] = []
    tags: list[str] = []
    repairs = 0

    def flush_sentence():
        nonlocal tokens, tags, repairs
        if not tokens:
            return
        repaired, n = repair_bio(tags)
        repairs += n
        offset = 0
        built: list[Token] = []
        for tok in tokens:
            built.append(Token(text=tok, start=offset, end=offset + len(tok)))
            offset += len(tok) + 1
        sentence = Sentence(
            text=" ".join(tokens), tokens=built, doc_owner=owner or ""
        )
        sentences.append(TaggedSentence(sentence=sentence, tags=repaired))
        tokens, tags = [], []

    def flush_document():
        nonlocal sentences
        if owner is None and not sentences:
            return
        documents.append(BioDocument(owner=owner or "", sentences=sentences))
        sentences = []

    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.startswith(_DOC_MARKER):
            flush_sentence()
            flush_document()
            owner = line[len(_DOC_MARKER) :].strip()
        elif not line.strip():
            flush_sentence()
        else:
            fields = line.split()
            if len(fields) != 2:
                raise DataFormatError(
                    f"{source}:{lineno}: expected '<token> <tag>', got {line!r}"
                )
            token_text, tag = fields
            try:
                parse_tag(tag)
            except DataFormatError as exc:
                raise DataFormatError(f"{source}:{lineno}: {exc}") from exc
            tokens.append(token_text)
            tags.append(tag)
    flush_sentence()
    flush_document()
    corpus = BioCorpus(documents=documents)
    report = ConllReadReport(repairs=repairs)
    if repairs:
        logger.warning("%s: repaired %d malformed I tag(s)", source, repairs)
    return corpus, report


def read_conll_with_report(
    path: str | os.PathLike,
) -> tuple[BioCorpus, ConllReadReport]:
    path = Path(path)
    return parse_conll(path.read_text(encoding="utf-8"), source=str(path))


def read_conll(path: str | os.PathLike) -> BioCorpus:
    """Read a CoNLL file; the exact inverse of write_conll on its output."""
    corpus, _ = read_conll_with_report(path)
    return corpus


@dataclass(frozen=True)
class CorpusStats:
    n_documents: int
    n_sentences: int
    n_tokens: int
    n_spans: int
    spans_per_label: dict[str, int]

    def to_flat_dict(self) -> dict[str, int]:
        flat = {
            "n_documents": self.n_documents,
            "n_sentences": self.n_sentences,
            "n_tokens": self.n_tokens,
            "n_spans": self.n_spans,
        }
        for label in sorted(self.spans_per_label):
            flat[f"spans_per_label.{label}"] = self.spans_per_label[label]
        return flat


def corpus_stats(corpus: BioCorpus) -> CorpusStats:
    n_sentences = 0
    n_tokens = 0
    per_label: dict[str, int] = {}
    for tagged in corpus.iter_sentences():
        n_sentences += 1
        n_tokens += len(tagged.sentence.tokens)
        for _, _, label in decode_bio(tagged.tags).spans:
            per_label[label] = per_label.get(label, 0) + 1
    return CorpusStats(
        n_documents=len(corpus.documents),
        n_sentences=n_sentences,
        n_tokens=n_tokens,
        n_spans=sum(per_label.values()),
        spans_per_label=per_label,
    )
