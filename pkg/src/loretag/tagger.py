"""Dictionary tagging.

Matching follows an ordered-acceptance rule: gazetteer entries are
considered longest first, every occurrence of an entry is a candidate, and
a candidate is accepted only if it overlaps no previously accepted span.
So when a sentence contains "steam mephit" and the gazetteer holds both
"steam mephit" and "mephit", only the longer name is tagged.

The scan itself runs on an Aho-Corasick automaton over all entries at once;
candidates are then replayed in (entry order, position) order, which is
provably the same acceptance sequence as scanning entry by entry. The test
suite checks this against a brute-force ordered scan.

Two match modes exist: ``substring`` accepts an occurrence anywhere (which
reproduces the classic dictionary-lookup false positive of "imp" matching
inside "impressive"), ``word_boundary`` additionally requires non-word
characters on both sides and is the default for new corpora.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import BioCorpus, BioDocument, TaggedSentence
from .gazetteer import Gazetteer, fold_case
from .ingest import LoreCorpus
from .textspan import Sentence, Token, is_word_char, split_sentences, tokenize


class MatchMode(enum.Enum):
    SUBSTRING = "substring"
    WORD_BOUNDARY = "word_boundary"


@dataclass(frozen=True)
class EntitySpan:
    """A matched entity: [start, end) character offsets into the sentence,
    the matched surface text as it appears there, and the normalized
    gazetteer key that produced the match."""

    start: int
    end: int
    label: str
    surface: str
    gazetteer_key: str


class _AhoCorasick:
    """Multi-pattern matcher; yields (pattern_id, end_offset) for every
    occurrence of every pattern."""

    def __init__(self, patterns: Sequence[str]):
        self._goto: list[dict[str, int]] = [{}]
        self._fail: list[int] = [0]
        out: list[list[int]] = [[]]
        for pattern_id, pattern in enumerate(patterns):
            node = 0
            for char in pattern:
                nxt = self._goto[node].get(char)
                if nxt is None:
                    nxt = len(self._goto)
                    self._goto[node][char] = nxt
                    self._goto.append({})
                    self._fail.append(0)
                    out.append([])
                node = nxt
            out[node].append(pattern_id)
        queue = deque(self._goto[0].values())
        while queue:
            node = queue.popleft()
            for char, child in self._goto[node].items():
                queue.append(child)
                fail = self._fail[node]
                while fail and char not in self._goto[fail]:
                    fail = self._fail[fail]
                target = self._goto[fail].get(char, 0)
                self._fail[child] = target if target != child else 0
                out[child].extend(out[self._fail[child]])
        self._out: list[tuple[int, ...]] = [tuple(ids) for ids in out]

    def iter_matches(self, text: str):
        node = 0
        for position, char in enumerate(text):
            while node and char not in self._goto[node]:
                node = self._fail[node]
            node = self._goto[node].get(char, 0)
            for pattern_id in self._out[node]:
                yield pattern_id, position + 1


def _boundary_clean(text: str, start: int, end: int) -> bool:
    if start > 0 and is_word_char(text[start - 1]):
        return False
    if end < len(text) and is_word_char(text[end]):
        return False
    return True


class GazetteerMatcher:
    """Reusable matcher for one gazetteer; builds the automaton once."""

    def __init__(
        self,
        gazetteer: Gazetteer,
        mode: MatchMode = MatchMode.WORD_BOUNDARY,
        label: str = "MONS",
    ):
        self.gazetteer = gazetteer
        self.mode = mode
        self.label = label
        self._patterns = gazetteer.norms()
        self._automaton = _AhoCorasick(self._patterns)

    def find_spans(self, sentence_text: str) -> list[EntitySpan]:
        folded = (
            fold_case(sentence_text)
            if self.gazetteer.case_insensitive
            else sentence_text
        )
        candidates: list[tuple[int, int, int]] = []
        for pattern_id, end in self._automaton.iter_matches(folded):
            start = end - len(self._patterns[pattern_id])
            if self.mode is MatchMode.WORD_BOUNDARY and not _boundary_clean(
                folded, start, end
            ):
                continue
            candidates.append((pattern_id, start, end))
        # (entry order, position) replay of the ordered-acceptance rule
        candidates.sort()
        accepted: list[tuple[int, int, int]] = []
        for pattern_id, start, end in candidates:
            if any(s < end and start < e for s, e, _ in accepted):
                continue
            accepted.append((start, end, pattern_id))
        accepted.sort()
        return [
            EntitySpan(
                start=start,
                end=end,
                label=self.label,
                surface=sentence_text[start:end],
                gazetteer_key=self._patterns[pattern_id],
            )
            for start, end, pattern_id in accepted
        ]


def find_spans(
    sentence_text: str,
    gazetteer: Gazetteer,
    mode: MatchMode = MatchMode.WORD_BOUNDARY,
    label: str = "MONS",
) -> list[EntitySpan]:
    """Match one sentence against a gazetteer. For repeated calls with the
    same gazetteer, construct a GazetteerMatcher instead."""
    return GazetteerMatcher(gazetteer, mode=mode, label=label).find_spans(
        sentence_text
    )


def spans_to_bio(tokens: Sequence[Token], spans: Iterable[EntitySpan]) -> list[str]:
    """Project character spans onto tokens as BIO tags.

    The first token a span touches is tagged B, every further token it
    touches is tagged I. (A span normally starts exactly at its first
    token's start; a substring-mode span starting mid-token still yields a
    grammatical B.) Spans must be pairwise non-overlapping; a span touching
    no token at all signals an internal inconsistency.
    """
    ordered = sorted(spans, key=lambda span: span.start)
    for previous, current in zip(ordered, ordered[1:]):
        if current.start < previous.end:
            raise ValueError(
                f"overlapping spans [{previous.start},{previous.end}) and "
                f"[{current.start},{current.end})"
            )
    tags = ["O"] * len(tokens)
    for span in ordered:
        touched = [
            index
            for index, token in enumerate(tokens)
            if token.start < span.end and token.end > span.start
        ]
        if not touched:
            raise ValueError(
                f"span [{span.start},{span.end}) {span.surface!r} overlaps no token"
            )
        tags[touched[0]] = f"B-{span.label}"
        for index in touched[1:]:
            tags[index] = f"I-{span.label}"
    return tags


def tag_corpus(
    corpus: LoreCorpus,
    gazetteer: Gazetteer,
    mode: MatchMode = MatchMode.WORD_BOUNDARY,
    label: str = "MONS",
) -> BioCorpus:
    """Segment, tokenize and tag every document of a lore corpus.

    Sentence order within and across documents is preserved; documents with
    no sentences stay in the output as empty documents.
    """
    matcher = GazetteerMatcher(gazetteer, mode=mode, label=label)
    documents: list[BioDocument] = []
    for doc in corpus.documents:
        tagged: list[TaggedSentence] = []
        for piece in split_sentences(doc.text):
            tokens = tokenize(piece.text)
            spans = matcher.find_spans(piece.text)
            tags = spans_to_bio(tokens, spans)
            sentence = Sentence(
                text=piece.text, tokens=tokens, doc_owner=doc.owner_name
            )
            tagged.append(TaggedSentence(sentence=sentence, tags=tags))
        documents.append(BioDocument(owner=doc.owner_name, sentences=tagged))
    return BioCorpus(documents=documents)
