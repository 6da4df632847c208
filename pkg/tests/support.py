"""Shared test helpers: corpus builders, random generators, and the
brute-force matching oracle the fast matcher is checked against."""

from __future__ import annotations

import random

from loretag.corpus import BioCorpus, BioDocument, TaggedSentence
from loretag.gazetteer import Gazetteer, build_gazetteer, fold_case
from loretag.tagger import EntitySpan, MatchMode
from loretag.textspan import Sentence, Token, is_word_char


def make_sentence(tokens: list[str], owner: str = "") -> Sentence:
    """Canonical sentence: tokens joined by single spaces, offsets exact."""
    built = []
    offset = 0
    for text in tokens:
        built.append(Token(text=text, start=offset, end=offset + len(text)))
        offset += len(text) + 1
    return Sentence(text=" ".join(tokens), tokens=built, doc_owner=owner)


def make_tagged(tokens: list[str], tags: list[str], owner: str = "") -> TaggedSentence:
    return TaggedSentence(sentence=make_sentence(tokens, owner), tags=tags)


def make_corpus(docs: list[tuple[str, list[tuple[list[str], list[str]]]]]) -> BioCorpus:
    """docs: [(owner, [(tokens, tags), ...]), ...]"""
    return BioCorpus(
        documents=[
            BioDocument(
                owner=owner,
                sentences=[make_tagged(toks, tags, owner) for toks, tags in sents],
            )
            for owner, sents in docs
        ]
    )


def oracle_find_spans(
    sentence_text: str,
    gazetteer: Gazetteer,
    mode: MatchMode,
    label: str = "MONS",
) -> list[EntitySpan]:
    """Brute-force ordered-acceptance scan: for every gazetteer entry in
    order, for every text position, compare the slice and apply the same
    acceptance rule. Deliberately naive and independent of the automaton."""
    haystack = (
        fold_case(sentence_text) if gazetteer.case_insensitive else sentence_text
    )
    accepted: list[EntitySpan] = []
    for _, norm in gazetteer.entries:
        for start in range(len(haystack) - len(norm) + 1):
            end = start + len(norm)
            if haystack[start:end] != norm:
                continue
            if mode is MatchMode.WORD_BOUNDARY:
                if start > 0 and is_word_char(haystack[start - 1]):
                    continue
                if end < len(haystack) and is_word_char(haystack[end]):
                    continue
            if any(s.start < end and start < s.end for s in accepted):
                continue
            accepted.append(
                EntitySpan(
                    start=start,
                    end=end,
                    label=label,
                    surface=sentence_text[start:end],
                    gazetteer_key=norm,
                )
            )
    return sorted(accepted, key=lambda span: span.start)


WORD_POOL = [
    "imp", "ape", "owl", "bear", "owlbear", "mephit", "steam", "dragon",
    "wyrm", "ling", "wyrmling", "green", "dust", "devil", "arch", "ettin",
    "grape", "shape", "impressive", "the", "a", "mist",
]


def random_match_instance(rng: random.Random):
    """A random (sentence, gazetteer, mode) triple from a small word pool so
    that matches, nestings and overlaps are frequent."""
    names = []
    for _ in range(rng.randint(1, 50)):
        name = " ".join(
            rng.choice(WORD_POOL[:17]) for _ in range(rng.randint(1, 4))
        )
        if rng.random() < 0.3:
            name = name.title()
        names.append(name)
    gazetteer = build_gazetteer(names)
    pieces = []
    for _ in range(rng.randint(0, 40)):
        word = rng.choice(WORD_POOL)
        if rng.random() < 0.15:
            word += rng.choice(WORD_POOL[:17])  # glued words: substring bait
        if rng.random() < 0.2:
            word = word.capitalize()
        pieces.append(word)
    sentence = ""
    for piece in pieces:
        if sentence:
            sentence += rng.choice([" ", " ", " ", ", ", ". ", "-", "'"])
        sentence += piece
    mode = rng.choice([MatchMode.SUBSTRING, MatchMode.WORD_BOUNDARY])
    return sentence, gazetteer, mode


TOKEN_POOL = [
    "goblin", "Ettin", "owlbear's", "well-known", "raid", "the", "a",
    "night", "mephit", "7", "#", ".", ",", "!", "harpy", "Bandit",
]
LABEL_POOL = ["MONS", "PER", "LOC"]


def random_bio_tags(rng: random.Random, n_tokens: int) -> list[str]:
    tags = []
    position = 0
    while position < n_tokens:
        if rng.random() < 0.6:
            tags.append("O")
            position += 1
        else:
            label = rng.choice(LABEL_POOL)
            length = min(rng.randint(1, 3), n_tokens - position)
            tags.append(f"B-{label}")
            tags.extend(f"I-{label}" for _ in range(length - 1))
            position += length
    return tags


def random_corpus(rng: random.Random, max_docs: int = 6) -> BioCorpus:
    """Canonically spaced random corpus; suitable for round-trip checks."""
    documents = []
    for doc_index in range(rng.randint(1, max_docs)):
        owner = f"{rng.choice(TOKEN_POOL[:4]).strip('#.,!')} {doc_index}".strip()
        sentences = []
        for _ in range(rng.randint(0, 5)):
            tokens = [rng.choice(TOKEN_POOL) for _ in range(rng.randint(1, 8))]
            tags = random_bio_tags(rng, len(tokens))
            sentences.append(make_tagged(tokens, tags, owner))
        documents.append(BioDocument(owner=owner, sentences=sentences))
    return BioCorpus(documents=documents)
