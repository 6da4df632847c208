"""Matching dictionary construction.

A gazetteer is the ordered list of entity names the tagger matches against:
merged from one or more name lists, deduplicated on a normalized key,
stripped of an "ignore list" of names whose substring frequency across
documents marks them as false-positive generators (short names such as
"imp" occurring inside words like "impressive"), and sorted longest first
so that longer names win when a sentence contains nested mentions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .ingest import LoreCorpus, write_name_list
from .fileio import atomic_write_text


def fold_case(text: str) -> str:
    """Per-character lowercasing. Characters whose lowercase expansion has a
    different length are left unchanged so character offsets stay valid."""
    return "".join(
        char if len(lowered := char.lower()) != 1 else lowered for char in text
    )


def normalize_name(raw: str, *, case_insensitive: bool = True) -> str:
    """Canonical key for an entity name: trimmed, runs of internal whitespace
    collapsed to single spaces, case-folded unless case_insensitive is off.
    An empty result signals a name callers should drop."""
    collapsed = " ".join(raw.split())
    return fold_case(collapsed) if case_insensitive else collapsed


@dataclass(frozen=True)
class GazetteerConfig:
    """ignore_threshold: a name present in strictly more than this many
    documents goes on the ignore list."""

    ignore_threshold: int = 30
    case_insensitive: bool = True

    def __post_init__(self):
        if self.ignore_threshold < 0:
            raise ValueError("ignore_threshold must be >= 0")


class GazetteerEntry(NamedTuple):
    surface: str
    norm: str


@dataclass
class Gazetteer:
    """Entries sorted by descending key length, ties broken lexicographically;
    keys are unique and never on the ignore list."""

    entries: list[GazetteerEntry] = field(default_factory=list)
    ignore: frozenset[str] = frozenset()
    case_insensitive: bool = True

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def norms(self) -> list[str]:
        return [entry.norm for entry in self.entries]


def merge_name_lists(
    a: Iterable[str], b: Iterable[str], *, case_insensitive: bool = True
) -> list[str]:
    """Concatenate two name lists and drop later duplicates, where duplicate
    means equal normalized key. The first-seen surface form is kept."""
    merged: list[str] = []
    seen: set[str] = set()
    for name in (*a, *b):
        key = normalize_name(name, case_insensitive=case_insensitive)
        if key in seen:
            continue
        seen.add(key)
        merged.append(name)
    return merged


def compute_ignore_list(
    corpus: LoreCorpus,
    names: Iterable[str],
    config: GazetteerConfig = GazetteerConfig(),
) -> set[str]:
    """Normalized keys of names contained, as a raw substring, in strictly
    more than ``config.ignore_threshold`` distinct documents.

    Counting deliberately uses plain substring containment rather than
    word-boundary matching: the point of the ignore list is to catch names
    that keep appearing inside longer words.
    """
    names = list(names)
    if not names:
        raise ValueError("names must be non-empty")
    keys: list[str] = []
    seen: set[str] = set()
    for name in names:
        key = normalize_name(name, case_insensitive=config.case_insensitive)
        if key and key not in seen:
            seen.add(key)
            keys.append(key)
    texts = [
        fold_case(doc.text) if config.case_insensitive else doc.text
        for doc in corpus.documents
    ]
    ignored: set[str] = set()
    for key in keys:
        containing = sum(1 for text in texts if key in text)
        if containing > config.ignore_threshold:
            ignored.add(key)
    return ignored


def build_gazetteer(
    names: Iterable[str],
    ignore: Iterable[str] = (),
    config: GazetteerConfig = GazetteerConfig(),
) -> Gazetteer:
    """Normalize, deduplicate, drop ignored and empty keys, and order names
    longest first (ties lexicographic ascending) for longest-match tagging."""
    ignore_keys = frozenset(ignore)
    entries: list[GazetteerEntry] = []
    seen: set[str] = set()
    for name in names:
        key = normalize_name(name, case_insensitive=config.case_insensitive)
        if not key or key in seen or key in ignore_keys:
            continue
        seen.add(key)
        entries.append(GazetteerEntry(surface=name.strip(), norm=key))
    entries.sort(key=lambda entry: (-len(entry.norm), entry.norm))
    return Gazetteer(
        entries=entries, ignore=ignore_keys, case_insensitive=config.case_insensitive
    )


def write_gazetteer(gazetteer: Gazetteer, path: str | os.PathLike) -> None:
    """Serialize as a name-per-line file, in matching (sorted) order."""
    write_name_list((entry.surface for entry in gazetteer.entries), path)


def write_ignore_list(ignore: Iterable[str], path: str | os.PathLike) -> None:
    atomic_write_text(path, "".join(key + "\n" for key in sorted(ignore)))
