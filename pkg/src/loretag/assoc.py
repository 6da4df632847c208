"""Entity association maps and their directed-graph export.

An association map records, for every mentioned entity, which owners' lore
mentions it: a tagged "Ettin" inside the documents of "Green Dragon
Wyrmling" and "Goblin" yields the entry Ettin -> [Green Dragon Wyrmling,
Goblin]. Mentions are counted by presence per document, self-mentions are
excluded by default, and the map exports to a Graphviz digraph with one
edge owner -> mentioned entity per pair.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .biotags import decode_bio
from .corpus import BioCorpus
from .errors import DataFormatError
from .fileio import atomic_write_text
from .gazetteer import normalize_name

NameNormalizer = Callable[[str], str]


@dataclass
class AssociationMap:
    """entries: normalized mention key -> ordered distinct owner names;
    display: normalized key -> first-seen surface form (used in exports)."""

    entries: dict[str, list[str]] = field(default_factory=dict)
    display: dict[str, str] = field(default_factory=dict)
    include_self: bool = False

    def pairs(self) -> set[tuple[str, str]]:
        """(mention key, owner) pair set; the unit of comparison and export."""
        return {
            (key, owner)
            for key, owners in self.entries.items()
            for owner in owners
        }

    def display_name(self, key: str) -> str:
        return self.display.get(key, key)


def build_association_map(
    corpus: BioCorpus,
    normalize: NameNormalizer = normalize_name,
    include_self: bool = False,
) -> AssociationMap:
    """Collect mention -> owners associations from a tagged corpus.

    For each document, every distinct tagged mention adds the document's
    owner to that mention's entry (first-mention order, presence not
    frequency). Self-mentions are skipped unless include_self is set.
    """
    amap = AssociationMap(include_self=include_self)
    for doc in corpus.documents:
        owner_key = normalize(doc.owner)
        seen: set[str] = set()
        for tagged in doc.sentences:
            tokens = tagged.sentence.tokens
            for start, end, _ in decode_bio(tagged.tags).spans:
                surface = tagged.sentence.text[
                    tokens[start].start : tokens[end - 1].end
                ]
                key = normalize(surface)
                if not key or key in seen:
                    continue
                if not include_self and key == owner_key:
                    continue
                seen.add(key)
                amap.display.setdefault(key, surface)
                amap.entries.setdefault(key, []).append(doc.owner)
    return amap


@dataclass
class MapDiff:
    """(entity, owner) pairs present on only one side, regrouped by entity,
    plus the count of shared pairs."""

    only_in_a: dict[str, list[str]] = field(default_factory=dict)
    only_in_b: dict[str, list[str]] = field(default_factory=dict)
    common: int = 0


def _group_pairs(
    amap: AssociationMap, pairs: set[tuple[str, str]]
) -> dict[str, list[str]]:
    grouped: dict[str, list[str]] = {}
    for key, owners in amap.entries.items():
        kept = [owner for owner in owners if (key, owner) in pairs]
        if kept:
            grouped[amap.display_name(key)] = kept
    return grouped


def diff_maps(a: AssociationMap, b: AssociationMap) -> MapDiff:
    """Set difference over (entity, owner) pairs. Both maps must have been
    built with the same name normalization."""
    pairs_a = a.pairs()
    pairs_b = b.pairs()
    return MapDiff(
        only_in_a=_group_pairs(a, pairs_a - pairs_b),
        only_in_b=_group_pairs(b, pairs_b - pairs_a),
        common=len(pairs_a & pairs_b),
    )


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(amap: AssociationMap) -> str:
    """Graphviz DOT text: one node per entity appearing as owner or mention,
    one edge owner -> mentioned entity per pair (an edge reads "this owner's
    lore mentions that entity"). Nodes and edges are emitted sorted, so equal
    maps export byte-identical text."""
    edges = sorted(
        (owner, amap.display_name(key))
        for key, owners in amap.entries.items()
        for owner in owners
    )
    nodes = sorted({name for edge in edges for name in edge})
    if not nodes:
        return "digraph assoc {}\n"
    lines = ["digraph assoc {"]
    lines.extend(f"  {_quote(node)};" for node in nodes)
    lines.extend(f"  {_quote(src)} -> {_quote(dst)};" for src, dst in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_association_json(amap: AssociationMap, path: str | os.PathLike) -> None:
    """Serialize as a JSON object, entity -> array of owners."""
    payload = {
        amap.display_name(key): owners for key, owners in amap.entries.items()
    }
    atomic_write_text(path, json.dumps(payload, ensure_ascii=False, indent=2) + "\n")


def read_association_json(
    path: str | os.PathLike, normalize: NameNormalizer = normalize_name
) -> AssociationMap:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise DataFormatError(f"{path}: top level must be a JSON object")
    # include_self is unknown for a loaded map; True makes no filtering claim
    amap = AssociationMap(include_self=True)
    for name, owners in payload.items():
        if not isinstance(owners, list) or not all(
            isinstance(owner, str) for owner in owners
        ):
            raise DataFormatError(
                f"{path}: entry {name!r} must map to an array of owner strings"
            )
        key = normalize(name)
        if key in amap.entries:
            raise DataFormatError(f"{path}: duplicate entity {name!r}")
        amap.display[key] = name
        amap.entries[key] = list(owners)
    return amap
