"""Input loading.

Three kinds of files feed the pipeline:

* a lore collection: one UTF-8 JSON object mapping an owner entity name to
  its full lore text,
* plain-text name lists, one entity name per line,
* a wiki-infobox dump: a UTF-8 JSON array of objects carrying a "page" name
  plus flat string attributes, from which additional entity names are
  extracted by attribute filtering.

All loaders are pure functions over file contents: same bytes in, same
values out.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import DataFormatError
from .fileio import atomic_write_text


@dataclass(frozen=True)
class LoreDocument:
    """One owner entity and its lore text. The text may be empty; such
    documents are kept but contribute no sentences downstream."""

    owner_name: str
    text: str


@dataclass
class LoreCorpus:
    """Ordered collection of lore documents. Owner names are unique
    (case-insensitively) and file order is preserved end to end."""

    documents: list[LoreDocument] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


@dataclass(frozen=True)
class InfoboxRecord:
    page_name: str
    attributes: dict[str, str]


def _object_pairs_hook(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise DataFormatError(f"duplicate key {key!r} in JSON object")
        obj[key] = value
    return obj


def _load_json(path: Path):
    try:
        return json.loads(
            path.read_text(encoding="utf-8"), object_pairs_hook=_object_pairs_hook
        )
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON: {exc}") from exc


def load_lore_corpus(path: str | os.PathLike) -> LoreCorpus:
    """Read a name -> lore-text JSON object into a LoreCorpus.

    Keys are trimmed of surrounding whitespace. Duplicate owner names
    (case-insensitive) and non-string values are rejected; nested structures
    are not flattened.
    """
    path = Path(path)
    data = _load_json(path)
    if not isinstance(data, dict):
        raise DataFormatError(
            f"{path}: top level must be a JSON object mapping owner name to lore text"
        )
    documents: list[LoreDocument] = []
    seen: dict[str, str] = {}
    for raw_name, text in data.items():
        name = raw_name.strip()
        if not name:
            raise DataFormatError(f"{path}: blank owner name {raw_name!r}")
        if not isinstance(text, str):
            raise DataFormatError(
                f"{path}: lore for {name!r} must be a string, got {type(text).__name__}"
            )
        key = name.lower()
        if key in seen:
            raise DataFormatError(
                f"{path}: duplicate owner name {name!r} (conflicts with {seen[key]!r})"
            )
        seen[key] = name
        documents.append(LoreDocument(owner_name=name, text=text))
    return LoreCorpus(documents)


def load_infobox_records(path: str | os.PathLike) -> list[InfoboxRecord]:
    """Read an infobox dump: a JSON array of objects with a "page" string
    and flat string attributes. Attribute values must be scalar strings."""
    path = Path(path)
    data = _load_json(path)
    if not isinstance(data, list):
        raise DataFormatError(f"{path}: top level must be a JSON array of objects")
    records: list[InfoboxRecord] = []
    for index, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise DataFormatError(f"{path}: entry {index} must be a JSON object")
        page = entry.get("page")
        if not isinstance(page, str) or not page.strip():
            raise DataFormatError(f"{path}: entry {index} lacks a 'page' name string")
        attributes: dict[str, str] = {}
        for key, value in entry.items():
            if key == "page":
                continue
            if not isinstance(value, str):
                raise DataFormatError(
                    f"{path}: entry {index} ({page!r}): attribute {key!r} must be a "
                    f"string, got {type(value).__name__}"
                )
            attributes[key] = value
        records.append(InfoboxRecord(page_name=page.strip(), attributes=attributes))
    return records


def filter_infobox_entities(
    records: Iterable[InfoboxRecord],
    type_key: str,
    excluded_values: Iterable[str] = (),
) -> list[str]:
    """Page names of records whose ``type_key`` attribute holds a value not
    in ``excluded_values``. Records lacking the key are skipped silently;
    order is preserved and duplicates are retained (deduplication happens in
    the gazetteer merge)."""
    if not type_key:
        raise ValueError("type_key must be non-empty")
    excluded = set(excluded_values)
    return [
        record.page_name
        for record in records
        if type_key in record.attributes
        and record.attributes[type_key] not in excluded
    ]


def load_name_list(path: str | os.PathLike) -> list[str]:
    """Read a one-name-per-line UTF-8 file. Names are trimmed, blank lines
    dropped, order preserved, duplicates retained."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [stripped for line in lines if (stripped := line.strip())]


def write_name_list(names: Iterable[str], path: str | os.PathLike) -> None:
    """Inverse of load_name_list for trimmed, non-empty, newline-free names."""
    atomic_write_text(path, "".join(name + "\n" for name in names))
