"""Reader for the evaluation toolkit's manifest JSON interchange format."""

from __future__ import annotations

import json
from dataclasses import dataclass

MANIFEST_SCHEMA = "manifest/1"


@dataclass(frozen=True)
class Variant:
    id: str
    text: str
    level: int | None


@dataclass(frozen=True)
class Group:
    id: str
    category: str
    variants: tuple


def load_manifest(path) -> list[Group]:
    with open(str(path), "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("schema") != MANIFEST_SCHEMA:
        raise ValueError(f"{path}: unsupported manifest schema {doc.get('schema')!r}")
    groups = []
    for g in doc["groups"]:
        groups.append(Group(
            id=g["id"], category=g["category"],
            variants=tuple(Variant(v["id"], v["text"], v.get("level"))
                           for v in g["variants"]),
        ))
    return groups


def audio_filename(group_id: str, variant_id: str) -> str:
    return f"{group_id}__{variant_id}.wav"
