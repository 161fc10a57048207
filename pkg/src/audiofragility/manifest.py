"""Perturbation dataset model: prompt groups and comparison enumeration.

Categories: MLS (near-synonym pairs), IS (4-level graded intensity chains,
compared between adjacent levels), SR (sentence-level rephrasing pairs).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from importlib import resources

from .errors import SchemaError, ValidationError

MANIFEST_SCHEMA = "manifest/1"

CATEGORIES = ("MLS", "IS", "SR")


@dataclass(frozen=True)
class PromptVariant:
    id: str
    text: str
    level: int | None = None  # intensity rank, IS only


@dataclass(frozen=True)
class PerturbationGroup:
    id: str
    category: str
    template: str
    variants: tuple

    def variant_by_id(self, vid: str) -> PromptVariant:
        for v in self.variants:
            if v.id == vid:
                return v
        raise KeyError(vid)


@dataclass(frozen=True)
class ComparisonPair:
    group_id: str
    variant_a: str
    variant_b: str
    category: str

    @property
    def key(self) -> tuple:
        return (self.category, self.group_id, self.variant_a, self.variant_b)


def _validate_group(g: PerturbationGroup) -> None:
    if g.category not in CATEGORIES:
        raise ValidationError(f"group {g.id}: unknown category {g.category!r}")
    vids = [v.id for v in g.variants]
    if len(set(vids)) != len(vids):
        raise ValidationError(f"group {g.id}: duplicate variant ids")
    for v in g.variants:
        if not v.text:
            raise ValidationError(f"group {g.id}: variant {v.id} has empty text")
        if g.category == "IS" and v.level is None:
            raise ValidationError(f"group {g.id}: IS variant {v.id} missing level")
        if g.category != "IS" and v.level is not None:
            raise ValidationError(
                f"group {g.id}: level set on non-IS variant {v.id}"
            )
    if g.category in ("MLS", "SR"):
        if len(g.variants) != 2:
            raise ValidationError(
                f"group {g.id}: {g.category} groups need exactly 2 variants, "
                f"got {len(g.variants)}"
            )
    else:
        if len(g.variants) != 4:
            raise ValidationError(
                f"group {g.id}: IS groups need exactly 4 variants, got {len(g.variants)}"
            )
        levels = [v.level for v in g.variants]
        if levels != [1, 2, 3, 4]:
            raise ValidationError(
                f"group {g.id}: IS levels must be strictly increasing 1..4, got {levels}"
            )


def load_manifest(path) -> list[PerturbationGroup]:
    """Load and validate a manifest JSON document."""
    path = str(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc

    if not isinstance(doc, dict) or doc.get("schema") != MANIFEST_SCHEMA:
        raise SchemaError(
            f"{path}: schema field must be {MANIFEST_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    if "groups" not in doc or not isinstance(doc["groups"], list):
        raise SchemaError(f"{path}: missing groups list")

    groups = []
    seen_ids = set()
    for raw in doc["groups"]:
        try:
            variants = tuple(
                PromptVariant(id=str(v["id"]), text=str(v["text"]), level=v.get("level"))
                for v in raw["variants"]
            )
            g = PerturbationGroup(
                id=str(raw["id"]),
                category=str(raw["category"]),
                template=str(raw.get("template", "")),
                variants=variants,
            )
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"{path}: malformed group entry: {exc}") from exc
        if g.id in seen_ids:
            raise ValidationError(f"duplicate group id {g.id}")
        seen_ids.add(g.id)
        _validate_group(g)
        groups.append(g)

    if not groups:
        warnings.warn(f"{path}: manifest contains no groups", stacklevel=2)
    return groups


def enumerate_pairs(groups) -> list[ComparisonPair]:
    """All comparisons the evaluation runs, in deterministic order.

    MLS/SR contribute one pair per group; IS contributes the three
    adjacent-level pairs (1-2, 2-3, 3-4).
    """
    pairs = []
    for g in groups:
        if g.category == "IS":
            ordered = sorted(g.variants, key=lambda v: v.level)
            for lo, hi in zip(ordered, ordered[1:]):
                pairs.append(
                    ComparisonPair(
                        group_id=g.id, variant_a=lo.id, variant_b=hi.id, category="IS"
                    )
                )
        else:
            a, b = g.variants
            pairs.append(
                ComparisonPair(
                    group_id=g.id, variant_a=a.id, variant_b=b.id, category=g.category
                )
            )
    return pairs


def default_manifest_path() -> str:
    """Path of the manifest bundled with the package."""
    return str(resources.files("audiofragility").joinpath("data/default_manifest.json"))


def audio_filename(group_id: str, variant_id: str) -> str:
    """Corpus file name convention: `<group_id>__<variant_id>.wav`."""
    return f"{group_id}__{variant_id}.wav"
