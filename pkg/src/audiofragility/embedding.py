"""Audio-embedding sidecar ingestion and semantic similarity metrics.

Embeddings are produced externally (any encoder emitting the sidecar
schema works); this module never runs model inference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEmbeddingError, SchemaError

SIDECAR_SCHEMA = "emb/1"
SIDECAR_SUFFIX = ".emb.json"

_NORM_TOL = 1e-6


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    dim: int
    normalized: bool
    source: str = ""


def load_embedding(path, strict: bool = False) -> EmbeddingVector:
    """Load one `<stem>.emb.json` sidecar.

    A vector whose L2 norm deviates from 1 by more than 1e-6 is
    renormalized (default) or rejected (strict=True).
    """
    path = str(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc

    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top-level value must be an object")
    if doc.get("schema") != SIDECAR_SCHEMA:
        raise SchemaError(f"{path}: schema field must be {SIDECAR_SCHEMA!r}, got {doc.get('schema')!r}")
    for field in ("dim", "normalized", "source", "values"):
        if field not in doc:
            raise SchemaError(f"{path}: missing field {field!r}")

    values = np.asarray(doc["values"], dtype=np.float64)
    if values.ndim != 1 or values.size < 1:
        raise SchemaError(f"{path}: values must be a non-empty flat array")
    if not np.all(np.isfinite(values)):
        raise SchemaError(f"{path}: values contain NaN or Inf")
    if doc["dim"] != values.size:
        raise SchemaError(f"{path}: dim {doc['dim']} != {values.size} values")

    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        raise DegenerateEmbeddingError(f"{path}: zero embedding vector")
    if abs(norm - 1.0) > _NORM_TOL:
        if strict:
            raise SchemaError(f"{path}: vector norm {norm:.8g} not unit (strict mode)")
        values = values / norm
    return EmbeddingVector(
        values=values, dim=values.size, normalized=True, source=str(doc["source"])
    )


def save_embedding(path, values, source: str) -> None:
    """Write a sidecar document; the vector is normalized before writing."""
    v = np.asarray(values, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise DegenerateEmbeddingError("cannot write a zero embedding vector")
    v = v / norm
    doc = {
        "schema": SIDECAR_SCHEMA,
        "dim": int(v.size),
        "normalized": True,
        "source": source,
        "values": [float(x) for x in v],
    }
    with open(str(path), "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity, clamped to [-1, 1]."""
    if a.dim != b.dim:
        raise ValueError(f"embedding dims differ: {a.dim} vs {b.dim}")
    na = float(np.linalg.norm(a.values))
    nb = float(np.linalg.norm(b.values))
    if na == 0.0 or nb == 0.0:
        raise DegenerateEmbeddingError("cosine similarity undefined for zero vector")
    cos = float(np.dot(a.values, b.values)) / (na * nb)
    return max(-1.0, min(1.0, cos))


def l2_distance(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Euclidean distance between embedding vectors."""
    if a.dim != b.dim:
        raise ValueError(f"embedding dims differ: {a.dim} vs {b.dim}")
    return float(np.linalg.norm(a.values - b.values))


def sidecar_path(audio_path) -> str:
    """`<dir>/<stem>.emb.json` for a given audio file path."""
    p = str(audio_path)
    stem = p[: -len(".wav")] if p.endswith(".wav") else p
    return stem + SIDECAR_SUFFIX
