"""Embedding sidecar production.

Writes one `<stem>.emb.json` per WAV in the "emb/1" interchange schema the
evaluation toolkit reads. The bundled encoder is a deterministic mock: it
hashes the WAV payload into an RNG seed and draws a unit-normalized vector,
so identical audio always maps to the identical embedding and the pipeline
runs without model weights.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .wavout import read_wav_float32

EMB_SCHEMA = "emb/1"
DEFAULT_DIM = 512


@dataclass
class EmbeddingReport:
    written: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)


def mock_encode(wav_bytes: bytes, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Deterministic stand-in encoder: sha256(payload) seeds the draw."""
    digest = hashlib.sha256(wav_bytes).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def sidecar_path(wav_path: str) -> str:
    stem, _ = os.path.splitext(str(wav_path))
    return stem + ".emb.json"


def write_sidecar(path: str, values: np.ndarray, source: str) -> None:
    doc = {
        "schema": EMB_SCHEMA,
        "dim": int(values.shape[0]),
        "normalized": True,
        "source": source,
        "values": [float(x) for x in values],
    }
    tmp = path + ".part"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    os.replace(tmp, path)


def embed_corpus(out_root, *, dim: int = DEFAULT_DIM, force: bool = False,
                 source: str = "mock-encoder/1") -> EmbeddingReport:
    """Write sidecars for every WAV under out_root.

    Existing sidecars are kept unless force is set. A file that cannot be
    read is recorded as a failure and the rest of the corpus still gets
    embedded.
    """
    report = EmbeddingReport()
    for dirpath, _dirnames, filenames in os.walk(str(out_root)):
        for name in sorted(filenames):
            if not name.endswith(".wav"):
                continue
            wav_path = os.path.join(dirpath, name)
            out_path = sidecar_path(wav_path)
            if not force and os.path.exists(out_path):
                report.skipped += 1
                continue
            try:
                read_wav_float32(wav_path)  # reject corrupt containers up front
                with open(wav_path, "rb") as fh:
                    payload = fh.read()
                write_sidecar(out_path, mock_encode(payload, dim), source)
                report.written += 1
            except (OSError, ValueError) as exc:
                report.failures.append({"file": wav_path, "error": str(exc)})
    return report
