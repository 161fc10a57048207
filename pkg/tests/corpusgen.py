"""Deterministic synthetic corpus bundled with the test suite.

Tone audio is keyed by (model, seed, group, variant) hashes; embedding
sidecars are planar unit vectors with designed pairwise cosines so that
per-category seed-stability ranges are hand-computable:

    cos(a_pair, b_pair) = BASE + STEP[category] * seed
                          + 0.002 * (group_index mod 5)
                          + 0.003 * model_index

Over seeds 0..5 the per-(model, category) mean cosine therefore spans
exactly 5 * STEP[category], i.e. 5.0 / 7.0 / 9.0 percentage points for
MLS / IS / SR.
"""

from __future__ import annotations

import hashlib
import math
import os

import numpy as np

from audiofragility.audio_io import AudioBuffer, save_wav
from audiofragility.embedding import save_embedding, sidecar_path
from audiofragility.manifest import audio_filename, enumerate_pairs, load_manifest

SAMPLE_RATE = 32000
EMB_DIM = 8

BASE_COS = 0.60
STEP = {"MLS": 0.010, "IS": 0.014, "SR": 0.018}
GROUP_WOBBLE = 0.002
MODEL_OFFSET = 0.003

# Equal-tempered pitches C4..B5 used by the mock tone generator.
_PITCHES = [261.6256 * 2 ** (k / 12) for k in range(24)]


def _digest(*parts) -> bytes:
    return hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()


def mock_tone(model: str, seed: int, group_id: str, variant_id: str,
              text: str, duration: float = 1.0) -> AudioBuffer:
    """Deterministic two-partial tone with a percussive envelope."""
    d = _digest(model, seed, group_id, variant_id, text)
    f0 = _PITCHES[d[0] % len(_PITCHES)]
    f1 = _PITCHES[d[1] % len(_PITCHES)]
    decay = 1.0 + (d[2] % 40) / 10.0
    n = int(round(duration * SAMPLE_RATE))
    t = np.arange(n) / SAMPLE_RATE
    env = np.exp(-decay * t)
    x = 0.6 * np.sin(2 * np.pi * f0 * t) + 0.25 * np.sin(2 * np.pi * f1 * t)
    return AudioBuffer(samples=(x * env).astype(np.float64), sample_rate=SAMPLE_RATE,
                       source_path=f"mock:{model}/{seed}/{group_id}__{variant_id}")


def pair_cosine(category: str, group_index: int, seed: int, model_index: int) -> float:
    return (BASE_COS + STEP[category] * seed
            + GROUP_WOBBLE * (group_index % 5)
            + MODEL_OFFSET * model_index)


def _planar_vector(angle: float) -> np.ndarray:
    v = np.zeros(EMB_DIM)
    v[0] = math.cos(angle)
    v[1] = math.sin(angle)
    return v


def expected_seed_range_points(category: str) -> float:
    """Hand-computed max-min spread over seeds 0..5, in percentage points."""
    return STEP[category] * 5 * 100.0


def generate_corpus(manifest_path, out_root, models, seeds, duration: float = 1.0) -> int:
    """Write WAVs + embedding sidecars; returns the number of audio files."""
    groups = load_manifest(manifest_path)
    n_files = 0
    for model_index, model in enumerate(models):
        for seed in seeds:
            base = os.path.join(str(out_root), model, str(seed))
            os.makedirs(base, exist_ok=True)
            cat_counters = {"MLS": 0, "IS": 0, "SR": 0}
            for g in groups:
                group_index = cat_counters[g.category]
                cat_counters[g.category] += 1
                target = pair_cosine(g.category, group_index, seed, model_index)
                delta = math.acos(target)
                for k, v in enumerate(g.variants):
                    wav = os.path.join(base, audio_filename(g.id, v.id))
                    save_wav(wav, mock_tone(model, seed, g.id, v.id, v.text, duration),
                             fmt="float32")
                    save_embedding(sidecar_path(wav), _planar_vector(k * delta),
                                   source="mock-encoder/1")
                    n_files += 1
    return n_files


def expected_file_count(manifest_path) -> tuple[int, int]:
    """(audio files per model/seed, comparison pairs) for a manifest."""
    groups = load_manifest(manifest_path)
    return sum(len(g.variants) for g in groups), len(enumerate_pairs(groups))
