import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from audiofragility.audio_io import AudioBuffer
from audiofragility.manifest import default_manifest_path

import corpusgen


def sine(freq, duration=1.0, rate=32000, amp=1.0):
    t = np.arange(int(round(duration * rate))) / rate
    return AudioBuffer(samples=amp * np.sin(2 * np.pi * freq * t), sample_rate=rate,
                       source_path=f"sine:{freq}")


@pytest.fixture(scope="session")
def golden_corpus(tmp_path_factory):
    """Single-model, seed-0 synthetic corpus over the default manifest."""
    root = tmp_path_factory.mktemp("golden_corpus")
    n = corpusgen.generate_corpus(
        default_manifest_path(), root, models=["mockgen-small"], seeds=[0]
    )
    return {"root": root, "models": ["mockgen-small"], "seeds": [0], "n_files": n}


@pytest.fixture(scope="session")
def seeds_corpus(tmp_path_factory):
    """Six-seed synthetic corpus used by the seed-stability checks."""
    root = tmp_path_factory.mktemp("seeds_corpus")
    seeds = list(range(6))
    corpusgen.generate_corpus(
        default_manifest_path(), root, models=["mockgen-small"], seeds=seeds,
        duration=0.5,
    )
    return {"root": root, "models": ["mockgen-small"], "seeds": seeds}
