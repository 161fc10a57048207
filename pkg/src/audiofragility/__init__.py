"""Batch evaluation toolkit for semantic fragility of text-to-audio systems."""

from .audio_io import CANONICAL_RATE, AudioBuffer, align_pair, load_wav, resample, save_wav
from .alignment import DtwResult, WarpingPath, chroma_dtw_cost, dtw, mfcc_dtw_cost
from .embedding import EmbeddingVector, cosine_similarity, l2_distance, load_embedding
from .features import FeatureSequence, chroma, mfcc
from .manifest import (
    ComparisonPair,
    PerturbationGroup,
    PromptVariant,
    default_manifest_path,
    enumerate_pairs,
    load_manifest,
)
from .report import PairMetricsRecord, aggregate, render_spectrogram
from .spectral import (
    LogMelSpectrogram,
    SpectralConfig,
    log_mel,
    logmel_distance,
    mel_filterbank,
    stft_power,
)
from .stats import PairedTestResult, paired_t_test, seed_stability, t_sf

__version__ = "0.1.0"
