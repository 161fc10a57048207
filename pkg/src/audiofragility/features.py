"""MFCC and chroma feature sequences for DTW-based comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .audio_io import AudioBuffer
from .spectral import LogMelSpectrogram, SpectralConfig, stft_power

#: Bins below this frequency are excluded from chroma accumulation; the
#: pitch-class mapping is undefined at DC and noisy in the rumble range.
CHROMA_F_LO = 55.0

#: Reference tuning for pitch-class assignment (A4).
CHROMA_TUNING_HZ = 440.0


@dataclass(frozen=True)
class FeatureSequence:
    """Time-indexed feature matrix [dim x n_frames]."""

    frames: np.ndarray
    kind: str  # logmel | mfcc | chroma
    frame_rate: float

    @property
    def dim(self) -> int:
        return self.frames.shape[0]

    @property
    def n_frames(self) -> int:
        return self.frames.shape[1]


def mfcc(spec: LogMelSpectrogram, n_coeffs: int = 13) -> FeatureSequence:
    """Per-frame orthonormal DCT-II of the log-Mel columns, truncated.

    Coefficient 0 is retained; a constant column of value v maps to
    c0 = v * sqrt(n_mels) with all higher coefficients zero.
    """
    n_mels = spec.values.shape[0]
    if not (1 <= n_coeffs <= n_mels):
        raise ValueError(f"n_coeffs must be in [1, {n_mels}], got {n_coeffs}")
    coeffs = dct(spec.values, type=2, axis=0, norm="ortho")[:n_coeffs]
    frame_rate = spec.sample_rate / spec.config.hop
    return FeatureSequence(frames=coeffs, kind="mfcc", frame_rate=frame_rate)


def pitch_class(freq_hz) -> np.ndarray:
    """Map frequency to pitch class 0..11 (0 = C) at A440 tuning."""
    f = np.asarray(freq_hz, dtype=np.float64)
    semis = np.round(12.0 * np.log2(f / CHROMA_TUNING_HZ)).astype(np.int64)
    return (semis + 9) % 12  # A is class 9


def chroma(buf: AudioBuffer, config: SpectralConfig) -> FeatureSequence:
    """12-row chroma sequence: per-frame spectral energy by pitch class.

    Columns are max-normalized to peak 1; silent frames stay all-zero.
    """
    power = stft_power(buf, config)
    bin_freqs = np.arange(power.shape[0]) * buf.sample_rate / config.n_fft
    usable = bin_freqs >= CHROMA_F_LO
    classes = pitch_class(bin_freqs[usable])

    out = np.zeros((12, power.shape[1]))
    np.add.at(out, classes, power[usable])

    peaks = out.max(axis=0)
    nonzero = peaks > 0
    out[:, nonzero] /= peaks[nonzero]
    frame_rate = buf.sample_rate / config.hop
    return FeatureSequence(frames=out, kind="chroma", frame_rate=frame_rate)
