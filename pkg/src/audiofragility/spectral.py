"""STFT, Mel filterbank and log-Mel spectrograms plus their distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_io import AudioBuffer
from .errors import ConfigurationError, EmptyAudioError

_LOG_EPS = 1e-10


@dataclass(frozen=True)
class SpectralConfig:
    n_fft: int = 2048
    hop: int = 512
    n_mels: int = 128
    f_min: float = 0.0
    f_max: float = 16000.0
    floor_db: float = -80.0

    def __post_init__(self):
        if self.n_fft <= 0 or (self.n_fft & (self.n_fft - 1)) != 0:
            raise ConfigurationError(f"n_fft must be a power of two, got {self.n_fft}")
        if not (0 < self.hop <= self.n_fft):
            raise ConfigurationError(f"hop must be in (0, n_fft], got {self.hop}")
        if self.n_mels <= 0:
            raise ConfigurationError(f"n_mels must be positive, got {self.n_mels}")
        if not (0 <= self.f_min < self.f_max):
            raise ConfigurationError(
                f"need 0 <= f_min < f_max, got ({self.f_min}, {self.f_max})"
            )
        if self.floor_db >= 0:
            raise ConfigurationError(f"floor_db must be negative, got {self.floor_db}")

    def validate_for_rate(self, sample_rate: int) -> None:
        if self.f_max > sample_rate / 2:
            raise ConfigurationError(
                f"f_max {self.f_max} exceeds Nyquist {sample_rate / 2}"
            )


@dataclass(frozen=True)
class LogMelSpectrogram:
    """Log-power Mel spectrogram, [n_mels x n_frames], dB re per-spectrogram max."""

    values: np.ndarray
    config: SpectralConfig
    sample_rate: int

    @property
    def n_frames(self) -> int:
        return self.values.shape[1]


def stft_power(buf: AudioBuffer, config: SpectralConfig) -> np.ndarray:
    """Power spectrogram [n_fft/2+1 x n_frames].

    Hann window, centered frames with reflect padding;
    n_frames = floor(len/hop) + 1.
    """
    x = buf.samples
    if len(x) < 1:
        raise EmptyAudioError("cannot compute STFT of empty buffer")
    n_fft, hop = config.n_fft, config.hop

    pad = n_fft // 2
    if len(x) > 1:
        xp = np.pad(x, pad, mode="reflect")
    else:
        xp = np.pad(x, pad, mode="edge")
    n_frames = len(x) // hop + 1

    window = np.hanning(n_fft + 1)[:n_fft]
    frames = np.lib.stride_tricks.sliding_window_view(xp, n_fft)[::hop][:n_frames]
    spec = np.fft.rfft(frames * window, axis=1)
    return (spec.real**2 + spec.imag**2).T


def _hz_to_mel(f):
    """Slaney-style Mel: linear below 1 kHz, logarithmic above."""
    f = np.asarray(f, dtype=np.float64)
    mel = 3.0 * f / 200.0
    log_region = f >= 1000.0
    mel = np.where(log_region, 15.0 + 27.0 * np.log(np.maximum(f, 1e-30) / 1000.0) / np.log(6.4), mel)
    return mel


def _mel_to_hz(m):
    m = np.asarray(m, dtype=np.float64)
    f = 200.0 * m / 3.0
    log_region = m >= 15.0
    f = np.where(log_region, 1000.0 * np.exp(np.log(6.4) * (m - 15.0) / 27.0), f)
    return f


def mel_center_frequencies(config: SpectralConfig) -> np.ndarray:
    """n_mels + 2 band edge/center frequencies, equally spaced on the Mel scale."""
    mels = np.linspace(_hz_to_mel(config.f_min), _hz_to_mel(config.f_max), config.n_mels + 2)
    return _mel_to_hz(mels)


def mel_filterbank(sample_rate: int, config: SpectralConfig) -> np.ndarray:
    """Triangular, area-normalized filterbank [n_mels x n_fft/2+1]."""
    config.validate_for_rate(sample_rate)
    n_bins = config.n_fft // 2 + 1
    bin_freqs = np.arange(n_bins) * sample_rate / config.n_fft
    f = mel_center_frequencies(config)

    fb = np.zeros((config.n_mels, n_bins))
    for i in range(config.n_mels):
        lo, center, hi = f[i], f[i + 1], f[i + 2]
        rising = (bin_freqs - lo) / (center - lo)
        falling = (hi - bin_freqs) / (hi - center)
        tri = np.maximum(0.0, np.minimum(rising, falling))
        fb[i] = tri * (2.0 / (hi - lo))  # area normalization

    empty = np.where(~fb.any(axis=1))[0]
    if empty.size:
        raise ConfigurationError(
            f"{empty.size} Mel filters have no FFT bin support "
            f"(first empty row {empty[0]}); reduce n_mels or increase n_fft"
        )
    return fb


def log_mel(buf: AudioBuffer, config: SpectralConfig) -> LogMelSpectrogram:
    """Log-Mel spectrogram in dB, referenced to the per-spectrogram maximum.

    The max entry maps to exactly 0 dB and everything is clamped at
    floor_db. An all-zero input yields a uniform floor_db spectrogram.
    """
    power = stft_power(buf, config)
    fb = mel_filterbank(buf.sample_rate, config)
    mel_power = fb @ power

    peak = mel_power.max()
    if peak <= 0.0:
        values = np.full(mel_power.shape, config.floor_db)
    else:
        db = 10.0 * np.log10(np.maximum(mel_power, _LOG_EPS * peak))
        db -= db.max()
        values = np.maximum(db, config.floor_db)
    return LogMelSpectrogram(values=values, config=config, sample_rate=buf.sample_rate)


def logmel_distance(a: LogMelSpectrogram, b: LogMelSpectrogram) -> tuple[float, float]:
    """(L1, RMSE) between two equal-shape log-Mel spectrograms.

    Both are element means (not sums), in dB. RMSE >= L1 always holds
    (power-mean inequality).
    """
    if a.config != b.config:
        raise ValueError("spectral configs differ")
    if a.values.shape != b.values.shape:
        raise ValueError(
            f"spectrogram shapes differ: {a.values.shape} vs {b.values.shape}; "
            "align the waveforms first"
        )
    diff = a.values - b.values
    l1 = float(np.mean(np.abs(diff)))
    rmse = float(np.sqrt(np.mean(diff**2)))
    return l1, rmse
