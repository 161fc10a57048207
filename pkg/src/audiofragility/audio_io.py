"""WAV decoding, resampling and pairwise temporal alignment.

Everything downstream (spectrograms, DTW, embeddings keyed by file) assumes
mono float signals at a common sample rate, so this module is the single
place where container parsing and rate conversion happen.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import AudioFormatError, EmptyAudioError, TruncatedFileError

#: Canonical analysis rate. Every metric pipeline resamples to this first.
CANONICAL_RATE = 32000

_WAVE_FORMAT_PCM = 0x0001
_WAVE_FORMAT_IEEE_FLOAT = 0x0003
_WAVE_FORMAT_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True)
class AudioBuffer:
    """Decoded mono waveform.

    samples: float64 array, nominal range [-1, 1]
    sample_rate: Hz
    source_path: provenance label (file path or synthetic tag)
    """

    samples: np.ndarray
    sample_rate: int
    source_path: str = ""

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("audio samples contain NaN or Inf")

    def __len__(self) -> int:
        return len(self.samples)


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) < n:
        raise TruncatedFileError(f"file ended while reading {what} ({len(data)}/{n} bytes)")
    return data


def load_wav(path) -> AudioBuffer:
    """Decode a RIFF/WAVE file to a mono AudioBuffer.

    Supports PCM 16-bit and IEEE float 32-bit, 1 or 2 channels. Stereo is
    mixed down by per-sample channel average; PCM16 is scaled by 1/32768.
    """
    path = str(path)
    with open(path, "rb") as fh:
        riff = _read_exact(fh, 12, "RIFF header")
        if riff[0:4] != b"RIFF" or riff[8:12] != b"WAVE":
            raise AudioFormatError(f"{path}: not a RIFF/WAVE file")

        fmt = None
        data = None
        while True:
            head = fh.read(8)
            if len(head) == 0:
                break
            if len(head) < 8:
                raise TruncatedFileError(f"{path}: dangling chunk header")
            tag, size = struct.unpack("<4sI", head)
            if tag == b"fmt ":
                fmt = _read_exact(fh, size, "fmt chunk")
            elif tag == b"data":
                data = _read_exact(fh, size, "data chunk")
            else:
                fh.seek(size + (size & 1), 1)
                continue
            if size & 1:
                fh.seek(1, 1)
            if fmt is not None and data is not None:
                break

    if fmt is None:
        raise AudioFormatError(f"{path}: missing fmt chunk")
    if data is None:
        raise AudioFormatError(f"{path}: missing data chunk")
    if len(fmt) < 16:
        raise AudioFormatError(f"{path}: fmt chunk too short ({len(fmt)} bytes)")

    audio_format, n_channels, sample_rate, _, _, bits = struct.unpack("<HHIIHH", fmt[:16])
    if audio_format == _WAVE_FORMAT_EXTENSIBLE and len(fmt) >= 40:
        # sub-format GUID starts with the effective format code
        audio_format = struct.unpack("<H", fmt[24:26])[0]

    if n_channels not in (1, 2):
        raise AudioFormatError(f"{path}: unsupported channel count {n_channels}")
    if audio_format == _WAVE_FORMAT_PCM:
        if bits != 16:
            raise AudioFormatError(f"{path}: unsupported PCM bit depth {bits}")
        raw = np.frombuffer(data[: len(data) - len(data) % 2], dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
    elif audio_format == _WAVE_FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise AudioFormatError(f"{path}: unsupported float bit depth {bits}")
        raw = np.frombuffer(data[: len(data) - len(data) % 4], dtype="<f4")
        samples = raw.astype(np.float64)
    else:
        raise AudioFormatError(f"{path}: unsupported audio format code {audio_format:#06x}")

    if samples.size == 0:
        raise EmptyAudioError(f"{path}: zero-length data chunk")

    if n_channels == 2:
        samples = samples[: len(samples) - len(samples) % 2]
        samples = samples.reshape(-1, 2).mean(axis=1)

    if not np.all(np.isfinite(samples)):
        raise AudioFormatError(f"{path}: non-finite sample values")

    return AudioBuffer(samples=samples, sample_rate=sample_rate, source_path=path)


def save_wav(path, buf: AudioBuffer, fmt: str = "float32") -> None:
    """Write a mono WAV. fmt is 'float32' or 'pcm16'."""
    path = str(path)
    x = np.asarray(buf.samples, dtype=np.float64)
    if fmt == "float32":
        payload = x.astype("<f4").tobytes()
        code, bits = _WAVE_FORMAT_IEEE_FLOAT, 32
    elif fmt == "pcm16":
        q = np.clip(np.round(x * 32768.0), -32768, 32767).astype("<i2")
        payload = q.tobytes()
        code, bits = _WAVE_FORMAT_PCM, 16
    else:
        raise ValueError(f"unknown wav sample format {fmt!r}")

    block = bits // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, code, 1, buf.sample_rate,
        buf.sample_rate * block, block, bits,
        b"data", len(payload),
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


# Windowed-sinc resampler: 64-tap Kaiser, beta=12.
_TAPS = 64
_BETA = 12.0
_HALF = _TAPS // 2


def resample(buf: AudioBuffer, target_rate: int) -> AudioBuffer:
    """Band-limited resampling to target_rate.

    Output length is round(len * target / source). Passthrough (the same
    buffer object) when rates already match.
    """
    if target_rate <= 0:
        raise ValueError(f"target_rate must be positive, got {target_rate}")
    if target_rate == buf.sample_rate:
        return buf

    x = buf.samples
    n_in = len(x)
    n_out = int(round(n_in * target_rate / buf.sample_rate))
    ratio = target_rate / buf.sample_rate
    cutoff = min(1.0, ratio)  # lowpass at target Nyquist when decimating
    i0_beta = np.i0(_BETA)

    out = np.empty(n_out, dtype=np.float64)
    chunk = 65536
    for start in range(0, n_out, chunk):
        stop = min(start + chunk, n_out)
        k = np.arange(start, stop)
        t = k / ratio  # position of each output sample on the input grid
        base = np.floor(t).astype(np.int64)
        # tap offsets surrounding t
        offs = np.arange(-_HALF + 1, _HALF + 1)
        idx = base[:, None] + offs[None, :]
        frac = t[:, None] - idx
        kernel = cutoff * np.sinc(cutoff * frac)
        w = frac / _HALF
        inside = np.abs(w) < 1.0
        window = np.zeros_like(frac)
        window[inside] = np.i0(_BETA * np.sqrt(1.0 - w[inside] ** 2)) / i0_beta
        kernel *= window
        valid = (idx >= 0) & (idx < n_in)
        xs = np.where(valid, x[np.clip(idx, 0, n_in - 1)], 0.0)
        out[start:stop] = np.sum(xs * kernel, axis=1)

    return AudioBuffer(samples=out, sample_rate=target_rate, source_path=buf.source_path)


def align_pair(a: AudioBuffer, b: AudioBuffer) -> tuple[AudioBuffer, AudioBuffer]:
    """Truncate both buffers to the shorter length, from t=0."""
    if a.sample_rate != b.sample_rate:
        raise ValueError(
            f"sample rates differ ({a.sample_rate} vs {b.sample_rate}); resample first"
        )
    n = min(len(a), len(b))
    if len(a) == n and len(b) == n:
        return a, b
    trim = lambda buf: AudioBuffer(buf.samples[:n], buf.sample_rate, buf.source_path)
    return trim(a), trim(b)
