"""Minimal mono float32 WAV writer (the only container the corpus uses)."""

import struct

import numpy as np


def write_wav_float32(path, samples, sample_rate: int) -> None:
    x = np.asarray(samples, dtype="<f4")
    payload = x.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, 3, 1, sample_rate,  # IEEE float, mono
        sample_rate * 4, 4, 32,
        b"data", len(payload),
    )
    with open(str(path), "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_wav_float32(path) -> tuple[np.ndarray, int]:
    """Read back a file written by write_wav_float32 (mock encoder input)."""
    with open(str(path), "rb") as fh:
        data = fh.read()
    if data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise ValueError(f"{path}: not a RIFF/WAVE file")
    pos = 12
    rate = None
    samples = None
    while pos + 8 <= len(data):
        tag = data[pos:pos + 4]
        size = struct.unpack("<I", data[pos + 4:pos + 8])[0]
        body = data[pos + 8:pos + 8 + size]
        if len(body) < size:
            raise ValueError(f"{path}: truncated chunk {tag!r}")
        if tag == b"fmt ":
            code, _, rate = struct.unpack("<HHI", body[:8])
            if code != 3:
                raise ValueError(f"{path}: expected float32 WAV, format code {code}")
        elif tag == b"data":
            samples = np.frombuffer(body, dtype="<f4").astype(np.float64)
        pos += 8 + size + (size & 1)
    if rate is None or samples is None:
        raise ValueError(f"{path}: missing fmt or data chunk")
    return samples, rate
