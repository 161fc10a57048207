"""Dynamic time warping over feature sequences.

Exact DP minimization with step set {(1,0),(0,1),(1,1)} (monotonicity +
continuity), optional Sakoe-Chiba band, deterministic diagonal-first
backtracking. Local costs: Euclidean for MFCC, cosine distance for chroma.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .audio_io import AudioBuffer
from .features import FeatureSequence, chroma, mfcc
from .spectral import SpectralConfig, log_mel

EUCLIDEAN = "euclidean"
COSINE_DISTANCE = "cosine_distance"


@dataclass(frozen=True)
class WarpingPath:
    """Monotone, continuous index-pair sequence from (1,1) to (n,m), 1-based."""

    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)

    def is_valid(self, n: int, m: int) -> bool:
        if not self.steps or self.steps[0] != (1, 1) or self.steps[-1] != (n, m):
            return False
        for (i0, j0), (i1, j1) in zip(self.steps, self.steps[1:]):
            di, dj = i1 - i0, j1 - j0
            if di not in (0, 1) or dj not in (0, 1) or (di, dj) == (0, 0):
                return False
        return True


@dataclass(frozen=True)
class DtwResult:
    total_cost: float
    normalized_cost: float
    path: WarpingPath
    local_cost_kind: str


def local_cost_matrix(x: np.ndarray, y: np.ndarray, kind: str) -> np.ndarray:
    """Pairwise frame costs, [n x m]. Frames are columns."""
    if kind == EUCLIDEAN:
        return cdist(x.T, y.T, metric="euclidean")
    if kind == COSINE_DISTANCE:
        nx = np.linalg.norm(x, axis=0)
        ny = np.linalg.norm(y, axis=0)
        dots = x.T @ y
        denom = np.outer(nx, ny)
        with np.errstate(divide="ignore", invalid="ignore"):
            cos = np.where(denom > 0, dots / np.where(denom > 0, denom, 1.0), 0.0)
        cost = 1.0 - np.clip(cos, -1.0, 1.0)
        # all-zero frames: distance 0 to another all-zero frame, 1 otherwise
        zx = nx == 0
        zy = ny == 0
        cost[zx, :] = 1.0
        cost[:, zy] = 1.0
        cost[np.ix_(zx, zy)] = 0.0
        return cost
    raise ValueError(f"unknown local cost kind {kind!r}")


def _accumulate(cost: np.ndarray) -> np.ndarray:
    """Accumulated-cost table via anti-diagonal wavefront (vectorized)."""
    n, m = cost.shape
    acc = np.full((n, m), np.inf)
    acc[0, 0] = cost[0, 0]
    acc[0, :] = np.cumsum(cost[0, :])
    acc[:, 0] = np.cumsum(cost[:, 0])
    for k in range(2, n + m - 1):
        i_lo = max(1, k - m + 1)
        i_hi = min(n - 1, k - 1)
        if i_lo > i_hi:
            continue
        i = np.arange(i_lo, i_hi + 1)
        j = k - i
        best = np.minimum(acc[i - 1, j - 1], np.minimum(acc[i - 1, j], acc[i, j - 1]))
        acc[i, j] = cost[i, j] + best
    return acc


def _backtrack(acc: np.ndarray) -> WarpingPath:
    """Recover one optimal path; ties prefer diagonal, then vertical, then horizontal."""
    n, m = acc.shape
    i, j = n - 1, m - 1
    rev = [(i + 1, j + 1)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag = acc[i - 1, j - 1]
            vert = acc[i - 1, j]
            horz = acc[i, j - 1]
            best = min(diag, vert, horz)
            if diag == best:
                i, j = i - 1, j - 1
            elif vert == best:
                i -= 1
            else:
                j -= 1
        rev.append((i + 1, j + 1))
    return WarpingPath(steps=tuple(reversed(rev)))


def dtw(
    x: FeatureSequence,
    y: FeatureSequence,
    local_cost_kind: str = EUCLIDEAN,
    band: int | None = None,
) -> DtwResult:
    """Exact DTW between two feature sequences.

    band, if given, restricts |i - j| to at most that many frames
    (Sakoe-Chiba); None means unconstrained (the default and the exact
    minimizer).
    """
    if x.dim != y.dim:
        raise ValueError(f"feature dims differ: {x.dim} vs {y.dim}")
    if x.n_frames == 0 or y.n_frames == 0:
        raise ValueError("cannot align an empty feature sequence")

    cost = local_cost_matrix(x.frames, y.frames, local_cost_kind)
    if band is not None:
        n, m = cost.shape
        ii, jj = np.meshgrid(np.arange(n), np.arange(m), indexing="ij")
        # scale the band to the sequence-length ratio so endpoints stay reachable
        off = np.abs(ii - jj * (n - 1) / max(m - 1, 1))
        cost = np.where(off <= band, cost, np.inf)

    acc = _accumulate(cost)
    path = _backtrack(acc)
    total = float(acc[-1, -1])
    return DtwResult(
        total_cost=total,
        normalized_cost=total / len(path),
        path=path,
        local_cost_kind=local_cost_kind,
    )


def mfcc_dtw_cost(
    a: AudioBuffer,
    b: AudioBuffer,
    config: SpectralConfig,
    n_coeffs: int = 13,
    band: int | None = None,
) -> float:
    """Normalized Euclidean DTW cost over MFCC sequences of two signals."""
    fa = mfcc(log_mel(a, config), n_coeffs)
    fb = mfcc(log_mel(b, config), n_coeffs)
    return dtw(fa, fb, EUCLIDEAN, band=band).normalized_cost


def chroma_dtw_cost(
    a: AudioBuffer,
    b: AudioBuffer,
    config: SpectralConfig,
    band: int | None = None,
) -> float:
    """Normalized cosine-distance DTW cost over chroma sequences, in [0, 2]."""
    fa = chroma(a, config)
    fb = chroma(b, config)
    return dtw(fa, fb, COSINE_DISTANCE, band=band).normalized_cost
