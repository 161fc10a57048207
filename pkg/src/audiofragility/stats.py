"""Paired-sample statistics: t-test, CI, Cohen's dz, seed-stability range."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy import stats as sps

from .errors import InsufficientDataError

#: Conventional |dz| cutoffs for the effect-size label.
DZ_THRESHOLDS = ((0.8, "large"), (0.5, "medium"), (0.2, "small"))

#: Descriptive similarity annotations used in reports (not pass/fail gates).
MODERATE_STABILITY_THRESHOLD = 0.60
STRONG_EQUIVALENCE_THRESHOLD = 0.80


@dataclass(frozen=True)
class PairedTestResult:
    n: int
    mean_a: float
    mean_b: float
    delta: float
    ci_low: float
    ci_high: float
    t: float
    df: int
    p: float
    dz: float
    dz_label: str
    degenerate: bool = False


def effect_size_label(dz: float) -> str:
    mag = abs(dz)
    for cutoff, label in DZ_THRESHOLDS:
        if mag >= cutoff:
            return label
    return "negligible"


def t_sf(t: float, df: int) -> float:
    """Two-sided Student-t tail probability.

    p = I_{df/(df+t^2)}(df/2, 1/2) via the regularized incomplete beta
    function; monotone decreasing in |t|.
    """
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if t == 0.0:
        return 1.0
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return float(special.betainc(df / 2.0, 0.5, x))


def t_critical(confidence: float, df: int) -> float:
    """Two-sided critical value: t with tail mass (1-confidence) split evenly."""
    if not (0 < confidence < 1):
        raise ValueError(f"confidence must be in (0,1), got {confidence}")
    return float(sps.t.ppf(1.0 - (1.0 - confidence) / 2.0, df))


def paired_t_test(
    diffs,
    confidence: float = 0.95,
    mean_a: float = float("nan"),
    mean_b: float = float("nan"),
) -> PairedTestResult:
    """Paired-sample t-test over per-pair differences.

    diffs are (condition B - condition A) per matched pair. mean_a/mean_b
    are optional per-condition means carried through for reporting; they do
    not enter the test.
    """
    d = np.asarray(list(diffs), dtype=np.float64)
    n = d.size
    if n < 2:
        raise InsufficientDataError(f"paired t-test needs n >= 2, got {n}")
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    df = n - 1

    if sd == 0.0:
        # all differences identical: variance-dependent outputs degenerate
        if mean == 0.0:
            t = 0.0
            p = 1.0
            dz = 0.0
        else:
            t = math.copysign(math.inf, mean)
            p = 0.0
            dz = math.copysign(math.inf, mean)
        return PairedTestResult(
            n=n, mean_a=mean_a, mean_b=mean_b, delta=mean,
            ci_low=mean, ci_high=mean, t=t, df=df, p=p,
            dz=dz, dz_label=effect_size_label(dz), degenerate=True,
        )

    se = sd / math.sqrt(n)
    t = mean / se
    p = t_sf(t, df)
    half = t_critical(confidence, df) * se
    dz = mean / sd
    return PairedTestResult(
        n=n, mean_a=mean_a, mean_b=mean_b, delta=mean,
        ci_low=mean - half, ci_high=mean + half,
        t=t, df=df, p=p, dz=dz, dz_label=effect_size_label(dz),
    )


def seed_stability(per_seed_means: dict) -> tuple[float, float]:
    """Max-min spread of per-seed mean similarities.

    Returns (range, range in percentage points). "Points" here means the
    raw similarity difference scaled by 100, not a relative percentage.
    """
    if len(per_seed_means) < 2:
        raise InsufficientDataError(
            f"seed stability needs >= 2 seeds, got {len(per_seed_means)}"
        )
    vals = np.asarray(list(per_seed_means.values()), dtype=np.float64)
    rng = float(vals.max() - vals.min())
    return rng, rng * 100.0
