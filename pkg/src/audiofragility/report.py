"""Per-pair metric records, table aggregation and spectrogram rendering."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EmptyReportError, SchemaError
from .spectral import LogMelSpectrogram

CSV_HEADER = "model,category,group_id,variant_a,variant_b,seed,l1,rmse,mfcc_dtw,chroma_dtw,cos_sim,l2"

METRIC_FIELDS = ("l1", "rmse", "mfcc_dtw", "chroma_dtw", "cos_sim", "l2")


@dataclass(frozen=True)
class PairMetricsRecord:
    model: str
    category: str
    group_id: str
    variant_a: str
    variant_b: str
    seed: int
    l1: float
    rmse: float
    mfcc_dtw: float
    chroma_dtw: float
    cos_sim: float
    l2: float

    def __post_init__(self):
        for name in METRIC_FIELDS:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"metric {name} is not finite: {v}")
        for name in ("l1", "rmse", "mfcc_dtw", "chroma_dtw", "l2"):
            if getattr(self, name) < 0:
                raise ValueError(f"metric {name} must be >= 0")
        if not (-1.0 <= self.cos_sim <= 1.0):
            raise ValueError(f"cos_sim out of [-1, 1]: {self.cos_sim}")


def format_number(x: float) -> str:
    """Shortest round-trip decimal, locale-independent."""
    return repr(float(x))


def emit_records_csv(records, comments=()) -> str:
    """Per-pair metrics CSV; comment lines (prefixed '#') carry run metadata."""
    lines = [f"# {c}" for c in comments]
    lines.append(CSV_HEADER)
    for r in records:
        row = [r.model, r.category, r.group_id, r.variant_a, r.variant_b, str(r.seed)]
        row += [format_number(getattr(r, name)) for name in METRIC_FIELDS]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def parse_records_csv(text: str) -> list[PairMetricsRecord]:
    """Inverse of emit_records_csv; '#' lines are ignored."""
    records = []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise SchemaError(f"line {lineno}: unexpected CSV header {line!r}")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 12:
            raise SchemaError(f"line {lineno}: expected 12 fields, got {len(parts)}")
        records.append(
            PairMetricsRecord(
                model=parts[0], category=parts[1], group_id=parts[2],
                variant_a=parts[3], variant_b=parts[4], seed=int(parts[5]),
                l1=float(parts[6]), rmse=float(parts[7]), mfcc_dtw=float(parts[8]),
                chroma_dtw=float(parts[9]), cos_sim=float(parts[10]), l2=float(parts[11]),
            )
        )
    if not header_seen:
        raise SchemaError("CSV contains no header line")
    return records


def aggregate(records) -> list[dict]:
    """Mean of each metric per (model, category) cell.

    Row order: models by first appearance, categories MLS, IS, SR.
    Cells without records are omitted with a warning.
    """
    records = list(records)
    if not records:
        raise EmptyReportError("no records to aggregate")

    models = []
    for r in records:
        if r.model not in models:
            models.append(r.model)

    rows = []
    for model in models:
        for category in ("MLS", "IS", "SR"):
            cell = [r for r in records if r.model == model and r.category == category]
            if not cell:
                warnings.warn(f"no records for ({model}, {category}); cell omitted",
                              stacklevel=2)
                continue
            row = {"model": model, "category": category, "n": len(cell)}
            for name in METRIC_FIELDS:
                # summing in sorted order keeps the mean permutation-invariant
                row[name] = float(np.mean(np.sort([getattr(r, name) for r in cell])))
            rows.append(row)
    return rows


def emit_table_csvs(agg_rows) -> dict[str, str]:
    """Aggregate CSVs shaped like the three result tables.

    Returns {'logmel': ..., 'dtw': ..., 'embedding': ...} documents.
    """
    specs = {
        "logmel": ("Model,Condition,AvgL1,AvgRMSE", ("l1", "rmse")),
        "dtw": ("Model,Condition,AvgMFCCDTW,AvgCDTW", ("mfcc_dtw", "chroma_dtw")),
        "embedding": ("Model,Condition,CosineSimilarity,L2Distance", ("cos_sim", "l2")),
    }
    out = {}
    for key, (header, cols) in specs.items():
        lines = [header]
        for row in agg_rows:
            vals = [format_number(row[c]) for c in cols]
            lines.append(",".join([row["model"], row["category"]] + vals))
        out[key] = "\n".join(lines) + "\n"
    return out


def _viridis_table() -> np.ndarray:
    """Fixed 256x3 uint8 color ramp (viridis-like, piecewise-linear)."""
    anchors = np.array(
        [
            [68, 1, 84],
            [59, 82, 139],
            [33, 145, 140],
            [94, 201, 98],
            [253, 231, 37],
        ],
        dtype=np.float64,
    )
    pos = np.linspace(0.0, 1.0, len(anchors))
    t = np.linspace(0.0, 1.0, 256)
    table = np.stack(
        [np.interp(t, pos, anchors[:, c]) for c in range(3)], axis=1
    )
    return np.round(table).astype(np.uint8)


COLOR_RAMP = _viridis_table()


def render_spectrogram(spec: LogMelSpectrogram, out_path) -> None:
    """Write a binary PPM (P6) image of the spectrogram.

    One pixel per cell: time left-to-right, Mel bin 0 at the bottom.
    floor_db maps to the darkest ramp entry and 0 dB to the brightest.
    """
    values = spec.values
    floor = spec.config.floor_db
    norm = (values - floor) / (0.0 - floor)
    idx = np.clip(np.round(norm * 255.0), 0, 255).astype(np.intp)
    pixels = COLOR_RAMP[idx[::-1, :]]  # flip so bin 0 renders at the bottom
    h, w = pixels.shape[:2]
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    with open(str(out_path), "wb") as fh:
        fh.write(header)
        fh.write(pixels.tobytes())
