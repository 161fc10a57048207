"""Command-line driver for batch evaluation workflows.

Exit codes: 0 ok, 1 usage, 2 input/format, 3 validation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from . import alignment, embedding, features, manifest, report, stats
from .audio_io import CANONICAL_RATE, align_pair, load_wav, resample
from .errors import (
    AudioFormatError,
    ConfigurationError,
    DegenerateEmbeddingError,
    EmptyAudioError,
    EmptyReportError,
    InsufficientDataError,
    SchemaError,
    ToolkitError,
    TruncatedFileError,
    ValidationError,
)
from .spectral import SpectralConfig, log_mel, logmel_distance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VALIDATION = 3

_INPUT_ERRORS = (
    OSError,
    AudioFormatError,
    TruncatedFileError,
    EmptyAudioError,
    SchemaError,
    DegenerateEmbeddingError,
    EmptyReportError,
)
_VALIDATION_ERRORS = (ValidationError, InsufficientDataError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    manifest_path: str
    audio_root: str
    models: tuple
    seeds: tuple
    spectral: SpectralConfig
    out: str | None
    strict_embeddings: bool
    dtw_band: int | None

    def __post_init__(self):
        if not self.models:
            raise ValueError("at least one model is required")
        if not self.seeds:
            raise ValueError("at least one seed is required")


def _spectral_config(args) -> SpectralConfig:
    return SpectralConfig(
        n_fft=args.n_fft, hop=args.hop, n_mels=args.n_mels
    )


def _add_spectral_flags(p):
    p.add_argument("--n-fft", type=int, default=2048)
    p.add_argument("--hop", type=int, default=512)
    p.add_argument("--n-mels", type=int, default=128)


def _parse_band(value: str):
    if value == "off":
        return None
    try:
        band = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dtw-band expects an integer or 'off', got {value!r}")
    if band <= 0:
        raise argparse.ArgumentTypeError("--dtw-band width must be positive")
    return band


def _load_aligned(path_a, path_b, config):
    a = resample(load_wav(path_a), CANONICAL_RATE)
    b = resample(load_wav(path_b), CANONICAL_RATE)
    config.validate_for_rate(CANONICAL_RATE)
    return align_pair(a, b)


def evaluate_pair(path_a, path_b, config, emb_a=None, emb_b=None,
                  strict=False, band=None):
    """All six metrics for one audio pair.

    Embedding sidecars default to `<stem>.emb.json` beside each file;
    missing sidecars yield None for cos_sim/l2.
    """
    a, b = _load_aligned(path_a, path_b, config)
    sa = log_mel(a, config)
    sb = log_mel(b, config)
    l1, rmse = logmel_distance(sa, sb)
    metrics = {
        "l1": l1,
        "rmse": rmse,
        "mfcc_dtw": alignment.mfcc_dtw_cost(a, b, config, band=band),
        "chroma_dtw": alignment.chroma_dtw_cost(a, b, config, band=band),
        "cos_sim": None,
        "l2": None,
    }

    emb_a = emb_a or embedding.sidecar_path(path_a)
    emb_b = emb_b or embedding.sidecar_path(path_b)
    if os.path.exists(emb_a) and os.path.exists(emb_b):
        va = embedding.load_embedding(emb_a, strict=strict)
        vb = embedding.load_embedding(emb_b, strict=strict)
        metrics["cos_sim"] = embedding.cosine_similarity(va, vb)
        metrics["l2"] = embedding.l2_distance(va, vb)
    return metrics


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_compare(args) -> int:
    config = _spectral_config(args)
    band = args.dtw_band
    metrics = evaluate_pair(
        args.audio_a, args.audio_b, config,
        emb_a=args.emb_a, emb_b=args.emb_b,
        strict=args.strict_embeddings, band=band,
    )
    if metrics["cos_sim"] is None:
        print("notice: embedding sidecars not found; "
              "cos_sim and l2 omitted", file=sys.stderr)
        metrics = {k: v for k, v in metrics.items() if v is not None}
    json.dump(metrics, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def run_batch(config: RunConfig):
    """Evaluate every (pair x model x seed); returns (records, skip notices)."""
    groups = manifest.load_manifest(config.manifest_path)
    pairs = manifest.enumerate_pairs(groups)

    records = []
    skips = []
    for model in config.models:
        for seed in config.seeds:
            base = os.path.join(config.audio_root, model, str(seed))
            for pair in pairs:
                fa = os.path.join(base, manifest.audio_filename(pair.group_id, pair.variant_a))
                fb = os.path.join(base, manifest.audio_filename(pair.group_id, pair.variant_b))
                missing = [p for p in (fa, fb) if not os.path.exists(p)]
                missing += [
                    p for p in (embedding.sidecar_path(fa), embedding.sidecar_path(fb))
                    if not os.path.exists(p)
                ]
                if missing:
                    skips.append(
                        f"skip {model}/{seed}/{pair.group_id}:{pair.variant_a}-{pair.variant_b}: "
                        f"missing {', '.join(os.path.basename(m) for m in missing)}"
                    )
                    continue
                metrics = evaluate_pair(
                    fa, fb, config.spectral,
                    strict=config.strict_embeddings, band=config.dtw_band,
                )
                records.append(
                    report.PairMetricsRecord(
                        model=model, category=pair.category, group_id=pair.group_id,
                        variant_a=pair.variant_a, variant_b=pair.variant_b, seed=seed,
                        **metrics,
                    )
                )
    return records, skips


def cmd_batch(args) -> int:
    spectral = _spectral_config(args)
    config = RunConfig(
        manifest_path=args.manifest,
        audio_root=args.audio_root,
        models=tuple(args.model),
        seeds=tuple(args.seed if args.seed else [0]),
        spectral=spectral,
        out=args.out,
        strict_embeddings=args.strict_embeddings,
        dtw_band=args.dtw_band,
    )
    records, skips = run_batch(config)
    for notice in skips:
        print(notice, file=sys.stderr)
    if not records:
        print("error: no audio files found for any enumerated pair", file=sys.stderr)
        return EXIT_INPUT

    comments = [
        f"n_fft={spectral.n_fft} hop={spectral.hop} n_mels={spectral.n_mels} "
        f"f_min={spectral.f_min} f_max={spectral.f_max} floor_db={spectral.floor_db}",
        f"sample_rate={CANONICAL_RATE}",
        f"models={','.join(config.models)} seeds={','.join(map(str, config.seeds))}",
        f"dtw_band={'off' if config.dtw_band is None else config.dtw_band} "
        f"strict_embeddings={config.strict_embeddings}",
    ]
    _write_text(config.out, report.emit_records_csv(records, comments=comments))

    if args.tables_dir:
        os.makedirs(args.tables_dir, exist_ok=True)
        tables = report.emit_table_csvs(report.aggregate(records))
        for key, doc in tables.items():
            _write_text(os.path.join(args.tables_dir, f"{key}.csv"), doc)
    return EXIT_OK


def _records_by_key(records):
    out = OrderedDict()
    for r in records:
        key = (r.category, r.group_id, r.variant_a, r.variant_b, r.seed)
        if key in out:
            raise ValidationError(f"duplicate record key {key}")
        out[key] = r
    return out


def run_model_comparison(small_records, large_records, confidence=0.95):
    """Per-category paired tests of cos_sim between two result sets."""
    small = _records_by_key(small_records)
    large = _records_by_key(large_records)
    orphans = set(small) ^ set(large)
    if orphans:
        listing = ", ".join(map(str, sorted(orphans)[:10]))
        raise ValidationError(
            f"{len(orphans)} keys present in only one results file: {listing}"
        )

    results = OrderedDict()
    for category in ("MLS", "IS", "SR"):
        keys = [k for k in small if k[0] == category]
        if not keys:
            continue
        s = np.array([small[k].cos_sim for k in keys])
        l = np.array([large[k].cos_sim for k in keys])
        results[category] = stats.paired_t_test(
            l - s, confidence=confidence,
            mean_a=float(s.mean()), mean_b=float(l.mean()),
        )
    return results


def cmd_stats(args) -> int:
    with open(args.results_small, "r", encoding="utf-8") as fh:
        small = report.parse_records_csv(fh.read())
    with open(args.results_large, "r", encoding="utf-8") as fh:
        large = report.parse_records_csv(fh.read())
    results = run_model_comparison(small, large)
    if not results:
        raise ValidationError("no overlapping categories between the result files")

    lines = ["Section,n,MeanSmall,MeanLarge,Delta,CILow,CIHigh,t,df,p,CohensDz,Label"]
    fmt = report.format_number
    for category, r in results.items():
        lines.append(",".join([
            category, str(r.n), fmt(r.mean_a), fmt(r.mean_b), fmt(r.delta),
            fmt(r.ci_low), fmt(r.ci_high), fmt(r.t), str(r.df), fmt(r.p),
            fmt(r.dz), r.dz_label,
        ]))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def run_seed_stability(record_sets):
    """Per (model, category) seed-stability entries from several result sets."""
    all_records = [r for records in record_sets for r in records]
    cells = OrderedDict()
    for r in all_records:
        cells.setdefault((r.model, r.category), {}).setdefault(r.seed, []).append(r.cos_sim)

    entries = []
    for (model, category), by_seed in cells.items():
        means = {seed: float(np.mean(vals)) for seed, vals in sorted(by_seed.items())}
        rng, pct = stats.seed_stability(means)
        entries.append({
            "model": model,
            "category": category,
            "per_seed_means": {str(s): m for s, m in means.items()},
            "range": rng,
            "range_pct_points": pct,
        })
    return entries


def cmd_seeds(args) -> int:
    record_sets = []
    for path in args.results:
        with open(path, "r", encoding="utf-8") as fh:
            record_sets.append(report.parse_records_csv(fh.read()))
    entries = run_seed_stability(record_sets)
    doc = {
        "note": (
            "ranges are reported in percentage points (raw max-min similarity "
            "difference x 100), not relative percent"
        ),
        "entries": entries,
    }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_spectrogram(args) -> int:
    config = _spectral_config(args)
    buf = resample(load_wav(args.audio), CANONICAL_RATE)
    spec = log_mel(buf, config)
    report.render_spectrogram(spec, args.out)
    return EXIT_OK


def cmd_features(args) -> int:
    config = _spectral_config(args)
    buf = resample(load_wav(args.audio), CANONICAL_RATE)
    if args.kind == "logmel":
        spec = log_mel(buf, config)
        frames = spec.values
        frame_rate = CANONICAL_RATE / config.hop
    elif args.kind == "mfcc":
        seq = features.mfcc(log_mel(buf, config))
        frames, frame_rate = seq.frames, seq.frame_rate
    else:
        seq = features.chroma(buf, config)
        frames, frame_rate = seq.frames, seq.frame_rate
    doc = {
        "kind": args.kind,
        "dim": int(frames.shape[0]),
        "frame_rate": frame_rate,
        "frames": [float(x) for x in frames.ravel(order="C")],
    }
    _write_text(args.out, json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_validate_manifest(args) -> int:
    groups = manifest.load_manifest(args.manifest)
    pairs = manifest.enumerate_pairs(groups)
    counts = {c: sum(1 for g in groups if g.category == c) for c in manifest.CATEGORIES}
    print(
        f"ok: {len(groups)} groups "
        f"(MLS {counts['MLS']}, IS {counts['IS']}, SR {counts['SR']}), "
        f"{len(pairs)} comparison pairs"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="audiofragility",
                     description="Semantic-fragility evaluation for text-to-audio output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="all metrics for one audio pair")
    p.add_argument("audio_a")
    p.add_argument("audio_b")
    p.add_argument("--emb-a", default=None)
    p.add_argument("--emb-b", default=None)
    p.add_argument("--strict-embeddings", action="store_true")
    p.add_argument("--dtw-band", type=_parse_band, default=None)
    _add_spectral_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("batch", help="evaluate a manifest over a corpus directory")
    p.add_argument("--manifest", required=True)
    p.add_argument("--audio-root", required=True)
    p.add_argument("--model", action="append", required=True)
    p.add_argument("--seed", action="append", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--tables-dir", default=None,
                   help="also write aggregate table CSVs into this directory")
    p.add_argument("--strict-embeddings", action="store_true")
    p.add_argument("--dtw-band", type=_parse_band, default=None)
    _add_spectral_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("stats", help="paired model-scale comparison from two result CSVs")
    p.add_argument("results_small")
    p.add_argument("results_large")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("seeds", help="seed-stability report from per-seed result CSVs")
    p.add_argument("results", nargs="+")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("spectrogram", help="render a log-Mel spectrogram PPM")
    p.add_argument("audio")
    p.add_argument("--out", required=True)
    _add_spectral_flags(p)
    p.set_defaults(func=cmd_spectrogram)

    p = sub.add_parser("features", help="dump a feature sequence as JSON")
    p.add_argument("audio")
    p.add_argument("--kind", choices=("logmel", "mfcc", "chroma"), required=True)
    p.add_argument("--out", default=None)
    _add_spectral_flags(p)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("validate-manifest", help="check a manifest file")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_validate_manifest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "seeds" and len(args.results) < 2:
        parser.error("seeds requires at least 2 result CSVs")
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToolkitError as exc:  # anything not mapped above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
