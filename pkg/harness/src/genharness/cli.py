"""Command line front end: `genharness generate` and `genharness embed`."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .backends import AuthError, BackendSpec, make_backend
from .embed import embed_corpus
from .generate import generate_corpus


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genharness",
        description="Produce an audio corpus and embedding sidecars for "
                    "the fragility evaluation toolkit.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="render one model/seed run of a manifest")
    gen.add_argument("--manifest", required=True, help="manifest JSON path")
    gen.add_argument("--out-root", required=True, help="corpus root directory")
    gen.add_argument("--model", required=True, help="backend/model name")
    gen.add_argument("--kind", default="local-inference",
                     choices=["local-inference", "remote-api"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--duration", type=float, default=10.0,
                     help="clip length in seconds")
    gen.add_argument("--backoff", type=float, default=1.0,
                     help="base retry backoff in seconds")
    gen.add_argument("--force", action="store_true",
                     help="regenerate files that already exist")

    emb = sub.add_parser("embed", help="write embedding sidecars for every WAV")
    emb.add_argument("--out-root", required=True, help="corpus root directory")
    emb.add_argument("--dim", type=int, default=512)
    emb.add_argument("--force", action="store_true",
                     help="rewrite sidecars that already exist")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "generate":
        spec = BackendSpec(name=args.model, kind=args.kind,
                           duration_s=args.duration, seed=args.seed)
        try:
            backend = make_backend(spec)
            report = generate_corpus(args.manifest, args.out_root, backend,
                                     force=args.force, backoff_s=args.backoff)
        except AuthError as exc:
            print(f"genharness: auth error: {exc}", file=sys.stderr)
            return 3
        except (OSError, ValueError, KeyError) as exc:
            print(f"genharness: {exc}", file=sys.stderr)
            return 2
        print(f"generate: {report.written} written, {report.skipped} skipped, "
              f"{len(report.failures)} failed")
        for failure in report.failures:
            print(f"  failed: {failure['file']}: {failure['error']}",
                  file=sys.stderr)
        return 0 if not report.failures else 4

    if args.command == "embed":
        try:
            report = embed_corpus(args.out_root, dim=args.dim, force=args.force)
        except OSError as exc:
            print(f"genharness: {exc}", file=sys.stderr)
            return 2
        print(f"embed: {report.written} written, {report.skipped} skipped, "
              f"{len(report.failures)} failed")
        return 0 if not report.failures else 4

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    raise SystemExit(main())
