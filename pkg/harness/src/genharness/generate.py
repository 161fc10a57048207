"""Batch corpus generation with retries, idempotence, and a run manifest.

Output layout matches what the evaluation toolkit consumes:

    <out_root>/<model>/<seed>/<group_id>__<variant_id>.wav

plus a run-meta.json per <model>/<seed> directory recording the backend,
its version, and any prompts that exhausted their retry budget.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .backends import SAMPLE_RATE, AuthError, BackendError
from .manifest import audio_filename, load_manifest
from .wavout import write_wav_float32

MAX_ATTEMPTS = 3
MAX_WORKERS = 2


@dataclass
class GenerationReport:
    """What a generate_corpus run did; failures list prompts that never
    succeeded after MAX_ATTEMPTS tries."""

    written: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)


def _atomic_write(path: str, samples) -> None:
    tmp = path + ".part"
    write_wav_float32(tmp, samples, SAMPLE_RATE)
    os.replace(tmp, path)


def _generate_one(backend, prompt: str, path: str, backoff_s: float):
    last = None
    for attempt in range(MAX_ATTEMPTS):
        try:
            samples = backend.generate(prompt)
            _atomic_write(path, samples)
            return None
        except BackendError as exc:
            last = exc
            if attempt + 1 < MAX_ATTEMPTS and backoff_s > 0:
                time.sleep(backoff_s * 2 ** attempt)
    return {"file": os.path.basename(path), "prompt": prompt,
            "error": str(last), "attempts": MAX_ATTEMPTS}


def generate_corpus(manifest_path, out_root, backend, *, force: bool = False,
                    backoff_s: float = 0.0) -> GenerationReport:
    """Generate every (group, variant) clip of the manifest under out_root.

    Existing files are skipped unless force is set, so reruns only fill
    gaps. Transient BackendErrors are retried up to MAX_ATTEMPTS with
    exponential backoff; prompts that never succeed are recorded in the
    report and in run-meta.json rather than aborting the batch. AuthError
    propagates immediately.
    """
    groups = load_manifest(manifest_path)
    run_dir = os.path.join(str(out_root), backend.spec.name, str(backend.spec.seed))
    os.makedirs(run_dir, exist_ok=True)

    report = GenerationReport()
    jobs = []
    for group in groups:
        for variant in group.variants:
            path = os.path.join(run_dir, audio_filename(group.id, variant.id))
            if not force and os.path.exists(path):
                report.skipped += 1
                continue
            jobs.append((variant.text, path))

    with ThreadPoolExecutor(max_workers=MAX_WORKERS) as pool:
        futures = [pool.submit(_generate_one, backend, prompt, path, backoff_s)
                   for prompt, path in jobs]
        for fut in futures:
            failure = fut.result()
            if failure is None:
                report.written += 1
            else:
                report.failures.append(failure)

    meta = {
        "backend": backend.spec.name,
        "version": backend.version,
        "seed": backend.spec.seed,
        "duration_s": backend.spec.duration_s,
        "failures": report.failures,
    }
    meta_path = os.path.join(run_dir, "run-meta.json")
    with open(meta_path + ".part", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    os.replace(meta_path + ".part", meta_path)
    return report
