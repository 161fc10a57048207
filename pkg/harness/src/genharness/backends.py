"""Generation backends.

Only the deterministic mock backend ships with the harness; real model
backends plug in through the same Backend interface. The mock backend is
a first-class deliverable so the full pipeline runs at desk scale with no
weights or network.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

SAMPLE_RATE = 32000


class BackendError(Exception):
    """Transient generation failure; the harness retries these."""


class AuthError(Exception):
    """Credential failure; aborts the whole run immediately."""


@dataclass(frozen=True)
class BackendSpec:
    name: str  # model label, e.g. musicgen-small
    kind: str = "local-inference"  # local-inference | remote-api
    duration_s: float = 10.0
    seed: int = 0
    credentials_env: str | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("backend name must be non-empty")
        if self.duration_s <= 0:
            raise ValueError(f"duration must be positive, got {self.duration_s}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass
class MockBackend:
    """Deterministic tone generator keyed by prompt hash and seed.

    fail_prompts maps prompt text to a number of failures to inject
    before succeeding (for retry/failure-path tests); -1 fails forever.
    """

    spec: BackendSpec
    version: str = "mock/1"
    fail_prompts: dict = field(default_factory=dict)
    _attempts: dict = field(default_factory=dict)

    def generate(self, prompt: str) -> np.ndarray:
        budget = self.fail_prompts.get(prompt)
        if budget is not None:
            seen = self._attempts.get(prompt, 0)
            self._attempts[prompt] = seen + 1
            if budget < 0 or seen < budget:
                raise BackendError(f"injected failure for prompt {prompt!r}")

        digest = hashlib.sha256(f"{prompt}|{self.spec.seed}".encode()).digest()
        f0 = 110.0 * 2 ** ((digest[0] % 36) / 12)
        f1 = 110.0 * 2 ** ((digest[1] % 36) / 12)
        decay = 0.5 + (digest[2] % 50) / 10.0
        n = int(round(self.spec.duration_s * SAMPLE_RATE))
        t = np.arange(n) / SAMPLE_RATE
        env = np.exp(-decay * t / max(self.spec.duration_s, 1e-9))
        return (0.6 * np.sin(2 * np.pi * f0 * t)
                + 0.25 * np.sin(2 * np.pi * f1 * t)) * env


def make_backend(spec: BackendSpec, fail_prompts=None) -> MockBackend:
    """Backend factory. Only the mock backend is bundled; remote-api specs
    require credentials and a concrete client, which callers must supply."""
    if spec.kind == "remote-api":
        raise AuthError(
            f"no client configured for remote backend {spec.name!r}; "
            f"set {spec.credentials_env or 'credentials'} and register a client"
        )
    return MockBackend(spec=spec, fail_prompts=dict(fail_prompts or {}))
