"""Corpus producer: drives audio backends and an embedding encoder to fill
the directory layout and sidecar formats the evaluation toolkit consumes."""

__version__ = "0.1.0"
