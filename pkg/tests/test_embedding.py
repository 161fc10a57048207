import json
import math

import numpy as np
import pytest

from audiofragility.embedding import (
    EmbeddingVector,
    cosine_similarity,
    l2_distance,
    load_embedding,
    save_embedding,
    sidecar_path,
)
from audiofragility.errors import DegenerateEmbeddingError, SchemaError


def write_sidecar(path, values, dim=None, normalized=True, source="test",
                  schema="emb/1"):
    doc = {"schema": schema, "dim": dim if dim is not None else len(values),
           "normalized": normalized, "source": source, "values": values}
    path.write_text(json.dumps(doc))
    return path


def vec(values):
    v = np.asarray(values, dtype=np.float64)
    return EmbeddingVector(values=v, dim=v.size, normalized=False)


class TestLoadEmbedding:
    def test_unit_vector(self, tmp_path):
        p = write_sidecar(tmp_path / "a.emb.json", [1.0, 0.0, 0.0])
        e = load_embedding(p)
        assert e.dim == 3
        assert e.normalized
        np.testing.assert_array_equal(e.values, [1.0, 0.0, 0.0])

    def test_renormalizes(self, tmp_path):
        p = write_sidecar(tmp_path / "b.emb.json", [2.0, 0.0, 0.0])
        e = load_embedding(p)
        np.testing.assert_array_equal(e.values, [1.0, 0.0, 0.0])
        assert e.normalized

    def test_strict_rejects_non_unit(self, tmp_path):
        p = write_sidecar(tmp_path / "c.emb.json", [2.0, 0.0, 0.0])
        with pytest.raises(SchemaError, match="strict"):
            load_embedding(p, strict=True)

    def test_dim_mismatch(self, tmp_path):
        p = write_sidecar(tmp_path / "d.emb.json", [1.0, 0.0, 0.0], dim=4)
        with pytest.raises(SchemaError, match="dim 4"):
            load_embedding(p)

    def test_zero_vector(self, tmp_path):
        p = write_sidecar(tmp_path / "e.emb.json", [0.0, 0.0])
        with pytest.raises(DegenerateEmbeddingError):
            load_embedding(p)

    def test_malformed_json(self, tmp_path):
        p = tmp_path / "f.emb.json"
        p.write_text("{not json")
        with pytest.raises(SchemaError, match="not valid JSON"):
            load_embedding(p)

    def test_wrong_schema_tag(self, tmp_path):
        p = write_sidecar(tmp_path / "g.emb.json", [1.0], schema="emb/2")
        with pytest.raises(SchemaError, match="schema"):
            load_embedding(p)

    def test_save_load_roundtrip(self, tmp_path):
        p = tmp_path / "h.emb.json"
        save_embedding(p, [3.0, 4.0], source="enc/9")
        e = load_embedding(p, strict=True)
        np.testing.assert_allclose(e.values, [0.6, 0.8])
        assert e.source == "enc/9"

    def test_sidecar_path(self):
        assert sidecar_path("/x/clip.wav") == "/x/clip.emb.json"


class TestSimilarity:
    def test_self_similarity(self):
        z = vec([0.3, -0.4, 0.5])
        assert cosine_similarity(z, z) == pytest.approx(1.0)
        assert l2_distance(z, z) == 0.0

    def test_orthogonal(self):
        a, b = vec([1, 0]), vec([0, 1])
        assert cosine_similarity(a, b) == 0.0
        assert l2_distance(a, b) == pytest.approx(math.sqrt(2))

    def test_sixty_degrees(self):
        a = vec([1.0, 0.0])
        b = vec([0.5, math.sqrt(3) / 2])
        assert cosine_similarity(a, b) == pytest.approx(0.5)
        assert l2_distance(a, b) == pytest.approx(1.0)

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            cosine_similarity(vec([1, 0]), vec([1, 0, 0]))
        with pytest.raises(ValueError):
            l2_distance(vec([1, 0]), vec([1, 0, 0]))

    def test_scale_invariance(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            a = rng.normal(size=16)
            b = rng.normal(size=16)
            alpha, beta = rng.uniform(0.01, 100, size=2)
            assert cosine_similarity(vec(alpha * a), vec(beta * b)) == pytest.approx(
                cosine_similarity(vec(a), vec(b)), abs=1e-9
            )

    @pytest.mark.parametrize("dim", [4, 64, 512])
    def test_unit_norm_identity(self, dim):
        rng = np.random.default_rng(dim)
        for _ in range(100):
            a = rng.normal(size=dim)
            b = rng.normal(size=dim)
            a /= np.linalg.norm(a)
            b /= np.linalg.norm(b)
            va, vb = vec(a), vec(b)
            cos = cosine_similarity(va, vb)
            assert l2_distance(va, vb) == pytest.approx(
                math.sqrt(2.0 * (1.0 - cos)), abs=1e-6
            )
