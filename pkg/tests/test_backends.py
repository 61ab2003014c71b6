from __future__ import annotations

import numpy as np
import pytest
from fastapi.testclient import TestClient

from posedit.backends import (
    BackendConfig,
    BackendError,
    FileBackend,
    HttpBackend,
    ToyBackend,
    hash_key,
    make_backend,
    read_vector_file,
    write_vector_file,
)
from posedit.testing import run_http_contract_suite

from stub_embed_server import make_stub_app


def stub_client(app) -> httpx.Client:
    # TestClient is a sync httpx.Client bound to the ASGI app in-process
    return TestClient(app)


class TestToyBackend:
    def test_deterministic(self):
        toy = ToyBackend(dim=8, seed=42)
        a = toy.embed_texts(["dog"])
        b = toy.embed_texts(["dog"])
        assert np.array_equal(a, b)

    def test_text_is_normalized_mean_of_token_vectors(self):
        toy = ToyBackend(dim=16, seed=3)
        mean = (toy._token_vector("dog") + toy._token_vector("cat")) / 2
        expected = mean / np.linalg.norm(mean)
        assert np.allclose(toy.embed_texts(["dog cat"])[0], expected, atol=0)

    def test_empty_text_is_zero_vector(self):
        toy = ToyBackend(dim=8, seed=0)
        assert np.array_equal(toy.embed_texts([""])[0], np.zeros(8))

    def test_images_embed_their_reference_text(self):
        toy = ToyBackend(dim=8, seed=1)
        assert np.array_equal(
            toy.embed_images(["a dog"])[0], toy.embed_texts(["a dog"])[0]
        )

    def test_single_dimension_per_run(self):
        toy = ToyBackend(dim=12, seed=5)
        out = toy.embed_texts(["a", "b", "c"])
        assert out.shape == (3, 12)

    def test_seed_changes_vectors(self):
        a = ToyBackend(dim=8, seed=1).embed_texts(["dog"])[0]
        b = ToyBackend(dim=8, seed=2).embed_texts(["dog"])[0]
        assert not np.array_equal(a, b)


class TestVectorFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "vectors.bin"
        vecs = {
            "alpha": np.arange(4, dtype=np.float32),
            "beta": np.ones(4, dtype=np.float32),
            "gamma": np.array([0.5, -1.5, 2.0, 3.25], dtype=np.float32),
        }
        count = write_vector_file(path, vecs.items())
        assert count == 3
        dim, loaded = read_vector_file(path)
        assert dim == 4
        for text, vec in vecs.items():
            assert np.array_equal(loaded[hash_key(text)], vec.astype(np.float64))

    def test_file_backend_lookup(self, tmp_path):
        path = tmp_path / "vectors.bin"
        write_vector_file(path, [("hello", np.ones(3)), ("world", np.zeros(3))])
        backend = FileBackend(path)
        out = backend.embed_texts(["hello", "world", "hello"])
        assert out.shape == (3, 3)
        assert np.array_equal(out[0], out[2])

    def test_missing_keys_listed(self, tmp_path):
        path = tmp_path / "vectors.bin"
        write_vector_file(path, [("hello", np.ones(3))])
        backend = FileBackend(path)
        with pytest.raises(BackendError, match="missing"):
            backend.embed_texts(["hello", "absent text"])

    def test_truncated_file_rejected(self, tmp_path):
        path = tmp_path / "vectors.bin"
        write_vector_file(path, [("hello", np.ones(3))])
        raw = path.read_bytes()
        path.write_bytes(raw[:-2])
        with pytest.raises(BackendError, match="expected"):
            FileBackend(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(BackendError, match="not found"):
            FileBackend(tmp_path / "nope.bin")

    def test_inconsistent_dimensions_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="dimensions"):
            write_vector_file(tmp_path / "v.bin", [("a", np.ones(3)), ("b", np.ones(4))])


class TestHttpBackend:
    def make_backend(self, app=None, **kwargs) -> tuple[HttpBackend, object]:
        app = app or make_stub_app()
        backend = HttpBackend(
            base_url="http://stub.local",
            model="stub-16",
            client=stub_client(app),
            **kwargs,
        )
        return backend, app

    def test_embed_shapes(self):
        backend, _ = self.make_backend()
        out = backend.embed_texts(["a dog", "a cat"])
        assert out.shape == (2, 16)
        images = backend.embed_images(["img-1"])
        assert images.shape == (1, 16)

    def test_cache_deduplicates_requests(self):
        backend, app = self.make_backend()
        backend.embed_texts(["one", "two"])
        calls_after_first = app.state.embed_calls
        backend.embed_texts(["one", "two", "one"])
        assert app.state.embed_calls == calls_after_first

    def test_batching_respects_batch_size(self):
        backend, app = self.make_backend(batch_size=2)
        backend.embed_texts([f"text {i}" for i in range(5)])
        assert app.state.embed_calls == 3

    def test_unknown_model_is_backend_error_with_request_id(self):
        app = make_stub_app()
        backend = HttpBackend(
            base_url="http://stub.local", model="nope", client=stub_client(app)
        )
        with pytest.raises(BackendError, match="request id"):
            backend.embed_texts(["x"])

    def test_dimension_mismatch_rejected(self):
        app = make_stub_app(models={"stub-16": 16, "stub-8": 8})
        backend, _ = self.make_backend(app=app)
        backend.embed_texts(["a"])
        backend.model = "stub-8"  # dimension changes under the client's feet
        with pytest.raises(BackendError, match="dimension"):
            backend.embed_texts(["brand new text"])

    def test_health(self):
        backend, _ = self.make_backend()
        body = backend.health()
        assert body["status"] == "ok"
        assert "stub-16" in body["models"]


class TestMakeBackend:
    def test_toy_config(self):
        backend = make_backend(BackendConfig(kind="toy", dim=8, seed=1))
        assert isinstance(backend, ToyBackend)

    def test_file_config(self, tmp_path):
        path = tmp_path / "v.bin"
        write_vector_file(path, [("a", np.ones(2))])
        backend = make_backend(BackendConfig(kind="file", path=str(path)))
        assert isinstance(backend, FileBackend)

    def test_http_requires_url_or_env(self, monkeypatch):
        monkeypatch.delenv("POSEDIT_EMBED_URL", raising=False)
        with pytest.raises(BackendError, match="POSEDIT_EMBED_URL"):
            make_backend(BackendConfig(kind="http", model="m"))

    def test_http_url_from_env(self, monkeypatch):
        monkeypatch.setenv("POSEDIT_EMBED_URL", "http://example.invalid")
        backend = make_backend(BackendConfig(kind="http", model="m"))
        assert isinstance(backend, HttpBackend)

    def test_invalid_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown backend kind"):
            BackendConfig(kind="quantum")

    def test_file_kind_requires_path(self):
        with pytest.raises(ValueError, match="path"):
            BackendConfig(kind="file")


class TestProtocolContract:
    def test_stub_passes_contract_suite(self):
        with stub_client(make_stub_app(max_batch=32)) as client:
            run_http_contract_suite(client, model="stub-16", max_batch=32)
