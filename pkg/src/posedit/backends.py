"""Embedding backends: precomputed vector files, a remote HTTP service,
and a built-in deterministic toy embedder.

All three expose the same two calls, embed_texts and embed_images, and
return one fixed-dimension vector per item. The FILE store is keyed by
SHA-256 content hashes so originals and edited near-duplicates coexist;
the HTTP client carries a write-through cache so each distinct string is
embedded exactly once per run.
"""
from __future__ import annotations

import hashlib
import os
import struct
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import httpx
import numpy as np

__all__ = [
    "BackendError",
    "BackendConfig",
    "ToyBackend",
    "FileBackend",
    "HttpBackend",
    "make_backend",
    "hash_key",
    "write_vector_file",
    "read_vector_file",
]

_KEY_BYTES = 32
_HEADER = struct.Struct("<II")  # dimension, count


class BackendError(RuntimeError):
    """Raised when a backend cannot produce vectors."""


@dataclass(frozen=True)
class BackendConfig:
    """Declarative backend selection; exactly one kind's fields are used.

    kind='toy': dim, seed. kind='file': path. kind='http': base_url,
    model, batch_size, timeout (base_url falls back to the
    POSEDIT_EMBED_URL environment variable).
    """

    kind: str
    dim: int = 64
    seed: int = 0
    path: Optional[str] = None
    base_url: Optional[str] = None
    model: Optional[str] = None
    batch_size: int = 32
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if self.kind not in ("toy", "file", "http"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "file" and not self.path:
            raise ValueError("file backend requires 'path'")
        if self.kind == "http" and not self.model:
            raise ValueError("http backend requires 'model'")


def hash_key(text: str) -> bytes:
    return hashlib.sha256(text.encode("utf-8")).digest()


class ToyBackend:
    """Hash-seeded deterministic embedder for offline runs and tests.

    A token's vector is derived from SHA-256 of (seed, token) and
    normalized to unit length; a text embeds as the normalized mean of its
    token vectors and the empty text as the zero vector. Image references
    are embedded as text, so toy image vectors derive from their caption.
    """

    def __init__(self, dim: int = 64, seed: int = 0):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.seed = seed

    def _token_vector(self, token: str) -> np.ndarray:
        values: list[float] = []
        block = 0
        while len(values) < self.dim:
            digest = hashlib.sha256(f"{self.seed}:{block}:{token}".encode()).digest()
            for i in range(0, len(digest), 8):
                u = int.from_bytes(digest[i : i + 8], "little")
                values.append(u / 2**63 - 1.0)
            block += 1
        vec = np.array(values[: self.dim], dtype=np.float64)
        norm = float(np.linalg.norm(vec))
        return vec / norm if norm > 0 else vec

    def _text_vector(self, text: str) -> np.ndarray:
        tokens = text.split()
        if not tokens:
            return np.zeros(self.dim, dtype=np.float64)
        acc = np.zeros(self.dim, dtype=np.float64)
        for token in tokens:  # fixed summation order for bit determinism
            acc += self._token_vector(token)
        mean = acc / len(tokens)
        norm = float(np.linalg.norm(mean))
        return mean / norm if norm > 0 else mean

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        if not texts:
            raise ValueError("embed_texts requires at least one text")
        return np.stack([self._text_vector(t) for t in texts])

    def embed_images(self, refs: Sequence[str]) -> np.ndarray:
        return self.embed_texts(refs)


class FileBackend:
    """Exact lookup of precomputed vectors from a binary store."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        if not self.path.exists():
            raise BackendError(f"vector file not found: {self.path}")
        self.dim, self._vectors = read_vector_file(self.path)

    def _lookup(self, keys: Iterable[bytes], labels: Sequence[str]) -> np.ndarray:
        rows = []
        missing = []
        for key, label in zip(keys, labels):
            vec = self._vectors.get(key)
            if vec is None:
                missing.append((label, key.hex()))
            else:
                rows.append(vec)
        if missing:
            listed = ", ".join(f"{h} ({lbl[:40]!r})" for lbl, h in missing[:5])
            raise BackendError(
                f"{len(missing)} vectors missing from {self.path.name}: {listed}"
            )
        return np.stack(rows)

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        if not texts:
            raise ValueError("embed_texts requires at least one text")
        return self._lookup((hash_key(t) for t in texts), texts)

    def embed_images(self, refs: Sequence[str]) -> np.ndarray:
        if not refs:
            raise ValueError("embed_images requires at least one reference")
        return self._lookup((hash_key(r) for r in refs), refs)


class HttpBackend:
    """Client for the embedding service protocol.

    POST {base}/embed {"model", "texts"} -> {"vectors", "dimension"};
    POST {base}/embed_image {"model", "ids"} -> same shape;
    GET {base}/health -> {"status", "models"}. Batches are bounded by
    batch_size and every response is cached by content, so repeated
    strings hit the service once per run.
    """

    def __init__(
        self,
        base_url: str,
        model: str,
        batch_size: int = 32,
        timeout: float = 30.0,
        client: Optional[httpx.Client] = None,
    ):
        self.model = model
        self.batch_size = max(1, batch_size)
        self._client = client or httpx.Client(base_url=base_url, timeout=timeout)
        self._cache: dict[tuple[str, str], np.ndarray] = {}
        self._lock = threading.Lock()
        self.dim: Optional[int] = None

    def health(self) -> dict:
        response = self._client.get("/health")
        if response.status_code != 200:
            raise BackendError(f"health check failed with HTTP {response.status_code}")
        return response.json()

    def _post_batch(self, endpoint: str, payload_key: str, items: Sequence[str]) -> list[np.ndarray]:
        request_id = uuid.uuid4().hex
        response = self._client.post(
            endpoint,
            json={"model": self.model, payload_key: list(items)},
            headers={"X-Request-Id": request_id},
        )
        if response.status_code != 200:
            raise BackendError(
                f"{endpoint} returned HTTP {response.status_code} "
                f"(request id {request_id}): {response.text[:200]}"
            )
        body = response.json()
        vectors = [np.asarray(v, dtype=np.float64) for v in body["vectors"]]
        dim = int(body.get("dimension", vectors[0].shape[0] if vectors else 0))
        if len(vectors) != len(items):
            raise BackendError(
                f"{endpoint} returned {len(vectors)} vectors for {len(items)} items "
                f"(request id {request_id})"
            )
        for vec in vectors:
            if vec.shape != (dim,):
                raise BackendError(
                    f"dimension mismatch from {endpoint}: expected {dim}, got "
                    f"{vec.shape} (request id {request_id})"
                )
        if self.dim is None:
            self.dim = dim
        elif dim != self.dim:
            raise BackendError(
                f"dimension changed across calls: {self.dim} -> {dim} "
                f"(request id {request_id})"
            )
        return vectors

    def _embed(self, kind: str, endpoint: str, payload_key: str, items: Sequence[str]) -> np.ndarray:
        if not items:
            raise ValueError("at least one item is required")
        with self._lock:
            todo = [s for s in dict.fromkeys(items) if (kind, s) not in self._cache]
        for start in range(0, len(todo), self.batch_size):
            batch = todo[start : start + self.batch_size]
            vectors = self._post_batch(endpoint, payload_key, batch)
            with self._lock:
                for item, vec in zip(batch, vectors):
                    self._cache[(kind, item)] = vec
        with self._lock:
            return np.stack([self._cache[(kind, s)] for s in items])

    def embed_texts(self, texts: Sequence[str]) -> np.ndarray:
        return self._embed("text", "/embed", "texts", texts)

    def embed_images(self, refs: Sequence[str]) -> np.ndarray:
        return self._embed("image", "/embed_image", "ids", refs)


def make_backend(config: BackendConfig, client: Optional[httpx.Client] = None):
    """Instantiate the backend a config describes."""
    if config.kind == "toy":
        return ToyBackend(dim=config.dim, seed=config.seed)
    if config.kind == "file":
        return FileBackend(config.path)
    base_url = config.base_url or os.environ.get("POSEDIT_EMBED_URL")
    if not base_url and client is None:
        raise BackendError(
            "http backend needs base_url (or the POSEDIT_EMBED_URL environment variable)"
        )
    return HttpBackend(
        base_url=base_url or "http://embed.invalid",
        model=config.model,
        batch_size=config.batch_size,
        timeout=config.timeout,
        client=client,
    )


def write_vector_file(path: str | Path, items: Iterable[tuple[str | bytes, np.ndarray]]) -> int:
    """Write a binary vector store.

    Layout: header <dimension:u32><count:u32>, then per record a 32-byte
    key (string keys are SHA-256 hashed) followed by dimension little-
    endian float32 values. Returns the record count.
    """
    records = []
    dim = None
    for key, vec in items:
        arr = np.asarray(vec, dtype="<f4")
        if arr.ndim != 1:
            raise ValueError("vectors must be one-dimensional")
        if dim is None:
            dim = arr.shape[0]
        elif arr.shape[0] != dim:
            raise ValueError(f"inconsistent dimensions: {arr.shape[0]} vs {dim}")
        raw_key = hash_key(key) if isinstance(key, str) else key
        if len(raw_key) != _KEY_BYTES:
            raise ValueError(f"keys must be {_KEY_BYTES} bytes")
        records.append((raw_key, arr))
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(dim or 0, len(records)))
        for raw_key, arr in records:
            fh.write(raw_key)
            fh.write(arr.tobytes())
    return len(records)


def read_vector_file(path: str | Path) -> tuple[int, dict[bytes, np.ndarray]]:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise BackendError(f"truncated vector file: {path}")
    dim, count = _HEADER.unpack_from(raw, 0)
    record = _KEY_BYTES + 4 * dim
    expected = _HEADER.size + count * record
    if len(raw) != expected:
        raise BackendError(
            f"vector file {path} has {len(raw)} bytes, expected {expected} "
            f"for {count} records of dimension {dim}"
        )
    vectors: dict[bytes, np.ndarray] = {}
    offset = _HEADER.size
    for _ in range(count):
        key = raw[offset : offset + _KEY_BYTES]
        offset += _KEY_BYTES
        vec = np.frombuffer(raw, dtype="<f4", count=dim, offset=offset).astype(np.float64)
        offset += 4 * dim
        vectors[key] = vec
    return dim, vectors
