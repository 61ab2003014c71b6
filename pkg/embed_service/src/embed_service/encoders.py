"""Encoder handles behind the model registry.

Three kinds: a dependency-free deterministic hash encoder (always
available, used for protocol tests and offline smoke runs), sentence-
transformers text encoders, and CLIP for the text+image case. The heavy
kinds import their frameworks lazily so the service runs without torch
installed as long as only hash models are configured.
"""
from __future__ import annotations

import base64
import hashlib
import io
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

__all__ = ["EncoderError", "HashEncoder", "SbertEncoder", "ClipEncoder", "build_encoder"]


class EncoderError(RuntimeError):
    pass


class HashEncoder:
    """Deterministic token-hash embeddings; modality: text and image ids."""

    text = True
    image = True

    def __init__(self, dim: int = 64, seed: int = 0):
        self.dim = dim
        self.seed = seed
        self.checkpoint_hash: Optional[str] = None

    def _token_vector(self, token: str) -> np.ndarray:
        values: list[float] = []
        block = 0
        while len(values) < self.dim:
            digest = hashlib.sha256(f"{self.seed}:{block}:{token}".encode()).digest()
            for i in range(0, len(digest), 8):
                u = int.from_bytes(digest[i : i + 8], "little")
                values.append(u / 2**63 - 1.0)
            block += 1
        vec = np.array(values[: self.dim])
        norm = float(np.linalg.norm(vec))
        return vec / norm if norm else vec

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        rows = []
        for text in texts:
            tokens = text.split()
            if not tokens:
                rows.append(np.zeros(self.dim))
                continue
            acc = np.zeros(self.dim)
            for token in tokens:
                acc += self._token_vector(token)
            mean = acc / len(tokens)
            norm = float(np.linalg.norm(mean))
            rows.append(mean / norm if norm else mean)
        return np.stack(rows)

    def encode_images(self, refs: Sequence[str], image_root: Optional[Path] = None) -> np.ndarray:
        return self.encode_texts([f"image:{r}" for r in refs])


class SbertEncoder:
    """sentence-transformers checkpoint; text only."""

    text = True
    image = False

    def __init__(self, checkpoint: str, seed: int = 0):
        try:
            import torch
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise EncoderError(f"sentence-transformers unavailable: {exc}") from exc
        torch.manual_seed(seed)
        try:
            self._model = SentenceTransformer(checkpoint)
        except Exception as exc:
            raise EncoderError(f"cannot load checkpoint {checkpoint!r}: {exc}") from exc
        self._model.eval()
        self.dim = int(self._model.get_sentence_embedding_dimension())
        self.checkpoint_hash = _checkpoint_fingerprint(checkpoint, self._model)

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        vectors = self._model.encode(
            list(texts), convert_to_numpy=True, show_progress_bar=False
        )
        return np.asarray(vectors, dtype=np.float64)

    def encode_images(self, refs, image_root=None):
        raise EncoderError("model has no image modality")


class ClipEncoder:
    """CLIP checkpoint via transformers; text and image."""

    text = True
    image = True

    def __init__(self, checkpoint: str, seed: int = 0):
        try:
            import torch
            from transformers import CLIPModel, CLIPProcessor
        except ImportError as exc:
            raise EncoderError(f"transformers/CLIP unavailable: {exc}") from exc
        torch.manual_seed(seed)
        try:
            self._model = CLIPModel.from_pretrained(checkpoint)
            self._processor = CLIPProcessor.from_pretrained(checkpoint)
        except Exception as exc:
            raise EncoderError(f"cannot load checkpoint {checkpoint!r}: {exc}") from exc
        self._model.eval()
        self._torch = torch
        self.dim = int(self._model.config.projection_dim)
        self.checkpoint_hash = _checkpoint_fingerprint(checkpoint, self._model)

    def encode_texts(self, texts: Sequence[str]) -> np.ndarray:
        inputs = self._processor(text=list(texts), return_tensors="pt", padding=True)
        with self._torch.no_grad():
            features = self._model.get_text_features(**inputs)
        return features.cpu().numpy().astype(np.float64)

    def encode_images(self, refs: Sequence[str], image_root: Optional[Path] = None) -> np.ndarray:
        from PIL import Image

        images = []
        for ref in refs:
            data = _resolve_image(ref, image_root)
            images.append(Image.open(io.BytesIO(data)).convert("RGB"))
        inputs = self._processor(images=images, return_tensors="pt")
        with self._torch.no_grad():
            features = self._model.get_image_features(**inputs)
        return features.cpu().numpy().astype(np.float64)


def _resolve_image(ref: str, image_root: Optional[Path]) -> bytes:
    if ref.startswith("b64:"):
        return base64.b64decode(ref[4:])
    candidates = [Path(ref)]
    if image_root is not None:
        candidates.append(Path(image_root) / ref)
    for path in candidates:
        if path.is_file():
            return path.read_bytes()
    raise EncoderError(f"image reference {ref!r} not found")


def _checkpoint_fingerprint(checkpoint: str, model) -> str:
    try:
        import torch

        digest = hashlib.sha256()
        digest.update(checkpoint.encode())
        state = model.state_dict() if hasattr(model, "state_dict") else {}
        for name in sorted(state):
            digest.update(name.encode())
            tensor = state[name]
            digest.update(str(tuple(tensor.shape)).encode())
        return digest.hexdigest()[:16]
    except Exception:
        return hashlib.sha256(checkpoint.encode()).hexdigest()[:16]


def build_encoder(kind: str, *, dim: int = 64, seed: int = 0, checkpoint: str | None = None):
    if kind == "hash":
        return HashEncoder(dim=dim, seed=seed)
    if kind == "sbert":
        if not checkpoint:
            raise EncoderError("sbert models need a checkpoint name")
        return SbertEncoder(checkpoint, seed=seed)
    if kind == "clip":
        if not checkpoint:
            raise EncoderError("clip models need a checkpoint name")
        return ClipEncoder(checkpoint, seed=seed)
    raise EncoderError(f"unknown encoder kind {kind!r}")
