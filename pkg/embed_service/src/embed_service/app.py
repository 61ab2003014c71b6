"""The embedding service: /embed, /embed_image, /health.

Request handling is concurrent but each model handle runs one batch at a
time behind its own lock. Within one process, vectors for equal inputs
are equal; cross-platform bit-equality is not promised for torch models.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml
from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .encoders import EncoderError, build_encoder

__all__ = ["ModelSpec", "ServiceConfig", "ModelRegistry", "create_app", "load_service_config"]

DEFAULT_MAX_BATCH = 64


@dataclass(frozen=True)
class ModelSpec:
    name: str
    kind: str  # hash | sbert | clip
    dim: int = 64
    seed: int = 0
    checkpoint: Optional[str] = None


@dataclass
class ServiceConfig:
    models: list[ModelSpec] = field(default_factory=lambda: [ModelSpec(name="hash-64", kind="hash")])
    max_batch: int = DEFAULT_MAX_BATCH
    image_root: Optional[str] = None


def load_service_config(path: str | Path) -> ServiceConfig:
    raw = yaml.safe_load(Path(path).read_text()) or {}
    models = [ModelSpec(**spec) for spec in raw.get("models", [])]
    return ServiceConfig(
        models=models or ServiceConfig().models,
        max_batch=raw.get("max_batch", DEFAULT_MAX_BATCH),
        image_root=raw.get("image_root"),
    )


class ModelRegistry:
    """Loaded encoder handles with modality flags and per-model locks."""

    def __init__(self, config: ServiceConfig):
        self._encoders: dict[str, object] = {}
        self._locks: dict[str, threading.Lock] = {}
        self.load_errors: dict[str, str] = {}
        for spec in config.models:
            try:
                encoder = build_encoder(
                    spec.kind, dim=spec.dim, seed=spec.seed, checkpoint=spec.checkpoint
                )
            except EncoderError as exc:
                self.load_errors[spec.name] = str(exc)
                continue
            self._encoders[spec.name] = encoder
            self._locks[spec.name] = threading.Lock()

    @property
    def names(self) -> list[str]:
        return sorted(self._encoders)

    def get(self, name: str):
        return self._encoders.get(name)

    def lock(self, name: str) -> threading.Lock:
        return self._locks[name]

    def checkpoints(self) -> dict[str, Optional[str]]:
        return {
            name: getattr(encoder, "checkpoint_hash", None)
            for name, encoder in sorted(self._encoders.items())
        }


class EmbedRequest(BaseModel):
    model: str
    texts: list[str]


class EmbedImageRequest(BaseModel):
    model: str
    ids: Optional[list[str]] = None
    b64: Optional[list[str]] = None


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    registry = ModelRegistry(config)
    app = FastAPI(title="embed-service")
    app.state.registry = registry
    image_root = Path(config.image_root) if config.image_root else None

    def unknown(model: str) -> JSONResponse:
        return JSONResponse(status_code=404, content={"error": f"unknown model {model!r}"})

    def oversize(count: int) -> JSONResponse:
        return JSONResponse(
            status_code=413,
            content={"error": f"batch of {count} exceeds max_batch={config.max_batch}"},
        )

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "models": registry.names,
            "checkpoints": registry.checkpoints(),
            "max_batch": config.max_batch,
            "load_errors": registry.load_errors,
        }

    @app.post("/embed")
    def embed(req: EmbedRequest):
        encoder = registry.get(req.model)
        if encoder is None:
            return unknown(req.model)
        if len(req.texts) > config.max_batch:
            return oversize(len(req.texts))
        if not getattr(encoder, "text", False):
            return JSONResponse(
                status_code=400, content={"error": f"model {req.model!r} has no text modality"}
            )
        with registry.lock(req.model):
            vectors = encoder.encode_texts(req.texts)
        return {"vectors": vectors.tolist(), "dimension": int(vectors.shape[1])}

    @app.post("/embed_image")
    def embed_image(req: EmbedImageRequest):
        encoder = registry.get(req.model)
        if encoder is None:
            return unknown(req.model)
        refs = req.ids if req.ids is not None else [f"b64:{b}" for b in (req.b64 or [])]
        if len(refs) > config.max_batch:
            return oversize(len(refs))
        if not getattr(encoder, "image", False):
            return JSONResponse(
                status_code=400, content={"error": f"model {req.model!r} has no image modality"}
            )
        try:
            with registry.lock(req.model):
                vectors = encoder.encode_images(refs, image_root=image_root)
        except EncoderError as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {"vectors": vectors.tolist(), "dimension": int(vectors.shape[1])}

    return app
