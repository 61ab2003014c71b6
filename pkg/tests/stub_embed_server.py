"""A minimal in-process embedding service implementing the HTTP protocol.

Used by the backend client tests and the protocol contract suite. Vectors
are deterministic hashes so assertions are reproducible.
"""
from __future__ import annotations

import hashlib

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel


class EmbedRequest(BaseModel):
    model: str
    texts: list[str]


class EmbedImageRequest(BaseModel):
    model: str
    ids: list[str] | None = None
    b64: list[str] | None = None


def _vector(text: str, dim: int) -> list[float]:
    values = []
    block = 0
    while len(values) < dim:
        digest = hashlib.sha256(f"{block}:{text}".encode()).digest()
        values.extend(b / 255.0 for b in digest)
        block += 1
    return values[:dim]


def make_stub_app(models: dict[str, int] | None = None, max_batch: int = 32) -> FastAPI:
    """models maps model name -> dimension."""
    registry = models or {"stub-16": 16}
    app = FastAPI()
    app.state.embed_calls = 0

    @app.get("/health")
    def health():
        return {"status": "ok", "models": sorted(registry)}

    @app.post("/embed")
    def embed(req: EmbedRequest):
        if req.model not in registry:
            return JSONResponse(status_code=404, content={"error": f"unknown model {req.model}"})
        if len(req.texts) > max_batch:
            return JSONResponse(status_code=413, content={"error": "batch too large"})
        app.state.embed_calls += 1
        dim = registry[req.model]
        return {"vectors": [_vector(t, dim) for t in req.texts], "dimension": dim}

    @app.post("/embed_image")
    def embed_image(req: EmbedImageRequest):
        if req.model not in registry:
            return JSONResponse(status_code=404, content={"error": f"unknown model {req.model}"})
        refs = req.ids if req.ids is not None else (req.b64 or [])
        if len(refs) > max_batch:
            return JSONResponse(status_code=413, content={"error": "batch too large"})
        dim = registry[req.model]
        return {"vectors": [_vector(f"image:{r}", dim) for r in refs], "dimension": dim}

    return app
