"""Reusable conformance checks for the embedding-service HTTP protocol.

Any server claiming compatibility (a stub in this repo's tests or a live
embedding service) can be driven with an httpx-style client through
run_http_contract_suite; assertion failures point at the violated clause.
"""
from __future__ import annotations

import httpx

__all__ = ["run_http_contract_suite"]


def run_http_contract_suite(
    client: httpx.Client,
    model: str,
    max_batch: int = 32,
    image_capable: bool = True,
) -> None:
    """Assert protocol conformance of an embedding service.

    Covers /health shape, /embed and /embed_image response shapes and
    dimension consistency, equal vectors for repeated inputs within one
    request, 404 on unknown models, and 413 on oversize batches.
    """
    health = client.get("/health")
    assert health.status_code == 200, f"/health returned {health.status_code}"
    body = health.json()
    assert "status" in body and "models" in body, f"/health missing keys: {body}"
    assert model in body["models"], f"model {model!r} not in /health list {body['models']}"

    texts = ["a dog on the grass", "a cat on the mat"]
    response = client.post("/embed", json={"model": model, "texts": texts})
    assert response.status_code == 200, f"/embed returned {response.status_code}: {response.text}"
    payload = response.json()
    assert "vectors" in payload and "dimension" in payload, f"/embed shape wrong: {payload.keys()}"
    dim = payload["dimension"]
    vectors = payload["vectors"]
    assert len(vectors) == len(texts), "one vector per input text required"
    assert all(len(v) == dim for v in vectors), "all vectors must share the dimension"
    assert all(all(isinstance(x, (int, float)) for x in v) for v in vectors)

    # repeated input inside one request embeds identically
    response = client.post("/embed", json={"model": model, "texts": ["same text", "same text"]})
    assert response.status_code == 200
    pair = response.json()["vectors"]
    assert pair[0] == pair[1], "identical texts in one request must produce equal vectors"
    assert response.json()["dimension"] == dim, "dimension must be stable across calls"

    missing = client.post("/embed", json={"model": "no-such-model", "texts": ["x"]})
    assert missing.status_code == 404, f"unknown model must 404, got {missing.status_code}"
    assert "error" in missing.json(), "404 body must carry an error message"

    oversize = client.post(
        "/embed", json={"model": model, "texts": ["x"] * (max_batch + 1)}
    )
    assert oversize.status_code == 413, f"oversize batch must 413, got {oversize.status_code}"

    if image_capable:
        response = client.post("/embed_image", json={"model": model, "ids": ["img-1", "img-2"]})
        assert response.status_code == 200, f"/embed_image returned {response.status_code}"
        payload = response.json()
        assert len(payload["vectors"]) == 2
        assert all(len(v) == payload["dimension"] for v in payload["vectors"])
