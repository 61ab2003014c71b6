"""Thin command-line client for the posedit service.

Without --server (or POSEDIT_SERVER) the CLI mounts the FastAPI app over
an in-process ASGI transport, so one-shot local runs need no daemon; with
a server URL the same requests go over the network.
"""
from __future__ import annotations

import asyncio
import json
import os
import sys
from pathlib import Path

import click
import httpx
import yaml


class InProcessTransport(httpx.BaseTransport):
    """Bridge a sync httpx.Client onto the ASGI app without a server."""

    def __init__(self, app) -> None:
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def call() -> httpx.Response:
            response = await self._asgi.handle_async_request(request)
            content = b"".join([chunk async for chunk in response.stream])
            return httpx.Response(
                status_code=response.status_code,
                headers=response.headers,
                content=content,
            )

        return asyncio.run(call())


def _client(server: str | None) -> httpx.Client:
    server = server or os.environ.get("POSEDIT_SERVER")
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from .service import app

    return httpx.Client(
        transport=InProcessTransport(app),
        base_url="http://posedit.local",
        timeout=None,
    )


def _load_config_dict(path: str) -> dict:
    return yaml.safe_load(Path(path).read_text())


def _fail_on_error(response: httpx.Response) -> None:
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except json.JSONDecodeError:
            detail = response.text
        raise click.ClickException(f"HTTP {response.status_code}: {detail}")


@click.group()
@click.option("--server", default=None, help="Base URL of a running posedit service.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """POS-targeted contrastive query edits and retrieval impact reports."""
    ctx.obj = server


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--code", required=True, help="Intervention code, e.g. NOUN-B.")
@click.option("--out", type=click.Path(), default=None, help="Write edits as JSON lines.")
@click.pass_obj
def edit(server: str | None, config_path: str, code: str, out: str | None) -> None:
    """Emit edited queries for one intervention code."""
    with _client(server) as client:
        response = client.post(
            "/edit", json={"config": _load_config_dict(config_path), "code": code}
        )
    _fail_on_error(response)
    body = response.json()
    lines = [json.dumps(rec, sort_keys=True) for rec in body["edits"]]
    if out:
        Path(out).write_text("\n".join(lines) + "\n")
        click.echo(f"wrote {len(lines)} edits to {out} (n={body['total_perturbed']})")
    else:
        for line in lines:
            click.echo(line)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv"]))
@click.pass_obj
def run(server: str | None, config_path: str, fmt: str) -> None:
    """Run the configured experiment grid and print the rendered report."""
    config = _load_config_dict(config_path)
    with _client(server) as client:
        response = client.post("/run", json={"config": config})
        _fail_on_error(response)
        rows = response.json()["rows"]
        rendered = client.post(
            "/render",
            json={"rows": rows, "format": fmt, "thresholds": config.get("thresholds")},
        )
    _fail_on_error(rendered)
    click.echo(rendered.json()["document"], nl=False)


@main.command()
@click.option("--results", "store_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="markdown", type=click.Choice(["markdown", "csv"]))
@click.option("--high", type=float, default=None, help="HIGH flag threshold override.")
@click.option("--low", type=float, default=None, help="LOW flag threshold override.")
@click.pass_obj
def render(server: str | None, store_path: str, fmt: str, high: float | None, low: float | None) -> None:
    """Render a results store as a table."""
    payload: dict = {"store_path": str(Path(store_path).resolve()), "format": fmt}
    if high is not None or low is not None:
        payload["thresholds"] = {
            "high": high if high is not None else 4.0,
            "low": low if low is not None else 1.0,
        }
    with _client(server) as client:
        response = client.post("/render", json=payload)
    _fail_on_error(response)
    click.echo(response.json()["document"], nl=False)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.pass_obj
def stats(server: str | None, config_path: str) -> None:
    """Per-POS token statistics for the configured dataset."""
    with _client(server) as client:
        response = client.post("/stats", json={"config": _load_config_dict(config_path)})
    _fail_on_error(response)
    click.echo(json.dumps(response.json(), indent=2, sort_keys=True))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host: str, port: int) -> None:
    """Run the posedit service."""
    import uvicorn

    uvicorn.run("posedit.service:app", host=host, port=port)


if __name__ == "__main__":
    main(sys.argv[1:])
