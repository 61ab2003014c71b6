"""CLI entry: embed-service [--config models.yaml] [--host H] [--port P]."""
from __future__ import annotations

import argparse


def main() -> None:
    parser = argparse.ArgumentParser(description="Run the embedding service.")
    parser.add_argument("--config", default=None, help="YAML model list")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8080)
    args = parser.parse_args()

    import uvicorn

    from .app import create_app, load_service_config

    config = load_service_config(args.config) if args.config else None
    uvicorn.run(create_app(config), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
