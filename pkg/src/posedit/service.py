"""HTTP facade over the core package.

The CLI talks to this app (in-process by default, over the network when a
server URL is configured), and any other client can drive experiments
through the same endpoints.
"""
from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .interventions import VALID_CODES
from .matching import ConceptGraph, debug_dump, min_weight_matching
from .report import AceReport, ErrorCell, Thresholds, load_store, render
from .retrieval import ExperimentResult
from .runner import dataset_statistics, load_config, run, run_edits

__all__ = ["create_app", "app"]


class EditRequest(BaseModel):
    config: dict
    code: str


class EditResponse(BaseModel):
    code: str
    edits: list[dict]
    total_perturbed: int


class RunRequest(BaseModel):
    config: dict


class RunResponse(BaseModel):
    rows: list[dict]


class RenderRequest(BaseModel):
    format: str = "markdown"
    rows: Optional[list[dict]] = None
    store_path: Optional[str] = None
    thresholds: Optional[dict] = None


class RenderResponse(BaseModel):
    document: str


class StatsRequest(BaseModel):
    config: dict


class StatsResponse(BaseModel):
    queries: int
    means: dict[str, float]
    histograms: dict[str, dict[int, int]]


class SolveRequest(BaseModel):
    sources: list[str]
    targets: list[str]
    edges: list[tuple[str, str, float]] = Field(
        description="(source lemma, target lemma, positive weight) triples"
    )


class HealthResponse(BaseModel):
    status: str
    version: str
    codes: int


def _report_from_request(req: RenderRequest) -> AceReport:
    if req.store_path:
        report = load_store(req.store_path)
    elif req.rows is not None:
        report = AceReport()
        for rec in req.rows:
            if "error" in rec:
                report.rows.append(ErrorCell(**rec))
            else:
                rec.setdefault("timestamp", "")
                report.rows.append(ExperimentResult(**rec))
    else:
        raise HTTPException(status_code=422, detail="provide rows or store_path")
    if req.thresholds:
        report.thresholds = Thresholds(**req.thresholds)
    return report


def create_app() -> FastAPI:
    app = FastAPI(title="posedit", version=__version__)

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__, codes=len(VALID_CODES))

    @app.post("/edit", response_model=EditResponse)
    def edit(req: EditRequest) -> EditResponse:
        try:
            config = load_config(req.config)
            records = run_edits(config, req.code)
        except (ValueError, FileNotFoundError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return EditResponse(
            code=req.code,
            edits=records,
            total_perturbed=sum(r["n_perturbed"] for r in records),
        )

    @app.post("/run", response_model=RunResponse)
    def run_endpoint(req: RunRequest) -> RunResponse:
        try:
            config = load_config(req.config)
            report = run(config)
        except (ValueError, FileNotFoundError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return RunResponse(rows=[r.store_record() for r in report.rows])

    @app.post("/render", response_model=RenderResponse)
    def render_endpoint(req: RenderRequest) -> RenderResponse:
        report = _report_from_request(req)
        try:
            document = render(report, req.format)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return RenderResponse(document=document)

    @app.post("/stats", response_model=StatsResponse)
    def stats(req: StatsRequest) -> StatsResponse:
        try:
            config = load_config(req.config)
            result = dataset_statistics(config)
        except (ValueError, FileNotFoundError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return StatsResponse(**result)

    @app.post("/match/solve")
    def solve(req: SolveRequest) -> dict:
        source_index = {s: i for i, s in enumerate(req.sources)}
        target_index = {t: j for j, t in enumerate(req.targets)}
        weights = {}
        for s, t, w in req.edges:
            if s not in source_index or t not in target_index:
                raise HTTPException(status_code=422, detail=f"edge ({s!r}, {t!r}) off the graph")
            if w <= 0:
                raise HTTPException(status_code=422, detail="edge weights must be positive")
            weights[(source_index[s], target_index[t])] = w
        graph = ConceptGraph(tuple(req.sources), tuple(req.targets), weights)
        return debug_dump(graph, min_weight_matching(graph))

    return app


app = create_app()
