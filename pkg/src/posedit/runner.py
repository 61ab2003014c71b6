"""Configuration-driven experiment orchestration with checkpoint resume.

A run executes the default stream once per (model, task) and the edited
stream once per (model, task, code, k), appending each finished cell to
the JSON-lines results store. Rerunning with the same config skips cells
already in the store, so an interrupted run resumes where it stopped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Optional

import yaml

from .backends import BackendConfig, make_backend
from .corpus import BaselineTagger, Dataset, load_dataset, pos_statistics
from .interventions import (
    EditResources,
    InterventionSpec,
    VALID_CODES,
    edit_dataset,
    edits_to_records,
    prepare_resources,
)
from .lexicon import ColorTable, Lexicon, load_color_table, load_lexicon
from .report import AceReport, ErrorCell, Thresholds, append_store, load_store
from .retrieval import TASKS, AceError, run_experiment

__all__ = ["ExperimentConfig", "load_config", "run", "run_edits", "dataset_statistics"]

_DATA = importlib_resources.files("posedit.data")


@dataclass
class ExperimentConfig:
    dataset: str
    codes: list[str]
    backends: dict[str, BackendConfig]
    lexicon: Optional[str] = None
    colors: Optional[str] = None
    tasks: list[str] = field(default_factory=lambda: ["LR"])
    ks: list[int] = field(default_factory=lambda: [1])
    scale: int = 10**5
    seed: int = 0
    out_dir: str = "results"
    pretagged: bool = False
    workers: int = 1
    sg_strategy: str = "first"
    thresholds: Thresholds = field(default_factory=Thresholds)

    def __post_init__(self) -> None:
        if not _power_of_ten(self.scale):
            raise ValueError(f"scale must be a power of ten, got {self.scale!r}")
        for code in self.codes:
            if code not in VALID_CODES:
                raise ValueError(f"unknown intervention code {code!r}")
        for task in self.tasks:
            if task not in TASKS:
                raise ValueError(f"unknown task {task!r}")
        if not self.backends:
            raise ValueError("at least one backend is required")


def _power_of_ten(value: int) -> bool:
    if value < 1:
        return False
    while value % 10 == 0:
        value //= 10
    return value == 1


def load_config(source: str | Path | dict) -> ExperimentConfig:
    """Build a config from a YAML file path or an equivalent mapping."""
    if isinstance(source, (str, Path)):
        raw = yaml.safe_load(Path(source).read_text())
    else:
        raw = dict(source)
    backends = {
        name: cfg if isinstance(cfg, BackendConfig) else BackendConfig(**cfg)
        for name, cfg in raw.pop("backends", {}).items()
    }
    thresholds = raw.pop("thresholds", None)
    kwargs = dict(raw)
    kwargs["backends"] = backends
    if thresholds:
        kwargs["thresholds"] = (
            thresholds if isinstance(thresholds, Thresholds) else Thresholds(**thresholds)
        )
    return ExperimentConfig(**kwargs)


def _load_shared(config: ExperimentConfig) -> tuple[Lexicon, ColorTable, Dataset]:
    lexicon = load_lexicon(config.lexicon or str(_DATA / "wordnet"))
    colors = load_color_table(config.colors or str(_DATA / "colors.csv"))
    tagger = None if config.pretagged else BaselineTagger(lexicon, colors)
    dataset = load_dataset(config.dataset, pretagged=config.pretagged, tagger=tagger)
    return lexicon, colors, dataset


def _prepare(config: ExperimentConfig) -> tuple[Dataset, EditResources]:
    lexicon, colors, dataset = _load_shared(config)
    resources = prepare_resources(dataset, config.codes, lexicon, colors)
    return dataset, resources


def run(config: ExperimentConfig) -> AceReport:
    """Execute the configured experiment grid and return the full report."""
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    store_path = out_dir / "results.jsonl"
    report = load_store(store_path)
    report.thresholds = config.thresholds
    done = report.key_set()

    dataset, resources = _prepare(config)
    edits_by_code = {}
    for code in config.codes:
        spec = InterventionSpec(code=code, seed=config.seed, sg_strategy=config.sg_strategy)
        edits_by_code[code] = edit_dataset(dataset, spec, resources)

    for model, backend_config in config.backends.items():
        backend = make_backend(backend_config)
        for task in config.tasks:
            for code in config.codes:
                spec = InterventionSpec(
                    code=code, seed=config.seed, sg_strategy=config.sg_strategy
                )
                edits, _n = edits_by_code[code]
                for k in config.ks:
                    if (model, task, code, k) in done:
                        continue
                    try:
                        row = run_experiment(
                            dataset,
                            task,
                            spec,
                            backend,
                            resources,
                            model=model,
                            k=k,
                            scale=config.scale,
                            workers=config.workers,
                            edits=edits,
                        )
                    except AceError as exc:
                        row = ErrorCell(model=model, task=task, code=code, k=k, error=str(exc))
                    report.rows.append(row)
                    append_store(store_path, [row])
                    done.add((model, task, code, k))
    return report


def run_edits(config: ExperimentConfig, code: str) -> list[dict]:
    """Generate edits for one code and return their audit records."""
    if code not in VALID_CODES:
        raise ValueError(f"unknown intervention code {code!r}")
    lexicon, colors, dataset = _load_shared(config)
    resources = prepare_resources(dataset, [code], lexicon, colors)
    spec = InterventionSpec(code=code, seed=config.seed, sg_strategy=config.sg_strategy)
    edits, _total = edit_dataset(dataset, spec, resources)
    return edits_to_records(edits, spec)


def dataset_statistics(config: ExperimentConfig) -> dict:
    """Per-POS token count means and histograms for the configured dataset."""
    _lexicon, _colors, dataset = _load_shared(config)
    return pos_statistics(dataset)
