from __future__ import annotations

import json

import pytest
import yaml
from click.testing import CliRunner
from fastapi.testclient import TestClient

from posedit.cli import main
from posedit.runner import ExperimentConfig, load_config
from posedit.service import create_app

from conftest import DATA_DIR


def make_config_dict(tmp_path, **overrides):
    cfg = {
        "dataset": str(DATA_DIR / "captions20.jsonl"),
        "codes": ["NOUN-B", "ADP-B"],
        "backends": {"toy": {"kind": "toy", "dim": 32, "seed": 5}},
        "tasks": ["LR"],
        "ks": [1],
        "seed": 11,
        "out_dir": str(tmp_path / "results"),
    }
    cfg.update(overrides)
    return cfg


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


class TestConfig:
    def test_yaml_roundtrip(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg_path.write_text(yaml.safe_dump(make_config_dict(tmp_path)))
        config = load_config(cfg_path)
        assert isinstance(config, ExperimentConfig)
        assert config.backends["toy"].kind == "toy"
        assert config.ks == [1]

    def test_invalid_code_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown intervention code"):
            load_config(make_config_dict(tmp_path, codes=["NOUN-ZZ"]))

    def test_scale_must_be_power_of_ten(self, tmp_path):
        with pytest.raises(ValueError, match="power of ten"):
            load_config(make_config_dict(tmp_path, scale=3))

    def test_unknown_task_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown task"):
            load_config(make_config_dict(tmp_path, tasks=["XX"]))

    def test_backend_required(self, tmp_path):
        with pytest.raises(ValueError, match="backend"):
            load_config(make_config_dict(tmp_path, backends={}))


class TestService:
    def test_healthz(self, client):
        body = client.get("/healthz").json()
        assert body["status"] == "ok"
        assert body["codes"] == 37

    def test_edit_endpoint(self, client, tmp_path):
        response = client.post(
            "/edit", json={"config": make_config_dict(tmp_path), "code": "NOUN-B"}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["code"] == "NOUN-B"
        assert len(body["edits"]) == 20
        assert body["total_perturbed"] == sum(e["n_perturbed"] for e in body["edits"])

    def test_edit_unknown_code_is_422(self, client, tmp_path):
        response = client.post(
            "/edit", json={"config": make_config_dict(tmp_path), "code": "NOUN-ZZ"}
        )
        assert response.status_code == 422

    def test_run_render_stats(self, client, tmp_path):
        config = make_config_dict(tmp_path)
        response = client.post("/run", json={"config": config})
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert len(rows) == 2
        rendered = client.post("/render", json={"rows": rows, "format": "markdown"})
        assert rendered.status_code == 200
        assert "### LR ACE@R1" in rendered.json()["document"]
        stats = client.post("/stats", json={"config": config})
        assert stats.status_code == 200
        assert stats.json()["queries"] == 20

    def test_render_requires_input(self, client):
        assert client.post("/render", json={"format": "csv"}).status_code == 422

    def test_solve_endpoint(self, client):
        response = client.post("/match/solve", json={
            "sources": ["s0", "s1"],
            "targets": ["t0", "t1"],
            "edges": [["s0", "t0", 1.0], ["s0", "t1", 2.0], ["s1", "t0", 2.0], ["s1", "t1", 1.0]],
        })
        assert response.status_code == 200
        body = response.json()
        assert body["pairs"] == {"s0": "t0", "s1": "t1"}
        assert body["total_weight"] == 2.0

    def test_solve_rejects_off_graph_edges(self, client):
        response = client.post("/match/solve", json={
            "sources": ["s0"], "targets": ["t0"], "edges": [["s0", "zz", 1.0]],
        })
        assert response.status_code == 422


class TestCli:
    def test_edit_writes_jsonl(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg_path.write_text(yaml.safe_dump(make_config_dict(tmp_path)))
        out_path = tmp_path / "edits.jsonl"
        runner = CliRunner()
        result = runner.invoke(
            main, ["edit", "--config", str(cfg_path), "--code", "NOUN-B", "--out", str(out_path)]
        )
        assert result.exit_code == 0, result.output
        lines = out_path.read_text().splitlines()
        assert len(lines) == 20
        first = json.loads(lines[0])
        assert first["code"] == "NOUN-B"

    def test_run_prints_markdown(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg_path.write_text(yaml.safe_dump(make_config_dict(tmp_path)))
        runner = CliRunner()
        result = runner.invoke(main, ["run", "--config", str(cfg_path)])
        assert result.exit_code == 0, result.output
        assert "### LR ACE@R1" in result.output

    def test_render_from_store(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg = make_config_dict(tmp_path)
        cfg_path.write_text(yaml.safe_dump(cfg))
        runner = CliRunner()
        assert runner.invoke(main, ["run", "--config", str(cfg_path)]).exit_code == 0
        store = tmp_path / "results" / "results.jsonl"
        result = runner.invoke(main, ["render", "--results", str(store), "--format", "csv"])
        assert result.exit_code == 0, result.output
        assert result.output.startswith("model,task,code")

    def test_stats_output(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg_path.write_text(yaml.safe_dump(make_config_dict(tmp_path)))
        runner = CliRunner()
        result = runner.invoke(main, ["stats", "--config", str(cfg_path)])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["queries"] == 20

    def test_unknown_code_fails_cleanly(self, tmp_path):
        cfg_path = tmp_path / "config.yaml"
        cfg_path.write_text(yaml.safe_dump(make_config_dict(tmp_path)))
        runner = CliRunner()
        result = runner.invoke(main, ["edit", "--config", str(cfg_path), "--code", "NOPE"])
        assert result.exit_code != 0
        assert "HTTP 422" in result.output


class TestRunnerCheckpoint:
    def test_resume_skips_done_cells(self, tmp_path):
        config = load_config(make_config_dict(tmp_path))
        from posedit.runner import run

        first = run(config)
        store = tmp_path / "results" / "results.jsonl"
        lines_after_first = store.read_text().splitlines()
        second = run(config)
        assert store.read_text().splitlines() == lines_after_first
        assert first.value_records() == second.value_records()

    def test_interrupted_run_resumes_to_identical_store(self, tmp_path):
        config = load_config(make_config_dict(tmp_path))
        from posedit.runner import run

        full = run(config)
        full_records = full.value_records()

        # simulate an interrupt: a second out_dir primed with only the
        # first finished cell, then a rerun
        config2 = load_config(make_config_dict(tmp_path, out_dir=str(tmp_path / "r2")))
        (tmp_path / "r2").mkdir()
        store2 = tmp_path / "r2" / "results.jsonl"
        store1 = tmp_path / "results" / "results.jsonl"
        first_line = store1.read_text().splitlines()[0]
        store2.write_text(first_line + "\n")
        resumed = run(config2)
        assert resumed.value_records() == full_records
