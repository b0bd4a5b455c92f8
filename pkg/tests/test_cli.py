from __future__ import annotations

import json

import pytest

from chain_of_scheduling.cli import CliConfig, load_runtime_config, main
from chain_of_scheduling.core import ConfigError
from chain_of_scheduling.core.codec import load_instance, save_instance
from chain_of_scheduling.costrace import SftRecord


@pytest.fixture
def scene_path(repair_scene, tmp_path):
    path = tmp_path / "scene.json"
    save_instance(repair_scene, path)
    return str(path)


@pytest.fixture
def small_path(small_instance, tmp_path):
    path = tmp_path / "small.json"
    save_instance(small_instance, path)
    return str(path)


def _run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestConfig:
    def test_log_level_sources(self):
        assert load_runtime_config({}).log_level == "warning"
        assert load_runtime_config({"COS_LOG_LEVEL": "DEBUG"}).log_level == "debug"
        assert load_runtime_config({"COS_LOG_LEVEL": "debug"}, override="error").log_level == "error"

    def test_bad_log_level(self):
        with pytest.raises(ConfigError):
            load_runtime_config({"COS_LOG_LEVEL": "loud"})

    def test_cli_config_k(self):
        with pytest.raises(ConfigError):
            CliConfig(subcommand="solve", k=0).validate()
        CliConfig(subcommand="bench").validate()


class TestSolvers:
    def test_solve(self, capsys, small_path):
        status, out, _ = _run(capsys, "solve", "--instance", small_path, "--k", "3")
        assert status == 0
        payload = json.loads(out)
        assert payload["k"] == 3
        assert [c["event_ids"] for c in payload["candidates"]] == [
            ["e01", "e03"],
            ["e02"],
            ["e01"],
        ]

    def test_oracle_matches_solve(self, capsys, small_path):
        _, solved, _ = _run(capsys, "solve", "--instance", small_path)
        _, oracle, _ = _run(capsys, "oracle", "--instance", small_path)
        assert solved == oracle

    def test_greedy_and_ga(self, capsys, small_path):
        status, out, _ = _run(capsys, "greedy", "--instance", small_path)
        assert status == 0
        assert json.loads(out)["event_ids"] == ["e02"]
        status, out, _ = _run(
            capsys, "ga", "--instance", small_path, "--generations", "5", "--seed", "2"
        )
        assert status == 0
        assert json.loads(out)["feasible"] is True

    def test_pretty_table(self, capsys, small_path):
        status, out, _ = _run(capsys, "solve", "--instance", small_path, "--pretty")
        assert status == 0
        assert out.splitlines()[1].endswith("e01 -> e03")

    def test_output_file(self, capsys, small_path, tmp_path):
        target = tmp_path / "out.json"
        status, out, _ = _run(
            capsys, "solve", "--instance", small_path, "--output", str(target)
        )
        assert status == 0
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["candidates"]


class TestVerifyAndRepair:
    def test_verify_feasible(self, capsys, scene_path):
        status, out, _ = _run(
            capsys, "verify", "--instance", scene_path, "--sequence", '["A","B"]'
        )
        assert status == 0
        assert json.loads(out)["violations"] == []

    def test_verify_reports_violation(self, capsys, scene_path):
        status, out, _ = _run(
            capsys, "verify", "--instance", scene_path, "--sequence", '["B","C"]'
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["feasible"] is False
        assert payload["violations"][0]["kind"] == "travel"

    def test_repair_strategies(self, capsys, scene_path):
        sequence = '["A","B","C","D"]'
        _, out, _ = _run(capsys, "repair", "--instance", scene_path, "--sequence", sequence)
        assert json.loads(out)["schedule"]["event_ids"] == ["A", "B", "F", "D"]
        _, out, _ = _run(
            capsys,
            "repair",
            "--instance",
            scene_path,
            "--sequence",
            sequence,
            "--strategy",
            "drop",
        )
        assert json.loads(out)["schedule"]["event_ids"] == ["A", "B", "D"]

    def test_grade(self, capsys, scene_path, tmp_path):
        output = tmp_path / "model.txt"
        output.write_text("Integration:\nBest schedule: A -> B -> C -> D\n", encoding="utf-8")
        status, out, _ = _run(
            capsys, "grade", "--instance", scene_path, "--model-output", str(output)
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["conflict_rate"] == 0.5
        assert payload["conflicted"] is True
        assert payload["repair"]["schedule"]["event_ids"] == ["A", "B", "F", "D"]


class TestTraceAndDataset:
    def test_trace_grades_back_to_solve(self, capsys, small_path, tmp_path):
        _, trace_text, _ = _run(capsys, "trace", "--instance", small_path, "--k", "3")
        assert trace_text.startswith("Exploration:\n")
        output = tmp_path / "trace.txt"
        output.write_text(trace_text, encoding="utf-8")
        _, graded, _ = _run(
            capsys, "grade", "--instance", small_path, "--model-output", str(output)
        )
        _, solved, _ = _run(capsys, "solve", "--instance", small_path, "--k", "3")
        assert (
            json.loads(graded)["repair"]["schedule"]["event_ids"]
            == json.loads(solved)["candidates"][0]["event_ids"]
        )

    def test_trace_no_integration_is_seeded(self, capsys, small_path):
        argv = ["trace", "--instance", small_path, "--style", "no-integration", "--seed", "2"]
        status, first, _ = _run(capsys, *argv)
        assert status == 0
        _, second, _ = _run(capsys, *argv)
        assert first == second
        assert "Integration:\nBest schedule: " in first

    def test_emit_sft_to_file(self, capsys, tmp_path):
        target = tmp_path / "sft.jsonl"
        status, out, _ = _run(
            capsys,
            "emit-sft",
            "--n-events",
            "8",
            "--count",
            "3",
            "--seed",
            "5",
            "--output",
            str(target),
        )
        assert status == 0
        assert json.loads(out)["records"] == 3
        lines = target.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 3
        assert SftRecord.model_validate_json(lines[0]).completion.startswith("Exploration:")

    def test_emit_sft_style(self, capsys, small_path):
        status, out, _ = _run(
            capsys, "emit-sft", "--instances", small_path, "--style", "no-verification"
        )
        assert status == 0
        assert "Verification:" not in SftRecord.model_validate_json(out.strip()).completion


class TestGenAndReduce:
    def test_gen_single_instance(self, capsys):
        status, out, _ = _run(capsys, "gen", "--n-events", "5", "--seed", "3")
        assert status == 0
        assert json.loads(out)["instance_id"] == "gen-3-n5"

    def test_gen_out_dir(self, capsys, tmp_path):
        status, out, _ = _run(
            capsys,
            "gen",
            "--n-events",
            "4",
            "--count",
            "2",
            "--out-dir",
            str(tmp_path / "instances"),
        )
        assert status == 0
        paths = json.loads(out)["paths"]
        assert len(paths) == 2
        assert load_instance(paths[1]).label == "gen-1-n4"

    def test_gen_many_needs_out_dir(self, capsys):
        status, _, err = _run(capsys, "gen", "--n-events", "4", "--count", "2")
        assert status == 1
        assert "--out-dir" in err

    def test_gen_is_deterministic(self, capsys):
        _, first, _ = _run(capsys, "gen", "--n-events", "6", "--seed", "9")
        _, second, _ = _run(capsys, "gen", "--n-events", "6", "--seed", "9")
        assert first == second

    def test_reduce_graph_file(self, capsys, tmp_path):
        graph = tmp_path / "graph.json"
        graph.write_text(json.dumps({"vertices": 3, "edges": [[0, 1], [1, 2]]}), encoding="utf-8")
        status, out, _ = _run(capsys, "reduce", "--graph", str(graph))
        assert status == 0
        instance_path = tmp_path / "reduced.json"
        instance_path.write_text(out, encoding="utf-8")
        _, solved, _ = _run(capsys, "solve", "--instance", str(instance_path), "--k", "1")
        assert json.loads(solved)["candidates"][0]["total_utility"] == 3.0

    def test_reduce_random(self, capsys):
        status, out, _ = _run(capsys, "reduce", "--random", "4", "--seed", "1")
        assert status == 0
        assert len(json.loads(out)["events"]) == 4


class TestBench:
    def test_bench_json(self, capsys, small_path, scene_path):
        status, out, _ = _run(
            capsys, "bench", "--instances", small_path, scene_path, "--methods", "dp,greedy"
        )
        assert status == 0
        payload = json.loads(out)
        assert [row["method"] for row in payload["rows"]] == ["dp", "greedy"]
        assert payload["jobs"] == 1

    def test_bench_csv_with_log(self, capsys, tmp_path):
        log = tmp_path / "runs.jsonl"
        status, out, _ = _run(
            capsys,
            "bench",
            "--n-events",
            "8",
            "--count",
            "2",
            "--methods",
            "dp,cos",
            "--format",
            "csv",
            "--log",
            str(log),
        )
        assert status == 0
        lines = out.splitlines()
        assert lines[0] == "method,utility,latency_ms,conflict_rate,n"
        assert lines[2].startswith("cos,")
        assert len(log.read_text(encoding="utf-8").splitlines()) == 4

    def test_bench_external_outputs(self, capsys, scene_path, tmp_path):
        outputs = tmp_path / "outputs"
        outputs.mkdir()
        (outputs / "repair-scene.json").write_text(
            json.dumps({"text": "Best schedule: A -> B -> C -> D"}), encoding="utf-8"
        )
        status, out, _ = _run(
            capsys,
            "bench",
            "--instances",
            scene_path,
            "--methods",
            "external",
            "--outputs",
            str(outputs),
        )
        assert status == 0
        (row,) = json.loads(out)["rows"]
        assert row["conflict_rate"] == 0.5
        assert row["errors"] == 0

    def test_bench_style_and_strategy(self, capsys, scene_path, small_path, tmp_path):
        outputs = tmp_path / "outputs"
        outputs.mkdir()
        (outputs / "repair-scene.txt").write_text(
            "Best schedule: A -> B -> C -> D\n", encoding="utf-8"
        )
        status, out, _ = _run(
            capsys,
            "bench",
            "--instances",
            scene_path,
            "--methods",
            "external",
            "--outputs",
            str(outputs),
            "--strategy",
            "drop",
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["strategy"] == "drop"
        assert payload["rows"][0]["utility"] == pytest.approx(1.5)

        status, out, _ = _run(
            capsys,
            "bench",
            "--instances",
            small_path,
            "--methods",
            "dp,cos",
            "--style",
            "no-integration",
            "--seed",
            "4",
        )
        assert status == 0
        payload = json.loads(out)
        assert payload["style"] == "no-integration"
        dp, cos = payload["rows"]
        assert cos["utility"] <= dp["utility"]
        assert cos["conflict_rate"] == 0.0

    def test_bench_rejects_unknown_style(self, capsys, small_path):
        status, _, _ = _run(
            capsys, "bench", "--instances", small_path, "--style", "no-thinking"
        )
        assert status == 1

    def test_unknown_method(self, capsys, small_path):
        status, _, err = _run(capsys, "bench", "--instances", small_path, "--methods", "magic")
        assert status == 1
        assert "magic" in err


class TestErrors:
    def test_unknown_subcommand(self, capsys):
        status, _, err = _run(capsys, "teleport")
        assert status == 1
        assert "usage" in err

    def test_unknown_flag(self, capsys, small_path):
        status, _, _ = _run(capsys, "solve", "--instance", small_path, "--fast")
        assert status == 1

    def test_missing_file(self, capsys, tmp_path):
        status, _, err = _run(capsys, "solve", "--instance", str(tmp_path / "absent.json"))
        assert status == 1
        assert err.startswith("error:")

    def test_bad_k(self, capsys, small_path):
        status, _, err = _run(capsys, "solve", "--instance", small_path, "--k", "0")
        assert status == 1
        assert "k must be" in err

    def test_unknown_event_in_sequence(self, capsys, scene_path):
        status, _, err = _run(
            capsys, "verify", "--instance", scene_path, "--sequence", '["A","Z"]'
        )
        assert status == 1
        assert "Z" in err

    def test_oracle_size_guard(self, capsys, tmp_path):
        _run(capsys, "gen", "--n-events", "20", "--output", str(tmp_path / "big.json"))
        status, _, err = _run(capsys, "oracle", "--instance", str(tmp_path / "big.json"))
        assert status == 1
        assert "limited" in err
