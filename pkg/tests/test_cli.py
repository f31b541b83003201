import pytest

from simoco import (
    ScenarioConfig,
    cnp_initial_sink_position,
    emit_csv,
    generate_network,
    generate_tour,
    quadrant_partition,
    run_experiment_matrix,
    run_scenario,
    tour_export_lines,
    trace_lines,
)
from simoco.cli import main

RUN_FLAGS = ["run", "--mode", "mobile", "--nodes", "24", "--seed", "5",
             "--energy", "0.02", "--rounds", "2000"]


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv("SIMOCO_THREADS", "1")


def read(path):
    return path.read_text()


class TestRun:
    def test_trace_matches_direct_module_calls(self, tmp_path):
        out = tmp_path / "trace.jsonl"
        assert main(RUN_FLAGS + ["-o", str(out)]) == 0
        config = ScenarioConfig(mode="mobile", n=24, seed=5, initial_energy=0.02,
                                max_rounds=2000)
        expected = "\n".join(trace_lines(run_scenario(config))) + "\n"
        assert read(out) == expected

    def test_stdout_by_default(self, capsys):
        assert main(["run", "--nodes", "6", "--seed", "1", "--rounds", "2",
                     "--energy", "0.01"]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 2
        assert out.startswith('{"round":1,')

    def test_traffic_flag_with_count(self, tmp_path):
        out = tmp_path / "t.jsonl"
        code = main(["run", "--nodes", "12", "--seed", "2", "--rounds", "50",
                     "--energy", "0.01", "--traffic", "random_sources:3",
                     "-o", str(out)])
        assert code == 0
        config = ScenarioConfig(n=12, seed=2, max_rounds=50, initial_energy=0.01,
                                traffic="random_sources", sources_per_round=3)
        assert read(out) == "\n".join(trace_lines(run_scenario(config))) + "\n"


class TestMatrix:
    def test_csv_matches_direct_module_calls(self, tmp_path):
        out = tmp_path / "results.csv"
        code = main(["matrix", "--sizes", "8,12", "--seeds", "2",
                     "--energy", "0.004", "--rounds", "500", "-o", str(out)])
        assert code == 0
        base = ScenarioConfig(base_n=50, initial_energy=0.004, max_rounds=500)
        rows = run_experiment_matrix(base, [8, 12], [1, 2], max_workers=1)
        assert read(out) == emit_csv(rows)

    def test_seed_list_form(self, tmp_path):
        out = tmp_path / "results.csv"
        code = main(["matrix", "--sizes", "8", "--seeds", "3,9",
                     "--energy", "0.004", "--rounds", "300", "-o", str(out)])
        assert code == 0
        lines = read(out).splitlines()
        assert len(lines) == 1 + 4  # header + 1 size x 2 modes x 2 seeds
        assert lines[1].startswith("8,mobile,3,")
        assert lines[2].startswith("8,mobile,9,")


class TestTour:
    def test_lines_match_direct_module_calls(self, tmp_path):
        out = tmp_path / "tours.txt"
        assert main(["tour", "--nodes", "40", "--seed", "7", "-o", str(out)]) == 0
        field = generate_network(40, 200.0, 100, 45.0, 7, 0.5)
        tours = []
        for part in quadrant_partition(field):
            if part.member_ids:
                tours.append(generate_tour(field, part, cnp_initial_sink_position(field, part)))
        assert read(out) == "\n".join(tour_export_lines(tours)) + "\n"


class TestConfigFileAndOverrides:
    def test_config_file_applies(self, tmp_path):
        cfg = tmp_path / "scenario.cfg"
        cfg.write_text(
            "# comparison scenario\n"
            "mode = mobile\n"
            "n = 24\n"
            "seed = 5\n"
            "initial_energy = 0.02\n"
            "max_rounds = 2000\n"
        )
        out = tmp_path / "trace.jsonl"
        assert main(["run", "--config", str(cfg), "-o", str(out)]) == 0
        direct = tmp_path / "direct.jsonl"
        assert main(RUN_FLAGS + ["-o", str(direct)]) == 0
        assert read(out) == read(direct)

    def test_flags_override_config_file(self, tmp_path):
        cfg = tmp_path / "scenario.cfg"
        cfg.write_text("n = 6\nseed = 1\ninitial_energy = 0.01\nmax_rounds = 5\n")
        out = tmp_path / "trace.jsonl"
        assert main(["run", "--config", str(cfg), "--rounds", "2", "-o", str(out)]) == 0
        assert len(read(out).splitlines()) == 2

    def test_unknown_config_key_is_error(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nodes = 10\n")  # field is called n
        assert main(["run", "--config", str(cfg)]) == 1
        assert "unknown config key" in capsys.readouterr().err

    def test_missing_config_file_is_error(self, capsys):
        assert main(["run", "--config", "/nonexistent/x.cfg"]) == 1
        assert "config error" in capsys.readouterr().err

    def test_bad_value_type_is_error(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("n = many\n")
        assert main(["run", "--config", str(cfg)]) == 1
        assert "expects int" in capsys.readouterr().err


class TestExitCodes:
    def test_unknown_flag_exits_one(self, capsys):
        assert main(["run", "--frobnicate"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_bad_subcommand_exits_one(self, capsys):
        assert main(["simulate"]) == 1

    def test_invalid_mode_value_exits_one(self, capsys):
        assert main(["run", "--mode", "hovering"]) == 1

    def test_invalid_scenario_value_exits_one(self, capsys):
        assert main(["run", "--nodes", "0"]) == 1
        assert "config error" in capsys.readouterr().err

    def test_bad_traffic_count_exits_one(self, capsys):
        assert main(["run", "--traffic", "random_sources:few"]) == 1

    def test_runtime_error_exits_two(self, capsys):
        code = main(["run", "--nodes", "4", "--seed", "1", "--rounds", "1",
                     "-o", "/nonexistent_dir/out.jsonl"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "simoco" in capsys.readouterr().out


class TestDeterminism:
    def test_run_invocation_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        assert main(RUN_FLAGS + ["-o", str(a)]) == 0
        assert main(RUN_FLAGS + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_matrix_byte_identical_across_worker_counts(self, tmp_path, monkeypatch):
        flags = ["matrix", "--sizes", "8,12", "--seeds", "2",
                 "--energy", "0.004", "--rounds", "300"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        monkeypatch.setenv("SIMOCO_THREADS", "1")
        assert main(flags + ["-o", str(a)]) == 0
        monkeypatch.setenv("SIMOCO_THREADS", "2")
        assert main(flags + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
