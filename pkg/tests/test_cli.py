import json
import math

import numpy as np
import pytest

from spherical_esn.cli import main, parse_and_validate
from spherical_esn.io_utils import read_csv
from spherical_esn.reservoir import load_reservoir


def run_cli(args, out_dir):
    return main(list(args) + ["--out-dir", str(out_dir)])


TINY_MEMORY = ["memory", "--benchmark", "white_noise", "--family", "all",
               "--tau-max", "10", "--runs", "1", "--n", "40",
               "--train-len", "150", "--test-len", "60", "--washout", "10",
               "--seed", "7"]


class TestParse:
    def test_lyapunov_example(self):
        spec = parse_and_validate(["lyapunov", "--family", "spherical", "--sr", "15",
                                   "--n", "100", "--steps", "2000", "--seed", "7"])
        assert spec.subcommand == "lyapunov"
        assert spec.flags["sr"] == [15.0]
        assert spec.flags["seed"] == 7

    def test_memory_defaults(self):
        spec = parse_and_validate(["memory", "--benchmark", "white_noise",
                                   "--family", "tanh"])
        assert spec.flags["tau_max"] == 100
        assert spec.flags["runs"] == 5
        assert spec.flags["n"] == 200

    def test_paper_scale_defaults(self):
        spec = parse_and_validate(["memory", "--paper-scale"])
        assert spec.flags["n"] == 1000
        assert spec.flags["runs"] == 20
        assert spec.flags["train_len"] == 5000

    def test_tradeoff_sr_range_error_exits_2(self):
        with pytest.raises(SystemExit) as err:
            parse_and_validate(["tradeoff", "--family", "spherical", "--sr-max", "0.1"])
        assert err.value.code == 2

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            parse_and_validate(["memory", "--bogus", "1"])
        assert err.value.code == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            parse_and_validate(["transmogrify"])
        assert err.value.code == 2

    def test_output_dir_env_fallback(self, monkeypatch, tmp_path):
        monkeypatch.setenv("ESN_OUTPUT_DIR", str(tmp_path / "envout"))
        spec = parse_and_validate(["generate", "--signal", "mso"])
        assert str(spec.output_dir) == str(tmp_path / "envout")

    def test_santa_fe_requires_path(self):
        with pytest.raises(SystemExit) as err:
            parse_and_validate(["generate", "--signal", "santa_fe"])
        assert err.value.code == 2


class TestGenerate:
    def test_mso_csv(self, tmp_path):
        assert run_cli(["generate", "--signal", "mso", "--length", "100"], tmp_path) == 0
        header, rows = read_csv(tmp_path / "mso.csv")
        assert header == ["index", "value"]
        assert len(rows) == 100
        assert float(rows[0][1]) == 0.0
        want = math.sin(0.2) + math.sin(0.311) + math.sin(0.42)
        assert float(rows[1][1]) == pytest.approx(want, rel=1e-12)
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["command"] == "generate"
        assert "mso.csv" in manifest["outputs"]

    def test_white_noise_csv(self, tmp_path):
        assert run_cli(["generate", "--signal", "white_noise", "--length", "50",
                        "--seed", "3"], tmp_path) == 0
        _, rows = read_csv(tmp_path / "white_noise.csv")
        values = np.array([float(r[1]) for r in rows])
        assert np.all(np.abs(values) <= 1.0)


class TestSimulate:
    def test_trajectory_and_reservoir_roundtrip(self, tmp_path):
        code = run_cli(["simulate", "--family", "spherical", "--n", "30",
                        "--length", "80", "--washout", "10", "--seed", "5",
                        "--save-reservoir", str(tmp_path / "res.json")], tmp_path)
        assert code == 0
        header, rows = read_csv(tmp_path / "trajectory.csv")
        assert header == ["k", "norm_factor", "state_norm"]
        assert len(rows) == 80
        norms = np.array([float(r[2]) for r in rows])
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)
        res = load_reservoir(tmp_path / "res.json")
        assert res.config.n_neurons == 30

    def test_pinned_reservoir_reproduces(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        run_cli(["simulate", "--n", "20", "--length", "50", "--washout", "5",
                 "--seed", "9", "--save-reservoir", str(tmp_path / "res.json")], a)
        run_cli(["simulate", "--reservoir", str(tmp_path / "res.json"),
                 "--length", "50", "--washout", "5", "--seed", "9"], b)
        assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()


class TestLyapunov:
    def test_linear_control_csv(self, tmp_path):
        code = run_cli(["lyapunov", "--family", "linear", "--sr", "2", "--n", "12",
                        "--steps", "600", "--transient", "100", "--seeds", "1",
                        "--n-exponents", "3"], tmp_path)
        assert code == 0
        header, rows = read_csv(tmp_path / "lyapunov.csv")
        assert header == ["family", "sr", "seed", "max_lle", "method"]
        by_method = {r[4]: float(r[3]) for r in rows}
        assert by_method["radius_product"] == pytest.approx(math.log(2.0), abs=1e-6)
        header, rows = read_csv(tmp_path / "lyapunov_spectrum.csv")
        assert header == ["family", "sr", "seed", "n", "steps", "lag_or_rank", "value"]
        assert len(rows) == 3
        header, rows = read_csv(tmp_path / "lyapunov_summary.csv")
        assert header == ["family", "sr", "method", "mean_lle", "std_lle", "n_seeds"]


class TestMemory:
    def test_schema_and_theory_curves(self, tmp_path):
        assert run_cli(TINY_MEMORY, tmp_path) == 0
        header, rows = read_csv(tmp_path / "memory.csv")
        assert header == ["benchmark", "family", "tau", "split", "acc_mean",
                          "acc_std", "n_runs"]
        families = {r[1] for r in rows}
        assert families == {"spherical", "linear", "tanh"}
        assert len(rows) == 3 * 2 * 11
        header, theory = read_csv(tmp_path / "memory_theory.csv")
        assert header == ["family", "sr", "seed", "n", "steps", "lag_or_rank", "value"]
        assert {r[0] for r in theory} == {"spherical", "linear", "tanh"}

    def test_byte_identical_reruns(self, tmp_path):
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert run_cli(TINY_MEMORY, a) == 0
        assert run_cli(TINY_MEMORY, b) == 0
        for name in ("memory.csv", "memory_theory.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_manifest_argv_reproduces(self, tmp_path):
        a = tmp_path / "a"
        assert run_cli(TINY_MEMORY, a) == 0
        manifest = json.loads((a / "manifest.json").read_text())
        b = tmp_path / "b"
        replay = [arg if arg != str(a) else str(b) for arg in manifest["argv"]]
        assert main(replay) == 0
        assert (a / "memory.csv").read_bytes() == (b / "memory.csv").read_bytes()


class TestTradeoff:
    def test_grid_csv(self, tmp_path):
        code = run_cli(["tradeoff", "--family", "tanh", "--nus", "0.5,2.0",
                        "--taus", "0,5", "--sr-min", "0.5", "--sr-max", "1.5",
                        "--grid-points", "2", "--train-len", "200",
                        "--test-len", "80", "--washout", "10", "--n", "30"], tmp_path)
        assert code == 0
        header, rows = read_csv(tmp_path / "tradeoff.csv")
        assert header == ["family", "nu", "tau", "test_nrmse", "best_sr", "best_scaling"]
        assert len(rows) == 4
        for row in rows:
            assert 0.5 <= float(row[4]) <= 1.5

    def test_spot_csvs(self, tmp_path):
        code = run_cli(["tradeoff", "--spot", "2.5:10", "--n", "40",
                        "--train-len", "200", "--test-len", "80",
                        "--washout", "20"], tmp_path)
        assert code == 0
        header, rows = read_csv(tmp_path / "predictions.csv")
        assert header == ["family", "k", "target", "predicted"]
        assert len(rows) == 3 * 80
        header, rows = read_csv(tmp_path / "spot.csv")
        assert header == ["family", "nu", "tau", "gamma_mean", "gamma_std"]
        assert len(rows) == 3


class TestExitCodes:
    def test_runtime_error_is_1(self, tmp_path):
        # santa fe file missing at execution time
        code = run_cli(["generate", "--signal", "santa_fe", "--santa-fe-path",
                        str(tmp_path / "missing.txt")], tmp_path)
        assert code == 1

    def test_success_is_0(self, tmp_path):
        assert run_cli(["generate", "--signal", "mso", "--length", "5"], tmp_path) == 0
