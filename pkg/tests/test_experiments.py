from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import pytest

from semlogic import cli, entropy
from semlogic.codec import BitString
from semlogic.errors import EntailmentViolation, InvalidParams
from semlogic.experiments import (
    LESSMORE_FIELDS,
    RESULT_FIELDS,
    ExperimentConfig,
    emit,
    load_config,
    run_bounds,
    run_demo,
    run_simulation,
    to_csv,
    to_json,
)
from semlogic.experiments.harness import run_point_trials, trial_rng
from semlogic.kernels import Scenario

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


class TestConfig:
    def test_defaults_valid(self):
        cfg = ExperimentConfig()
        assert cfg.scenario is Scenario.UNKNOWN_R
        assert len(cfg.grid()) == 1

    def test_grid_product(self):
        cfg = ExperimentConfig(scenario="known_r", p_q=[0.1, 0.2], p_r=[0.5, 0.6])
        assert [(p.p_q, p.p_r) for p in cfg.grid()] == [(0.1, 0.5), (0.1, 0.6), (0.2, 0.5), (0.2, 0.6)]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"trials": 0},
            {"scenario": "known_r"},
            {"scenario": "unknown_r", "p_q": 0.2},
            {"scheme": "huffman"},
            {"p_s": 0.6, "p_r": 0.5},
            {"workers": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises((InvalidParams, ValueError)):
            ExperimentConfig(**kwargs)

    def test_dict_roundtrip_and_unknown_keys(self):
        cfg = ExperimentConfig(scenario="known_r", p_q=(0.1, 0.2), trials=5)
        assert ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
        with pytest.raises(InvalidParams):
            ExperimentConfig.from_dict({"trails": 3})

    def test_override_skips_none(self):
        cfg = ExperimentConfig(trials=5).override(trials=None, m=5)
        assert cfg.trials == 5 and cfg.m == 5

    def test_committed_configs_load(self):
        paths = sorted(CONFIGS.glob("criterion*.json")) + sorted(CONFIGS.glob("unknown_r*.json"))
        assert len(paths) >= 9
        for path in paths:
            load_config(path)


class TestEmit:
    def test_empty_is_header_only(self):
        text = to_csv([])
        assert text == ",".join(RESULT_FIELDS) + "\n"
        # every declared result field is a column
        assert len(RESULT_FIELDS) == 15

    def test_float_format_and_nan(self):
        row = {name: 0 for name in RESULT_FIELDS} | {"stddev": 1 / 3, "classic_mean_bits": math.nan}
        line = to_csv([row]).splitlines()[1].split(",")
        assert line[RESULT_FIELDS.index("stddev")] == "0.333333333"
        assert line[RESULT_FIELDS.index("classic_mean_bits")] == "nan"
        parsed = json.loads(to_json([row]))
        assert parsed[0]["classic_mean_bits"] is None and list(parsed[0]) == list(RESULT_FIELDS)

    def test_json_roundtrip(self, tmp_path):
        rows = run_simulation(ExperimentConfig(m=4, trials=3))
        path = tmp_path / "out.json"
        emit(rows, "json", path)
        data = json.loads(path.read_text())
        assert data[0]["trials"] == 3 and set(data[0]) == set(RESULT_FIELDS)

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit([], "xml")


class TestHarness:
    def test_trial_rng_substreams(self):
        a = trial_rng(1, 0, 0).random(4)
        assert (a == trial_rng(1, 0, 0).random(4)).all()
        assert not (a == trial_rng(1, 0, 1).random(4)).all()
        assert not (a == trial_rng(1, 1, 0).random(4)).all()

    def test_single_trial_reproducible(self):
        cfg = ExperimentConfig(m=5, trials=1, seed=3, decode_enabled=True)
        assert run_simulation(cfg) == run_simulation(cfg)

    def test_row_invariants(self):
        cfg = ExperimentConfig(scenario="known_r", m=5, p_s=0.1, p_q=[0.2, 0.3], p_r=0.6, trials=40, classic=True)
        for row in run_simulation(cfg):
            assert row.mean_normalized_bits == pytest.approx(row.mean_total_bits / 32)
            for rate in (row.fallback_rate, row.undetected_rate, row.resample_rate, row.decode_skipped):
                assert 0.0 <= rate <= 1.0
            assert row.bound_lambda == pytest.approx(entropy.bound_known_r(0.1, row.p_q, 0.6))
            assert row.classic_mean_bits > 0

    def test_standard_error_shrinks(self):
        base = ExperimentConfig(scenario="known_r", m=4, p_s=0.15, p_q=0.3, p_r=0.5, seed=1)
        small = run_simulation(base.override(trials=100))[0]
        big = run_simulation(base.override(trials=10_000))[0]
        assert big.stddev / math.sqrt(big.trials) < small.stddev / math.sqrt(small.trials)
        # the stddev itself estimates one fixed quantity
        assert big.stddev == pytest.approx(small.stddev, rel=0.3)

    def test_parallel_trials_match_serial(self):
        cfg = ExperimentConfig(m=5, trials=30, seed=8, decode_enabled=True)
        params = cfg.grid()[0]
        # repr, since the unused classic column is NaN
        serial = run_point_trials(cfg, 0, params)
        assert repr(serial) == repr(run_point_trials(cfg.override(workers=2), 0, params))

    def test_unknown_r_cost_tracks_bound_across_receivers(self):
        # the ratio to the bound stays near one as the receiver kernel shrinks
        cfg = load_config(CONFIGS / "unknown_r_receiver_sweep.json").override(classic=False)
        for row in run_simulation(cfg):
            assert 1.0 < row.mean_normalized_bits / row.bound_lambda < 1.25, row


class TestBoundsTables:
    def test_tables(self):
        tables = run_bounds(**json.loads((CONFIGS / "bounds.json").read_text()))
        mis = {row["p_r"]: row for row in tables["misinfo"]}
        assert mis[0.5]["ratio"] == pytest.approx(1.0, abs=1e-12)
        lessmore = tables["lessmore"]
        assert lessmore[-1]["p_q"] == 1.0 and lessmore[-1]["lambda"] == 0.0
        for row in lessmore:
            assert row["lambda"] <= min(row["send_s_cost"], row["send_q_cost"]) + 1e-12

    def test_emit_lessmore(self):
        text = emit(run_bounds()["lessmore"], "csv", None, LESSMORE_FIELDS)
        assert next(csv.reader(io.StringIO(text))) == list(LESSMORE_FIELDS)


class TestDemo:
    def test_unknown_r_trace(self):
        buf = io.StringIO()
        record = run_demo("X1&X2", "X1", "unknown_r", 2, stream=buf)
        assert record["k_shat"] == [3]
        assert record["shat"] == "X1 & X2"
        assert all(record["verdict"].values())
        assert "syndrome" in buf.getvalue()

    def test_entailment_violation(self):
        with pytest.raises(EntailmentViolation):
            run_demo("X1", "X1&X2", "unknown_r", 2, stream=io.StringIO())

    def test_misinfo_accepts_disjoint(self):
        record = run_demo("X1&X2", "!X1", "misinfo", 2, stream=io.StringIO())
        assert record["k_shat"] == [3]
        with pytest.raises(EntailmentViolation):
            run_demo("X1&X2", "X2", "misinfo", 2, stream=io.StringIO())

    def test_known_r_with_query_and_dump(self, tmp_path):
        dump = tmp_path / "t.bin"
        record = run_demo("X1&X2&X3", "X1", "known_r", 3, statement_q="X1&X2", stream=io.StringIO(), dump_path=dump)
        bits = BitString.from_bytes(dump.read_bytes())
        assert len(bits) == record["total_bits"]
        assert str(bits) == "".join(r["bits"] for r in record["rounds"])


class TestCli:
    def test_selftest(self, capsys):
        assert cli.main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and out.count("PASS") == 6

    def test_simulate_to_file(self, tmp_path):
        out = tmp_path / "r.csv"
        assert cli.main(["simulate", "--config", str(CONFIGS / "criterion11_determinism.json"),
                         "--trials", "5", "--m", "4", "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 2 and rows[0]["m"] == "4" and rows[0]["trials"] == "5"

    def test_bounds_both(self, tmp_path):
        assert cli.main(["bounds", "--out", str(tmp_path / "b.csv")]) == 0
        assert (tmp_path / "b_lessmore.csv").exists() and (tmp_path / "b_misinfo.csv").exists()

    def test_demo_json(self, tmp_path, capsys):
        path = tmp_path / "d.json"
        assert cli.main(["demo", "--s", "X1 & X2", "--r", "X1", "--m", "2", "--json", str(path)]) == 0
        assert json.loads(path.read_text())["k_shat"] == [3]

    def test_errors_exit_nonzero(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"trials": 0}))
        assert cli.main(["simulate", "--config", str(bad)]) == 2
        assert cli.main(["demo", "--s", "X1", "--r", "X1 & X2", "--m", "2"]) == 2
        assert cli.main(["demo", "--s", "X1 &", "--r", "X1", "--m", "2"]) == 2
        assert "error" in capsys.readouterr().err
