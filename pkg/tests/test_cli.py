import json

import pandas as pd
import pytest

from main import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, main, parse_overrides
from src.errors import ConfigError
from src.items import RESULT_COLUMNS

TINY = (
    "n_antennas = 8\n"
    "n_rf = 4\n"
    "n_subcarriers = 4\n"
    "n_taps = 2\n"
    "k_total = 4\n"
    "k_max = 2\n"
    "snr_db = 0,10\n"
    "trials = 2\n"
    "modes = asb,db\n"
)


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "tiny.cfg"
    path.write_text(TINY)
    return path


def test_decompose(capsys):
    assert main(["decompose", "--n", "16", "--k", "2", "--nf", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "structural_nonzeros" in out
    assert "reconstruction_error" in out


def test_decompose_with_cpps_writes_switches(tmp_path):
    switches = tmp_path / "sw.csv"
    out = tmp_path / "diag.json"
    code = main(["decompose", "--n", "16", "--k", "2", "--nf", "4", "--cpps", "1",
                 "--switches", str(switches), "--out", str(out), "--format", "json"])
    assert code == EXIT_OK
    assert switches.read_text().startswith("rf_chain,antenna,pair_index\n")
    doc = json.loads(out.read_text())
    assert doc["rows"][0]["cpps_precision"] == 1


def test_simulate_writes_csv(cfg, tmp_path):
    out = tmp_path / "res" / "rows.csv"
    assert main(["simulate", str(cfg), "--out", str(out)]) == EXIT_OK
    table = pd.read_csv(out)
    assert list(table.columns) == RESULT_COLUMNS
    assert len(table) == 2 * 2 * 2


def test_global_flags_before_subcommand(cfg, tmp_path):
    out = tmp_path / "rows.csv"
    assert main(["--trials", "3", "--out", str(out), "simulate", str(cfg)]) == EXIT_OK
    assert len(pd.read_csv(out)) == 2 * 2 * 3


def test_config_key_overrides(cfg, tmp_path):
    out = tmp_path / "rows.csv"
    code = main(["simulate", str(cfg), "--n-antennas", "16", "--modes=db", "--out", str(out)])
    assert code == EXIT_OK
    assert set(pd.read_csv(out)["mode"]) == {"db"}


def test_seed_flag_changes_results(cfg, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["simulate", str(cfg), "--seed", "1", "--out", str(a)])
    main(["simulate", str(cfg), "--seed", "2", "--out", str(b)])
    assert a.read_text() != b.read_text()


@pytest.mark.parametrize("extra", [
    ["--n-rf", "99"],
    ["--bogus", "1"],
    ["--trials", "0"],
    ["--n-rf"],
])
def test_config_errors_exit_2(cfg, extra, capsys):
    assert main(["simulate", str(cfg)] + extra) == EXIT_CONFIG
    assert "Configuration error" in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path):
    assert main(["simulate", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG


def test_bad_log_level_exits_2(cfg):
    assert main(["simulate", str(cfg), "--log-level", "chatty"]) == EXIT_CONFIG


def test_unwritable_output_exits_1(cfg, tmp_path, capsys):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    assert main(["simulate", str(cfg), "--out", str(blocker / "rows.csv")]) == EXIT_RUNTIME
    assert "Error" in capsys.readouterr().err


def test_bounds_json(cfg, tmp_path):
    out = tmp_path / "bounds.json"
    assert main(["bounds", str(cfg), "--format", "json", "--out", str(out)]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["snr_db", "mode", "bound"]
    assert [r["mode"] for r in doc["rows"]] == ["asb", "db", "hb"] * 2
    assert all(r["bound"] > 0 for r in doc["rows"])


def test_sweep(cfg, tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", str(cfg), "--axis", "snr", "--values", "0,20", "--out", str(out)])
    assert code == EXIT_OK
    table = pd.read_csv(out)
    assert list(table.columns[:2]) == ["axis", "axis_value"]
    assert sorted(set(table["axis_value"])) == [0.0, 20.0]


def test_sweep_bad_values_exit_2(cfg):
    assert main(["sweep", str(cfg), "--axis", "n_rf", "--values", "2,x"]) == EXIT_CONFIG


def test_missing_subcommand():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_parse_overrides():
    assert parse_overrides(["--n-rf", "8", "--snr_db=0,5"]) == {"n_rf": "8", "snr_db": "0,5"}
    with pytest.raises(ConfigError):
        parse_overrides(["stray"])
    with pytest.raises(ConfigError):
        parse_overrides(["--unknown", "1"])
