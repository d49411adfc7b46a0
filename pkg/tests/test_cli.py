# -*- coding: utf-8 -*-
import json
import math

import numpy as np
import pytest

from src.ball_quadrature.config import Method
from src.classifier.boundedness import Regime
from src.classifier.corollaries import classify_kc
from src.classifier.exponents import ExtendedExponent
from src.cli_experiments.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, main
from src.cli_experiments.report import META_SUFFIX, ExperimentReport, make_json_safe
from src.core import __version__
from src.core.errors import PreconditionError
from src.core.settings import CONFIG_ENV_VAR, DEFAULT_SETTINGS, load_settings


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


# --- classify ------------------------------------------------------------------------

def test_classify_prints_verdict(capsys):
    code, report = run_json(capsys, "classify", "-n", "1", "-a", "0", "-b", "0", "-c", "2",
                            "--alpha", "0", "--beta", "0", "-p", "2", "-q", "2")
    assert code == EXIT_OK
    assert report["command"] == "classify"
    assert report["inputs"]["bounded"] is True
    assert report["inputs"]["regime"] == Regime.P_LE_Q.value
    assert report["metadata"]["version"] == __version__
    assert {row["condition"] for row in report["rows"]}


def test_classify_accepts_infinite_exponent(capsys):
    code, report = run_json(capsys, "classify", "-p", "1", "-q", "inf", "-c", "0")
    assert code == EXIT_OK
    assert report["inputs"]["q"] == "inf"
    assert report["inputs"]["regime"] == Regime.P_ONE_Q_INF.value
    assert report["inputs"]["bounded"] is True


def test_invalid_weight_exits_with_code_two(capsys):
    assert main(["classify", "--alpha", "-1"]) == EXIT_INVALID
    assert "alpha > -1" in capsys.readouterr().err


def test_invalid_exponent_exits_with_code_two():
    assert main(["classify", "-p", "0.5"]) == EXIT_INVALID


def test_unknown_choice_is_rejected_by_the_parser():
    with pytest.raises(SystemExit) as excinfo:
        main(["region", "--preset", "toeplitz"])
    assert excinfo.value.code == 2


# --- region --------------------------------------------------------------------------

def test_region_writes_csv_and_sidecar(tmp_path):
    out = tmp_path / "kc.csv"
    assert main(["region", "--preset", "kc", "-n", "1", "-c", "1", "--grid", "5", "--out", str(out)]) == EXIT_OK
    assert (tmp_path / ("kc.csv" + META_SUFFIX)).exists()
    report = ExperimentReport.load(str(out))
    assert report.command == "region"
    assert len(report.rows) == 25
    assert list(report.rows[0]) == ["inv_p", "inv_q", "bounded", "regime"]
    for row in report.rows:
        p = ExtendedExponent.from_inverse(float(row["inv_p"]))
        q = ExtendedExponent.from_inverse(float(row["inv_q"]))
        expected = classify_kc(1, 1.0, 0.0, p, q).bounded
        assert row["bounded"] == ("true" if expected else "false")


def test_region_rows_are_reproducible(tmp_path):
    paths = [tmp_path / "first.csv", tmp_path / "second.csv"]
    for path in paths:
        main(["region", "-n", "2", "-a", "0.5", "-c", "2.5", "--grid", "7", "--workers", "3", "--out", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_region_with_large_c_is_empty(capsys):
    code, report = run_json(capsys, "region", "--preset", "kc", "-n", "1", "-c", "3", "--grid", "6")
    assert code == EXIT_OK
    assert not any(row["bounded"] for row in report["rows"])


def test_region_rejects_a_single_point_grid():
    assert main(["region", "--grid", "1"]) == EXIT_INVALID


# --- norm ----------------------------------------------------------------------------

def test_norm_of_trivial_kernel(tmp_path):
    out = tmp_path / "norm.json"
    code = main(["norm", "--row", "p-inf", "-c", "0", "-q", "1", "--format", "json", "--out", str(out)])
    assert code == EXIT_OK
    report = ExperimentReport.load(str(out))
    (row,) = report.rows
    assert row["value"] == pytest.approx(1.0, rel=1e-5)
    assert row["bounded"] is True and row["diverged"] is False


def test_norm_of_berezin_kernel_from_l_infinity(capsys):
    code, report = run_json(capsys, "norm", "--row", "q-inf", "-n", "1", "-a", "2", "-b", "0", "-c", "4",
                            "-p", "inf")
    assert code == EXIT_OK
    (row,) = report["rows"]
    assert row["value"] == pytest.approx(1.0, rel=1e-5)
    assert row["method"] == Method.CLOSED_FORM.value
    assert row["bounded"] is True and row["diverged"] is False


def test_norm_past_threshold_is_flagged(capsys):
    code, report = run_json(capsys, "norm", "--row", "p-inf", "-c", "3.5", "-q", "1")
    assert code == EXIT_OK
    (row,) = report["rows"]
    assert row["diverged"] is True and row["bounded"] is False


# --- blowup --------------------------------------------------------------------------

def test_blowup_ratio_grows_past_the_threshold(capsys):
    code, report = run_json(capsys, "blowup", "-a", "0", "-b", "0", "-c", "1", "-p", "1", "-q", "inf",
                            "--family", "fxi")
    assert code == EXIT_OK
    ratios = [row["ratio"] for row in report["rows"]]
    assert [row["xi_modulus"] for row in report["rows"]] == DEFAULT_SETTINGS["radii"]
    assert ratios[-1] > 10.0 * ratios[0]
    assert report["inputs"]["bounded"] is False


def test_blowup_ratio_stays_bounded_below_the_threshold(capsys):
    code, report = run_json(capsys, "blowup", "-a", "0", "-b", "0", "-c", "-0.25", "-p", "1", "-q", "inf",
                            "--family", "fxi")
    assert code == EXIT_OK
    ratios = [row["ratio"] for row in report["rows"]]
    assert all(ratio < 2.0 * ratios[0] for ratio in ratios)
    assert report["inputs"]["bounded"] is True


def test_blowup_power_family_flags_nonintegrable_weight(capsys):
    code, report = run_json(capsys, "blowup", "--family", "fN", "-a", "-1", "-b", "0", "-c", "1",
                            "-p", "2", "-q", "2", "--N", "0")
    assert code == EXIT_OK
    assert report["rows"][-1]["diverged"] is True
    assert report["inputs"]["bounded"] is False


@pytest.mark.parametrize("family", ["fxi", "fN"])
def test_blowup_columns_name_the_t_image(tmp_path, family):
    out = tmp_path / "blowup.csv"
    assert main(["blowup", "-c", "1", "-p", "2", "-q", "2", "--family", family, "--out", str(out)]) == EXIT_OK
    report = ExperimentReport.load(str(out))
    assert report.inputs["operator"] == "T"
    assert "t_image_norm" in report.rows[0]
    assert "image_norm" not in report.rows[0]


def test_blowup_rejects_radii_outside_the_ball():
    assert main(["blowup", "-c", "1", "--radii", "0.5,1.5"]) == EXIT_INVALID


def test_blowup_xi_direction_in_two_dimensions(capsys):
    code, report = run_json(capsys, "blowup", "-n", "2", "-c", "1", "-p", "2", "-q", "2",
                            "--family", "fxi-equal", "--xi-direction", "1,1j", "--radii", "0.5")
    assert code == EXIT_OK
    assert report["rows"][0]["xi_modulus"] == 0.5


# --- verify --------------------------------------------------------------------------

def test_verify_with_zero_tolerance_reports_failures(tmp_path):
    out = tmp_path / "verify.json"
    code = main(["verify", "--tolerance", "0", "--format", "json", "--out", str(out)])
    assert code == EXIT_FAILED
    report = ExperimentReport.load(str(out))
    assert report.metadata["seed"] == DEFAULT_SETTINGS["seed"]
    assert not all(row["passed"] for row in report.rows)
    assert all(row["tolerance"] == 0.0 and row["residual"] >= 0.0 for row in report.rows)


@pytest.mark.slow
def test_verify_is_deterministic_for_a_seed(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        main(["verify", "--seed", "17", "--out", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


# --- reports -------------------------------------------------------------------------

def test_report_requires_rows():
    with pytest.raises(PreconditionError):
        ExperimentReport.create("classify", {}, [])


def test_report_csv_roundtrip(tmp_path):
    report = ExperimentReport.create("norm", {"p": "inf"}, [{"value": 0.5, "norm": math.inf, "ok": True}],
                                     seed=3, config={"mc_samples": 10})
    out = tmp_path / "nested" / "report.csv"
    written = report.save(str(out))
    assert written == [str(out), str(out) + META_SUFFIX]
    loaded = ExperimentReport.load(str(out))
    assert loaded.rows == [{"value": "0.5", "norm": "inf", "ok": "true"}]
    assert loaded.inputs == {"p": "inf"}
    assert loaded.metadata["seed"] == 3
    assert loaded.metadata["config"] == {"mc_samples": 10}


def test_report_json_roundtrip(tmp_path):
    report = ExperimentReport.create("blowup", {"q": math.inf}, [{"ratio": 2.0, "diverged": False}])
    out = tmp_path / "report.json"
    report.save(str(out), "json")
    loaded = ExperimentReport.load(str(out))
    assert loaded.inputs == {"q": "inf"}
    assert loaded.rows == [{"ratio": 2.0, "diverged": False}]
    assert loaded.metadata["timestamp"] == report.metadata["timestamp"]


def test_report_rejects_unknown_format(tmp_path):
    report = ExperimentReport.create("classify", {}, [{"x": 1}])
    with pytest.raises(PreconditionError):
        report.save(str(tmp_path / "out.txt"), "xml")


def test_make_json_safe():
    data = {"z": complex(1.0, -2.0), "nan": np.float64("nan"), "n": np.int64(3), "flag": np.bool_(True),
            "method": Method.GRID_QUAD, "pair": (1.0, -math.inf), 4: None}
    assert make_json_safe(data) == {"z": {"re": 1.0, "im": -2.0}, "nan": "nan", "n": 3, "flag": True,
                                    "method": "GridQuad", "pair": [1.0, "-inf"], "4": None}
    assert make_json_safe(ExtendedExponent("inf")) == "inf"


# --- settings ------------------------------------------------------------------------

def _write(path, content):
    path.write_text(content, encoding="utf-8")
    return str(path)


def test_settings_file_overrides_defaults(tmp_path, caplog):
    path = _write(tmp_path / "config.json", json.dumps({"seed": 7, "bogus": 1}))
    settings = load_settings(config_path=path)
    assert settings["seed"] == 7
    assert "bogus" not in settings
    assert settings["mc_samples"] == DEFAULT_SETTINGS["mc_samples"]
    assert "bogus" in caplog.text


def test_settings_precedence(tmp_path, monkeypatch):
    base = _write(tmp_path / "config.json", json.dumps({"seed": 7, "workers": 2}))
    monkeypatch.setenv(CONFIG_ENV_VAR, _write(tmp_path / "env.json", json.dumps({"seed": 9})))
    settings = load_settings({"seed": 11, "workers": None}, config_path=base)
    assert settings["seed"] == 11
    assert settings["workers"] == 2
    assert load_settings(config_path=base)["seed"] == 9


@pytest.mark.parametrize("content", [None, "{not json", "[1, 2]"])
def test_unusable_settings_fall_back_to_defaults(tmp_path, content):
    path = tmp_path / "config.json"
    if content is not None:
        _write(path, content)
    assert load_settings(config_path=str(path)) == DEFAULT_SETTINGS


def test_cli_reads_config_file(tmp_path, capsys):
    path = _write(tmp_path / "config.json", json.dumps({"region_grid": 3}))
    code, report = run_json(capsys, "region", "--config", path)
    assert code == EXIT_OK
    assert len(report["rows"]) == 9
    assert report["metadata"]["config"]["region_grid"] == 3
