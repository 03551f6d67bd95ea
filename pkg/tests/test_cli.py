import csv
import io
import json
import subprocess
import sys

import pytest

from stfdof.cli import main

FIG1_FLAGS = ["--radius", "0.25", "--time", "5e-4", "--center", "2.4e9", "--halfband", "1e3"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    return exc.value.code, capsys.readouterr().err


class TestDof:
    def test_text_output(self, capsys):
        code, out = run(capsys, "dof", *FIG1_FLAGS)
        assert code == 0
        fields = dict(line.split() for line in out.out.strip().splitlines())
        assert set(fields) == {"N0", "N1", "D1", "D2", "total", "D_time", "D_space"}
        assert float(fields["D_time"]) == 2.0
        assert float(fields["total"]) == pytest.approx(3265.503533852845, rel=1e-12)

    def test_json_output(self, capsys):
        code, out = run(capsys, "dof", *FIG1_FLAGS, "--json", "--mode", "integer")
        payload = json.loads(out.out)
        assert code == 0
        assert payload["command"] == "dof" and payload["constants"] == {"c": 3e8}
        res = payload["results"]
        assert res["D1"] + res["D2"] == pytest.approx(res["total"], rel=1e-15)
        assert res["D_space"] == (18 + 1) ** 2

    def test_r_zero(self, capsys):
        _, out = run(capsys, "dof", "--radius", "0", "--time", "1e-3", "--center", "2.4e9",
                     "--halfband", "1e3", "--json")
        assert json.loads(out.out)["results"]["total"] == pytest.approx(20.926, abs=1e-3)

    def test_band_below_zero_is_usage_error(self, capsys):
        code, err = usage_error(capsys, "dof", "--radius", "1", "--time", "1", "--center", "1e3",
                                "--halfband", "2e3")
        assert code == 2 and "W" in err

    def test_missing_flag(self, capsys):
        code, _ = usage_error(capsys, "dof", "--radius", "1")
        assert code == 2


class TestSweep:
    def test_preset_csv_schema(self, capsys):
        code, out = run(capsys, "sweep", "--preset", "fig1")
        rows = list(csv.DictReader(io.StringIO(out.out)))
        assert code == 0
        assert list(rows[0]) == ["R", "W", "T", "F", "N0", "N1", "D1", "D2", "total"]
        assert len(rows) == 2500
        for row in rows:
            assert float(row["D1"]) + float(row["D2"]) == pytest.approx(float(row["total"]), rel=1e-12)

    def test_byte_identical_reruns(self, capsys):
        _, first = run(capsys, "sweep", "--preset", "fig2")
        _, second = run(capsys, "sweep", "--preset", "fig2")
        _, parallel = run(capsys, "sweep", "--preset", "fig2", "--jobs", "4")
        assert first.out == second.out == parallel.out

    def test_json_round_trip(self, capsys, tmp_path):
        path = tmp_path / "fig2.json"
        code, _ = run(capsys, "sweep", "--preset", "fig2", "--format", "json", "--out", str(path))
        payload = json.loads(path.read_text())
        assert code == 0
        assert payload["command"] == "sweep" and len(payload["rows"]) == 2500
        assert payload["spec"]["axis1"]["name"] == "R"
        assert payload["knee_R"] == pytest.approx(9.375)

    def test_custom_axes(self, capsys):
        code, out = run(capsys, "sweep", "--axis1", "T:1e-4:1e-3:3", "--axis2", "F:1e9:2e9:4",
                        "--fixed", "R=0.1", "--fixed", "W=500")
        rows = list(csv.DictReader(io.StringIO(out.out)))
        assert code == 0 and len(rows) == 12
        assert {float(r["R"]) for r in rows} == {0.1}

    @pytest.mark.parametrize("axis1,axis2", [
        ("R:1:0.5:10", "W:1:2:10"),      # start >= stop
        ("X:1:2:10", "W:1:2:10"),        # unknown parameter
        ("R:1:2:1", "W:1:2:10"),         # count < 2
        ("R:1:2", "W:1:2:10"),           # malformed
        ("R:1:2:10", "R:1:2:10"),        # same axis twice
    ])
    def test_bad_axes(self, capsys, axis1, axis2):
        code, _ = usage_error(capsys, "sweep", "--axis1", axis1, "--axis2", axis2,
                              "--fixed", "T=1e-3", "--fixed", "F=1e9", "--fixed", "W=10")
        assert code == 2

    def test_missing_fixed_value(self, capsys):
        code, _ = usage_error(capsys, "sweep", "--axis1", "R:0.1:1:3", "--axis2", "W:1:2:3")
        assert code == 2

    def test_needs_axes_or_preset(self, capsys):
        code, _ = usage_error(capsys, "sweep")
        assert code == 2


class TestVerify:
    def test_bessel_passes(self, capsys):
        code, out = run(capsys, "verify", "bessel")
        assert code == 0
        assert out.out.strip().splitlines()[-1].startswith("bessel: PASS")

    def test_mi_fails_on_lower_bound(self, capsys):
        code, out = run(capsys, "verify", "mi")
        assert code == 1
        assert "FAIL" in out.out

    def test_report_schema(self, capsys, tmp_path):
        path = tmp_path / "truncation.json"
        code, _ = run(capsys, "verify", "truncation", "--seed", "7", "--report", str(path))
        report = json.loads(path.read_text())
        assert code == 1
        assert set(report) == {"command", "constants", "results", "violations", "seed"}
        assert report["seed"] == 7 and report["violations"] > 0
        rec = report["results"]["records"][0]
        assert {"seed", "sample", "wave", "point", "order", "shift", "empirical", "bound", "pass"} <= set(rec)
        assert rec["seed"] == 7

    def test_unknown_suite(self, capsys):
        code, _ = usage_error(capsys, "verify", "nope")
        assert code == 2


class TestMi:
    def test_fig1(self, capsys):
        code, out = run(capsys, "mi", *FIG1_FLAGS, "--rho", "0.01", "--json")
        res = json.loads(out.out)["results"]
        assert code == 0
        assert res["bins"] == 2
        assert res["mutual_information"] == pytest.approx(3.260527250376386, rel=1e-12)
        assert res["lower_bound"] == pytest.approx(3.2686692194326095, rel=1e-12)

    def test_negative_rho(self, capsys):
        code, _ = usage_error(capsys, "mi", *FIG1_FLAGS, "--rho", "-1")
        assert code == 2


class TestEnvironment:
    def test_speed_of_light_override(self, capsys, monkeypatch):
        monkeypatch.setenv("STFDOF_SPEED_OF_LIGHT", "1.5e8")
        _, out = run(capsys, "dof", *FIG1_FLAGS, "--json")
        payload = json.loads(out.out)
        assert payload["constants"]["c"] == 1.5e8
        assert payload["results"]["N0"] == pytest.approx(2 * 17.079461328901946, rel=1e-12)

    def test_bad_override(self, capsys, monkeypatch):
        monkeypatch.setenv("STFDOF_SPEED_OF_LIGHT", "fast")
        code, _ = usage_error(capsys, "dof", *FIG1_FLAGS)
        assert code == 2

    def test_console_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "stfdof.cli", "--version"],
                              capture_output=True, text=True, check=True)
        assert proc.stdout.startswith("stfdof ")
