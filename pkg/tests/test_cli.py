import json

import pytest

from cohortopt.cli import _parse_flat_toml, load_config_file, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestList:
    def test_outputs_json_metadata(self, capsys):
        code, out, _ = run_cli(capsys, "list")
        assert code == 0
        records = json.loads(out)
        by_id = {r["id"]: r for r in records}
        assert by_id["RC20"]["dimension"] == 2
        assert by_id["RC20"]["inequality_count"] == 3
        assert by_id["RC31"]["equality_count"] == 1
        assert all(r["runnable"] for r in records)

    def test_category_filter(self, capsys):
        code, out, _ = run_cli(capsys, "list", "--category", "process_synthesis")
        assert code == 0
        ids = [r["id"] for r in json.loads(out)]
        assert ids == ["RC08", "RC10"]

    def test_descriptor_entries_are_included(self, capsys, tmp_path):
        desc = tmp_path / "extra.json"
        desc.write_text(json.dumps([{
            "id": "EXT9", "name": "metadata only", "dimension": 1,
            "bounds": {"lower": [0], "upper": [1]}}]))
        code, out, _ = run_cli(capsys, "list", "--descriptors", str(desc))
        assert code == 0
        records = json.loads(out)
        ext = [r for r in records if r["id"] == "EXT9"]
        assert ext and ext[0]["runnable"] is False


class TestRun:
    def test_writes_reports(self, capsys, tmp_path):
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(
            capsys, "run", "--algo", "ci-sapf", "--problem", "RC20",
            "--runs", "2", "--seed", "7", "--max-fe", "80",
            "--max-attempts", "6", "--out", str(out_dir))
        assert code == 0
        assert (out_dir / "summary.csv").exists()
        assert (out_dir / "summary.json").exists()
        assert len(list(out_dir.glob("trace_RC20_*.csv"))) == 2
        assert "RC20" in out

    def test_unknown_problem_fails(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", "--algo", "ci-sapf",
                               "--problem", "RC99", "--out", str(tmp_path / "x"))
        assert code != 0
        assert "RC99" in err

    def test_infeasible_outcome_still_exits_zero(self, capsys, tmp_path):
        # a budget this small cannot reach feasibility on the spring problem
        out_dir = tmp_path / "tiny"
        code, out, _ = run_cli(
            capsys, "run", "--algo", "ci-sapf", "--problem", "RC17",
            "--runs", "1", "--seed", "0", "--max-fe", "10",
            "--max-attempts", "1", "--out", str(out_dir))
        assert code == 0

    def test_cbo_algorithm(self, capsys, tmp_path):
        out_dir = tmp_path / "cbo"
        code, _, _ = run_cli(
            capsys, "run", "--algo", "ci-sapf-cbo", "--problem", "RC20",
            "--runs", "1", "--max-fe", "60", "--max-attempts", "4",
            "--out", str(out_dir))
        assert code == 0
        assert (out_dir / "summary.csv").exists()

    def test_missing_problem_flag_errors(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "run", "--algo", "ci-sapf",
                               "--out", str(tmp_path / "y"))
        assert code == 1
        assert "problem" in err


class TestConfigFile:
    def test_toml_config_supplies_values(self, capsys, tmp_path):
        cfg = tmp_path / "exp.toml"
        cfg.write_text('algo = "ci-sapf"\nproblem = "RC20"\nruns = 2\n'
                       "max_fe = 80\nmax_attempts = 5\nseed = 3\n")
        out_dir = tmp_path / "out"
        code, _, _ = run_cli(capsys, "run", "--config", str(cfg),
                             "--out", str(out_dir))
        assert code == 0
        payload = json.loads((out_dir / "summary.json").read_text())
        assert payload["problems"][0]["runs"] == 2
        assert payload["problems"][0]["per_run"][0]["seed"] == 3

    def test_cli_flags_override_file(self, capsys, tmp_path):
        cfg = tmp_path / "exp.toml"
        cfg.write_text('algo = "ci-sapf"\nproblem = "RC20"\nruns = 2\n'
                       "max_fe = 80\nmax_attempts = 5\n")
        out_dir = tmp_path / "out2"
        code, _, _ = run_cli(capsys, "run", "--config", str(cfg),
                             "--runs", "3", "--out", str(out_dir))
        assert code == 0
        payload = json.loads((out_dir / "summary.json").read_text())
        assert payload["problems"][0]["runs"] == 3

    def test_json_config(self, capsys, tmp_path):
        cfg = tmp_path / "exp.json"
        cfg.write_text(json.dumps({"algo": "ci-sapf", "problem": "RC20",
                                   "runs": 1, "max_fe": 60, "max_attempts": 4}))
        out_dir = tmp_path / "out3"
        code, _, _ = run_cli(capsys, "run", "--config", str(cfg),
                             "--out", str(out_dir))
        assert code == 0

    def test_unknown_config_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "exp.toml"
        cfg.write_text('algo = "ci-sapf"\nproblem = "RC20"\nbogus = 1\n')
        code, _, err = run_cli(capsys, "run", "--config", str(cfg),
                               "--out", str(tmp_path / "z"))
        assert code == 1
        assert "bogus" in err


class TestSuiteCommand:
    def test_category_suite(self, capsys, tmp_path):
        out_dir = tmp_path / "suite"
        code, out, _ = run_cli(
            capsys, "suite", "--algo", "ci-sapf", "--category",
            "process_synthesis", "--runs", "1", "--max-fe", "40",
            "--max-attempts", "3", "--out", str(out_dir))
        assert code == 0
        text = (out_dir / "summary.csv").read_text()
        assert "RC08" in text and "RC10" in text
        assert "RC20" not in text


class TestFlatTomlParser:
    def test_scalar_types(self):
        parsed = _parse_flat_toml(
            's = "hello"\nn = 3\nx = 2.5\nflag = true\noff = false\n'
            "# comment line\nwith_comment = 7 # trailing\n", "test.toml")
        assert parsed == {"s": "hello", "n": 3, "x": 2.5, "flag": True,
                          "off": False, "with_comment": 7}

    def test_tables_rejected(self):
        with pytest.raises(ValueError):
            _parse_flat_toml("[solver]\nruns = 2\n", "test.toml")

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            _parse_flat_toml("not a key value line\n", "test.toml")

    def test_loader_dispatches_on_extension(self, tmp_path):
        toml_path = tmp_path / "a.toml"
        toml_path.write_text("runs = 4\n")
        assert load_config_file(toml_path) == {"runs": 4}
        json_path = tmp_path / "a.json"
        json_path.write_text('{"runs": 5}')
        assert load_config_file(json_path) == {"runs": 5}
