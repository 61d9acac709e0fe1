import json
import subprocess
import sys

import pytest

from hdcode import parse_codebook, total_ones
from hdcode.cli import CliUsageError, main, parse_rule, parse_snr_grid


def run_cli(*args, env=None):
    import os

    merged = dict(os.environ)
    if env:
        merged.update(env)
    return subprocess.run(
        [sys.executable, "-m", "hdcode", *args],
        capture_output=True, text=True, env=merged,
    )


class TestParsing:
    def test_snr_comma_list(self):
        assert parse_snr_grid("0,2,1") == [0.0, 1.0, 2.0]

    def test_snr_range_default_step(self):
        assert parse_snr_grid("0:3") == [0.0, 1.0, 2.0, 3.0]

    def test_snr_range_fractional_step(self):
        assert parse_snr_grid("0:2:0.5") == [0.0, 0.5, 1.0, 1.5, 2.0]

    @pytest.mark.parametrize("bad", ["", "a,b", "5:1", "0:4:0", "1:2:3:4"])
    def test_snr_rejects_malformed(self, bad):
        with pytest.raises(CliUsageError):
            parse_snr_grid(bad)

    def test_rule_forms(self):
        assert parse_rule("qt>=0.5").kind == "min-energy-per-time"
        assert parse_rule("throughput>=0.3").kind == "min-throughput"
        assert parse_rule("bler<=1e-3").threshold == pytest.approx(1e-3)

    @pytest.mark.parametrize("bad", ["qt>0.5", "bler>=1", "qt>=x", "loss<=1"])
    def test_rule_rejects_malformed(self, bad):
        with pytest.raises(CliUsageError):
            parse_rule(bad)


class TestDesignCommand:
    def test_writes_valid_codebook(self, tmp_path, capsys):
        out = tmp_path / "book.json"
        code = main(["design", "--n", "3", "--k", "2", "--d", "1",
                     "--seed", "0", "--out", str(out)])
        assert code == 0
        book = parse_codebook(out.read_text())
        assert (book.n, book.k, book.d) == (3, 2, 1)
        assert total_ones(book) == 9

    def test_repeat_runs_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            assert main(["design", "--n", "6", "--k", "3", "--d", "2",
                         "--seed", "5", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_short_flags_match_long_ones(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["design", "-n", "3", "-k", "2", "-d", "1", "--out", str(a)]) == 0
        assert main(["design", "--n", "3", "--k", "2", "--d", "1", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_report_carries_history_and_codebook(self, tmp_path):
        out, rep = tmp_path / "book.json", tmp_path / "report.json"
        assert main(["design", "--n", "3", "--k", "2", "--d", "1",
                     "--out", str(out), "--report", str(rep)]) == 0
        doc = json.loads(rep.read_text())
        assert doc["succeeded"] is True
        assert doc["best_ones"] == 9
        assert doc["best"] == json.loads(out.read_text())
        history = doc["weight_history"]
        assert doc["generations_run"] + 1 == len(history)
        assert history[-1] == 9.0

    def test_report_written_even_on_failure(self, tmp_path):
        rep = tmp_path / "report.json"
        code = main(["design", "--n", "2", "--k", "2", "--d", "2",
                     "--max-generations", "30", "--report", str(rep)])
        assert code == 1
        doc = json.loads(rep.read_text())
        assert doc["succeeded"] is False
        assert doc["best"] is None and doc["best_ones"] is None

    def test_infeasible_exits_one(self, tmp_path, capsys):
        code = main(["design", "--n", "2", "--k", "2", "--d", "2",
                     "--max-generations", "30", "--out", str(tmp_path / "x.json")])
        assert code == 1
        assert "design failed" in capsys.readouterr().err


class TestValidateCommand:
    def test_accepts_designed_book(self, tmp_path, capsys):
        out = tmp_path / "book.json"
        main(["design", "--n", "3", "--k", "2", "--d", "2", "--out", str(out)])
        assert main(["validate", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "valid" in stdout and "total_ones=6" in stdout

    def test_rejects_distance_violation(self, tmp_path, capsys):
        doc = {"n": 3, "k": 2, "d": 2, "codewords": ["000", "001", "110", "111"]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert main(["validate", str(path)]) == 1
        assert "distance" in capsys.readouterr().err

    def test_missing_file_exits_one(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == 1


class TestOracleCommand:
    def test_emits_optimum_json(self, capsys):
        assert main(["oracle", "--n", "3", "--k", "2", "--d", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["feasible"] is True
        assert payload["optimum_ones"] == 9
        assert sorted(payload["codebook"]["codewords"]) == ["011", "101", "110", "111"]

    def test_infeasible_is_reported_not_failed(self, capsys):
        assert main(["oracle", "--n", "2", "--k", "2", "--d", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"codebook": None, "feasible": False, "optimum_ones": None}

    def test_capacity_exit_two(self, capsys):
        assert main(["oracle", "--n", "9", "--k", "2", "--d", "1"]) == 2


class TestBlerCommand:
    @pytest.fixture()
    def book_path(self, tmp_path):
        out = tmp_path / "book.json"
        main(["design", "--n", "3", "--k", "2", "--d", "1", "--out", str(out)])
        return str(out)

    def test_theory_csv_shape(self, book_path, capsys):
        assert main(["bler", "--codebook", book_path, "--snr-db", "0:4:2"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "snr_db,mode,bler,ci95,trials"
        assert len(lines) == 4
        first = lines[1].split(",")
        assert first[0] == "0.0" and first[1] == "theory-dominant"
        assert float(first[2]) > 0 and first[3] == "0.0" and first[4] == "0"

    def test_sim_thread_invariance(self, book_path, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["bler", "--codebook", book_path, "--snr-db", "0,2", "--mode", "sim",
                "--trials", "20000", "--seed", "7"]
        assert main([*base, "--threads", "1", "--out", str(a)]) == 0
        assert main([*base, "--threads", "4", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_snr_exit_two(self, book_path, capsys):
        assert main(["bler", "--codebook", book_path, "--snr-db", "zork"]) == 2
        assert "usage error" in capsys.readouterr().err


class TestSweepCommand:
    def test_csv_covers_cross_product(self, tmp_path, capsys):
        paths = []
        for (n, k, d) in [(3, 2, 1), (3, 2, 2)]:
            out = tmp_path / f"n{n}k{k}d{d}.json"
            main(["design", "--n", str(n), "--k", str(k), "--d", str(d), "--out", str(out)])
            paths.append(str(out))
        args = ["sweep", "--snr-db", "0:8:4"]
        for p in paths:
            args += ["--codebook", p]
        assert main(args) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        header = "codebook_id,n,k,d,snr_db,bler,throughput,energy_per_bit,energy_per_time"
        assert lines[0] == header
        assert len(lines) == 1 + 2 * 3
        assert lines[1].startswith("n3k2d1,3,2,1,0.0,")


class TestSelectCommand:
    def _library(self, tmp_path, specs):
        """Design codebooks and tabulate each one, as select expects on disk."""
        lib = tmp_path / "library"
        lib.mkdir()
        for (n, k, d) in specs:
            book = lib / f"n{n}k{k}d{d}.json"
            assert main(["design", "--n", str(n), "--k", str(k), "--d", str(d),
                         "--out", str(book)]) == 0
            assert main(["bler", "--codebook", str(book), "--snr-db", "0:8",
                         "--out", str(book.with_suffix(".csv"))]) == 0
        return str(lib)

    def test_reports_choice_as_json(self, tmp_path, capsys):
        lib = self._library(tmp_path, [(3, 2, 1), (3, 2, 2)])
        code = main(["select", "--library", lib, "--snr-db", "6", "--rule", "qt>=0.6"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["codebook_id"] == "n3k2d1"
        assert payload["energy_per_time"] == pytest.approx(0.75)

    def test_infeasible_rule_exit_one(self, tmp_path, capsys):
        lib = self._library(tmp_path, [(3, 2, 1)])
        code = main(["select", "--library", lib, "--snr-db", "4", "--rule", "qt>=0.99"])
        assert code == 1
        assert "no codebook" in capsys.readouterr().err

    def test_snr_outside_tables_exit_two(self, tmp_path):
        lib = self._library(tmp_path, [(3, 2, 1)])
        assert main(["select", "--library", lib, "--snr-db", "12",
                     "--rule", "qt>=0.5"]) == 2

    def test_missing_table_exit_one(self, tmp_path, capsys):
        lib = tmp_path / "library"
        lib.mkdir()
        main(["design", "--n", "3", "--k", "2", "--d", "1",
              "--out", str(lib / "lonely.json")])
        assert main(["select", "--library", str(lib), "--snr-db", "4",
                     "--rule", "qt>=0.5"]) == 1
        assert "lonely" in capsys.readouterr().err

    def test_not_a_directory_exit_two(self, tmp_path):
        assert main(["select", "--library", str(tmp_path / "nowhere"),
                     "--snr-db", "4", "--rule", "qt>=0.5"]) == 2


class TestProcessLevel:
    def test_missing_subcommand_exit_two(self):
        proc = run_cli()
        assert proc.returncode == 2

    def test_unknown_flag_exit_two(self):
        proc = run_cli("design", "--n", "3", "--k", "2", "--d", "1", "--frobnicate")
        assert proc.returncode == 2

    def test_end_to_end_design_validate(self, tmp_path):
        out = tmp_path / "book.json"
        design = run_cli("design", "--n", "4", "--k", "2", "--d", "2",
                         "--seed", "1", "--out", str(out))
        assert design.returncode == 0
        check = run_cli("validate", str(out))
        assert check.returncode == 0
        assert "valid" in check.stdout

    def test_log_env_writes_stderr_only(self, tmp_path):
        out_quiet = tmp_path / "quiet.json"
        out_loud = tmp_path / "loud.json"
        quiet = run_cli("design", "--n", "3", "--k", "2", "--d", "1",
                        "--out", str(out_quiet))
        loud = run_cli("design", "--n", "3", "--k", "2", "--d", "1",
                       "--out", str(out_loud), env={"HDCODE_LOG": "info"})
        assert quiet.returncode == loud.returncode == 0
        assert out_quiet.read_bytes() == out_loud.read_bytes()
        assert "design done" in loud.stderr
        assert "design done" not in quiet.stderr
