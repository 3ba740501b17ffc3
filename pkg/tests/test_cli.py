import os
import subprocess
import sys

import numpy as np
import pytest

from layerset.bench import CSV_HEADER
from layerset.cli import main
from tests.conftest import FIG1_PATH


def run_main(*argv):
    return main([str(a) for a in argv])


class TestEval:
    def test_fig1_probes(self, capsys):
        assert run_main("eval", FIG1_PATH, "0,0", "3,3") == 0
        out = capsys.readouterr().out.splitlines()
        assert "count(S1, S2, S3, S4) @ (0, 0) = 4" in out
        assert "count(S1, S2, S3, S4) @ (3, 3) = 0" in out
        assert "union(S1, S2, S3, S4) @ (0, 0) = 1" in out
        assert "union(S1, S2, S3, S4) @ (3, 3) = 0" in out
        assert "exactly(4; S1, S2, S3, S4) @ (0, 0) = 1" in out
        assert len(out) == 14  # 7 queries x 2 probes

    def test_whitney_backend_agrees(self, capsys):
        assert run_main("eval", "--backend", "whitney", FIG1_PATH, "0,0", "3,3") == 0
        whit = capsys.readouterr().out
        assert run_main("eval", FIG1_PATH, "0,0", "3,3") == 0
        assert capsys.readouterr().out == whit

    def test_malformed_program_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.setl"
        bad.write_text("universe plane; set D = disk@;")
        assert run_main("eval", bad, "0,0") == 2
        err = capsys.readouterr().err
        assert "bad.setl" in err and "offset" in err

    def test_bad_probe_exits_2(self, capsys):
        assert run_main("eval", FIG1_PATH, "0") == 2
        assert "probe" in capsys.readouterr().err

    def test_missing_file_exits_2(self, capsys):
        assert run_main("eval", "no_such_file.setl", "0,0") == 2

    def test_naturals_probes(self, tmp_path, capsys):
        prog = tmp_path / "nat.setl"
        prog.write_text("universe naturals; set E = divides(2); query E;")
        assert run_main("eval", prog, "4", "7") == 0
        out = capsys.readouterr().out.splitlines()
        assert out == ["E @ 4 = 1", "E @ 7 = 0"]
        assert run_main("eval", prog, "-3") == 2


class TestRaster:
    def test_pgm_and_determinism(self, tmp_path, capsys):
        args = ("raster", FIG1_PATH, "--query", "1", "--size", "40x30", "--out")
        a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
        assert run_main(*args, a) == 0
        assert run_main(*args, b) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        header = a.read_bytes().split(b"\n", 3)
        assert header[0] == b"P2" and header[1] == b"40 30" and header[2] == b"4"

    def test_binary_pgm(self, tmp_path, capsys):
        out = tmp_path / "c.pgm"
        assert run_main("raster", FIG1_PATH, "--query", "1", "--size", "16x16",
                        "--binary", "--out", out) == 0
        capsys.readouterr()
        data = out.read_bytes()
        assert data.startswith(b"P5\n16 16\n4\n")
        assert len(data) == len(b"P5\n16 16\n4\n") + 256

    def test_query_text_and_region(self, tmp_path, capsys):
        out = tmp_path / "d.csv"
        assert run_main("raster", FIG1_PATH, "--query", "exactly(4)",
                        "--region=-0.3,-0.3,0.3,0.3", "--size", "8x8",
                        "--format", "csv", "--out", out) == 0
        capsys.readouterr()
        rows = out.read_text().splitlines()
        assert len(rows) == 8 and all(len(r.split(",")) == 8 for r in rows)
        cells = {c for row in rows for c in row.split(",")}
        assert cells == {"1"}  # [-0.3,0.3]^2 sits inside all four disks

    def test_query_required_when_ambiguous(self, capsys):
        assert run_main("raster", FIG1_PATH, "--out", "/tmp/never.pgm") == 2
        assert "--query" in capsys.readouterr().err

    def test_query_index_out_of_range(self, capsys):
        assert run_main("raster", FIG1_PATH, "--query", "9", "--out", "/tmp/never.pgm") == 2

    def test_non_plane_program_exits_2(self, tmp_path, capsys):
        prog = tmp_path / "nat.setl"
        prog.write_text("universe naturals; set E = divides(2); query E;")
        assert run_main("raster", prog, "--out", tmp_path / "x.pgm") == 2

    def test_unwritable_path_exits_2(self, capsys):
        assert run_main("raster", FIG1_PATH, "--query", "1", "--size", "4x4",
                        "--out", "/no/such/dir/out.pgm") == 2


class TestPrimes:
    def test_match(self, capsys):
        assert run_main("primes", "100") == 0
        out = capsys.readouterr().out
        assert "25" in out and "match" in out

    def test_thousand(self, capsys):
        assert run_main("primes", "1000") == 0
        assert "168" in capsys.readouterr().out

    def test_usage_errors(self, capsys):
        assert run_main("primes", "1") == 2
        assert run_main("primes", str(10 ** 6 + 1)) == 2


class TestBench:
    def test_small_run(self, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        assert run_main("bench", "--n-max", "6", "--probes", "8",
                        "--seed", "3", "--out", out) == 0
        stdout = capsys.readouterr().out
        assert "kernel backend:" in stdout
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 7
        rows = [line.split(",") for line in lines[1:]]
        for n, row in enumerate(rows, start=1):
            assert int(row[0]) == n
            assert int(row[1]) == n
            assert int(row[2]) == 2 ** n - 1
            assert row[5] == "true"

    def test_cap(self, capsys):
        assert run_main("bench", "--n-max", "30") == 2


class TestCheck:
    def test_all_suites_pass(self, capsys):
        assert run_main("check") == 0
        out = capsys.readouterr().out
        assert out.count("ok   ") == 7
        assert "7/7 suites passed" in out

    def test_corrupted_sign_convention_is_caught(self):
        # negative control: a case-table b whose border value resolves the
        # zero-sign case to full height sign(y) instead of sign(y)/2
        from layerset.bcore import HalfInt, _coerce
        from layerset.checks import check_splitting

        def corrupt_b(x, y):
            xv, yv = _coerce(x), _coerce(y)
            ax, ay = abs(xv), abs(yv)
            if ax < ay:
                return HalfInt(2 if yv > 0 else -2)
            if ax == ay and yv != 0:
                return HalfInt(2 if yv > 0 else -2)
            return HalfInt(0)

        result = check_splitting(samples=200, seed=0, b_impl=corrupt_b)
        assert not result.passed
        assert result.failure


class TestEntryPoint:
    def test_console_script_runs(self):
        proc = subprocess.run([sys.executable, "-m", "layerset.cli", "eval",
                               str(FIG1_PATH), "0,0"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "count(S1, S2, S3, S4) @ (0, 0) = 4" in proc.stdout

    def test_numpy_backend_end_to_end(self, tmp_path):
        env = dict(os.environ, LAYERSET_KERNEL_BACKEND="numpy")
        out = tmp_path / "np.pgm"
        proc = subprocess.run([sys.executable, "-m", "layerset.cli", "raster",
                               str(FIG1_PATH), "--query", "1", "--size", "32x32",
                               "--out", str(out)],
                              capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        default_out = tmp_path / "default.pgm"
        assert run_main("raster", FIG1_PATH, "--query", "1", "--size", "32x32",
                        "--out", default_out) == 0
        assert out.read_bytes() == default_out.read_bytes()
