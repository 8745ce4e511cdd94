"""End-to-end command line checks, all in process through main()."""

import csv
import json

import numpy as np
import pytest

from metamono import (
    BasisIndex,
    DiskPoint,
    eval_Fnm,
    read_coeffs_csv,
    read_field_csv,
    write_coeffs_csv,
)
from metamono.cli import main

FAST = ["--quad-nr", "40", "--quad-ntheta", "32"]


class TestZeros:
    def test_table_contents(self, tmp_path, table):
        out = tmp_path / "zeros.csv"
        assert main(["zeros", "--n-max", "2", "--m-max", "3", "--out", str(out)]) == 0
        with open(out, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "m", "zero"]
        assert len(rows) == 1 + 3 * 3
        for n, m, z in rows[1:]:
            assert float(z) == table.zero(int(n), int(m))

    def test_byte_determinism(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["zeros", "--n-max", "4", "--m-max", "4", "--out", str(a)])
        main(["zeros", "--n-max", "4", "--m-max", "4", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestEval:
    def test_grid_samples(self, tmp_path, table):
        out = tmp_path / "field.csv"
        assert main(["eval", "--n", "1", "--m", "1", "--grid", "32x32", "--out", str(out)]) == 0
        x, y, vals = read_field_csv(out)
        assert vals.shape == (1024, 4)
        assert x[0] == -1.0 and y[0] == 1.0
        p = DiskPoint.from_cartesian(x[5], y[5])
        assert np.max(np.abs(vals[5] - eval_Fnm(BasisIndex(1, 1), p, table))) < 1e-16

    def test_raster_output(self, tmp_path):
        out = tmp_path / "field.csv"
        pgm = tmp_path / "field.pgm"
        code = main([
            "eval", "--n", "0", "--m", "1", "--grid", "16x16",
            "--component", "i", "--pgm", str(pgm), "--out", str(out),
        ])
        assert code == 0
        data = pgm.read_bytes()
        assert data.startswith(b"P5\n16 16\n255\n")
        assert len(data) == len(b"P5\n16 16\n255\n") + 256

    def test_raster_needs_component(self, tmp_path, capsys):
        code = main([
            "eval", "--n", "0", "--m", "1", "--grid", "16x16",
            "--pgm", str(tmp_path / "x.pgm"), "--out", str(tmp_path / "x.csv"),
        ])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_quadrature_nodes_exclude_raster(self, tmp_path, capsys):
        out = tmp_path / "field.csv"
        code = main(FAST + [
            "eval", "--n", "1", "--m", "1", "--at-quadrature-nodes",
            "--component", "i", "--pgm", str(tmp_path / "x.pgm"), "--out", str(out),
        ])
        assert code == 2
        assert not out.exists()

    def test_figure_output(self, tmp_path):
        png = tmp_path / "field.png"
        code = main([
            "eval", "--n", "2", "--m", "1", "--grid", "24x24",
            "--png", str(png), "--out", str(tmp_path / "field.csv"),
        ])
        assert code == 0
        assert png.stat().st_size > 0


class TestExpandRoundTrip:
    def test_node_samples_recover_coefficient(self, tmp_path, table, capsys):
        field = tmp_path / "field.csv"
        coeffs = tmp_path / "coeffs.csv"
        assert main(FAST + [
            "eval", "--n", "2", "--m", "1", "--at-quadrature-nodes", "--out", str(field),
        ]) == 0
        lam = table.zero(2, 1)
        assert main(FAST + [
            "expand", "--lambda", repr(lam), "--n-max", "3", "--m-max", "2",
            "--input", str(field), "--out", str(coeffs),
        ]) == 0
        line = capsys.readouterr().out.strip().splitlines()[-1]
        assert line.startswith("residual_l2 = ")
        assert float(line.split("=")[1]) < 1e-6
        back = read_coeffs_csv(coeffs)
        assert np.max(np.abs(back[BasisIndex(2, 1)] - np.array([1.0, 0, 0, 0]))) < 1e-7
        others = [c for i, c in back.items() if i != BasisIndex(2, 1)]
        assert max(np.max(np.abs(c)) for c in others) < 1e-6

    def test_builtin_target(self, tmp_path, capsys):
        coeffs = tmp_path / "coeffs.csv"
        code = main(["--quad-nr", "80", "--quad-ntheta", "64"] + [
            "expand", "--lambda", "1.7", "--n-max", "1", "--m-max", "8",
            "--builtin", "F0", "--out", str(coeffs),
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "residual_l2 = " in out
        assert len(read_coeffs_csv(coeffs)) == 16

    def test_bad_builtin_name(self, tmp_path, capsys):
        code = main(FAST + [
            "expand", "--lambda", "2.0", "--n-max", "1", "--m-max", "1",
            "--builtin", "G7", "--out", str(tmp_path / "c.csv"),
        ])
        assert code == 2
        assert "builtin" in capsys.readouterr().err


class TestEvolve:
    def test_frames_and_index(self, tmp_path):
        coeffs = tmp_path / "coeffs.csv"
        write_coeffs_csv(coeffs, {BasisIndex(0, 1): np.array([1.0, 0, 0, 0])})
        out = tmp_path / "frames"
        code = main([
            "evolve", "--coeffs", str(coeffs), "--times", "0,0.1",
            "--grid", "16x16", "--out-dir", str(out), "--pgm",
        ])
        assert code == 0
        assert (out / "index.csv").read_text().splitlines() == [
            "frame,t,path",
            "0,0,frame_000.csv",
            "1,0.10000000000000001,frame_001.csv",
        ]
        x0, y0, v0 = read_field_csv(out / "frame_000.csv")
        x1, y1, v1 = read_field_csv(out / "frame_001.csv")
        assert v0.shape == v1.shape == (256, 4)
        assert np.max(np.abs(v1)) > np.max(np.abs(v0))
        for comp in "sijk":
            assert (out / ("frame_001_%s.pgm" % comp)).exists()

    def test_bad_times(self, tmp_path, capsys):
        coeffs = tmp_path / "coeffs.csv"
        write_coeffs_csv(coeffs, {BasisIndex(0, 1): np.ones(4)})
        code = main([
            "evolve", "--coeffs", str(coeffs), "--times", "0,fast",
            "--out-dir", str(tmp_path / "frames"),
        ])
        assert code == 2
        assert "times" in capsys.readouterr().err


class TestVerify:
    def test_subset_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(FAST + ["verify", "--only", "symmetry", "--out", str(out)])
        assert code == 0
        assert "PASS symmetry" in capsys.readouterr().out
        report = json.loads(out.read_text())
        assert [r["name"] for r in report["checks"]] == ["symmetry"]
        assert report["all_passed"] is True

    def test_report_byte_determinism(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(FAST + ["verify", "--only", "symmetry", "--out", str(a)])
        main(FAST + ["verify", "--only", "symmetry", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_coarse_rule_fails_orthogonality(self, tmp_path, capsys):
        code = main([
            "--quad-nr", "3", "--quad-ntheta", "8",
            "verify", "--only", "orthogonality", "--out", str(tmp_path / "r.json"),
        ])
        assert code == 1
        assert "FAIL orthogonality" in capsys.readouterr().out

    def test_unknown_family(self, capsys):
        code = main(FAST + ["verify", "--only", "sharpness"])
        assert code == 2
        assert "error:" in capsys.readouterr().err


class TestTopLevel:
    def test_config_file_feeds_commands(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bessel.n_max = 2\nbessel.m_max = 2\n")
        out = tmp_path / "zeros.csv"
        assert main(["--config", str(cfg), "zeros", "--out", str(out)]) == 0
        with open(out, newline="") as fh:
            assert len(list(csv.reader(fh))) == 1 + 3 * 2

    def test_bad_grid_exits_2(self, tmp_path, capsys):
        code = main(["eval", "--n", "0", "--m", "1", "--grid", "wide",
                     "--out", str(tmp_path / "f.csv")])
        assert code == 2
        assert "grid" in capsys.readouterr().err

    def test_missing_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit):
            main([])
