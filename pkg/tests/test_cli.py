"""Command-line surface: CSV schemas, exit codes, determinism, check suite."""

import math
import pytest

from qfermi.cli import main
from qfermi.thermo import q1_limit_distribution
from qfermi import verify


def read_csv(path):
    with open(path) as handle:
        header = handle.readline().rstrip("\n").split(",")
        rows = [line.rstrip("\n").split(",") for line in handle]
    return header, rows


def cell(text):
    return None if text == "" else float(text)


class TestDist:
    def test_ckn_columns_and_ordering(self, tmp_path):
        out = tmp_path / "ckn.csv"
        code = main(
            ["dist", "--model", "ckn", "--q", "0.5,0.7,1", "--grid", "-5:5:21",
             "--out", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["eta", "n_q0.5", "n_q0.7", "n_q1"]
        assert len(rows) == 21
        for row in rows:
            assert cell(row[1]) >= cell(row[3])  # stronger deformation sits higher

    def test_fn_undeformed_midpoint(self, tmp_path):
        out = tmp_path / "fn.csv"
        assert main(["dist", "--model", "fn", "--q", "1", "--grid", "-2:2:5",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        middle = rows[2]
        assert float(middle[0]) == 0.0
        assert cell(middle[1]) == 0.5

    def test_vpjc_fraction_q_and_limit_column(self, tmp_path):
        out = tmp_path / "vpjc.csv"
        assert main(["dist", "--model", "vpjc", "--q", "1/3,1/2,1",
                     "--grid", "-3:5:161", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["eta", "n_q0.333333", "n_q0.5", "n_q1_limit"]
        # dip of the q = 1/2 curve near the zero crossing
        grid_point = min(rows, key=lambda r: abs(float(r[0]) + 1.4))
        assert cell(grid_point[2]) <= 0.02
        # the eta = 0 point is nudged off the discontinuity, not emitted empty
        nudged = min(rows, key=lambda r: abs(float(r[0])))
        assert 0.0 < float(nudged[0]) <= 1.1e-9
        assert cell(nudged[2]) > 10.0

    def test_no_temp_file_left(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["dist", "--model", "fn", "--grid", "-1:1:3",
                     "--out", str(out)]) == 0
        assert not (tmp_path / "d.csv.tmp").exists()

    def test_bad_grid_is_usage_error(self, tmp_path):
        assert main(["dist", "--model", "fn", "--grid", "5:1:10"]) == 2
        assert main(["dist", "--model", "fn", "--grid", "0:1:1"]) == 2
        assert main(["dist", "--model", "fn", "--grid", "nope"]) == 2

    def test_bad_model_and_q(self):
        assert main(["dist", "--model", "bogus"]) == 2
        assert main(["dist", "--model", "fn", "--q", "-0.5"]) == 2


class TestEos:
    def test_fn_schema_and_domain(self, tmp_path, capsys):
        out = tmp_path / "eos.csv"
        code = main(["eos", "--model", "fn", "--q", "0.5", "--grid", "0.1:3:8",
                     "--out", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["z", "pressure", "density", "energy_density", "entropy"]
        populated = [r for r in rows if r[1] != ""]
        empty = [r for r in rows if r[1] == ""]
        assert populated and empty  # q z < 1 region populated, beyond left empty
        assert all(float(r[0]) < 2.0 for r in populated)
        assert "outside the series domain" in capsys.readouterr().err

    def test_multiple_q_split_files(self, tmp_path):
        out = tmp_path / "eos.csv"
        assert main(["eos", "--model", "fn", "--q", "0.5,1", "--grid", "0.1:0.5:3",
                     "--out", str(out)]) == 0
        assert (tmp_path / "eos_q0.5.csv").exists()
        assert (tmp_path / "eos_q1.csv").exists()

    def test_pvc_domain(self, tmp_path):
        out = tmp_path / "pvc.csv"
        assert main(["eos", "--model", "pvc", "--q", "0.5", "--grid", "0.01:0.45:5",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        assert all(r[1] != "" for r in rows)  # z/q < 1 everywhere on this grid

    def test_vpjc_not_supported(self):
        assert main(["eos", "--model", "vpjc"]) == 2


class TestVirial:
    def test_report_contents(self, capsys):
        assert main(["virial", "--model", "fn", "--orders", "3"]) == 0
        report = capsys.readouterr().out
        assert "a2=0.1767766953" in report
        assert "spread across q" in report
        assert "target" in report

    def test_orders_cap(self):
        assert main(["virial", "--model", "fn", "--orders", "7"]) == 2

    def test_model_restriction(self):
        assert main(["virial", "--model", "pvc"]) == 2

    def test_report_file(self, tmp_path, capsys):
        out = tmp_path / "virial.txt"
        assert main(["virial", "--model", "ckn", "--out", str(out)]) == 0
        capsys.readouterr()
        assert "a3" in out.read_text()


class TestMuAndSpectrum:
    def test_mu_table(self, tmp_path):
        out = tmp_path / "mu.csv"
        assert main(["mu", "--model", "fn", "--q", "0.5,1", "--grid", "0.02:0.1:5",
                     "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "mu_closed_q0.5", "mu_numeric_q0.5",
                          "mu_closed_q1", "mu_numeric_q1"]
        for row in rows:
            assert cell(row[1]) == pytest.approx(cell(row[2]), rel=1e-3)

    def test_mu_domain_error(self):
        assert main(["mu", "--model", "fn", "--grid", "0.1:0.9:5"]) == 2

    def test_spectrum_table(self, tmp_path):
        out = tmp_path / "levels.csv"
        assert main(["spectrum", "--model", "vpjc", "--q", "0.5", "--nmax", "4",
                     "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["n", "g_q0.5"]
        assert [cell(r[1]) for r in rows] == [0.0, 1.0, 0.5, 0.75, 0.625]


class TestCheck:
    def test_default_all_pass(self, capsys):
        assert main(["check"]) == 0
        out = capsys.readouterr().out
        for group in verify.GROUPS:
            assert f"GROUP {group}: PASS" in out
        assert "FAIL" not in out

    def test_group_filter(self, capsys):
        assert main(["check", "--group", "fock"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 1 and out[0].startswith("GROUP fock: PASS")

    def test_unknown_group(self):
        assert main(["check", "--group", "nonsense"]) == 2

    def test_injected_norm_fault_fails_strict(self, capsys):
        code = main(["check", "--group", "fock", "--vpjc-q", "2", "--strict"])
        assert code == 1
        out = capsys.readouterr().out
        assert "GROUP fock: FAIL" in out
        assert "norm_positivity" in out
        assert "n=2" in out

    def test_seed_changes_nothing_observable(self, capsys):
        assert main(["check", "--group", "fock", "--seed", "123"]) == 0


class TestFigure:
    def test_fig1_schema(self, tmp_path):
        out = tmp_path / "fig1.csv"
        assert main(["figure", "fig1", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["x", "n_q0.5", "n_q0.7", "n_q0.9", "n_q1"]
        assert len(rows) == 121
        # occupied region below beta*mu = 2: every curve above one half
        first = rows[0]
        assert all(cell(v) > 0.5 for v in first[1:])

    def test_fig1_xi_flag(self, tmp_path):
        out = tmp_path / "fig1.csv"
        assert main(["figure", "fig1", "--xi", "3", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        # at x = xi = 3 the undeformed curve sits at one half
        row = min(rows, key=lambda r: abs(float(r[0]) - 3.0))
        assert cell(row[4]) == pytest.approx(0.5, abs=1e-12)

    def test_fig2_crossing_brackets(self, tmp_path):
        out = tmp_path / "fig2.csv"
        assert main(["figure", "fig2", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["eta", "n_q0.333333", "n_q0.5", "n_q1_limit"]
        etas = [float(r[0]) for r in rows]
        half = [cell(r[2]) for r in rows]
        third = [cell(r[1]) for r in rows]
        # dips must sit inside the quoted brackets
        idx_half = half.index(min(v for e, v in zip(etas, half) if e < 0))
        assert -1.40 <= etas[idx_half] <= -1.37 + 0.051
        idx_third = third.index(min(v for e, v in zip(etas, third) if e < 0))
        assert -1.11 - 0.051 <= etas[idx_third] <= -1.08 + 0.051
        # limit column is the plain Fermi-Dirac curve
        for row in rows[:10]:
            assert cell(row[3]) == pytest.approx(
                q1_limit_distribution(float(row[0])), rel=1e-12
            )

    def test_fig2_deterministic(self, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(["figure", "fig2", "--out", str(first)]) == 0
        assert main(["figure", "fig2", "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_unknown_figure(self):
        assert main(["figure", "fig9"]) == 2


class TestConfigFile:
    def test_file_supplies_defaults(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        out = tmp_path / "out.csv"
        cfg.write_text(f"model=ckn\nq=0.5\ngrid=-1:1:5\nout={out}\n")
        assert main(["dist", "--config", str(cfg)]) == 0
        header, rows = read_csv(out)
        assert header == ["eta", "n_q0.5"]
        assert len(rows) == 5

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        out = tmp_path / "out.csv"
        cfg.write_text("model=ckn\nq=0.9\n")
        assert main(["dist", "--config", str(cfg), "--q", "0.5", "--grid", "-1:1:3",
                     "--out", str(out)]) == 0
        header, _ = read_csv(out)
        assert header == ["eta", "n_q0.5"]

    def test_missing_file(self):
        assert main(["dist", "--config", "/nonexistent/path.cfg"]) == 2

    def test_malformed_line(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just a line without equals\n")
        assert main(["dist", "--config", str(cfg)]) == 2


class TestUsage:
    def test_unknown_flag(self):
        assert main(["dist", "--bogus", "1"]) == 2

    def test_missing_command(self):
        assert main([]) == 2

    def test_twelve_significant_digits(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["dist", "--model", "fn", "--q", "1", "--grid", "-1:1:3",
                     "--out", str(out)]) == 0
        _, rows = read_csv(out)
        center = rows[1][1]
        assert center == "0.5"
        edge = rows[0][1]  # 1/(exp(-1)+1) to 12 significant digits
        assert edge == format(1.0 / (math.exp(-1.0) + 1.0), ".12g")
