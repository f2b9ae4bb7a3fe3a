import csv

from augcontact.cli import main


def test_cli_study(tmp_path, capsys):
    rc = main(["study", "smooth-obstacle", "--levels", "2", "--start-level", "1",
               "--out", str(tmp_path), "--dump-solution"])
    assert rc == 0
    rows = list(csv.reader((tmp_path / "smooth-obstacle.csv").open()))
    assert rows[0] == ["level", "nno", "h", "err_l2", "err_h1", "ord_l2", "ord_h1", "newton_its"]
    assert len(rows) == 3
    assert (tmp_path / "smooth-obstacle.svg").exists()
    data = (tmp_path / "smooth-obstacle-solution.txt").read_text().splitlines()
    assert data[0].startswith("# x y u") and len(data) == 1 + 81
    assert "wrote" in capsys.readouterr().out


def test_cli_options(tmp_path):
    rc = main(["study", "signorini", "--levels", "2", "--start-level", "1",
               "--formulation", "f2-alt", "--gamma0", "5", "--delta", "2",
               "--gamma-exponent", "1", "--tol", "1e-9", "--overkill-extra", "1",
               "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "signorini.csv").exists()


def test_cli_failed_level_exit_code(tmp_path):
    rc = main(["study", "nonsmooth-obstacle", "--levels", "2", "--start-level", "2",
               "--max-newton", "1", "--out", str(tmp_path)])
    assert rc == 2
