import pytest

from conftest import write_exact_general, write_snapshot, write_sweep_report
from nsac_plot.cli import main


class TestSnapshotCommand:
    def test_renders_from_spec(self, tmp_path, capsys, snapshot_set):
        files, labels = snapshot_set
        exact = write_exact_general(tmp_path / "exact.txt")
        spec = tmp_path / "figure.spec"
        spec.write_text(
            f"snapshot_files = {', '.join(f.name for f in files)}\n"
            f"labels = {', '.join(labels)}\n"
            f"exact_overlay = exact.txt\n"
            "out_path = fig.png\n"
        )
        assert main(["snapshot", "--spec", str(spec)]) == 0
        assert (tmp_path / "fig.png").exists()
        assert "wrote" in capsys.readouterr().out

    def test_bad_spec_exits_2(self, tmp_path, capsys):
        spec = tmp_path / "figure.spec"
        spec.write_text("out_path = fig.png\n")
        assert main(["snapshot", "--spec", str(spec)]) == 2

    def test_schema_drift_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad_t0.1.csv"
        bad.write_text("x,rho,u,chi,extra\n0,1,0,1,2\n")
        spec = tmp_path / "figure.spec"
        spec.write_text("snapshot_files = bad_t0.1.csv\nlabels = a\n"
                        "out_path = f.png\n")
        assert main(["snapshot", "--spec", str(spec)]) == 2


class TestConvergenceCommand:
    def test_renders_report(self, tmp_path, capsys):
        report = write_sweep_report(tmp_path / "sweep.csv", [
            (2e-3, 0.05, 0.1, 1e-7, 100, "ok"),
            (1e-3, 0.03, 0.07, 1e-9, 100, "ok"),
        ])
        assert main(["convergence", "--report", str(report)]) == 0
        assert (tmp_path / "sweep.png").exists()

    def test_single_point_exits_2(self, tmp_path, capsys):
        report = write_sweep_report(tmp_path / "sweep.csv", [
            (2e-3, 0.05, 0.1, 1e-7, 100, "ok"),
        ])
        assert main(["convergence", "--report", str(report)]) == 2
