import numpy as np
import pytest

from conftest import write_exact_general, write_snapshot, write_sweep_report
from nsac_plot.figspec import FigureSpec, load_figure_spec
from nsac_plot.inputs import PlotInputError
from nsac_plot.render import (
    build_convergence_figure,
    build_snapshot_figure,
    render_convergence,
    render_snapshot_figure,
)


class TestFigureSpec:
    def test_empty_file_list_rejected(self, tmp_path):
        with pytest.raises(PlotInputError):
            FigureSpec(snapshot_files=(), labels=(), out_path=tmp_path / "f.png")

    def test_label_count_mismatch_rejected(self, tmp_path):
        f = write_snapshot(tmp_path / "a_t0.2.csv")
        with pytest.raises(PlotInputError):
            FigureSpec(snapshot_files=(f,), labels=("a", "b"),
                       out_path=tmp_path / "f.png")

    def test_load_from_key_value_file(self, tmp_path, snapshot_set):
        files, labels = snapshot_set
        spec_file = tmp_path / "figure.spec"
        spec_file.write_text(
            f"snapshot_files = {', '.join(f.name for f in files)}\n"
            f"labels = {', '.join(labels)}\n"
            "out_path = fig.png\n"
            "title = states at t = 0.2\n"
        )
        spec = load_figure_spec(spec_file)
        assert len(spec.snapshot_files) == 3
        assert spec.out_path == tmp_path / "fig.png"
        assert spec.overlay_time() == 0.2     # parsed from the filename

    def test_missing_keys_rejected(self, tmp_path):
        spec_file = tmp_path / "figure.spec"
        spec_file.write_text("labels = a\n")
        with pytest.raises(PlotInputError, match="missing"):
            load_figure_spec(spec_file)


class TestSnapshotFigure:
    def test_three_panels_and_legend(self, tmp_path, snapshot_set):
        files, labels = snapshot_set
        spec = FigureSpec(snapshot_files=tuple(files), labels=tuple(labels),
                          out_path=tmp_path / "fig.png")
        fig = build_snapshot_figure(spec)
        assert len(fig.axes) == 3
        for ax in fig.axes:
            assert len(ax.lines) == len(files)
        legend_texts = [t.get_text() for t in fig.axes[0].get_legend().get_texts()]
        assert legend_texts == [f"eps = {l}" for l in labels]

    def test_overlay_present_and_dashed(self, tmp_path, snapshot_set):
        files, labels = snapshot_set
        exact = write_exact_general(tmp_path / "exact.txt")
        spec = FigureSpec(snapshot_files=tuple(files), labels=tuple(labels),
                          out_path=tmp_path / "fig.png", exact_overlay=exact,
                          time=0.2)
        fig = build_snapshot_figure(spec)
        assert len(fig.axes[0].lines) == len(files) + 1
        assert len(fig.axes[1].lines) == len(files) + 1
        assert len(fig.axes[2].lines) == len(files)      # no chi overlay
        overlay = fig.axes[0].lines[-1]
        assert overlay.get_linestyle() == "--"

    def test_render_writes_file(self, tmp_path, snapshot_set):
        files, labels = snapshot_set
        out = tmp_path / "fig.png"
        spec = FigureSpec(snapshot_files=tuple(files), labels=tuple(labels),
                          out_path=out)
        assert render_snapshot_figure(spec) == out
        assert out.stat().st_size > 0

    def test_byte_stable(self, tmp_path, snapshot_set):
        files, labels = snapshot_set
        out1, out2 = tmp_path / "f1.png", tmp_path / "f2.png"
        for out in (out1, out2):
            render_snapshot_figure(FigureSpec(
                snapshot_files=tuple(files), labels=tuple(labels), out_path=out))
        assert out1.read_bytes() == out2.read_bytes()


class TestConvergenceFigure:
    def rows(self):
        return [
            (3e-3, 0.061, 0.148, 4.2e-6, 549, "ok"),
            (1.5e-3, 0.033, 0.083, 5.9e-12, 549, "ok"),
            (8e-4, 0.022, 0.067, 8.9e-16, 549, "ok"),
            (4e-4, 0.015, 0.054, 1.1e-15, 549, "ok"),
        ]

    def test_curves_over_four_points(self, tmp_path):
        report = write_sweep_report(tmp_path / "r.csv", self.rows())
        fig = build_convergence_figure(report)
        assert len(fig.axes) == 1
        assert len(fig.axes[0].lines) == 3          # rho, u, chi curves
        for line in fig.axes[0].lines[:2]:
            ydata = line.get_ydata()
            assert np.all(np.diff(ydata) < 0)       # decreasing errors

    def test_single_point_rejected(self, tmp_path):
        report = write_sweep_report(tmp_path / "r.csv", self.rows()[:1])
        with pytest.raises(PlotInputError, match="at least 2"):
            build_convergence_figure(report)

    def test_failed_run_annotated(self, tmp_path):
        rows = self.rows()[:3] + [(4e-4, "nan", "nan", "nan", 0, "failed: abort")]
        report = write_sweep_report(tmp_path / "r.csv", rows)
        fig = build_convergence_figure(report)
        texts = [t.get_text() for t in fig.axes[0].texts]
        assert any("failed" in t for t in texts)
        for line in fig.axes[0].lines:
            assert len(line.get_xdata()) == 3       # curves over successes only

    def test_render_default_path(self, tmp_path):
        report = write_sweep_report(tmp_path / "r.csv", self.rows())
        out = render_convergence(report)
        assert out == tmp_path / "r.png"
        assert out.stat().st_size > 0

    def test_byte_stable(self, tmp_path):
        report = write_sweep_report(tmp_path / "r.csv", self.rows())
        o1 = render_convergence(report, tmp_path / "c1.png")
        o2 = render_convergence(report, tmp_path / "c2.png")
        assert o1.read_bytes() == o2.read_bytes()
