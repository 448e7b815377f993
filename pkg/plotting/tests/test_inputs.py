import numpy as np
import pytest

from conftest import write_snapshot, write_sweep_report
from nsac_plot.exact import ExactPattern
from nsac_plot.inputs import (
    PlotInputError,
    read_key_values,
    read_snapshot,
    read_sweep_report,
    time_from_filename,
)


class TestSnapshotReader:
    def test_round_trip(self, tmp_path):
        f = write_snapshot(tmp_path / "s_t0.2.csv")
        x, rho, u, chi = read_snapshot(f)
        assert x.size == 200
        assert np.all(rho > 0)

    def test_malformed_header_names_file(self, tmp_path):
        f = tmp_path / "bad.csv"
        f.write_text("x,density,u,chi\n0,1,0,1\n")
        with pytest.raises(PlotInputError, match="bad.csv"):
            read_snapshot(f)

    def test_extra_column_rejected(self, tmp_path):
        f = tmp_path / "extra.csv"
        f.write_text("x,rho,u,chi\n0,1,0,1,7\n0.1,1,0,1,7\n")
        with pytest.raises(PlotInputError):
            read_snapshot(f)

    def test_missing_file(self, tmp_path):
        with pytest.raises(PlotInputError, match="no such"):
            read_snapshot(tmp_path / "nope.csv")


class TestFilenameTime:
    @pytest.mark.parametrize("name,expected", [
        ("fig1_t0.2.csv", 0.2),
        ("two_wave_eps0.003_t0.08.csv", 0.08),
        ("plain.csv", None),
    ])
    def test_parse(self, name, expected):
        assert time_from_filename(name) == expected


class TestSweepReport:
    def test_parse_with_failure_row(self, tmp_path):
        f = write_sweep_report(tmp_path / "r.csv", [
            (3e-3, 0.06, 0.14, 1e-6, 500, "ok"),
            (1e-3, "nan", "nan", "nan", 0, "failed: boom"),
        ])
        rows = read_sweep_report(f)
        assert rows[0].ok and not rows[1].ok
        assert rows[1].status == "failed: boom"

    def test_bad_header(self, tmp_path):
        f = tmp_path / "r.csv"
        f.write_text("eps,errors\n1,2\n")
        with pytest.raises(PlotInputError):
            read_sweep_report(f)


class TestKeyValues:
    def test_parse_and_comments(self, tmp_path):
        f = tmp_path / "kv.txt"
        f.write_text("# a comment\nalpha = 1\nbeta: two\n")
        assert read_key_values(f) == {"alpha": "1", "beta": "two"}

    def test_malformed_line(self, tmp_path):
        f = tmp_path / "kv.txt"
        f.write_text("just words\n")
        with pytest.raises(PlotInputError):
            read_key_values(f)


class TestExactPattern:
    def test_unknown_kind_rejected(self):
        with pytest.raises(PlotInputError):
            ExactPattern({"kind": "mystery", "gamma": "1.4"})
