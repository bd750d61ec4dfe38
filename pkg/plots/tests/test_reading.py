"""CSV schema validation and series extraction."""

import pytest

from ergoplot import CANONICAL_COLUMNS, EmptyInput, SchemaError, read_series


class TestSchema:
    def test_reads_canonical_file(self, make_csv):
        series = read_series(make_csv(n=10))
        assert len(series) == 1
        assert series[0].delta == 0.0
        assert len(series[0].t) == 10

    def test_missing_column_named(self, make_csv, tmp_path):
        source = make_csv(n=5).read_text().splitlines()
        header = source[0].split(",")
        drop = header.index("W_C")
        broken = tmp_path / "broken.csv"
        broken.write_text(
            "\n".join(",".join(c for i, c in enumerate(line.split(",")) if i != drop)
                      for line in source)
        )
        with pytest.raises(SchemaError, match="W_C"):
            read_series(broken)

    def test_extra_column_rejected(self, make_csv, tmp_path):
        source = make_csv(n=5).read_text().splitlines()
        tainted = tmp_path / "extra.csv"
        tainted.write_text("\n".join(line + ",1" if i == 0 else line + ",x"
                                     for i, line in enumerate(source)).replace(",1", ",note", 1))
        with pytest.raises(SchemaError):
            read_series(tainted)

    def test_reordered_columns_rejected(self, tmp_path):
        shuffled = list(CANONICAL_COLUMNS)
        shuffled[0], shuffled[1] = shuffled[1], shuffled[0]
        path = tmp_path / "shuffled.csv"
        path.write_text(",".join(shuffled) + "\n" + ",".join(["0"] * len(shuffled)) + "\n")
        with pytest.raises(SchemaError, match="order"):
            read_series(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(EmptyInput):
            read_series(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "header.csv"
        path.write_text(",".join(CANONICAL_COLUMNS) + "\n")
        with pytest.raises(EmptyInput):
            read_series(path)


class TestSeries:
    def test_groups_by_delta(self, make_csv):
        series = read_series(make_csv(deltas=(0.0, 3.0, 5.0), n=8))
        assert [s.delta for s in series] == [0.0, 3.0, 5.0]
        assert all(len(s.t) == 8 for s in series)

    def test_pulse_times_from_pre_pulse_rows(self, make_csv):
        series = read_series(make_csv(n=30, pulses=(0.5, 1.0, 1.5)))
        assert series[0].pulse_times == pytest.approx((0.5, 1.0, 1.5))

    def test_work_split_consistent(self, make_csv):
        (s,) = read_series(make_csv(n=25))
        assert (s.total - (s.incoherent + s.coherent) == 0.0).all()
