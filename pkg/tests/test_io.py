import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tfsynth.biphoton import SuperpositionParams, two_mode_jsa
from tfsynth.errors import EmptyWaveform, ParseError, ZeroField
from tfsynth.fourier import ft2
from tfsynth.grid import ComplexField2D, Waveform1D, make_axis
from tfsynth.interference import HomPattern, hom_scan
from tfsynth.io import export_csv, export_grid, export_heatmap, heatmap_levels, read_csv, read_grid

from conftest import NOMINAL

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


class TestCsv:
    @given(arrays(np.float64, 16, elements=finite))
    def test_round_trip_exact(self, tmp_path_factory, values):
        path = tmp_path_factory.mktemp("csv") / "w.csv"
        ax = make_axis(16, 0.3, 2.7, "time")
        export_csv(Waveform1D(ax, values), path)
        unit, x, v = read_csv(path)
        assert unit == "ps"
        np.testing.assert_array_equal(x, ax.samples)
        np.testing.assert_array_equal(v, values)

    def test_header_and_line_endings(self, tmp_path):
        path = tmp_path / "w.csv"
        export_csv(Waveform1D(make_axis(8, 0.0, 8.0, "frequency"), np.arange(8.0)), path)
        raw = path.read_bytes()
        assert raw.startswith(b"# THz,value\n")
        assert b"\r" not in raw
        assert raw.count(b"\n") == 9

    def test_hom_pattern_rows(self, tmp_path, freq_axis):
        f = two_mode_jsa(NOMINAL, SuperpositionParams(0.2131, math.pi), freq_axis)
        pattern = hom_scan(f, np.arange(-5.0, 5.0, 0.25))
        export_csv(pattern, tmp_path / "hom.csv")
        unit, x, p = read_csv(tmp_path / "hom.csv")
        assert unit == "ps" and len(x) == len(pattern)
        np.testing.assert_array_equal(p, pattern.p_cc)

    def test_rejects_complex(self, tmp_path):
        with pytest.raises(ValueError):
            export_csv(Waveform1D(make_axis(8, 0.0, 8.0, "time"), np.ones(8) * 1j), tmp_path / "c.csv")

    def test_empty_pattern(self, tmp_path):
        with pytest.raises(EmptyWaveform):
            export_csv(HomPattern(np.array([]), np.array([])), tmp_path / "e.csv")

    def test_bad_header(self, tmp_path):
        (tmp_path / "bad.csv").write_text("x,y\n1,2\n")
        with pytest.raises(ParseError):
            read_csv(tmp_path / "bad.csv")


class TestGrid:
    def test_identity_pattern_round_trip(self, tmp_path):
        ax = make_axis(8, 0.0, 8.0, "frequency")
        f = ComplexField2D(ax, ax, np.eye(8))
        export_grid(f, tmp_path / "eye.grid")
        lines = (tmp_path / "eye.grid").read_text().splitlines()
        assert lines[0].split()[-1] == "real"
        assert len(lines) == 9 and all(len(r.split()) == 8 for r in lines[1:])
        back = read_grid(tmp_path / "eye.grid")
        np.testing.assert_array_equal(back.values, f.values)
        assert back.axis_x == ax and back.axis_y == ax

    def test_complex_row_width(self, tmp_path):
        ax = make_axis(8, 0.0, 8.0, "time")
        f = ComplexField2D(ax, ax, np.eye(8) * (1 + 2j))
        export_grid(f, tmp_path / "c.grid")
        rows = (tmp_path / "c.grid").read_text().splitlines()[1:]
        assert all(len(r.split()) == 16 for r in rows)
        np.testing.assert_array_equal(read_grid(tmp_path / "c.grid").values, f.values)

    @given(arrays(np.complex128, (8, 8), elements=st.complex_numbers(allow_nan=False, allow_infinity=False)),
           st.floats(-200, 200), st.floats(1e-3, 1e3))
    def test_round_trip_property(self, tmp_path_factory, values, center, span):
        path = tmp_path_factory.mktemp("grid") / "g.grid"
        ax = make_axis(8, center, span, "frequency")
        ay = make_axis(8, -center, 2 * span, "frequency")
        f = ComplexField2D(ax, ay, values)
        export_grid(f, path)
        back = read_grid(path)
        np.testing.assert_array_equal(back.values, f.values)
        assert back.axis_x == ax and back.axis_y == ay

    def test_jta_round_trip(self, tmp_path, anti_jsa_wide):
        jta = ft2(anti_jsa_wide)
        export_grid(jta, tmp_path / "jta.grid")
        back = read_grid(tmp_path / "jta.grid")
        np.testing.assert_array_equal(back.values, jta.values)
        assert back.axis_x == jta.axis_x

    @pytest.mark.parametrize("text", [
        "# 8 8 0 1 0 1 frequency\n",
        "# 8 8 0 1 0 1 space real\n",
        "# 8 8 0 1 0 1 time real\n1 2 3\n",
        "# 2 8 0 1 0 1 time sparse\n",
    ])
    def test_header_mismatch(self, tmp_path, text):
        (tmp_path / "bad.grid").write_text(text)
        with pytest.raises(ParseError):
            read_grid(tmp_path / "bad.grid")

    def test_row_count_mismatch(self, tmp_path):
        ax = make_axis(8, 0.0, 8.0, "time")
        export_grid(ComplexField2D(ax, ax, np.ones((8, 8))), tmp_path / "g.grid")
        lines = (tmp_path / "g.grid").read_text().splitlines()
        (tmp_path / "g.grid").write_text("\n".join(lines[:-1]) + "\n")
        with pytest.raises(ParseError):
            read_grid(tmp_path / "g.grid")


class TestHeatmap:
    def test_uniform_is_white(self, tmp_path):
        ax = make_axis(8, 0.0, 8.0, "frequency")
        export_heatmap(ComplexField2D(ax, ax, np.full((8, 8), 3.0)), tmp_path / "u.pgm")
        lines = (tmp_path / "u.pgm").read_text().splitlines()
        assert lines[:3] == ["P2", "8 8", "255"]
        assert all(v == "255" for row in lines[3:] for v in row.split())

    def test_zero_field(self, tmp_path):
        ax = make_axis(8, 0.0, 8.0, "frequency")
        with pytest.raises(ZeroField):
            export_heatmap(ComplexField2D(ax, ax, np.zeros((8, 8))), tmp_path / "z.pgm")

    def test_rounding_and_orientation(self):
        ax = make_axis(8, 0.0, 8.0, "frequency")
        v = np.zeros((8, 8))
        v[7, 0] = 1.0   # largest x, smallest y
        v[0, 7] = 0.5   # smallest x, largest y
        img = heatmap_levels(ComplexField2D(ax, ax, v))
        assert img[7, 7] == 255   # bottom-right
        assert img[0, 0] == 128   # top-left, round(127.5)

    def test_two_lobe_jsi_mirror_symmetric(self, anti_jsa_wide):
        img = heatmap_levels(anti_jsa_wide.intensity())
        n = img.shape[0]
        rows, cols = np.nonzero(img == img.max())
        # image (r, c) holds x = c, y = n-1-r; lobes lie on both sides of the diagonal
        x, y = cols, n - 1 - rows
        assert np.any(x > y) and np.any(x < y)
        mirror = set(zip(y.tolist(), x.tolist()))
        assert mirror == set(zip(x.tolist(), y.tolist()))

    def test_deterministic_bytes(self, tmp_path, anti_jsa_wide):
        export_heatmap(anti_jsa_wide.intensity(), tmp_path / "a.pgm")
        export_heatmap(anti_jsa_wide.intensity(), tmp_path / "b.pgm")
        assert (tmp_path / "a.pgm").read_bytes() == (tmp_path / "b.pgm").read_bytes()

    def test_rejects_complex_or_negative(self, anti_jsa_wide):
        with pytest.raises(ValueError):
            heatmap_levels(anti_jsa_wide)
        with pytest.raises(ValueError):
            heatmap_levels(anti_jsa_wide.with_values(-anti_jsa_wide.intensity().values))
