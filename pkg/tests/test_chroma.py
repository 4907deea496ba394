import colorsys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditherfeat import QuantizerConfig, quantize, rgb_to_hsv
from ditherfeat.chroma import quantize_array, rgb_to_hsv_array

CFG12 = QuantizerConfig(levels=12)


class TestRgbToHsv:
    def test_pure_red(self):
        c = rgb_to_hsv((255, 0, 0))
        assert (c.h, c.s, c.v) == (0.0, 1.0, 1.0)

    def test_black(self):
        c = rgb_to_hsv((0, 0, 0))
        assert (c.s, c.v) == (0.0, 0.0)

    def test_mid_gray(self):
        c = rgb_to_hsv((128, 128, 128))
        assert c.s == 0.0
        assert abs(c.v - 128 / 255) < 1e-12

    def test_matches_stdlib_colorsys(self):
        rng = np.random.default_rng(3)
        for rgb in rng.integers(0, 256, (300, 3)):
            r, g, b = (int(v) for v in rgb)
            got = rgb_to_hsv((r, g, b))
            eh, es, ev = colorsys.rgb_to_hsv(r / 255, g / 255, b / 255)
            assert abs(got.h - (eh * 360.0) % 360.0) < 1e-9
            assert abs(got.s - es) < 1e-9
            assert abs(got.v - ev) < 1e-9

    def test_hue_range(self):
        rng = np.random.default_rng(4)
        hsv = rgb_to_hsv_array(rng.integers(0, 256, (1000, 3)))
        assert np.all(hsv[..., 0] >= 0) and np.all(hsv[..., 0] < 360)
        assert np.all(hsv[..., 1:] >= 0) and np.all(hsv[..., 1:] <= 1)


class TestQuantize:
    def test_black_is_bin_zero(self):
        assert quantize((0, 0, 0), CFG12) == 0

    def test_white_is_bin_one(self):
        assert quantize((255, 255, 255), CFG12) == 1

    def test_red_is_first_hue_sector(self):
        assert quantize((255, 0, 0), CFG12) == 2

    @pytest.mark.parametrize("levels", [6, 12, 24])
    def test_sector_count(self, levels):
        cfg = QuantizerConfig(levels=levels)
        sector_width = 360 / (levels - 2)
        # a hue dead-center in each sector must land in its own bin
        for i in range(levels - 2):
            h = (i + 0.5) * sector_width
            r, g, b = colorsys.hsv_to_rgb(h / 360, 1.0, 1.0)
            c = (round(r * 255), round(g * 255), round(b * 255))
            assert quantize(c, cfg) == 2 + i

    def test_gray_axis_split(self):
        # v_black = 0.2 -> 255 * 0.2 = 51 is the first gray-bin level
        for g in range(0, 51):
            assert quantize((g, g, g), CFG12) == 0
        for g in range(51, 256):
            assert quantize((g, g, g), CFG12) == 1

    @pytest.mark.parametrize("levels", [6, 12, 24])
    def test_exhaustive_lattice_totality(self, levels):
        cfg = QuantizerConfig(levels=levels)
        vals = np.arange(0, 256, 4)  # 64^3 lattice
        grid = np.stack(np.meshgrid(vals, vals, vals, indexing="ij"), axis=-1)
        bins = quantize_array(grid.reshape(-1, 3), cfg)
        assert bins.min() >= 0 and bins.max() <= levels - 1

    def test_strided_full_range_totality(self):
        rng = np.random.default_rng(9)
        sample = rng.integers(0, 256, (200_000, 3))
        bins = quantize_array(sample, CFG12)
        assert bins.min() >= 0 and bins.max() <= 11


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255),
       st.sampled_from([6, 12, 24]))
@settings(max_examples=300, deadline=None)
def test_quantize_total_and_deterministic(r, g, b, levels):
    cfg = QuantizerConfig(levels=levels)
    got = quantize((r, g, b), cfg)
    assert 0 <= got <= levels - 1
    assert quantize((r, g, b), cfg) == got
