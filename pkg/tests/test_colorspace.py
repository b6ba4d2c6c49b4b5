import numpy as np
import pytest
from hypothesis import given, strategies as st

from chorocolor.colorspace import (
    ColorAdjustment,
    LabColor,
    RGBColor,
    adjust,
    delta_e,
    format_hex,
    lab_to_rgb,
    parse_hex,
    rgb_to_lab,
)
from chorocolor.errors import BadHex

# independent converter reference for sRGB (255,0,0), D65/2deg
RED_LAB = (53.2408, 80.0925, 67.2032)


def test_white_is_lab_white():
    lab = rgb_to_lab(RGBColor(255, 255, 255))
    assert lab.L == pytest.approx(100.0, abs=0.01)
    assert abs(lab.a) < 0.01 and abs(lab.b) < 0.01


def test_black_is_lab_origin():
    lab = rgb_to_lab(RGBColor(0, 0, 0))
    assert lab.L == pytest.approx(0.0, abs=1e-6)
    assert abs(lab.a) < 1e-4 and abs(lab.b) < 1e-4


def test_red_matches_published_reference():
    lab = rgb_to_lab(RGBColor(255, 0, 0))
    assert lab.L == pytest.approx(RED_LAB[0], abs=0.01)
    assert lab.a == pytest.approx(RED_LAB[1], abs=0.01)
    assert lab.b == pytest.approx(RED_LAB[2], abs=0.01)


def test_round_trip_sublattice_within_one():
    for r in range(0, 256, 17):
        for g in range(0, 256, 17):
            for b in range(0, 256, 17):
                back = lab_to_rgb(rgb_to_lab(RGBColor(r, g, b))).color
                assert abs(back.r - r) <= 1
                assert abs(back.g - g) <= 1
                assert abs(back.b - b) <= 1


def test_lab_white_back_to_rgb():
    result = lab_to_rgb(LabColor(100.0, 0.0, 0.0))
    assert result.color == RGBColor(255, 255, 255)


def test_far_out_of_gamut_sets_clamp_flag():
    result = lab_to_rgb(LabColor(50.0, 120.0, -120.0))
    assert result.clamped


def test_delta_e_identity():
    x = LabColor(41.0, 10.0, -3.0)
    assert delta_e(x, x) == 0.0


def test_delta_e_three_four_five():
    assert delta_e(LabColor(50, 0, 0), LabColor(50, 3, 4)) == 5.0


def test_delta_e_single_axis():
    assert delta_e(LabColor(50, 0, 0), LabColor(60, 0, 0)) == 10.0


labs = st.builds(
    LabColor,
    st.floats(0, 100),
    st.floats(-128, 127),
    st.floats(-128, 127),
)


@given(labs, labs)
def test_delta_e_symmetry(x, y):
    assert delta_e(x, y) == delta_e(y, x)


@given(labs, labs, labs)
def test_delta_e_triangle_inequality(x, y, z):
    assert delta_e(x, z) <= delta_e(x, y) + delta_e(y, z) + 1e-9


@given(labs, labs, st.floats(-20, 20))
def test_delta_e_translation_invariant_in_lightness(x, y, offset):
    lo = -min(x.L, y.L)
    hi = 100 - max(x.L, y.L)
    offset = min(max(offset, lo), hi)
    shifted = delta_e(LabColor(x.L + offset, x.a, x.b), LabColor(y.L + offset, y.a, y.b))
    assert shifted == pytest.approx(delta_e(x, y), abs=1e-9)


def test_zero_adjustment_is_identity():
    c = RGBColor(180, 140, 100)
    assert adjust(c, ColorAdjustment()) == c


def test_lightness_adjustment_moves_l():
    gray = RGBColor(128, 128, 128)
    before = rgb_to_lab(gray).L
    after = rgb_to_lab(adjust(gray, ColorAdjustment(delta_lightness=20))).L
    assert after == pytest.approx(before + 20, abs=0.5)  # 8-bit re-quantization slack


def test_saturation_adjustment_raises_chroma():
    c = RGBColor(180, 140, 100)
    before = rgb_to_lab(c).chroma()
    after = rgb_to_lab(adjust(c, ColorAdjustment(delta_saturation=15))).chroma()
    assert after > before


def test_hue_adjustment_rotates_hue():
    c = RGBColor(200, 60, 60)
    before = rgb_to_lab(c).hue_degrees()
    after = rgb_to_lab(adjust(c, ColorAdjustment(delta_hue_degrees=40))).hue_degrees()
    assert (after - before) % 360 == pytest.approx(40, abs=3)


def test_parse_hex_upper_and_lower():
    assert parse_hex("#FF0000") == RGBColor(255, 0, 0)
    assert parse_hex("#ff0000") == RGBColor(255, 0, 0)


def test_format_parse_round_trip():
    for s in ("#aB3311", "#000000", "#FFFFFF", "#789abc"):
        assert format_hex(parse_hex(s)) == s.lower()


@pytest.mark.parametrize("bad", ["#12GG34", "123456", "#12345", "#1234567", "", "#12 456"])
def test_bad_hex_rejected(bad):
    with pytest.raises(BadHex):
        parse_hex(bad)


def test_channel_range_enforced():
    with pytest.raises(ValueError):
        RGBColor(256, 0, 0)
    with pytest.raises(ValueError):
        RGBColor(0, -1, 0)


def test_metric_properties_on_seeded_triples():
    rng = np.random.default_rng(42)
    pts = rng.uniform([0, -128, -128], [100, 127, 127], size=(300, 3))
    colors = [LabColor(*p) for p in pts]
    for i in range(0, 300, 3):
        x, y, z = colors[i], colors[i + 1], colors[i + 2]
        assert delta_e(x, y) == delta_e(y, x)
        assert delta_e(x, x) == 0.0
        assert delta_e(x, z) <= delta_e(x, y) + delta_e(y, z) + 1e-9
