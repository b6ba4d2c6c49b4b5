import pytest

from chorocolor.colorspace import RGBColor, delta_e, parse_hex, rgb_to_lab
from chorocolor.errors import LengthMismatch, NoCandidates
from chorocolor.palettes import (
    DIVERGING,
    SEQUENTIAL,
    ColorScheme,
    Palette,
    scheme_distance,
    scheme_from_hex,
)

# published ColorBrewer values, frozen from the colorbrewer2.org export
YLORRD_3 = ["#ffeda0", "#feb24c", "#f03b20"]
BLUES_5 = ["#eff3ff", "#bdd7e7", "#6baed6", "#3182bd", "#08519c"]
RDBU_5 = ["#ca0020", "#f4a582", "#f7f7f7", "#92c5de", "#0571b0"]


def test_bundled_count_is_207(palette_db):
    assert len(palette_db) == 207


def test_all_palettes_satisfy_invariants(palette_db):
    for p in palette_db.palettes:
        if p.scheme_type == SEQUENTIAL:
            assert 3 <= p.k <= 9
        else:
            assert p.scheme_type == DIVERGING
            assert 3 <= p.k <= 11


def test_family_expansion_counts(palette_db):
    seq = {p.name for p in palette_db.palettes if p.scheme_type == SEQUENTIAL}
    div = {p.name for p in palette_db.palettes if p.scheme_type == DIVERGING}
    assert len(seq) == 18 and len(div) == 9
    assert len(seq) * 7 + len(div) * 9 == 207


def test_ylorrd_3_matches_published(palette_db):
    matches = [p for p in palette_db.palettes if p.name == "YlOrRd" and p.k == 3]
    assert len(matches) == 1
    assert [c.hex() for c in matches[0].colors] == YLORRD_3


def test_scheme_distance_zero_for_identical(palette_db):
    p = palette_db.candidates(SEQUENTIAL, 5)[0]
    s = ColorScheme(p.colors, SEQUENTIAL)
    assert scheme_distance(s, p) == 0.0


def test_scheme_distance_hand_computed():
    a = scheme_from_hex(["#ff0000", "#00ff00", "#0000ff"], SEQUENTIAL)
    b = Palette("X", SEQUENTIAL, tuple(parse_hex(h) for h in ["#fe0000", "#00fe00", "#0000fe"]))
    expected = sum(
        delta_e(rgb_to_lab(x), rgb_to_lab(y))
        for x, y in zip(a.colors, b.colors)
    ) / 3
    assert scheme_distance(a, b) == pytest.approx(expected, abs=1e-12)


def test_scheme_distance_length_mismatch(palette_db):
    p = palette_db.candidates(SEQUENTIAL, 5)[0]
    s = scheme_from_hex(YLORRD_3, SEQUENTIAL)
    with pytest.raises(LengthMismatch):
        scheme_distance(s, p)


def test_self_match_forward(palette_db):
    blues = next(p for p in palette_db.palettes if p.name == "Blues" and p.k == 5)
    m = palette_db.match_scheme(ColorScheme(blues.colors, SEQUENTIAL))
    assert m.palette.name == "Blues" and m.palette.k == 5
    assert m.distance == 0.0
    assert m.reversed is False


def test_self_match_reversed(palette_db):
    blues = next(p for p in palette_db.palettes if p.name == "Blues" and p.k == 5)
    m = palette_db.match_scheme(ColorScheme(blues.colors[::-1], SEQUENTIAL))
    assert m.palette.name == "Blues"
    assert m.distance == 0.0
    assert m.reversed is True
    assert m.oriented_colors() == blues.colors[::-1]


def test_perturbed_palette_still_nearest(palette_db):
    base = next(p for p in palette_db.palettes if p.name == "YlOrRd" and p.k == 5)
    colors = list(base.colors)
    c = colors[2]
    colors[2] = RGBColor(c.r, c.g, min(c.b + 1, 255))
    candidate = ColorScheme(tuple(colors), SEQUENTIAL)
    m = palette_db.match_scheme(candidate)
    assert m.palette.name == "YlOrRd"
    assert m.distance > 0.0
    # exhaustive independent re-scan: nothing is closer in either orientation
    for p in palette_db.candidates(SEQUENTIAL, 5):
        for rev in (False, True):
            d = sum(delta_e(x, y) for x, y in zip(candidate.labs(), p.labs(rev))) / 5
            assert m.distance <= d + 1e-12


def test_no_candidates_for_missing_size(palette_db):
    twelve = scheme_from_hex(["#000000"] * 12, DIVERGING)
    with pytest.raises(NoCandidates):
        palette_db.match_scheme(twelve)


def test_match_invariant_under_hex_round_trip(palette_db):
    base = next(p for p in palette_db.palettes if p.name == "PuBuGn" and p.k == 7)
    candidate = scheme_from_hex([c.hex() for c in base.colors], SEQUENTIAL)
    m1 = palette_db.match_scheme(candidate)
    again = scheme_from_hex(candidate.hex_list(), SEQUENTIAL)
    m2 = palette_db.match_scheme(again)
    assert (m1.palette.name, m1.distance, m1.reversed) == (m2.palette.name, m2.distance, m2.reversed)


def test_palette_rejects_bad_sizes():
    with pytest.raises(ValueError):
        Palette("tiny", SEQUENTIAL, tuple(parse_hex(h) for h in ["#000000", "#ffffff"]))
    with pytest.raises(ValueError):
        Palette("big", SEQUENTIAL, (parse_hex("#102030"),) * 10)
