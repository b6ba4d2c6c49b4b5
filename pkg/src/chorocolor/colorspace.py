"""sRGB / CIELab color math.

Conversions use the D65 white point with the 2-degree observer, matching
screen display. Color difference is the plain CIE76 Euclidean distance in
Lab space.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import BadHex

# D65 reference white, Y normalized to 1
_XN, _YN, _ZN = 0.95047, 1.0, 1.08883

# sRGB <-> XYZ (linear light), rows sum to the D65 white
_RGB_TO_XYZ = (
    (0.4124564, 0.3575761, 0.1804375),
    (0.2126729, 0.7151522, 0.0721750),
    (0.0193339, 0.1191920, 0.9503041),
)
_XYZ_TO_RGB = (
    (3.2404542, -1.5371385, -0.4985314),
    (-0.9692660, 1.8760108, 0.0415560),
    (0.0556434, -0.2040259, 1.0572252),
)

_DELTA = 6.0 / 29.0
_HEX_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class RGBColor:
    r: int
    g: int
    b: int

    def __post_init__(self):
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v!r} outside [0, 255]")

    def hex(self) -> str:
        return format_hex(self)


@dataclass(frozen=True)
class LabColor:
    L: float
    a: float
    b: float

    def __post_init__(self):
        if not -1e-9 <= self.L <= 100 + 1e-9:
            raise ValueError(f"L={self.L!r} outside [0, 100]")

    def chroma(self) -> float:
        return math.hypot(self.a, self.b)

    def hue_degrees(self) -> float:
        return math.degrees(math.atan2(self.b, self.a)) % 360.0


@dataclass(frozen=True)
class ColorAdjustment:
    """Deltas in a cylindrical Lab representation (L, chroma, hue)."""

    delta_lightness: float = 0.0
    delta_saturation: float = 0.0
    delta_hue_degrees: float = 0.0


class GamutResult(NamedTuple):
    color: RGBColor
    clamped: bool


def _decode_gamma(c: float) -> float:
    return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4


def _encode_gamma(c: float) -> float:
    return c * 12.92 if c <= 0.0031308 else 1.055 * c ** (1.0 / 2.4) - 0.055


def _f(t: float) -> float:
    return t ** (1.0 / 3.0) if t > _DELTA ** 3 else t / (3 * _DELTA ** 2) + 4.0 / 29.0


def _f_inv(u: float) -> float:
    return u ** 3 if u > _DELTA else 3 * _DELTA ** 2 * (u - 4.0 / 29.0)


def rgb_to_lab(c: RGBColor) -> LabColor:
    """sRGB (gamma-encoded 8-bit) -> CIELab, D65/2-degree."""
    lin = (_decode_gamma(c.r / 255.0), _decode_gamma(c.g / 255.0), _decode_gamma(c.b / 255.0))
    x, y, z = (sum(m * v for m, v in zip(row, lin)) for row in _RGB_TO_XYZ)
    fx, fy, fz = _f(x / _XN), _f(y / _YN), _f(z / _ZN)
    L = 116.0 * fy - 16.0
    return LabColor(min(max(L, 0.0), 100.0), 500.0 * (fx - fy), 200.0 * (fy - fz))


def lab_to_rgb(c: LabColor) -> GamutResult:
    """Inverse conversion; out-of-gamut channels clamp to [0, 255].

    The flag records whether any channel needed more than rounding slack,
    so callers can warn instead of silently losing color.
    """
    fy = (c.L + 16.0) / 116.0
    fx = fy + c.a / 500.0
    fz = fy - c.b / 200.0
    xyz = (_f_inv(fx) * _XN, _f_inv(fy) * _YN, _f_inv(fz) * _ZN)
    clamped = False
    channels = []
    for row in _XYZ_TO_RGB:
        lin = sum(m * v for m, v in zip(row, xyz))
        if lin < -1e-6 or lin > 1.0 + 1e-6:
            clamped = True
        enc = _encode_gamma(min(max(lin, 0.0), 1.0))
        channels.append(min(max(int(round(enc * 255.0)), 0), 255))
    return GamutResult(RGBColor(*channels), clamped)


def delta_e(x: LabColor, y: LabColor) -> float:
    """CIE76 color difference: Euclidean distance in Lab."""
    return math.sqrt((x.L - y.L) ** 2 + (x.a - y.a) ** 2 + (x.b - y.b) ** 2)


def adjust(c: RGBColor, adj: ColorAdjustment) -> RGBColor:
    """Apply lightness/saturation/hue deltas in cylindrical Lab space.

    The zero adjustment is an identity (no round-trip drift is introduced
    because the unchanged color short-circuits).
    """
    if adj.delta_lightness == 0 and adj.delta_saturation == 0 and adj.delta_hue_degrees == 0:
        return c
    lab = rgb_to_lab(c)
    L = min(max(lab.L + adj.delta_lightness, 0.0), 100.0)
    chroma = max(lab.chroma() + adj.delta_saturation, 0.0)
    hue = math.radians(lab.hue_degrees() + adj.delta_hue_degrees)
    shifted = LabColor(L, chroma * math.cos(hue), chroma * math.sin(hue))
    return lab_to_rgb(shifted).color


def parse_hex(text: str) -> RGBColor:
    if not isinstance(text, str) or not _HEX_RE.match(text):
        raise BadHex(f"not a #RRGGBB color: {text!r}")
    return RGBColor(int(text[1:3], 16), int(text[3:5], 16), int(text[5:7], 16))


def format_hex(c: RGBColor) -> str:
    return f"#{c.r:02x}{c.g:02x}{c.b:02x}"
