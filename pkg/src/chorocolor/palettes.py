"""ColorBrewer reference palettes and nearest-scheme matching.

The palette data is vendored as a committed JSON file (regenerate with
scripts/build_palette_data.js) so matching is fully reproducible offline.
Only sequential and diverging schemes are carried; qualitative palettes
have no role in classed numeric maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .colorspace import LabColor, RGBColor, delta_e, parse_hex, rgb_to_lab
from .errors import BadHex, CorruptPaletteFile, LengthMismatch, NoCandidates

SEQUENTIAL = "sequential"
DIVERGING = "diverging"
SCHEME_TYPES = (SEQUENTIAL, DIVERGING)

SOURCE_GENERATED = "generated"
SOURCE_MATCHED = "matched"
SOURCE_USER_EDITED = "user_edited"

_K_LIMITS = {SEQUENTIAL: 9, DIVERGING: 11}


@dataclass(frozen=True)
class Palette:
    name: str
    scheme_type: str
    colors: tuple[RGBColor, ...]

    def __post_init__(self):
        if self.scheme_type not in _K_LIMITS:
            raise ValueError(f"unknown scheme type {self.scheme_type!r}")
        if not 3 <= self.k <= _K_LIMITS[self.scheme_type]:
            raise ValueError(f"{self.name}: {self.k} colors outside the "
                             f"{self.scheme_type} range [3, {_K_LIMITS[self.scheme_type]}]")

    @property
    def k(self) -> int:
        return len(self.colors)

    def labs(self, reverse: bool = False) -> tuple[LabColor, ...]:
        cs = self.colors[::-1] if reverse else self.colors
        return tuple(rgb_to_lab(c) for c in cs)

    def to_dict(self) -> dict:
        return {"name": self.name, "type": self.scheme_type,
                "colors": [c.hex() for c in self.colors]}


@dataclass(frozen=True)
class ColorScheme:
    colors: tuple[RGBColor, ...]  # index 0 = lowest class
    scheme_type: str
    source: str = SOURCE_GENERATED

    @property
    def k(self) -> int:
        return len(self.colors)

    def labs(self) -> tuple[LabColor, ...]:
        return tuple(rgb_to_lab(c) for c in self.colors)

    def hex_list(self) -> list[str]:
        return [c.hex() for c in self.colors]

    def to_dict(self) -> dict:
        return {"colors": self.hex_list(), "scheme_type": self.scheme_type,
                "source": self.source}


def scheme_from_hex(colors: list[str], scheme_type: str, source: str = SOURCE_GENERATED) -> ColorScheme:
    return ColorScheme(tuple(parse_hex(h) for h in colors), scheme_type, source)


@dataclass(frozen=True)
class MatchResult:
    palette: Palette
    distance: float
    reversed: bool

    def oriented_colors(self) -> tuple[RGBColor, ...]:
        """Palette colors in low-to-high class order for the matched candidate."""
        return self.palette.colors[::-1] if self.reversed else self.palette.colors

    def to_dict(self) -> dict:
        return {"palette": self.palette.to_dict(), "distance": self.distance,
                "reversed": self.reversed}


def scheme_distance(a: ColorScheme, b: Palette) -> float:
    """Mean per-position CIE76 difference between a scheme and a palette."""
    if a.k != b.k:
        raise LengthMismatch(f"scheme has {a.k} colors, palette {b.name} has {b.k}")
    pairs = zip(a.labs(), b.labs())
    return sum(delta_e(x, y) for x, y in pairs) / a.k


class PaletteDB:
    """Immutable collection of reference palettes with exhaustive matching."""

    def __init__(self, palettes: list[Palette]):
        self.palettes = tuple(palettes)

    def __len__(self) -> int:
        return len(self.palettes)

    def candidates(self, scheme_type: str, k: int) -> list[Palette]:
        return [p for p in self.palettes if p.scheme_type == scheme_type and p.k == k]

    def match_scheme(self, candidate: ColorScheme) -> MatchResult:
        """Nearest palette of the same type and size, in either orientation.

        Ties resolve to the ascending palette name, forward orientation
        first; the database is small enough that this is a plain scan.
        """
        pool = self.candidates(candidate.scheme_type, candidate.k)
        if not pool:
            raise NoCandidates(f"no {candidate.scheme_type} palette with "
                               f"{candidate.k} colors")
        labs = candidate.labs()
        best: MatchResult | None = None
        for palette in sorted(pool, key=lambda p: p.name):
            for rev in (False, True):
                d = sum(delta_e(x, y) for x, y in zip(labs, palette.labs(rev))) / candidate.k
                if best is None or d < best.distance:
                    best = MatchResult(palette, d, rev)
        return best


def load_palettes(path: str | None = None) -> PaletteDB:
    """Load the bundled palette file (or an explicit path)."""
    try:
        if path is None:
            text = resources.files("chorocolor").joinpath("data/colorbrewer.json").read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
        entries = doc["palettes"]
        palettes = [
            Palette(e["name"], e["type"], tuple(parse_hex(h) for h in e["colors"]))
            for e in entries
        ]
    except (OSError, KeyError, TypeError, ValueError, BadHex) as e:
        raise CorruptPaletteFile(f"cannot load palette data: {e}") from e
    if not palettes:
        raise CorruptPaletteFile("palette file contains no palettes")
    return PaletteDB(palettes)
