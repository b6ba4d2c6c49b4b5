"""Color design vocabulary and deterministic scheme linting.

A color concept is the structured middle layer between vague user intent
and concrete colors: a theme tag, three psychological mood levels
(temperature, spatial distance, visual weight, each quantized to 0/1/2),
and the scheme type. The linter checks finished schemes against ordering
conventions: higher values read as darker colors, diverging ramps pivot on
a light midpoint, neighbors stay distinguishable, and sequential ramps
avoid rainbow hue sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colorspace import delta_e
from .palettes import DIVERGING, SCHEME_TYPES, SEQUENTIAL, ColorScheme
from .errors import ConceptInvalid

THEMES = ("strong_contrast", "light", "moderate", "elegant", "neutral")
MOOD_FIELDS = ("temperature", "distance", "weight")
MOOD_LABELS = {
    "temperature": ("cold", "neutral", "warm"),
    "distance": ("near", "medium", "far"),
    "weight": ("light", "medium", "heavy"),
}

# lint thresholds; chosen so every bundled reference palette passes while
# constructed violations fail — all overridable per call
LIGHTNESS_TOLERANCE = 1.0
MIN_NEIGHBOR_DELTA_E = 10.0
MAX_SEQUENTIAL_HUE_SWEEP = 150.0
_ACHROMATIC_CHROMA = 5.0  # hue is meaningless below this chroma

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


@dataclass(frozen=True)
class ColorConcept:
    theme: str
    temperature: int
    distance: int
    weight: int
    scheme_type: str
    rationale: str = ""

    def to_dict(self) -> dict:
        return {
            "theme": self.theme,
            "temperature": self.temperature,
            "distance": self.distance,
            "weight": self.weight,
            "scheme_type": self.scheme_type,
            "rationale": self.rationale,
        }


@dataclass(frozen=True)
class LintFinding:
    rule: str
    severity: str
    message: str
    class_indices: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {"rule": self.rule, "severity": self.severity,
                "message": self.message, "class_indices": list(self.class_indices)}


@dataclass(frozen=True)
class LintReport:
    findings: tuple[LintFinding, ...] = ()

    @property
    def clean(self) -> bool:
        return not self.findings

    def errors(self) -> list[LintFinding]:
        return [f for f in self.findings if f.severity == SEVERITY_ERROR]

    def to_dict(self) -> dict:
        return {"findings": [f.to_dict() for f in self.findings], "clean": self.clean}


def validate_concept(c: ColorConcept | dict) -> list[str]:
    """Domain check for every concept field; returns violations, never raises.

    Accepts either a constructed concept or a raw mapping so LLM output can
    be checked before construction.
    """
    m = c.to_dict() if isinstance(c, ColorConcept) else dict(c)
    violations = []
    theme = m.get("theme")
    if theme not in THEMES:
        violations.append(f"theme {theme!r} not one of {list(THEMES)}")
    for name in MOOD_FIELDS:
        v = m.get(name)
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v <= 2:
            violations.append(f"{name} must be an integer level 0..2, got {v!r}")
    if m.get("scheme_type") not in SCHEME_TYPES:
        violations.append(f"scheme_type {m.get('scheme_type')!r} not one of {list(SCHEME_TYPES)}")
    if not str(m.get("rationale") or "").strip():
        violations.append("rationale must be non-empty")
    return violations


def concept_from_dict(m: dict) -> ColorConcept:
    violations = validate_concept(m)
    if violations:
        raise ConceptInvalid("; ".join(violations), details={"violations": violations})
    return ColorConcept(
        theme=m["theme"],
        temperature=m["temperature"],
        distance=m["distance"],
        weight=m["weight"],
        scheme_type=m["scheme_type"],
        rationale=str(m["rationale"]),
    )


# -- linting -------------------------------------------------------------------

def _hue_delta(a, b) -> float:
    d = (b.hue_degrees() - a.hue_degrees() + 180.0) % 360.0 - 180.0
    return abs(d)


def lint_scheme(
    s: ColorScheme,
    lightness_tolerance: float = LIGHTNESS_TOLERANCE,
    min_neighbor_delta: float = MIN_NEIGHBOR_DELTA_E,
    max_hue_sweep: float = MAX_SEQUENTIAL_HUE_SWEEP,
) -> LintReport:
    """Apply rules R1-R4 in fixed order and report all findings.

    R1 (error, sequential): lightness strictly decreases from the lowest to
    the highest class, allowing wiggle up to the tolerance.
    R2 (error, diverging): the lightest color sits at the middle position
    (either central position for even k) and lightness falls toward both ends.
    R3 (warning): adjacent classes differ by at least min_neighbor_delta.
    R4 (warning, sequential): cumulative hue travel stays below
    max_hue_sweep, guarding against rainbow ramps.
    """
    labs = s.labs()
    k = s.k
    findings: list[LintFinding] = []

    if s.scheme_type == SEQUENTIAL:
        for i in range(k - 1):
            rise = labs[i + 1].L - labs[i].L
            if rise >= lightness_tolerance:
                findings.append(LintFinding(
                    "R1", SEVERITY_ERROR,
                    f"lightness rises by {rise:.1f} from class {i} to {i + 1}; "
                    "sequential ramps must darken toward high values",
                    (i, i + 1)))
    elif s.scheme_type == DIVERGING:
        mid_positions = (k // 2,) if k % 2 else (k // 2 - 1, k // 2)
        peak = max(range(k), key=lambda i: labs[i].L)
        if peak not in mid_positions:
            findings.append(LintFinding(
                "R2", SEVERITY_ERROR,
                f"lightest color is at position {peak}, expected the middle "
                f"position(s) {list(mid_positions)} of a diverging ramp",
                (peak,)))
        else:
            for i in range(peak, k - 1):  # toward the high end
                rise = labs[i + 1].L - labs[i].L
                if rise >= lightness_tolerance:
                    findings.append(LintFinding(
                        "R2", SEVERITY_ERROR,
                        f"lightness rises by {rise:.1f} from class {i} to {i + 1} "
                        "on the high side of the midpoint", (i, i + 1)))
            for i in range(peak, 0, -1):  # toward the low end
                rise = labs[i - 1].L - labs[i].L
                if rise >= lightness_tolerance:
                    findings.append(LintFinding(
                        "R2", SEVERITY_ERROR,
                        f"lightness rises by {rise:.1f} from class {i} to {i - 1} "
                        "on the low side of the midpoint", (i - 1, i)))

    for i in range(k - 1):
        d = delta_e(labs[i], labs[i + 1])
        if d < min_neighbor_delta:
            findings.append(LintFinding(
                "R3", SEVERITY_WARNING,
                f"classes {i} and {i + 1} differ by only deltaE {d:.1f} "
                f"(threshold {min_neighbor_delta:g})", (i, i + 1)))

    if s.scheme_type == SEQUENTIAL:
        sweep = sum(
            _hue_delta(labs[i], labs[i + 1])
            for i in range(k - 1)
            if labs[i].chroma() >= _ACHROMATIC_CHROMA
            and labs[i + 1].chroma() >= _ACHROMATIC_CHROMA
        )
        if sweep > max_hue_sweep:
            findings.append(LintFinding(
                "R4", SEVERITY_WARNING,
                f"hue sweeps {sweep:.0f} degrees across the ramp "
                f"(limit {max_hue_sweep:g}); rainbow ramps obscure order",
                tuple(range(k))))

    return LintReport(tuple(findings))


# -- constraint rendering --------------------------------------------------------

_THEME_CONSTRAINTS = {
    "strong_contrast": "Strong-contrast theme: maximize lightness separation between "
                       "adjacent classes and anchor the extremes with bold, saturated colors.",
    "light": "Light theme: keep every color airy and high in lightness; "
             "even the darkest class stays gentle.",
    "moderate": "Moderate theme: balanced mid-range saturation and lightness; "
                "avoid both pastel washout and heavy saturation.",
    "elegant": "Elegant theme: muted, harmonious tones with restrained saturation "
               "and smooth, refined transitions.",
    "neutral": "Neutral theme: near-neutral, low-chroma colors throughout; "
               "let lightness carry the ordering.",
}
_TEMPERATURE_CONSTRAINTS = {
    0: "Temperature cold (0): prefer cool hues such as blues, greens, and violets; "
       "avoid warm reds, oranges, and yellows.",
    1: "Temperature neutral (1): hue temperature is unconstrained; "
       "balanced or desaturated hues are welcome.",
    2: "Temperature warm (2): prefer warm hues such as reds, oranges, and yellows; "
       "avoid blues and greens.",
}
_DISTANCE_CONSTRAINTS = {
    0: "Distance near (0): use higher brightness and saturation so regions "
       "advance and read as close and prominent.",
    1: "Distance medium (1): keep brightness and saturation at moderate levels "
       "for an even visual depth.",
    2: "Distance far (2): use lower brightness and saturation so regions "
       "recede into the background.",
}
_WEIGHT_CONSTRAINTS = {
    0: "Weight light (0): light, fresh colors overall; the high extreme stays soft.",
    1: "Weight medium (1): a conventional light-to-dark progression with a "
       "moderately dark top class.",
    2: "Weight heavy (2): darker, heavier extremes; the top classes must feel "
       "stable and visually dominant.",
}
_SCHEME_TYPE_CONSTRAINTS = {
    SEQUENTIAL: "Sequential scheme: one smooth light-to-dark ramp; higher values get "
                "darker colors, and rainbow hue cycling is forbidden.",
    DIVERGING: "Diverging scheme: two contrasting ramps with balanced midpoints and "
               "contrasting extremes; the middle class is the lightest and both ends darken.",
}


def concept_to_constraints(c: ColorConcept) -> str:
    """Render a concept into the constraint block for scheme generation.

    Pure table lookup per field, total over the whole concept space, so the
    rendered text is deterministic and golden-testable.
    """
    violations = validate_concept(c)
    if violations:
        raise ConceptInvalid("; ".join(violations), details={"violations": violations})
    lines = [
        _THEME_CONSTRAINTS[c.theme],
        _TEMPERATURE_CONSTRAINTS[c.temperature],
        _DISTANCE_CONSTRAINTS[c.distance],
        _WEIGHT_CONSTRAINTS[c.weight],
        _SCHEME_TYPE_CONSTRAINTS[c.scheme_type],
    ]
    return "\n".join(lines)
