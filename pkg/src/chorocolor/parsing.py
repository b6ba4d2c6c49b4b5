"""Parsers for structured LLM responses.

Responses must carry exactly one fenced JSON block in the instructed shape.
Anything malformed maps to a typed error; no parser ever returns a value
that violates its target type's invariants.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .colorspace import ColorAdjustment, RGBColor, parse_hex
from .concept import ColorConcept, MOOD_FIELDS, THEMES, concept_from_dict
from .errors import (
    BadSchemeType,
    PatchOutOfRange,
    UnparseableResponse,
    WrongColorCount,
)
from .palettes import SCHEME_TYPES, SOURCE_GENERATED, ColorScheme
from .prompts import STAGE_CONCEPT

_FENCE_RE = re.compile(r"```json\s*(.*?)```", re.DOTALL)


@dataclass(frozen=True)
class DataAnalysis:
    error_findings: str
    description: str
    suggested_scheme_type: str
    raw: str

    def to_dict(self) -> dict:
        return {
            "error_findings": self.error_findings,
            "description": self.description,
            "suggested_scheme_type": self.suggested_scheme_type,
        }


@dataclass(frozen=True)
class ConceptPatch:
    changed: dict

    def to_dict(self) -> dict:
        return {"target": "concept", "changed": dict(self.changed)}


@dataclass(frozen=True)
class SchemePatch:
    replacements: dict[int, RGBColor] = field(default_factory=dict)
    adjustment: ColorAdjustment | None = None

    def to_dict(self) -> dict:
        out: dict = {"target": "scheme"}
        if self.replacements:
            out["replacements"] = [{"index": i, "color": c.hex()}
                                   for i, c in sorted(self.replacements.items())]
        if self.adjustment is not None:
            a = self.adjustment
            out["adjustment"] = {"delta_lightness": a.delta_lightness,
                                 "delta_saturation": a.delta_saturation,
                                 "delta_hue_degrees": a.delta_hue_degrees}
        return out


def extract_json_block(text: str) -> dict:
    """The single fenced JSON object an instructed response must contain."""
    if not isinstance(text, str):
        raise UnparseableResponse("response is not text")
    m = _FENCE_RE.search(text)
    if not m:
        raise UnparseableResponse("no fenced JSON block found")
    try:
        doc = json.loads(m.group(1))
    except json.JSONDecodeError as e:
        raise UnparseableResponse(f"fenced block is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise UnparseableResponse("fenced JSON is not an object")
    return doc


def parse_analysis(response: str) -> DataAnalysis:
    doc = extract_json_block(response)
    for key in ("error_findings", "description", "scheme_type"):
        if key not in doc:
            raise UnparseableResponse(f"missing section {key!r}")
        if not isinstance(doc[key], str):
            raise UnparseableResponse(f"section {key!r} is not text")
    scheme_type = doc["scheme_type"].strip().lower()
    if scheme_type not in SCHEME_TYPES:
        raise BadSchemeType(f"scheme type {doc['scheme_type']!r} not one of {list(SCHEME_TYPES)}")
    return DataAnalysis(doc["error_findings"], doc["description"], scheme_type, response)


def parse_concept(response: str) -> ColorConcept:
    doc = extract_json_block(response)
    return concept_from_dict(doc)  # raises ConceptInvalid with the violations


def serialize_concept(c: ColorConcept) -> str:
    """Inverse of parse_concept: a response in the instructed Output Format."""
    return "```json\n" + json.dumps(c.to_dict(), ensure_ascii=False, indent=1) + "\n```"


def parse_scheme(response: str, expected_k: int, scheme_type: str) -> ColorScheme:
    doc = extract_json_block(response)
    colors = doc.get("colors")
    if not isinstance(colors, list):
        raise UnparseableResponse("missing or non-list 'colors' field")
    if len(colors) != expected_k:
        raise WrongColorCount(len(colors), expected_k)
    parsed = tuple(parse_hex(h) for h in colors)  # BadHex on the offender
    return ColorScheme(parsed, scheme_type, SOURCE_GENERATED)


def serialize_scheme(s: ColorScheme) -> str:
    return "```json\n" + json.dumps({"colors": s.hex_list()}, indent=1) + "\n```"


_CONCEPT_PATCH_FIELDS = ("theme", "temperature", "distance", "weight", "scheme_type", "rationale")
_ADJUSTMENT_FIELDS = ("delta_lightness", "delta_saturation", "delta_hue_degrees")


def concept_patch_from_fields(fields: dict) -> ConceptPatch:
    """Validated concept patch from changed-field values."""
    if not isinstance(fields, dict) or not fields:
        raise PatchOutOfRange("concept patch must change at least one field")
    for name, value in fields.items():
        if name not in _CONCEPT_PATCH_FIELDS:
            raise PatchOutOfRange(f"unknown concept field {name!r}")
        if name in MOOD_FIELDS and (not isinstance(value, int) or isinstance(value, bool)
                                    or not 0 <= value <= 2):
            raise PatchOutOfRange(f"{name} level {value!r} outside 0..2")
        if name == "theme" and value not in THEMES:
            raise PatchOutOfRange(f"theme {value!r} not one of {list(THEMES)}")
        if name == "scheme_type" and value not in SCHEME_TYPES:
            raise PatchOutOfRange(f"scheme_type {value!r} not one of {list(SCHEME_TYPES)}")
    return ConceptPatch(dict(fields))


def _parse_concept_patch(doc: dict) -> ConceptPatch:
    changed = doc.get("changed")
    if not isinstance(changed, dict) or not changed:
        raise UnparseableResponse("concept patch needs a non-empty 'changed' object")
    return concept_patch_from_fields(changed)


def scheme_patch_from_dict(doc: dict, expected_k: int | None = None) -> SchemePatch:
    replacements: dict[int, RGBColor] = {}
    raw_repl = doc.get("replacements", [])
    if not isinstance(raw_repl, list):
        raise UnparseableResponse("'replacements' must be a list")
    for item in raw_repl:
        if not isinstance(item, dict) or "index" not in item or "color" not in item:
            raise UnparseableResponse("each replacement needs 'index' and 'color'")
        idx = item["index"]
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 0:
            raise PatchOutOfRange(f"replacement index {idx!r} is not a class index")
        if expected_k is not None and idx >= expected_k:
            raise PatchOutOfRange(f"replacement index {idx} >= k={expected_k}")
        replacements[idx] = parse_hex(item["color"])
    adjustment = None
    raw_adj = doc.get("adjustment")
    if raw_adj is not None:
        if not isinstance(raw_adj, dict):
            raise UnparseableResponse("'adjustment' must be an object")
        deltas = {}
        for name in _ADJUSTMENT_FIELDS:
            v = raw_adj.get(name, 0)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise UnparseableResponse(f"adjustment field {name} is not numeric")
            deltas[name] = float(v)
        adjustment = ColorAdjustment(**deltas)
    if not replacements and adjustment is None:
        raise UnparseableResponse("scheme patch carries neither replacements nor adjustment")
    return SchemePatch(replacements, adjustment)


def parse_customization(response: str, stage: str, expected_k: int | None = None):
    """Typed patch from a customization reply.

    At the scheme stage the model may route back to the concept; at the
    concept stage only concept patches are acceptable.
    """
    doc = extract_json_block(response)
    target = doc.get("target")
    if target == "concept":
        return _parse_concept_patch(doc)
    if target == "scheme":
        if stage == STAGE_CONCEPT:
            raise UnparseableResponse("scheme patch is not valid at the concept stage")
        return scheme_patch_from_dict(doc, expected_k)
    raise UnparseableResponse(f"patch target {target!r} is neither 'concept' nor 'scheme'")
