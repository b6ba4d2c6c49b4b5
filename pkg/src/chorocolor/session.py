"""Three-stage design sessions: analyze/classify, concept, scheme.

A Session is an immutable snapshot; every pipeline operation returns a new
session and leaves its input untouched, so a failed operation can never
corrupt state. Downstream artifacts are invalidated whenever an upstream
stage changes (new classification clears the concept and scheme, a concept
edit clears the scheme) to keep the rendered map consistent with the
inputs that produced it.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, replace

from . import classify as cls
from .colorspace import RGBColor, adjust, parse_hex
from .concept import (
    ColorConcept,
    LintFinding,
    LintReport,
    concept_from_dict,
    concept_to_constraints,
    lint_scheme,
    validate_concept,
)
from .dataset import Dataset, DataRecord, GeometryJoin, join_geometry, serialize_dataset
from .errors import (
    MalformedInput,
    NoCandidates,
    PatchOutOfRange,
    StageIncomplete,
)
from .gateway import LlmGateway
from .palettes import (
    MatchResult,
    Palette,
    PaletteDB,
    ColorScheme,
    SOURCE_USER_EDITED,
    load_palettes,
    scheme_from_hex,
)
from .parsing import (
    ConceptPatch,
    DataAnalysis,
    SchemePatch,
    parse_analysis,
    parse_concept,
    parse_customization,
    parse_scheme,
)
from .prompts import (
    STAGE_CONCEPT,
    STAGE_SCHEME,
    build_analysis_prompt,
    build_concept_prompt,
    build_customization_prompt,
    build_scheme_prompt,
)

ACTIVE_GENERATED = "generated"
ACTIVE_MATCHED = "matched"


@dataclass(frozen=True)
class DirectEdit:
    """Graphical single-swatch edit: set one class color exactly."""
    index: int
    color: RGBColor


@dataclass(frozen=True)
class StyledMap:
    features: dict  # FeatureCollection with class_index / fill per feature
    legend: tuple[tuple[str, str], ...]  # (range text, hex)
    unmatched: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "features": self.features,
            "legend": [{"range": r, "color": c} for r, c in self.legend],
            "unmatched": list(self.unmatched),
        }


@dataclass(frozen=True)
class Session:
    id: str
    dataset: Dataset | None = None
    geometry: dict | None = None
    name_property: str | None = None
    join: GeometryJoin | None = None
    analysis: DataAnalysis | None = None
    scheme_type: str | None = None
    k: int | None = None
    results: tuple[cls.ClassificationResult, ...] = ()
    skipped: tuple[tuple[str, str], ...] = ()
    selected_method: str | None = None
    concept: ColorConcept | None = None
    scheme: ColorScheme | None = None
    match: MatchResult | None = None
    active_scheme: str = ACTIVE_GENERATED
    lint: LintReport | None = None
    chat_history: tuple[dict, ...] = ()

    # -- stage predicates ------------------------------------------------

    @property
    def has_data(self) -> bool:
        return self.dataset is not None

    @property
    def stage1_done(self) -> bool:
        return bool(self.results) and self.analysis is not None

    @property
    def stage2_done(self) -> bool:
        return self.stage1_done and self.concept is not None

    @property
    def stage3_done(self) -> bool:
        return self.stage2_done and self.scheme is not None

    def selected_result(self) -> cls.ClassificationResult:
        for r in self.results:
            if r.breaks.method == self.selected_method:
                return r
        raise StageIncomplete("no classification selected")

    def active_colors(self) -> tuple[RGBColor, ...]:
        if self.active_scheme == ACTIVE_MATCHED and self.match is not None:
            return self.match.oriented_colors()
        return self.scheme.colors

    def say(self, role: str, content: str, stage: str) -> "Session":
        turn = {"role": role, "content": content, "stage": stage}
        return replace(self, chat_history=self.chat_history + (turn,))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "dataset": _dataset_to_dict(self.dataset),
            "geometry": self.geometry,
            "name_property": self.name_property,
            "join": self.join.to_dict() if self.join else None,
            "analysis": {**self.analysis.to_dict(), "raw": self.analysis.raw} if self.analysis else None,
            "scheme_type": self.scheme_type,
            "k": self.k,
            "results": [r.to_dict() for r in self.results],
            "skipped": [list(t) for t in self.skipped],
            "selected_method": self.selected_method,
            "concept": self.concept.to_dict() if self.concept else None,
            "scheme": self.scheme.to_dict() if self.scheme else None,
            "match": self.match.to_dict() if self.match else None,
            "active_scheme": self.active_scheme,
            "lint": self.lint.to_dict() if self.lint else None,
            "chat_history": list(self.chat_history),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False,
                          separators=(",", ":"))

    @classmethod
    def from_dict(cls_, doc: dict) -> "Session":
        return cls_(
            id=doc["id"],
            dataset=_dataset_from_dict(doc.get("dataset")),
            geometry=doc.get("geometry"),
            name_property=doc.get("name_property"),
            join=_join_from_dict(doc.get("join")),
            analysis=_analysis_from_dict(doc.get("analysis")),
            scheme_type=doc.get("scheme_type"),
            k=doc.get("k"),
            results=tuple(_result_from_dict(r) for r in doc.get("results", [])),
            skipped=tuple((m, msg) for m, msg in doc.get("skipped", [])),
            selected_method=doc.get("selected_method"),
            concept=concept_from_dict(doc["concept"]) if doc.get("concept") else None,
            scheme=_scheme_from_dict(doc.get("scheme")),
            match=_match_from_dict(doc.get("match")),
            active_scheme=doc.get("active_scheme", ACTIVE_GENERATED),
            lint=_lint_from_dict(doc.get("lint")),
            chat_history=tuple(doc.get("chat_history", [])),
        )

    @classmethod
    def from_json(cls_, text: str) -> "Session":
        return cls_.from_dict(json.loads(text))


def new_session(session_id: str | None = None) -> Session:
    return Session(id=session_id or uuid.uuid4().hex)


# -- serialization helpers ---------------------------------------------------

def _dataset_to_dict(d: Dataset | None):
    if d is None:
        return None
    return {
        "records": [{"name": r.name, "value": r.value, "raw": r.raw} for r in d.records],
        "value_field": d.value_field,
        "title": d.title,
    }


def _dataset_from_dict(doc):
    if doc is None:
        return None
    records = tuple(DataRecord(r["name"], r["value"], r.get("raw")) for r in doc["records"])
    return Dataset(records, doc["value_field"], doc.get("title"))


def _join_from_dict(doc):
    if doc is None:
        return None
    return GeometryJoin(doc["matched"], doc["unmatched_data"], doc["unmatched_features"])


def _analysis_from_dict(doc):
    if doc is None:
        return None
    return DataAnalysis(doc["error_findings"], doc["description"],
                        doc["suggested_scheme_type"], doc.get("raw", ""))


def _result_from_dict(doc):
    breaks = cls.ClassBreaks(doc["method"], tuple(doc["bounds"]), doc["k"])
    return cls.ClassificationResult(breaks, doc["gvf"], tuple(doc["class_counts"]),
                                    tuple(doc["class_means"]))


def _scheme_from_dict(doc):
    if doc is None:
        return None
    return scheme_from_hex(doc["colors"], doc["scheme_type"], doc["source"])


def _match_from_dict(doc):
    if doc is None:
        return None
    p = doc["palette"]
    palette = Palette(p["name"], p["type"], tuple(parse_hex(h) for h in p["colors"]))
    return MatchResult(palette, doc["distance"], doc["reversed"])


def _lint_from_dict(doc):
    if doc is None:
        return None
    findings = tuple(
        LintFinding(f["rule"], f["severity"], f["message"], tuple(f["class_indices"]))
        for f in doc.get("findings", [])
    )
    return LintReport(findings)


def format_break(x: float) -> str:
    """Legend numbers: up to 2 decimals, trailing zeros trimmed."""
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class Pipeline:
    """Executes the three stages against one gateway and palette database."""

    def __init__(self, gateway: LlmGateway, palette_db: PaletteDB | None = None):
        self.gateway = gateway
        self.palettes = palette_db if palette_db is not None else load_palettes()

    # -- stage 1: analyze + classify ------------------------------------

    def run_stage1(self, session: Session, k: int, seed: int = 0) -> Session:
        if not session.has_data:
            raise StageIncomplete("no dataset uploaded")
        analysis = session.analysis
        raw_reply = None
        if analysis is None:
            bundle = build_analysis_prompt(serialize_dataset(session.dataset))
            analysis, raw_reply = self.gateway.complete_parsed(bundle, parse_analysis)
        results, skipped = cls.classify_all(session.dataset.values(), k, seed)
        out = replace(
            session,
            analysis=analysis,
            k=k,
            results=tuple(results),
            skipped=tuple(sorted(skipped.items())),
            selected_method=results[0].breaks.method,
            scheme_type=analysis.suggested_scheme_type,
            concept=None, scheme=None, match=None, lint=None,
            active_scheme=ACTIVE_GENERATED,
        )
        if raw_reply is not None:
            out = out.say("user", "Analyze the uploaded dataset.", "analysis")
            out = out.say("assistant", analysis.description, "analysis")
        return out

    def select_method(self, session: Session, method: str) -> Session:
        if not session.stage1_done:
            raise StageIncomplete("classify the data first")
        available = [r.breaks.method for r in session.results]
        if method not in available:
            raise MalformedInput(f"method {method!r} not in {available}")
        # switching the classification invalidates the scheme but not the concept
        return replace(session, selected_method=method,
                       scheme=None, match=None, lint=None,
                       active_scheme=ACTIVE_GENERATED)

    def set_scheme_type(self, session: Session, scheme_type: str) -> Session:
        if scheme_type not in ("sequential", "diverging"):
            raise MalformedInput(f"unknown scheme type {scheme_type!r}")
        return replace(session, scheme_type=scheme_type)

    # -- stage 2: color concept -------------------------------------------

    def run_stage2(self, session: Session, user_intent: str) -> Session:
        if not session.stage1_done:
            raise StageIncomplete("run data analysis and classification first")
        bundle = build_concept_prompt(user_intent, session.analysis.description)
        concept, _raw = self.gateway.complete_parsed(bundle, parse_concept)
        out = replace(session, concept=concept,
                      scheme=None, match=None, lint=None,
                      active_scheme=ACTIVE_GENERATED)
        out = out.say("user", user_intent, "concept")
        out = out.say("assistant", concept.rationale, "concept")
        return out

    # -- stage 3: color scheme --------------------------------------------

    def run_stage3(self, session: Session) -> Session:
        if not session.stage2_done:
            raise StageIncomplete("design the color concept first")
        result = session.selected_result()
        breaks = result.breaks
        constraints = concept_to_constraints(session.concept)
        bundle = build_scheme_prompt(session.concept, breaks, constraints)
        scheme, _raw = self.gateway.complete_parsed(
            bundle, lambda t: parse_scheme(t, breaks.k, session.concept.scheme_type))
        try:
            match = self.palettes.match_scheme(scheme)
        except NoCandidates:
            match = None  # generated scheme is still usable
        out = replace(session, scheme=scheme, match=match,
                      lint=lint_scheme(scheme), active_scheme=ACTIVE_GENERATED)
        summary = (f"Generated a {scheme.k}-color {scheme.scheme_type} scheme"
                   + (f"; closest reference palette is {match.palette.name}." if match else "."))
        return out.say("assistant", summary, "scheme")

    # -- customization -------------------------------------------------------

    def apply_patch(self, session: Session, patch) -> Session:
        if isinstance(patch, ConceptPatch):
            return self._apply_concept_patch(session, patch)
        if isinstance(patch, SchemePatch):
            return self._apply_scheme_patch(session, patch)
        if isinstance(patch, DirectEdit):
            return self._apply_direct_edit(session, patch)
        raise TypeError(f"unknown patch type {type(patch).__name__}")

    def _apply_concept_patch(self, session: Session, patch: ConceptPatch) -> Session:
        if session.concept is None:
            raise StageIncomplete("no concept to patch")
        merged = {**session.concept.to_dict(), **patch.changed}
        violations = validate_concept(merged)
        if violations:
            raise PatchOutOfRange("; ".join(violations), details={"violations": violations})
        concept = concept_from_dict(merged)
        # concept edits invalidate the downstream scheme
        return replace(session, concept=concept,
                       scheme=None, match=None, lint=None,
                       active_scheme=ACTIVE_GENERATED)

    def _apply_scheme_patch(self, session: Session, patch: SchemePatch) -> Session:
        if session.scheme is None:
            raise StageIncomplete("no scheme to patch")
        scheme = session.scheme
        for idx in patch.replacements:
            if idx >= scheme.k:
                raise PatchOutOfRange(f"replacement index {idx} >= k={scheme.k}")
        colors = list(scheme.colors)
        if patch.adjustment is not None:
            colors = [adjust(c, patch.adjustment) for c in colors]
        for idx, color in patch.replacements.items():
            colors[idx] = color
        new_scheme = replace(scheme, colors=tuple(colors))
        return replace(session, scheme=new_scheme, lint=lint_scheme(new_scheme),
                       active_scheme=ACTIVE_GENERATED)

    def _apply_direct_edit(self, session: Session, edit: DirectEdit) -> Session:
        if session.scheme is None:
            raise StageIncomplete("no scheme to edit")
        scheme = session.scheme
        if not 0 <= edit.index < scheme.k:
            raise PatchOutOfRange(f"class index {edit.index} outside [0, {scheme.k})")
        colors = list(scheme.colors)
        colors[edit.index] = edit.color
        new_scheme = replace(scheme, colors=tuple(colors), source=SOURCE_USER_EDITED)
        return replace(session, scheme=new_scheme, lint=lint_scheme(new_scheme),
                       active_scheme=ACTIVE_GENERATED)

    def set_active_scheme(self, session: Session, which: str) -> Session:
        if which not in (ACTIVE_GENERATED, ACTIVE_MATCHED):
            raise MalformedInput(f"active scheme must be 'generated' or 'matched', got {which!r}")
        if which == ACTIVE_MATCHED and session.match is None:
            raise StageIncomplete("no matched palette available")
        if session.scheme is None:
            raise StageIncomplete("no scheme generated yet")
        return replace(session, active_scheme=which)

    # -- chat routing -------------------------------------------------------

    def chat(self, session: Session, utterance: str) -> tuple[Session, str, dict]:
        """Route a natural-language turn to the stage it targets.

        Returns (updated session, assistant text, effect descriptor).
        """
        if not utterance.strip():
            raise MalformedInput("utterance must be non-empty")
        if session.stage3_done or session.stage2_done:
            return self._chat_customize(session, utterance)
        if session.stage1_done:
            out = self.run_stage2(session, utterance)
            out = self.run_stage3(out)
            effect = {"type": "design", "concept": out.concept.to_dict(),
                      "scheme": out.scheme.to_dict()}
            return out, out.concept.rationale, effect
        raise StageIncomplete("upload data and classify it before designing colors")

    def _chat_customize(self, session: Session, utterance: str) -> tuple[Session, str, dict]:
        if session.stage3_done:
            stage = STAGE_SCHEME
            state = ("Scheme type: " + session.scheme.scheme_type
                     + "\nColors (low class to high): "
                     + ", ".join(session.scheme.hex_list())
                     + "\nConcept: " + json.dumps(session.concept.to_dict(), ensure_ascii=False))
            expected_k = session.scheme.k
        else:
            stage = STAGE_CONCEPT
            state = "Concept: " + json.dumps(session.concept.to_dict(), ensure_ascii=False)
            expected_k = None
        bundle = build_customization_prompt(stage, state, utterance)
        patch, _raw = self.gateway.complete_parsed(
            bundle, lambda t: parse_customization(t, stage, expected_k))
        out = session.say("user", utterance, stage)
        if isinstance(patch, ConceptPatch):
            out = self._apply_concept_patch(out, patch)
            changed = ", ".join(f"{k} -> {v}" for k, v in sorted(patch.changed.items()))
            text = f"Updated the color concept ({changed})."
            if session.stage3_done:
                out = self.run_stage3(out)
                text += " Regenerated the color scheme to match."
            effect = {"type": "concept_patch", "patch": patch.to_dict()}
        else:
            out = self._apply_scheme_patch(out, patch)
            text = "Adjusted the color scheme."
            effect = {"type": "scheme_patch", "patch": patch.to_dict()}
        out = out.say("assistant", text, stage)
        return out, text, effect

    # -- output ----------------------------------------------------------------

    def attach_geometry(self, session: Session, features: dict, name_property: str) -> Session:
        join = join_geometry(session.dataset, features, name_property)
        return replace(session, geometry=features, name_property=name_property, join=join)

    def render_styled_map(self, session: Session, features: dict | None = None,
                          name_property: str | None = None) -> StyledMap:
        if not session.stage3_done:
            raise StageIncomplete("complete the color scheme stage first")
        features = features if features is not None else session.geometry
        name_property = name_property or session.name_property
        if features is None or name_property is None:
            raise StageIncomplete("no geometry attached to the session")
        join = join_geometry(session.dataset, features, name_property)
        breaks = session.selected_result().breaks
        assignment = cls.assign_classes(session.dataset, breaks)
        colors = session.active_colors()
        matched = set(join.matched)
        styled = []
        for f in features["features"]:
            name = str((f.get("properties") or {}).get(name_property, "")).strip()
            if name not in matched or name not in assignment:
                continue
            idx = assignment[name]
            props = dict(f.get("properties") or {})
            props["class_index"] = idx
            props["fill"] = colors[idx].hex()
            styled.append({**f, "properties": props})
        legend = []
        b = breaks.bounds
        for i in range(breaks.k):
            lo, hi = format_break(b[i]), format_break(b[i + 1])
            text = f"[{lo}, {hi})" if i < breaks.k - 1 else f"[{lo}, {hi}]"
            legend.append((text, colors[i].hex()))
        return StyledMap(
            features={"type": "FeatureCollection", "features": styled},
            legend=tuple(legend),
            unmatched=tuple(join.unmatched_data),
        )

    def export_bundle(self, session: Session) -> dict:
        """The five-document export: styled map, legend, concept, scheme, chat."""
        styled = self.render_styled_map(session)
        doc = styled.to_dict()
        return {
            "styled_map": doc["features"],
            "legend": doc["legend"],
            "concept": session.concept.to_dict(),
            "scheme": session.scheme.to_dict(),
            "chat": list(session.chat_history),
        }
