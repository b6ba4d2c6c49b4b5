#!/usr/bin/env python3
"""Regenerates the committed fixture set.

Outputs, all deterministic:
- fixtures/data/regions.geojson       synthetic grid geometry for the demo data
- fixtures/llm/<hash>.txt             canned LLM responses keyed by prompt hash
- fixtures/llm/index.json             human-readable hash -> scenario map
- fixtures/golden/*.txt|json          golden prompt renders and constraint text
- fixtures/golden/export/*            golden export bundle from the offline run

Run from the repo root: python3 scripts/make_fixtures.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from chorocolor import classify as cls  # noqa: E402
from chorocolor.concept import concept_to_constraints, lint_scheme  # noqa: E402
from chorocolor.dataset import parse_dataset, serialize_dataset  # noqa: E402
from chorocolor.gateway import FixtureBackend, render_messages  # noqa: E402
from chorocolor.palettes import load_palettes  # noqa: E402
from chorocolor.parsing import parse_concept, parse_scheme  # noqa: E402
from chorocolor.prompts import (  # noqa: E402
    STAGE_SCHEME,
    build_analysis_prompt,
    build_concept_prompt,
    build_customization_prompt,
    build_scheme_prompt,
)

DATA = ROOT / "fixtures" / "data"
LLM = ROOT / "fixtures" / "llm"
GOLDEN = ROOT / "fixtures" / "golden"

INTENT_CLI = "Statue of Liberty like"
INTENT_CHAT = "I want a Statue of Liberty like map"

ANALYSIS_RESPONSE = """Here is my analysis of the uploaded dataset.

```json
{"error_findings": "No data errors found: all 31 regions carry a finite gdp value, names are unique, and no value looks abnormal for provincial GDP.",
 "description": "Gross domestic product of the 31 provincial-level regions of China for 2023, in billions of yuan. Values span 239 (Tibet) to 13570 (Guangdong) around a mean near 4100, with a strong concentration in coastal provinces and a long upper tail of a few very large economies.",
 "scheme_type": "sequential"}
```
"""

CONCEPT_RESPONSE = """```json
{"theme": "elegant",
 "temperature": 1,
 "distance": 1,
 "weight": 1,
 "scheme_type": "sequential",
 "rationale": "The Statue of Liberty reads as weathered copper: quiet, dignified verdigris rather than loud color. An elegant theme with neutral temperature, medium distance, and medium weight keeps the map composed, and the clear low-to-high ordering of provincial GDP calls for a sequential ramp."}
```
"""

SCHEME_RESPONSE = """```json
{"colors": ["#eaf6ec", "#c2e3c8", "#8cc9a3", "#55a381", "#2d6e57"]}
```
"""

SCHEME_LIGHT_RESPONSE = """```json
{"colors": ["#f7fcf7", "#d5edda", "#b3dcc0", "#88c2a1", "#5da183"]}
```
"""

VIVID_RESPONSE = """```json
{"target": "scheme", "adjustment": {"delta_lightness": 0, "delta_saturation": 15, "delta_hue_degrees": 0}}
```
"""

BRIGHTER_RESPONSE = """```json
{"target": "scheme", "adjustment": {"delta_lightness": 10, "delta_saturation": 0, "delta_hue_degrees": 0}}
```
"""

SOFT_TONES_RESPONSE = """```json
{"target": "concept", "changed": {"weight": 0}}
```
"""


def write_geometry() -> None:
    """A 6-wide grid of unit squares named after the dataset regions."""
    records = json.loads((DATA / "gdp_2023.json").read_text("utf-8"))
    features = []
    for i, rec in enumerate(records):
        col, row = i % 6, i // 6
        x0, y0 = float(col), float(-row)
        ring = [[x0, y0], [x0 + 1, y0], [x0 + 1, y0 - 1], [x0, y0 - 1], [x0, y0]]
        features.append({
            "type": "Feature",
            "properties": {"name": rec["name"]},
            "geometry": {"type": "Polygon", "coordinates": [ring]},
        })
    doc = {"type": "FeatureCollection", "features": features}
    (DATA / "regions.geojson").write_text(json.dumps(doc, indent=1) + "\n", "utf-8")


def scheme_state(concept, scheme) -> str:
    # mirror of Pipeline._chat_customize's state rendering
    return ("Scheme type: " + scheme.scheme_type
            + "\nColors (low class to high): " + ", ".join(scheme.hex_list())
            + "\nConcept: " + json.dumps(concept.to_dict(), ensure_ascii=False))


def main() -> None:
    if LLM.exists():
        shutil.rmtree(LLM)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    backend = FixtureBackend(LLM)
    index: dict[str, str] = {}

    def record(bundle, response, label):
        path = backend.record(bundle, response)
        index[path.stem] = label

    write_geometry()

    dataset = parse_dataset((DATA / "gdp_2023.json").read_bytes(), "gdp")
    analysis_bundle = build_analysis_prompt(serialize_dataset(dataset))
    record(analysis_bundle, ANALYSIS_RESPONSE, "stage1 analysis of the gdp fixture")

    description = json.loads(
        ANALYSIS_RESPONSE.split("```json")[1].split("```")[0])["description"]

    concept_bundle = build_concept_prompt(INTENT_CLI, description)
    record(concept_bundle, CONCEPT_RESPONSE, f"stage2 concept, intent {INTENT_CLI!r}")
    chat_concept_bundle = build_concept_prompt(INTENT_CHAT, description)
    record(chat_concept_bundle, CONCEPT_RESPONSE, f"stage2 concept, intent {INTENT_CHAT!r}")

    concept = parse_concept(CONCEPT_RESPONSE)
    assert (concept.theme, concept.temperature, concept.distance, concept.weight) == \
        ("elegant", 1, 1, 1), "concept fixture drifted"

    breaks = cls.fisher_jenks(dataset.values(), 5)
    constraints = concept_to_constraints(concept)
    scheme_bundle = build_scheme_prompt(concept, breaks, constraints)
    record(scheme_bundle, SCHEME_RESPONSE, "stage3 scheme for the elegant concept, k=5")

    scheme = parse_scheme(SCHEME_RESPONSE, 5, concept.scheme_type)
    report = lint_scheme(scheme)
    assert report.clean, f"scheme fixture must lint clean: {report.to_dict()}"
    match = load_palettes().match_scheme(scheme)
    print(f"scheme fixture matches {match.palette.name} at distance {match.distance:.2f}")

    light_concept = parse_concept(CONCEPT_RESPONSE.replace('"weight": 1', '"weight": 0'))
    light_bundle = build_scheme_prompt(light_concept, breaks,
                                       concept_to_constraints(light_concept))
    record(light_bundle, SCHEME_LIGHT_RESPONSE, "stage3 scheme after weight -> 0 patch")
    light_scheme = parse_scheme(SCHEME_LIGHT_RESPONSE, 5, light_concept.scheme_type)
    assert lint_scheme(light_scheme).clean, "light scheme fixture must lint clean"

    state = scheme_state(concept, scheme)
    for utterance, response, label in (
        ("Make these colors more vivid", VIVID_RESPONSE, "chat: vivid -> saturation"),
        ("make the colors brighter", BRIGHTER_RESPONSE, "chat: brighter -> lightness"),
        ("classic soft tones", SOFT_TONES_RESPONSE, "chat: soft tones -> weight 0"),
    ):
        bundle = build_customization_prompt(STAGE_SCHEME, state, utterance)
        record(bundle, response, label)

    # same vivid request after the canonical swatch edit (class 2 -> #aa3311),
    # the state the UI end-to-end test reaches before its chat step
    from dataclasses import replace as dc_replace
    from chorocolor.colorspace import parse_hex
    edited_colors = list(scheme.colors)
    edited_colors[2] = parse_hex("#aa3311")
    edited = dc_replace(scheme, colors=tuple(edited_colors))
    bundle = build_customization_prompt(
        STAGE_SCHEME, scheme_state(concept, edited), "Make these colors more vivid")
    record(bundle, VIVID_RESPONSE, "chat: vivid after swatch edit of class 2")

    (LLM / "index.json").write_text(
        json.dumps(index, indent=1, sort_keys=True) + "\n", "utf-8")

    # golden prompt renders and constraint text
    for name, bundle in (
        ("analysis_prompt", analysis_bundle),
        ("concept_prompt", concept_bundle),
        ("scheme_prompt", scheme_bundle),
    ):
        (GOLDEN / f"{name}.json").write_text(
            json.dumps(render_messages(bundle), indent=1, ensure_ascii=False) + "\n", "utf-8")
    (GOLDEN / "constraints_elegant.txt").write_text(constraints + "\n", "utf-8")

    # golden export bundle from one verified offline CLI run
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "chorocolor.cli", "design",
             "--data", str(DATA / "gdp_2023.json"), "--field", "gdp", "--k", "5",
             "--intent", INTENT_CLI, "--offline", "--fixtures", str(LLM),
             "--geo", str(DATA / "regions.geojson"), "--name-prop", "name",
             "--out", tmp],
            check=True, cwd=ROOT)
        export_dir = GOLDEN / "export"
        if export_dir.exists():
            shutil.rmtree(export_dir)
        shutil.copytree(tmp, export_dir)
    print(f"recorded {len(index)} fixtures; prompt hash index in {LLM / 'index.json'}")


if __name__ == "__main__":
    main()
