import json

import pytest

from conftest import GOLDEN
from chorocolor.classify import fisher_jenks
from chorocolor.concept import THEMES, concept_from_dict, concept_to_constraints
from chorocolor.dataset import serialize_dataset
from chorocolor.gateway import render_messages
from chorocolor.palettes import DIVERGING
from chorocolor.prompts import (
    CONCEPT_SECTION_NAMES,
    SCHEME_TYPE_KNOWLEDGE,
    STAGE_SCHEME,
    build_analysis_prompt,
    build_concept_prompt,
    build_customization_prompt,
    build_scheme_prompt,
)

DESCRIPTION = ("Gross domestic product of the 31 provincial-level regions of China "
               "for 2023, in billions of yuan.")


def elegant_concept(**overrides):
    doc = {"theme": "elegant", "temperature": 1, "distance": 1, "weight": 1,
           "scheme_type": "sequential", "rationale": "muted verdigris"}
    doc.update(overrides)
    return concept_from_dict(doc)


def warm_concept():
    return concept_from_dict({"theme": "strong_contrast", "temperature": 2,
                              "distance": 0, "weight": 1,
                              "scheme_type": "sequential", "rationale": "warm"})


def test_analysis_prompt_contains_tasks_and_knowledge():
    bundle = build_analysis_prompt('[{"name":"A","gdp":5}]')
    text = bundle.system_text()
    assert "Task 1" in text and "Task 2" in text and "Task 3" in text
    assert SCHEME_TYPE_KNOWLEDGE in text
    assert "Does the ranking have a 'center' or 'middle'?" in text


def test_analysis_prompt_embeds_dataset_once():
    dataset_text = '[{"name":"A","gdp":5},{"name":"B","gdp":7}]'
    bundle = build_analysis_prompt(dataset_text)
    everything = bundle.system_text() + "\n" + bundle.user_payload
    assert everything.count(dataset_text) == 1


def test_concept_prompt_section_names_exact():
    bundle = build_concept_prompt("lively", DESCRIPTION)
    assert bundle.section_names() == CONCEPT_SECTION_NAMES


def test_concept_prompt_contains_all_theme_tokens():
    bundle = build_concept_prompt("lively", DESCRIPTION)
    domain = dict(bundle.sections)["Domain Knowledge"]
    for theme in THEMES:
        assert theme in domain


def test_design_prompts_carry_two_few_shot_pairs():
    concept = elegant_concept()
    breaks = fisher_jenks([1, 5, 9, 14, 22, 31], 3)
    assert len(build_concept_prompt("x", DESCRIPTION).few_shot) == 2
    assert len(build_scheme_prompt(concept, breaks,
                                   concept_to_constraints(concept)).few_shot) == 2


def test_scheme_prompt_mentions_k_and_warm_clause():
    concept = warm_concept()
    breaks = fisher_jenks([1, 2, 3, 10, 11, 12, 20, 21, 22], 3)
    bundle = build_scheme_prompt(concept, breaks, concept_to_constraints(concept))
    text = bundle.system_text() + bundle.user_payload
    assert "exactly 3 hex" in text
    assert "3-color" in bundle.user_payload
    assert "warm hues" in text and "reds, oranges, and yellows" in text


def test_diverging_scheme_prompt_has_balanced_midpoints():
    concept = elegant_concept(scheme_type=DIVERGING)
    breaks = fisher_jenks([1, 2, 3, 10, 11, 12, 20, 21, 22], 3)
    bundle = build_scheme_prompt(concept, breaks, concept_to_constraints(concept))
    assert "balanced midpoints" in bundle.system_text()


def test_builders_are_deterministic():
    a = build_concept_prompt("Statue of Liberty like", DESCRIPTION)
    b = build_concept_prompt("Statue of Liberty like", DESCRIPTION)
    assert render_messages(a) == render_messages(b)
    assert a == b


def test_customization_prompt_carries_state_and_utterance():
    bundle = build_customization_prompt(STAGE_SCHEME, "Colors: #aabbcc", "more vivid")
    assert "Colors: #aabbcc" in bundle.system_text()
    assert bundle.user_payload == "Utterance: more vivid"


def test_empty_inputs_rejected():
    with pytest.raises(ValueError):
        build_analysis_prompt("   ")
    with pytest.raises(ValueError):
        build_concept_prompt("", DESCRIPTION)
    with pytest.raises(ValueError):
        build_customization_prompt(STAGE_SCHEME, "state", "  ")


# -- golden renders (regenerate with scripts/make_fixtures.py) -----------------------

def _golden_messages(name):
    return json.loads((GOLDEN / f"{name}.json").read_text("utf-8"))


def test_golden_analysis_prompt(gdp_dataset):
    bundle = build_analysis_prompt(serialize_dataset(gdp_dataset))
    assert render_messages(bundle) == _golden_messages("analysis_prompt")


def test_golden_concept_prompt():
    analysis = json.loads((GOLDEN / "analysis_prompt.json").read_text("utf-8"))
    # the committed description is the one parsed from the analysis fixture
    from conftest import LLM_FIXTURES
    index = json.loads((LLM_FIXTURES / "index.json").read_text("utf-8"))
    label = "stage1 analysis of the gdp fixture"
    key = next(k for k, v in index.items() if v == label)
    from chorocolor.parsing import parse_analysis
    parsed = parse_analysis((LLM_FIXTURES / f"{key}.txt").read_text("utf-8"))
    bundle = build_concept_prompt("Statue of Liberty like", parsed.description)
    assert render_messages(bundle) == _golden_messages("concept_prompt")


def test_golden_scheme_prompt(gdp_values):
    concept = elegant_concept(
        rationale="The Statue of Liberty reads as weathered copper: quiet, dignified "
                  "verdigris rather than loud color. An elegant theme with neutral "
                  "temperature, medium distance, and medium weight keeps the map "
                  "composed, and the clear low-to-high ordering of provincial GDP "
                  "calls for a sequential ramp.")
    breaks = fisher_jenks(gdp_values, 5)
    bundle = build_scheme_prompt(concept, breaks, concept_to_constraints(concept))
    assert render_messages(bundle) == _golden_messages("scheme_prompt")
