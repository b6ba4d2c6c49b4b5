"""Prompt builders for the three pipeline stages and for customization.

Every builder is a pure function of its inputs: identical arguments yield
byte-identical bundles, which the golden-prompt tests and the fixture
replay store both rely on.
"""

from __future__ import annotations

import json

from .classify import ClassBreaks
from .concept import MOOD_LABELS, THEMES, ColorConcept
from .gateway import STAGE_ANALYSIS, STAGE_DESIGN, PromptBundle

CONCEPT_SECTION_NAMES = ("Data Input", "Profile Setting", "Domain Knowledge",
                         "Output Format", "Few-shot Example", "TODO")

STAGE_CONCEPT = "concept"
STAGE_SCHEME = "scheme"

_DESIGNER_ROLE = ("You are an experienced map designer specializing in choropleth "
                  "map color design. You know color theory, color psychology, and "
                  "cartographic conventions, and you turn vague design wishes into "
                  "precise, well-reasoned decisions.")

ANALYSIS_TASKS = (
    "Task 1: Check possible data errors in the uploaded data, such as missing "
    "data or abnormal values.",
    "Task 2: Provide as detailed a description as possible based on the uploaded "
    "data, including topics, range, acquisition time, and anything else useful "
    "for color design.",
    "Task 3: Suggest the color scheme type (sequential vs diverging) based on "
    "the data characteristics.",
)

SCHEME_TYPE_KNOWLEDGE = (
    "Sequential scheme is ideal for visualizing data with a clear order or "
    "magnitude, such as population density or income levels. Diverging scheme "
    "is ideal for visualizing data that deviates in two opposite directions "
    "from a meaningful midpoint, such as temperature anomalies or percentage "
    "change. You can determine the scheme type based on—Does the ranking "
    "have a 'center' or 'middle'? If it does, a diverging scheme is "
    "appropriate; if not, a sequential scheme is preferred."
)

_ANALYSIS_OUTPUT_FORMAT = (
    "Reply with exactly one fenced JSON block and nothing else:\n"
    "```json\n"
    '{"error_findings": "<answer to Task 1>",\n'
    ' "description": "<answer to Task 2>",\n'
    ' "scheme_type": "sequential" or "diverging"}\n'
    "```"
)

_CONCEPT_OUTPUT_FORMAT = (
    "Reply with exactly one fenced JSON block and nothing else:\n"
    "```json\n"
    '{"theme": "<one of: ' + ", ".join(THEMES) + '>",\n'
    ' "temperature": 0 | 1 | 2,\n'
    ' "distance": 0 | 1 | 2,\n'
    ' "weight": 0 | 1 | 2,\n'
    ' "scheme_type": "sequential" or "diverging",\n'
    ' "rationale": "<design rationale for these choices>"}\n'
    "```"
)


def _mood_table() -> str:
    lines = []
    for name in MOOD_LABELS:
        levels = ", ".join(f"{label} ({level})" for level, label in enumerate(MOOD_LABELS[name]))
        lines.append(f"- {name}: {levels}")
    return "\n".join(lines)


_CONCEPT_DOMAIN_KNOWLEDGE = (
    "Color themes commonly used in map design: "
    + ", ".join(f"'{t}'" for t in THEMES) + ".\n"
    "An 'elegant' theme favors muted, soft tones; 'strong_contrast' favors bold "
    "separation between classes; 'light' keeps everything airy; 'moderate' is "
    "balanced; 'neutral' stays close to gray.\n"
    "Color moods quantify three psychological effects, each on integer levels:\n"
    + _mood_table() + "\n"
    "Warm colors (reds, oranges, yellows) evoke energy and advance toward the "
    "viewer; cool colors (blues, greens, violets) evoke calm and recede. "
    "Brighter, more saturated colors read as near and prominent; darker, duller "
    "colors read as far and subdued. Darker colors also read as heavier, which "
    "anchors high data values.\n"
    + SCHEME_TYPE_KNOWLEDGE
)

_CONCEPT_FEW_SHOT = (
    (
        "User intent: I want a lively atmosphere for the map.\n"
        "Data description: Annual visitor counts per district of a coastal city; "
        "values rise smoothly from rural districts to the urban center.",
        "```json\n"
        '{"theme": "strong_contrast", "temperature": 2, "distance": 0, '
        '"weight": 1, "scheme_type": "sequential", "rationale": "A lively mood '
        'calls for warm, energetic hues and bold separation between classes; '
        'bright, saturated colors keep every district prominent, and the '
        'smoothly ordered counts fit a sequential ramp."}\n'
        "```",
    ),
    (
        "User intent: Calm and professional, for an annual financial report.\n"
        "Data description: Operating margin per branch, spread evenly around "
        "zero with meaningful gains and losses on both sides.",
        "```json\n"
        '{"theme": "neutral", "temperature": 0, "distance": 1, '
        '"weight": 1, "scheme_type": "diverging", "rationale": "A report asks '
        'for restraint: cool, near-neutral tones at medium prominence read as '
        'composed and trustworthy, and values deviating around zero need a '
        'diverging scheme with a clear midpoint."}\n'
        "```",
    ),
)

_CONCEPT_TODO = (
    "Read the data description, interpret the user's intent with the domain "
    "knowledge above, then choose exactly one theme, set the three mood levels, "
    "and confirm the scheme type. Always provide a design rationale that "
    "explains how the choices serve the intent and the data. Reply in the "
    "Output Format only."
)


def _render_few_shot(pairs) -> str:
    blocks = []
    for i, (given, answer) in enumerate(pairs, start=1):
        blocks.append(f"Example {i} input:\n{given}\nExample {i} output:\n{answer}")
    return "\n\n".join(blocks)


def build_analysis_prompt(raw_dataset: str) -> PromptBundle:
    """Stage-1 prompt: data errors, description, and scheme-type suggestion."""
    if not raw_dataset.strip():
        raise ValueError("dataset text must be non-empty")
    sections = (
        ("Tasks", "\n".join(ANALYSIS_TASKS)),
        ("Domain Knowledge", SCHEME_TYPE_KNOWLEDGE),
        ("Output Format", _ANALYSIS_OUTPUT_FORMAT),
    )
    return PromptBundle(
        stage=STAGE_ANALYSIS,
        role_instructions=("You are a careful data analyst preparing a regional "
                           "dataset for thematic mapping."),
        sections=sections,
        user_payload=f"Here is the uploaded dataset (JSON):\n{raw_dataset}",
    )


def build_concept_prompt(user_intent: str, data_description: str) -> PromptBundle:
    """Stage-2 prompt: vague intent -> structured color concept."""
    if not user_intent.strip():
        raise ValueError("user intent must be non-empty")
    sections = (
        ("Data Input", "Data description from the analysis stage:\n" + data_description),
        ("Profile Setting", _DESIGNER_ROLE),
        ("Domain Knowledge", _CONCEPT_DOMAIN_KNOWLEDGE),
        ("Output Format", _CONCEPT_OUTPUT_FORMAT),
        ("Few-shot Example", _render_few_shot(_CONCEPT_FEW_SHOT)),
        ("TODO", _CONCEPT_TODO),
    )
    return PromptBundle(
        stage=STAGE_DESIGN,
        role_instructions=_DESIGNER_ROLE,
        sections=sections,
        user_payload=f"User intent: {user_intent}",
        few_shot=_CONCEPT_FEW_SHOT,
    )


def _scheme_output_format(k: int) -> str:
    return (
        f"Reply with exactly one fenced JSON block holding exactly {k} hex "
        "colors, ordered from the lowest class to the highest class:\n"
        "```json\n"
        '{"colors": ["#rrggbb", "..."]}\n'
        "```"
    )


_SCHEME_FEW_SHOT = (
    (
        "Color concept: warm (2), near (0), medium weight (1), strong_contrast, "
        "sequential. Classification: 5 classes.",
        "```json\n"
        '{"colors": ["#ffffb2", "#fecc5c", "#fd8d3c", "#f03b20", "#bd0026"]}\n'
        "```",
    ),
    (
        "Color concept: cold (0), medium (1), medium weight (1), neutral, "
        "diverging. Classification: 5 classes.",
        "```json\n"
        '{"colors": ["#0571b0", "#92c5de", "#f7f7f7", "#f4a582", "#ca0020"]}\n'
        "```",
    ),
)

_SCHEME_TODO = (
    "Design the colors class by class, honoring every constraint above: respect "
    "the scheme type's lightness ordering, keep adjacent classes clearly "
    "distinguishable, and stay within the requested mood. Reply in the Output "
    "Format only."
)


def build_scheme_prompt(concept: ColorConcept, breaks: ClassBreaks, constraints: str) -> PromptBundle:
    """Stage-3 prompt: concept plus class structure -> ordered hex colors."""
    bounds = ", ".join(format(b, "g") for b in breaks.bounds)
    data_input = (
        "Color concept:\n" + json.dumps(concept.to_dict(), ensure_ascii=False, indent=1)
        + f"\nClassification: {breaks.k} ordered classes ({breaks.method}) with "
          f"bounds [{bounds}]."
    )
    sections = (
        ("Data Input", data_input),
        ("Profile Setting", _DESIGNER_ROLE),
        ("Domain Knowledge", constraints),
        ("Output Format", _scheme_output_format(breaks.k)),
        ("Few-shot Example", _render_few_shot(_SCHEME_FEW_SHOT)),
        ("TODO", _SCHEME_TODO),
    )
    return PromptBundle(
        stage=STAGE_DESIGN,
        role_instructions=_DESIGNER_ROLE,
        sections=sections,
        user_payload=(f"Design the {breaks.k}-color {concept.scheme_type} "
                      "scheme now."),
        few_shot=_SCHEME_FEW_SHOT,
    )


_CUSTOMIZE_OUTPUT_FORMAT_CONCEPT = (
    "Reply with exactly one fenced JSON block carrying a minimal patch: only "
    "the fields that should change.\n"
    "```json\n"
    '{"target": "concept", "changed": {"<field>": <new value>, "...": "..."}}\n'
    "```\n"
    "Valid fields: theme (" + ", ".join(THEMES) + "), temperature (0..2), "
    "distance (0..2), weight (0..2), scheme_type (sequential, diverging)."
)

_CUSTOMIZE_OUTPUT_FORMAT_SCHEME = (
    "Reply with exactly one fenced JSON block carrying a minimal patch. To "
    "adjust individual class colors or apply a global tweak:\n"
    "```json\n"
    '{"target": "scheme",\n'
    ' "replacements": [{"index": <class index>, "color": "#rrggbb"}],\n'
    ' "adjustment": {"delta_lightness": 0, "delta_saturation": 0, '
    '"delta_hue_degrees": 0}}\n'
    "```\n"
    "Omit replacements or adjustment when unused; include at least one. If the "
    "request is really about the overall design concept (theme, mood levels, "
    "scheme type), reply instead with:\n"
    "```json\n"
    '{"target": "concept", "changed": {"<field>": <new value>}}\n'
    "```"
)

_CUSTOMIZE_FEW_SHOT_SCHEME = (
    (
        "Utterance: Make these colors more vivid.",
        "```json\n"
        '{"target": "scheme", "adjustment": {"delta_lightness": 0, '
        '"delta_saturation": 15, "delta_hue_degrees": 0}}\n'
        "```",
    ),
    (
        "Utterance: The middle class is too close to its neighbor, darken it a bit.",
        "```json\n"
        '{"target": "scheme", "replacements": [{"index": 2, "color": "#9a7b4f"}]}\n'
        "```",
    ),
)

_CUSTOMIZE_FEW_SHOT_CONCEPT = (
    (
        "Utterance: classic soft tones",
        "```json\n"
        '{"target": "concept", "changed": {"weight": 0}}\n'
        "```",
    ),
    (
        "Utterance: I changed my mind, make it feel warm and sunny.",
        "```json\n"
        '{"target": "concept", "changed": {"temperature": 2, "theme": "light"}}\n'
        "```",
    ),
)


def build_customization_prompt(stage: str, current_state: str, utterance: str) -> PromptBundle:
    """Natural-language refinement of the current concept or scheme.

    The reply carries an explicit target tag so an utterance at the scheme
    stage can still patch the concept when the wish is conceptual.
    """
    if stage not in (STAGE_CONCEPT, STAGE_SCHEME):
        raise ValueError(f"unknown customization stage {stage!r}")
    if not utterance.strip():
        raise ValueError("utterance must be non-empty")
    if stage == STAGE_CONCEPT:
        output_format = _CUSTOMIZE_OUTPUT_FORMAT_CONCEPT
        few_shot = _CUSTOMIZE_FEW_SHOT_CONCEPT
    else:
        output_format = _CUSTOMIZE_OUTPUT_FORMAT_SCHEME
        few_shot = _CUSTOMIZE_FEW_SHOT_SCHEME
    sections = (
        ("Current State", current_state),
        ("Profile Setting", _DESIGNER_ROLE),
        ("Domain Knowledge", _CONCEPT_DOMAIN_KNOWLEDGE),
        ("Output Format", output_format),
        ("Few-shot Example", _render_few_shot(few_shot)),
        ("TODO", "Interpret the utterance as a minimal change to the current "
                 "state and reply in the Output Format only."),
    )
    return PromptBundle(
        stage=STAGE_DESIGN,
        role_instructions=_DESIGNER_ROLE,
        sections=sections,
        user_payload=f"Utterance: {utterance}",
        few_shot=few_shot,
    )
