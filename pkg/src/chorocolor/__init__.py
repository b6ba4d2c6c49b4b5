"""chorocolor: choropleth map color design workbench.

Deterministic core (classification, color math, palette matching, linting)
plus an LLM-assisted design pipeline with an offline fixture backend.
"""

from .classify import (
    ClassBreaks,
    ClassificationResult,
    GVF_SATISFACTORY,
    assign_classes,
    classify_all,
    equal_intervals,
    fisher_jenks,
    gvf,
    jenks_caspall,
    max_p,
    pretty_breaks,
    quantiles,
)
from .colorspace import ColorAdjustment, LabColor, RGBColor, adjust, delta_e, format_hex, lab_to_rgb, parse_hex, rgb_to_lab
from .concept import ColorConcept, LintReport, concept_to_constraints, lint_scheme, validate_concept
from .dataset import Dataset, join_geometry, parse_dataset, summarize, validate_dataset
from .gateway import FixtureBackend, HttpBackend, LlmGateway, PromptBundle, ProviderConfig, offline_gateway
from .palettes import ColorScheme, MatchResult, Palette, PaletteDB, load_palettes, scheme_distance
from .session import DirectEdit, Pipeline, Session, StyledMap, new_session

__version__ = "0.1.0"
