"""Regional dataset ingest, validation, summary, and geometry join.

The input format is a UTF-8 JSON array of flat objects: one ``name`` field
plus one numeric field named by ``value_field`` (e.g. ``gdp``). Parsing is
strict about structure (array of objects, field present) but lenient about
value content: null or non-numeric values are kept and surfaced through
``validate_dataset`` instead of being coerced.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGeoJSON, MalformedInput, MissingField

NAME_KEY = "name"


@dataclass(frozen=True)
class DataRecord:
    name: str
    value: float | None
    raw: str | None = None  # source text of a non-numeric value, else None


@dataclass(frozen=True)
class Dataset:
    records: tuple[DataRecord, ...]
    value_field: str
    title: str | None = None

    def values(self) -> list[float]:
        """Numeric values in record order (missing/non-numeric skipped)."""
        return [r.value for r in self.records if r.value is not None]

    def names(self) -> list[str]:
        return [r.name for r in self.records]


@dataclass(frozen=True)
class DataSummary:
    count: int
    min: float
    max: float
    mean: float
    range: float
    value_field: str


@dataclass(frozen=True)
class ValidationReport:
    missing_values: list[str] = field(default_factory=list)
    duplicate_names: list[str] = field(default_factory=list)
    non_numeric: list[tuple[str, str]] = field(default_factory=list)
    outliers: list[tuple[str, float]] = field(default_factory=list)

    @property
    def is_clean(self) -> bool:
        # outliers are advisory, never blocking
        return not (self.missing_values or self.duplicate_names or self.non_numeric)

    def to_dict(self) -> dict:
        return {
            "missing_values": list(self.missing_values),
            "duplicate_names": list(self.duplicate_names),
            "non_numeric": [list(t) for t in self.non_numeric],
            "outliers": [[n, v] for n, v in self.outliers],
            "is_clean": self.is_clean,
        }


@dataclass(frozen=True)
class GeometryJoin:
    matched: list[str]
    unmatched_data: list[str]
    unmatched_features: list[str]

    def to_dict(self) -> dict:
        return {
            "matched": list(self.matched),
            "unmatched_data": list(self.unmatched_data),
            "unmatched_features": list(self.unmatched_features),
        }


def parse_dataset(raw: bytes | str, value_field: str, title: str | None = None) -> Dataset:
    """Parse the JSON array format into a Dataset.

    Values are taken from numeric literals only; strings that merely look
    numeric stay unparsed and show up in the validation report.
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedInput(f"input is not UTF-8: {e}") from e
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"input is not valid JSON: {e}") from e
    return dataset_from_obj(doc, value_field, title)


def dataset_from_obj(doc, value_field: str, title: str | None = None) -> Dataset:
    """Build a Dataset from an already-decoded JSON value."""
    if not isinstance(doc, list) or not doc:
        raise MalformedInput("expected a non-empty JSON array of objects")
    missing = []
    records = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict):
            raise MalformedInput(f"array item {i} is not an object")
        if NAME_KEY not in item:
            raise MalformedInput(f"array item {i} has no {NAME_KEY!r} field")
        name = str(item[NAME_KEY]).strip()
        if value_field not in item:
            missing.append(i)
            continue
        v = item[value_field]
        if v is None:
            records.append(DataRecord(name, None, None))
        elif isinstance(v, bool) or not isinstance(v, (int, float)):
            records.append(DataRecord(name, None, json.dumps(v, ensure_ascii=False)))
        elif isinstance(v, float) and not math.isfinite(v):
            records.append(DataRecord(name, None, repr(v)))
        else:
            records.append(DataRecord(name, float(v), None))
    if missing:
        raise MissingField(
            f"field {value_field!r} absent in records {missing}",
            details={"indices": missing, "field": value_field},
        )
    return Dataset(tuple(records), value_field, title)


def serialize_dataset(d: Dataset) -> str:
    """Inverse of parse_dataset (parse(serialize(d)) == d for clean data)."""
    items = []
    for r in d.records:
        if r.raw is not None:
            v = json.loads(r.raw)
        elif r.value is None:
            v = None
        else:
            v = r.value
        items.append({NAME_KEY: r.name, d.value_field: v})
    return json.dumps(items, ensure_ascii=False)


def validate_dataset(d: Dataset) -> ValidationReport:
    """Deterministic data-quality report; never raises.

    Outliers use a conservative 3x IQR fence (quartiles by linear
    interpolation) and are advisory only.
    """
    missing = [r.name for r in d.records if r.value is None and r.raw is None]
    non_numeric = [(r.name, r.raw) for r in d.records if r.raw is not None]
    seen: dict[str, int] = {}
    duplicates = []
    for r in d.records:
        seen[r.name] = seen.get(r.name, 0) + 1
        if seen[r.name] == 2:
            duplicates.append(r.name)
    outliers = []
    numeric = [(r.name, r.value) for r in d.records if r.value is not None]
    if len(numeric) >= 4:
        vals = np.array([v for _, v in numeric])
        q1, q3 = np.percentile(vals, [25, 75])
        iqr = q3 - q1
        lo, hi = q1 - 3 * iqr, q3 + 3 * iqr
        outliers = [(n, v) for n, v in numeric if v < lo or v > hi]
    return ValidationReport(missing, duplicates, non_numeric, outliers)


def summarize(d: Dataset) -> DataSummary:
    """Exact min/max/mean/range over the numeric record values."""
    vals = d.values()
    if not vals:
        raise MalformedInput("dataset has no numeric values to summarize")
    return DataSummary(
        count=len(vals),
        min=min(vals),
        max=max(vals),
        mean=sum(vals) / len(vals),
        range=max(vals) - min(vals),
        value_field=d.value_field,
    )


def join_geometry(d: Dataset, features: dict, name_property: str) -> GeometryJoin:
    """Exact-match join (whitespace-trimmed, case-sensitive) of dataset
    region names against a GeoJSON FeatureCollection property."""
    feature_names = _feature_names(features, name_property)
    data_names = d.names()
    feature_set = set(feature_names)
    matched = [n for n in data_names if n in feature_set]
    matched_set = set(matched)
    unmatched_data = [n for n in data_names if n not in feature_set]
    unmatched_features = [n for n in feature_names if n not in matched_set]
    return GeometryJoin(matched, unmatched_data, unmatched_features)


def _feature_names(features: dict, name_property: str) -> list[str]:
    if not isinstance(features, dict) or features.get("type") != "FeatureCollection":
        raise InvalidGeoJSON("expected a GeoJSON FeatureCollection")
    members = features.get("features")
    if not isinstance(members, list):
        raise InvalidGeoJSON("FeatureCollection has no features array")
    names = []
    for i, f in enumerate(members):
        if not isinstance(f, dict) or f.get("type") != "Feature":
            raise InvalidGeoJSON(f"features[{i}] is not a Feature")
        props = f.get("properties") or {}
        value = props.get(name_property)
        if value is None:
            names.append(f"features[{i}]")
        else:
            names.append(str(value).strip())
    return names
