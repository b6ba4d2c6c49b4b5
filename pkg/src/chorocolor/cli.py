"""Batch command-line driver.

Exit codes: 0 ok, 1 lint errors, 2 input/configuration errors,
3 fixture or provider errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as cls
from .concept import lint_scheme
from .dataset import parse_dataset, validate_dataset
from .errors import AuthFailure, ChorocolorError, MalformedInput
from .gateway import LlmGateway, ProviderConfig, offline_gateway
from .palettes import SCHEME_TYPES, scheme_from_hex
from .session import Pipeline, Session

EXIT_OK = 0
EXIT_LINT = 1
EXIT_INPUT = 2
EXIT_PROVIDER = 3

_PROVIDER_CODES = {"FIXTURE_MISS", "PROVIDER_ERROR", "RATE_LIMITED", "TIMEOUT",
                   "UNPARSEABLE_RESPONSE", "BAD_SCHEME_TYPE", "WRONG_COLOR_COUNT",
                   "CONCEPT_INVALID"}


def _load_dataset(path: str, field: str):
    data = Path(path).read_bytes()
    dataset = parse_dataset(data, field)
    report = validate_dataset(dataset)
    if not report.is_clean:
        print(f"warning: dataset has quality issues: {report.to_dict()}", file=sys.stderr)
    return dataset


def _print_results(results, skipped, as_json: bool):
    if as_json:
        print(json.dumps({"results": [r.to_dict() for r in results],
                          "skipped": skipped}, indent=1))
        return
    print(f"{'method':<16} {'gvf':>8}  bounds")
    for r in results:
        bounds = ", ".join(format(b, "g") for b in r.breaks.bounds)
        print(f"{r.breaks.method:<16} {r.gvf:>8.3f}  [{bounds}]")
    for method, reason in skipped.items():
        print(f"note: {method} skipped: {reason}", file=sys.stderr)


def cmd_classify(args) -> int:
    dataset = _load_dataset(args.data, args.field)
    values = dataset.values()
    if args.method:
        method = args.method.replace("-", "_")
        if method not in cls.METHOD_ORDER:
            raise MalformedInput(f"unknown method {args.method!r}; "
                                 f"choose from {list(cls.METHOD_ORDER)}")
        fn = cls._METHOD_FNS[method]
        breaks = fn(values, args.k, args.seed) if method == cls.MAX_P else fn(values, args.k)
        results, skipped = [cls.result_for_breaks(values, breaks)], {}
    else:
        results, skipped = cls.classify_all(values, args.k, args.seed)
    _print_results(results, skipped, args.json)
    return EXIT_OK


def cmd_design(args) -> int:
    if args.offline:
        gateway = offline_gateway(args.fixtures)
    else:
        config = ProviderConfig.from_env()
        if not config.api_key:
            raise AuthFailure("no API key configured (set CHOROCOLOR_API_KEY)")
        gateway = LlmGateway(config)
    pipeline = Pipeline(gateway)
    dataset = _load_dataset(args.data, args.field)
    session = Session(id="cli", dataset=dataset)
    geojson = json.loads(Path(args.geo).read_text("utf-8"))
    session = pipeline.attach_geometry(session, geojson, args.name_prop)
    session = pipeline.run_stage1(session, args.k, args.seed)
    session = pipeline.run_stage2(session, args.intent)
    session = pipeline.run_stage3(session)
    bundle = pipeline.export_bundle(session)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "styled_map.geojson": bundle["styled_map"],
        "legend.json": bundle["legend"],
        "concept.json": bundle["concept"],
        "scheme.json": bundle["scheme"],
        "chat.json": bundle["chat"],
    }
    for name, doc in files.items():
        (out / name).write_text(
            json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n", "utf-8")
    if args.json:
        print(json.dumps({"out": str(out), "files": sorted(files)}, indent=1))
    else:
        print(f"wrote export bundle to {out}/ "
              f"(concept: {session.concept.theme}, scheme: {session.scheme.k} colors)")
    return EXIT_OK


def cmd_lint(args) -> int:
    colors = [c.strip() for c in args.scheme.split(",") if c.strip()]
    scheme = scheme_from_hex(colors, args.type)
    report = lint_scheme(scheme)
    if args.json:
        print(json.dumps(report.to_dict(), indent=1))
    else:
        if report.clean:
            print("clean: no findings")
        for f in report.findings:
            print(f"{f.severity.upper()} {f.rule}: {f.message}")
    return EXIT_LINT if report.errors() else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chorocolor",
        description="Choropleth color design: classification, concepts, schemes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a dataset and rank methods by GVF")
    p.add_argument("--data", required=True, help="JSON dataset file")
    p.add_argument("--field", required=True, help="numeric value field name")
    p.add_argument("--k", required=True, type=int, help="class count (3..11)")
    p.add_argument("--method", help="run a single method instead of all six")
    p.add_argument("--seed", type=int, default=0, help="seed for max_p")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("design", help="run the full pipeline and write an export bundle")
    p.add_argument("--data", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--intent", required=True, help="natural-language design intent")
    p.add_argument("--offline", action="store_true", help="replay committed LLM fixtures")
    p.add_argument("--fixtures", default="fixtures/llm", help="fixture directory")
    p.add_argument("--geo", required=True, help="GeoJSON FeatureCollection file")
    p.add_argument("--name-prop", default="name", help="feature property holding region names")
    p.add_argument("--out", required=True, help="output directory for the bundle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_design)

    p = sub.add_parser("lint", help="lint a comma-separated hex color scheme")
    p.add_argument("--scheme", required=True, help="colors low class to high, e.g. '#eee,#888,#111'")
    p.add_argument("--type", required=True, choices=SCHEME_TYPES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_lint)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ChorocolorError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        if isinstance(e, AuthFailure):
            return EXIT_INPUT
        return EXIT_PROVIDER if e.code in _PROVIDER_CODES else EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
