#!/usr/bin/env python3
"""Walk the whole offline design pipeline on the bundled demo data.

Prints the classification ranking, the generated concept, the scheme with
its lint report and nearest reference palette, and the legend.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from chorocolor.dataset import parse_dataset  # noqa: E402
from chorocolor.gateway import offline_gateway  # noqa: E402
from chorocolor.session import Pipeline, Session  # noqa: E402

DATA = ROOT / "fixtures" / "data"


def main() -> None:
    pipeline = Pipeline(offline_gateway(ROOT / "fixtures" / "llm"))
    dataset = parse_dataset((DATA / "gdp_2023.json").read_bytes(), "gdp")
    geometry = json.loads((DATA / "regions.geojson").read_text("utf-8"))

    session = Session(id="demo", dataset=dataset)
    session = pipeline.attach_geometry(session, geometry, "name")

    session = pipeline.run_stage1(session, k=5)
    print("== stage 1: classification (ranked by GVF)")
    for r in session.results:
        bounds = ", ".join(format(b, "g") for b in r.breaks.bounds)
        marker = " <- selected" if r.breaks.method == session.selected_method else ""
        print(f"  {r.breaks.method:<16} gvf={r.gvf:7.3f}  [{bounds}]{marker}")
    print(f"  suggested scheme type: {session.scheme_type}")

    session = pipeline.run_stage2(session, "Statue of Liberty like")
    print("\n== stage 2: color concept")
    for key, value in session.concept.to_dict().items():
        print(f"  {key}: {value}")

    session = pipeline.run_stage3(session)
    print("\n== stage 3: color scheme")
    print(f"  colors: {', '.join(session.scheme.hex_list())}")
    print(f"  nearest palette: {session.match.palette.name}-{session.match.palette.k} "
          f"(distance {session.match.distance:.2f}, "
          f"{'reversed' if session.match.reversed else 'forward'})")
    print(f"  lint: {'clean' if session.lint.clean else session.lint.to_dict()}")

    styled = pipeline.render_styled_map(session)
    print("\n== legend")
    for text, color in styled.legend:
        print(f"  {color}  {text}")
    print(f"\nstyled features: {len(styled.features['features'])}, "
          f"unmatched regions: {list(styled.unmatched) or 'none'}")


if __name__ == "__main__":
    main()
