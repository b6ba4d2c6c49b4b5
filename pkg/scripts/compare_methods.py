#!/usr/bin/env python3
"""Sweep the class count and compare GVF across the six methods.

Usage: python3 scripts/compare_methods.py [DATA_JSON FIELD]
Defaults to the bundled demo dataset.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from chorocolor.classify import GVF_SATISFACTORY, METHOD_ORDER, classify_all  # noqa: E402
from chorocolor.dataset import parse_dataset  # noqa: E402


def main() -> None:
    if len(sys.argv) == 3:
        path, field = Path(sys.argv[1]), sys.argv[2]
    else:
        path, field = ROOT / "fixtures" / "data" / "gdp_2023.json", "gdp"
    values = parse_dataset(path.read_bytes(), field).values()

    print(f"{'k':>3}  " + "".join(f"{m:>16}" for m in METHOD_ORDER))
    for k in range(3, 12):
        results, skipped = classify_all(values, k)
        by_method = {r.breaks.method: r for r in results}
        cells = []
        for m in METHOD_ORDER:
            if m in by_method:
                r = by_method[m]
                suffix = "*" if r.gvf >= GVF_SATISFACTORY else " "
                cells.append(f"{r.gvf:15.3f}{suffix}")
            else:
                cells.append(f"{'skipped':>16}")
        print(f"{k:>3}  " + "".join(cells))
    print(f"\n* = at or above the satisfactory-GVF threshold ({GVF_SATISFACTORY:g})")


if __name__ == "__main__":
    main()
