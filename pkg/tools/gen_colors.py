#!/usr/bin/env python3
"""Regenerate src/posedit/data/colors.csv from matplotlib's named CSS colors.

Output format is one "name,rrggbb" row per color, sorted by name.
"""
from pathlib import Path

from matplotlib.colors import CSS4_COLORS

OUT = Path(__file__).resolve().parents[1] / "src" / "posedit" / "data" / "colors.csv"


def main() -> None:
    rows = []
    for name, hexval in sorted(CSS4_COLORS.items()):
        rows.append(f"{name.lower()},{hexval.lstrip('#').lower()}")
    OUT.write_text("\n".join(rows) + "\n")
    print(f"wrote {len(rows)} colors to {OUT}")


if __name__ == "__main__":
    main()
