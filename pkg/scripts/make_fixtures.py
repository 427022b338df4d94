"""Regenerate the PD fixtures shipped in src/gordian/fixtures.

5_2 is the published Rolfsen-table PD code; the others are synthesized from
their parametric descriptions.
"""

from pathlib import Path

from gordian import families as fam
from gordian.diagram import PDCode, relabel, write_pd

OUT = Path(__file__).resolve().parents[1] / "src" / "gordian" / "fixtures"

PUBLISHED = {
    "5_2": ((1, 4, 2, 5), (3, 8, 4, 9), (5, 10, 6, 1), (9, 6, 10, 7), (7, 2, 8, 3)),
}

PARAMETRIC = {
    "7_3": fam.Twist(4, 3),
    "8_19": fam.Pretzel(3, 3, -2),
    "8_20": fam.Pretzel(3, -3, 2),
    "10_124": fam.Pretzel(5, 3, -2),
    "10_126": fam.Pretzel(-5, 3, 2),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, crossings in PUBLISHED.items():
        write_pd(PDCode(crossings), OUT / f"{name}.pd", f"{name}, Rolfsen table PD code")
    for name, spec in PARAMETRIC.items():
        pd = relabel(fam.synthesize(spec))
        write_pd(pd, OUT / f"{name}.pd", f"{name} = {spec}")
    print(f"wrote {len(PUBLISHED) + len(PARAMETRIC)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
