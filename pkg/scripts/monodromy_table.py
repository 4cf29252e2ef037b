"""Print the factored monodromy at infinity for every point of a few configurations.

    python scripts/monodromy_table.py
    python scripts/monodromy_table.py --random 20 --seed 1
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ahg import lattice_geometry as lg
from ahg import monodromy_engine as me
from ahg import spectral_algebra as sa
from ahg import suites


@dataclass
class TableConfig:
    cases: list[tuple[tuple, tuple]] = field(default_factory=lambda: [
        (((1,),), (Fraction(1, 2),)),
        (((1,), (2,)), (Fraction(1, 3),)),
        (((1, 0), (0, 1), (1, 1)), (Fraction(1, 3), Fraction(1, 5))),
        (((1, 0), (0, 1), (-1, -1)), (Fraction(1, 4), Fraction(2, 7))),
        (((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)), (Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))),
    ])
    orientation: str = "ccw"


def rows(config: TableConfig):
    for pts, c in config.cases:
        A = me.PointConfiguration(tuple(pts))
        vol = lg.normalized_volume(A.delta())
        for rep in me.all_reports(A, c, orientation=config.orientation):
            yield A, c, vol, rep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=0, help="append this many random configurations")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--orientation", choices=["ccw", "cw"], default="ccw")
    args = ap.parse_args()

    config = TableConfig(orientation=args.orientation)
    rng = random.Random(args.seed)
    for k in range(args.random):
        A = suites.random_configuration(rng, (1, 2, 3)[k % 3], max_points=5)
        config.cases.append((A.points, suites.random_nonresonant(rng, A).entries))

    last = None
    for A, c, vol, rep in rows(config):
        if A.points != last:
            cs = ", ".join(str(x) for x in c)
            print(f"\nA = {list(A.points)}  c = ({cs})  Vol = {vol}")
            last = A.points
        flag = "" if rep.theorem_hypotheses_met else "  [hypotheses not met]"
        print(f"  j0 = {rep.j0:<2} a = {A.point(rep.j0)!s:<12} {sa.format_poly(rep.char_poly)}{flag}")


if __name__ == "__main__":
    main()
