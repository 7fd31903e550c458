#!/usr/bin/env python3
"""Heuristic grid search for flat constant abelian connections.

Sweeps constant one-forms whose four coefficients range over a small
rational grid, computes the exact curvature of each, and reports every
flat point found.  Each hit is then tested against the known flat
families (four axis lines plus the diagonal line), so the run doubles
as an experimental check that the classification has no extra isolated
solutions on the grid.

This is a *search*, not a proof: it only inspects grid points.  The
exhaustive statement is established symbolically in the library and
exercised by the test suite; this script exists to let you poke at the
landscape and to confirm the families are not an artifact of symbolic
manipulation.

Usage:
    python3 scripts/flat_connection_grid.py            # default grid
    python3 scripts/flat_connection_grid.py --denominator 3 --radius 2
"""

import argparse
import itertools
from fractions import Fraction

from ncgeo import (
    build_group,
    class_calculus,
    constant_one_form,
    is_flat_family_member,
    u1_curvature,
)


def grid_values(radius: int, denominator: int) -> list[Fraction]:
    steps = range(-radius * denominator, radius * denominator + 1)
    return [Fraction(k, denominator) for k in steps]


def classify_hit(coeffs: tuple[Fraction, ...]) -> str:
    nonzero = [x for x in coeffs if x != 0]
    if len(set(coeffs)) == 1:
        return "diagonal"
    if len(nonzero) <= 1 or len({x for x in coeffs}) == 2:
        return "axis-like"
    return "other"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--radius",
        type=int,
        default=1,
        help="coefficients range over [-radius, radius] (default 1)",
    )
    parser.add_argument(
        "--denominator",
        type=int,
        default=2,
        help="grid step is 1/denominator (default 2)",
    )
    parser.add_argument("--group", default="a4", help="builtin group name")
    parser.add_argument(
        "--class-element",
        default="t",
        dest="class_element",
        help="representative of the generating conjugacy class",
    )
    args = parser.parse_args()

    group = build_group(args.group)
    c = class_calculus(group, args.class_element)
    values = grid_values(args.radius, args.denominator)
    labels = list(c.labels)

    total = 0
    hits: list[tuple[Fraction, ...]] = []
    for coeffs in itertools.product(values, repeat=len(labels)):
        total += 1
        alpha = constant_one_form(c, coeffs)
        if u1_curvature(c, alpha).is_zero():
            hits.append(coeffs)

    print(f"grid: {len(values)} values per axis, {total} constant one-forms tested")
    print(f"flat points found: {len(hits)}\n")

    in_family = 0
    strays = []
    header = "  ".join(f"{lab:>6}" for lab in labels)
    print(f"{header}   shape        in known families?")
    for coeffs in hits:
        alpha = constant_one_form(c, coeffs)
        member = is_flat_family_member(c, alpha)
        in_family += member
        if not member:
            strays.append(coeffs)
        coeff_str = "  ".join(f"{str(x):>6}" for x in coeffs)
        print(f"{coeff_str}   {classify_hit(coeffs):<12} {member}")

    print(f"\n{in_family}/{len(hits)} flat grid points lie in the known families")
    if strays:
        print("UNEXPECTED flat points outside the classification:")
        for coeffs in strays:
            print("  ", coeffs)
        raise SystemExit(1)
    print("no stray solutions on this grid")


if __name__ == "__main__":
    main()
