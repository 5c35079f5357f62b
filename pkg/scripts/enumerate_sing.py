"""Enumerate the singular locus of a weighted generator set over a finite field.

    python scripts/enumerate_sing.py --vars Z,X,Y --field 2,2 "Z^2+Y^7+X^4*Y:2"

Each generator is written ``poly:weight``.  The closure and its elimination
algebra (with ``--z``) are printed before the points.
"""

import argparse

from reeskit.elimination import elimination_algebra
from reeskit.field import GF
from reeskit.parse import parse_poly
from reeskit.poly import RingCtx
from reeskit.rees import ReesAlgebra, diff_closure, sing_points


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("generators", nargs="+", help="poly:weight")
    ap.add_argument("--vars", default="Z,X,Y")
    ap.add_argument("--field", default="2", help="p or p,k")
    ap.add_argument("--z", help="transversal variable; also enumerate Sing of the elimination algebra")
    args = ap.parse_args(argv)

    p, k = ([int(t) for t in args.field.split(",")] + [1])[:2]
    F = GF(p, k)
    R = RingCtx(F, tuple(args.vars.split(",")))
    pairs = []
    for g in args.generators:
        poly, _, w = g.rpartition(":")
        pairs.append((parse_poly(poly, R), int(w)))
    G = diff_closure(ReesAlgebra.from_pairs(R, pairs))
    print(f"G = {G}")
    pts = sorted(sing_points(G, F))
    print(f"Sing(G) over GF({p}^{k}): {len(pts)} points")
    for pt in pts:
        print(f"  {pt}")
    if args.z:
        E = elimination_algebra(G, args.z)
        print(f"R = {E}")
        pts = sorted(sing_points(E, F))
        print(f"Sing(R): {len(pts)} points")
        for pt in pts:
            print(f"  {pt}")


if __name__ == "__main__":
    main()
