#!/usr/bin/env python3
"""Projected twisted-cube measures for the four SL(4) weight pairs.

For I = ({1,2},{3}) with word (1,2,1,3), builds the twisted cube of each
weight pair, prints its exact signed volume and first moments, checks them
against seeded Monte Carlo, and writes a 3-D histogram CSV per pair for
external rendering.

Run:  python scripts/twisted_cube_projections.py [outdir]
"""

import os
import sys

from crystalcubes.bundles import pullback_vector
from crystalcubes.rootsys import RootSystem, SubsetSequence, WordSequence
from crystalcubes.twistedcube import TwistedCube, mc_histogram, projection_map

PAIRS = [
    ((2, 4, 0), (0, 0, 2)),
    ((1, 4, 0), (0, 0, 2)),
    ((2, 4, 0), (0, 0, 1)),
    ((2, 3, 0), (0, 0, 2)),
]

SAMPLES = 200_000
SEED = 2026


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "cube_projections"
    os.makedirs(outdir, exist_ok=True)
    rs = RootSystem.preset("A3")
    subsets = SubsetSequence([(1, 2), (3,)])
    words = WordSequence.for_subsets(rs, subsets)
    proj = projection_map(rs, subsets, words)

    for idx, (c1, c2) in enumerate(PAIRS, start=1):
        lams = [rs.weight(*c1), rs.weight(*c2)]
        a = pullback_vector(rs, subsets, words, lams).flat
        cube = TwistedCube(rs, words.flat, a)
        vol = cube.signed_volume()
        est, err = cube.mc_volume(SAMPLES, seed=SEED)
        print(f"pair {idx}: λ = {c1}, {c2}  a = {a}")
        print(f"  signed volume {vol} (MC {est:.3f} ± {err:.3f})")
        for m in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
            exact = cube.pushforward_moments(proj, m)
            mc, mc_err = cube.mc_moment(proj, m, SAMPLES, seed=SEED)
            flag = "" if abs(mc - float(exact)) < 4 * mc_err else "  <-- outside 4σ!"
            print(f"  moment {m}: {exact} (MC {mc:.2f} ± {mc_err:.2f}){flag}")
        hist = mc_histogram(cube, proj, bins=24, samples=SAMPLES, seed=SEED)
        path = os.path.join(outdir, f"projection_{idx}.csv")
        with open(path, "w") as handle:
            handle.write("\n".join(hist.to_csv_lines()) + "\n")
        print(f"  histogram -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
