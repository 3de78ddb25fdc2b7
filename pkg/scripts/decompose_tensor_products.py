#!/usr/bin/env python3
"""Tensor-product decompositions via projected lattice points of string polytopes.

Reproduces the SL(3) worked example (adjoint square) and then sweeps small
dominant weights, cross-checking every table against the crystal-graph
decomposition oracle.

Run:  python scripts/decompose_tensor_products.py [rank]
"""

import sys
from itertools import product

from crystalcubes.crystal import highest_weight_decompose, tensor_product_elements
from crystalcubes.rootsys import RootSystem
from crystalcubes.stringpoly import tensor_decompose


def show_table(rs, coords1, coords2):
    lam, mu = rs.weight(*coords1), rs.weight(*coords2)
    table = tensor_decompose(rs, [lam, mu])
    oracle = highest_weight_decompose(rs, tensor_product_elements(rs, [lam, mu]), check_closed=False)
    status = "ok" if table.as_dict() == dict(oracle) else "MISMATCH"
    terms = " + ".join(
        f"{c}·V({','.join(map(str, nu))})" if c > 1 else f"V({','.join(map(str, nu))})"
        for nu, c in table.entries
    )
    print(f"V({coords1}) ⊗ V({coords2}) = {terms}   [{status}]")
    return status == "ok"


def main():
    rank = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    rs = RootSystem.preset(f"A{rank}")

    print("== adjoint square ==")
    adjoint = tuple(1 for _ in range(rank)) if rank == 2 else (1,) + (0,) * (rank - 2) + (1,)
    show_table(rs, adjoint, adjoint)

    print("\n== sweep of small dominant weights ==")
    menu = [c for c in product(range(2), repeat=rank) if any(c)]
    good = True
    for c1 in menu:
        for c2 in menu:
            good &= show_table(rs, c1, c2)
    print("\nall tables matched the crystal oracle" if good else "\nMISMATCH FOUND")
    return 0 if good else 1


if __name__ == "__main__":
    sys.exit(main())
