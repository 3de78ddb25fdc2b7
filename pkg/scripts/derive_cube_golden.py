#!/usr/bin/env python3
"""Independent re-derivation of the golden cube values pinned in the tests.

Integrates rho(x) * g(x) over the twisted cube of the word (1,2,1,3) with
integer vector (0,4,2,2) over A3, using sympy with explicit sign-region
splits instead of the antiderivative-substitution recursion:

    A4 = -2, A3 = -2, A2 = -4 + x3 + x4  (all nonpositive on the region),
    A1 = -2 + x2 - 2*x3  (sign varies: positive iff x2 > 2 + 2*x3),

so x4, x3, x2 run over closed branches with sign -1 and the x1 branch is
split at the plane x2 = 2 + 2*x3.  The target moments are those of the
projection L(x) = (x1 + x3, x2, x4).

Run:  python scripts/derive_cube_golden.py
"""

import sympy as sp

x1, x2, x3, x4 = sp.symbols("x1 x2 x3 x4")

A1 = -2 + x2 - 2 * x3
A2 = -4 + x3 + x4


def integral(g):
    # rho = (-1)^4 sign(x1) sign(x2) sign(x3) sign(x4) = -sign(x1) on the region
    # (x2, x3, x4 are nonpositive there).
    def inner(expr):
        # signed x1-integral over the branch, split by the sign of A1
        neg = -sp.integrate(expr, (x1, A1, 0))   # A1 <= 0: x1 in [A1, 0], sign(x1) = -1
        pos = sp.integrate(expr, (x1, 0, A1))    # A1 > 0:  x1 in (0, A1), sign(x1) = +1
        return neg, pos

    neg, pos = inner(g)
    s = 2 + 2 * x3  # A1 > 0 iff x2 > s; s > A2 always holds here

    # x3 in [-1, 0]: s >= 0, the whole x2-range [A2, 0] has A1 <= 0
    part1 = sp.integrate(neg, (x2, A2, 0), (x3, -1, 0), (x4, -2, 0))
    # x3 in [-2, -1): split x2 at s
    part2 = sp.integrate(neg, (x2, A2, s), (x3, -2, -1), (x4, -2, 0))
    part3 = sp.integrate(pos, (x2, s, 0), (x3, -2, -1), (x4, -2, 0))
    total = part1 + part2 + part3
    # the three outer closed branches each carry sign -1: (-1)^4 * (-1)^3 = -1
    return sp.nsimplify(-(total))


if __name__ == "__main__":
    print("signed volume      :", integral(sp.Integer(1)))
    print("moment (1,0,0)     :", integral(x1 + x3))
    print("moment (0,1,0)     :", integral(x2))
    print("moment (0,0,1)     :", integral(x4))
    print("moment (2,0,0)     :", integral((x1 + x3) ** 2))
