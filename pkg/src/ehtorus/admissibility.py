"""Exact test for a nonzero nonnegative vector in an integer lattice span."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .intlinalg import IntegerSystem


def nonnegative_ray(basis: list[list[int]]) -> list[int] | None:
    """Integer c != 0 with sum c_i basis[i] >= 0 componentwise, or None.

    ``basis`` must be linearly independent, so the cone {c : A c >= 0} is
    pointed and, if nonzero, has an extreme ray cut out by k-1 independent
    tight rows.  Those candidates are enumerated exactly.
    """
    k = len(basis)
    if k == 0:
        return None
    R = len(basis[0])
    rows = sorted({tuple(basis[i][j] for i in range(k)) for j in range(R)})
    rows = [r for r in rows if any(r)]

    def feasible(c):
        return all(sum(ci * ri for ci, ri in zip(c, r)) >= 0 for r in rows) and any(c)

    if k == 1:
        for c in ([1], [-1]):
            if feasible(c):
                return c
        return None
    for combo in itertools.combinations(rows, k - 1):
        ker = IntegerSystem([list(r) for r in combo], k).kernel()
        if len(ker) != 1:
            continue
        v = ker[0]
        g = 0
        for x in v:
            g = gcd(g, x)
        v = [x // g for x in v]
        for c in (v, [-x for x in v]):
            if feasible(c):
                return c
    return None
