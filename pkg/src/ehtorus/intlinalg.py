"""Exact integer linear algebra: kernels and integral solutions.

A column-style Hermite reduction ``A U = H`` with unimodular ``U`` gives both
the integer kernel (columns of U over the zero columns of H) and particular
integral solutions of ``A x = b`` by forward substitution on H.
"""

from __future__ import annotations


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class IntegerSystem:
    """Column-echelon decomposition of an integer matrix.

    ``rows`` is a list of equal-length integer lists (m x n).
    """

    def __init__(self, rows: list[list[int]], ncols: int | None = None):
        self.m = len(rows)
        self.n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        # work on columns: H columns, U columns
        H = [[rows[i][j] for i in range(self.m)] for j in range(self.n)]
        U = [[1 if i == j else 0 for i in range(self.n)] for j in range(self.n)]
        pivots: list[tuple[int, int]] = []  # (row, column)
        col = 0
        for r in range(self.m):
            if col >= self.n:
                break
            # gcd-combine columns col..n-1 on row r
            for j in range(col + 1, self.n):
                if H[j][r] == 0:
                    continue
                a, b = H[col][r], H[j][r]
                g, s, t = ext_gcd(a, b)
                ca, cb = a // g, b // g
                hc, hj = H[col], H[j]
                uc, uj = U[col], U[j]
                H[col] = [s * x + t * y for x, y in zip(hc, hj)]
                H[j] = [-cb * x + ca * y for x, y in zip(hc, hj)]
                U[col] = [s * x + t * y for x, y in zip(uc, uj)]
                U[j] = [-cb * x + ca * y for x, y in zip(uc, uj)]
            if H[col][r] != 0:
                if H[col][r] < 0:
                    H[col] = [-x for x in H[col]]
                    U[col] = [-x for x in U[col]]
                pivots.append((r, col))
                col += 1
        self.H = H
        self.U = U
        self.pivots = pivots
        self.rank = len(pivots)

    def kernel(self) -> list[list[int]]:
        """Lattice basis of {x : A x = 0}."""
        return [list(self.U[j]) for j in range(self.rank, self.n)]

    def solve(self, b: list[int]) -> list[int] | None:
        """One integral solution of A x = b, or None."""
        resid = list(b)
        y = [0] * self.n
        for r, c in self.pivots:
            # rows before r are already satisfied; zero out row r
            piv = self.H[c][r]
            if resid[r] % piv:
                return None
            q = resid[r] // piv
            y[c] = q
            if q:
                col = self.H[c]
                resid = [x - q * h for x, h in zip(resid, col)]
        if any(resid):
            return None
        x = [0] * self.n
        for c in range(self.rank):
            if y[c]:
                uc = self.U[c]
                x = [xi + y[c] * ui for xi, ui in zip(x, uc)]
        return x
