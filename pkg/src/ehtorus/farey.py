"""Exact quadratic-irrational slopes and Farey-tessellation searches.

Eigen-slopes of hyperbolic SL(2,Z) matrices are numbers ``(u + v*sqrt(D))/w``;
everything here compares them against rationals with integer sign tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def sign_surd(p: int, q: int, D: int) -> int:
    """Exact sign of ``p + q*sqrt(D)`` for integers p, q and D >= 0."""
    if q == 0 or D == 0:
        return (p > 0) - (p < 0)
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sp == 0:
        return sq
    if sp == sq:
        return sp
    # opposite signs: compare p^2 with q^2 D
    lhs, rhs = p * p, q * q * D
    if lhs == rhs:
        return 0
    return sp if lhs > rhs else sq


@dataclass(frozen=True)
class QuadraticSlope:
    """The real number ``(u + v*sqrt(D)) / w`` with D not a perfect square."""

    u: int
    v: int
    w: int
    D: int

    def cmp_rational(self, r: Fraction) -> int:
        """Sign of ``self - r``."""
        r = Fraction(r)
        # (u + v sqrt D)/w - n/m = (u m - n w + v m sqrt D) / (w m)
        n, m = r.numerator, r.denominator
        s = sign_surd(self.u * m - n * self.w, self.v * m, self.D)
        return s if self.w > 0 else -s

    def floor(self) -> int:
        root = isqrt(self.v * self.v * self.D)
        guess = (self.u + (root if self.v >= 0 else -root)) // self.w
        while self.cmp_rational(Fraction(guess)) < 0:
            guess -= 1
        while self.cmp_rational(Fraction(guess + 1)) >= 0:
            guess += 1
        return guess

    def reciprocal_of_fraction_part(self) -> "QuadraticSlope":
        """Return ``1 / (self - floor(self))``."""
        a = self.floor()
        u1 = self.u - a * self.w
        # w / (u1 + v sqrt D) = w (u1 - v sqrt D) / (u1^2 - v^2 D)
        den = u1 * u1 - self.v * self.v * self.D
        return QuadraticSlope(self.w * u1, -self.w * self.v, den, self.D)

    def convergents(self, depth: int):
        """Yield continued-fraction convergents p/q (they alternate sides)."""
        x = self
        h0, h1 = 1, 0
        k0, k1 = 0, 1
        for _ in range(depth):
            a = x.floor()
            h0, h1 = a * h0 + h1, h0
            k0, k1 = a * k0 + k1, k0
            yield Fraction(h0, k0)
            x = x.reciprocal_of_fraction_part()

    def approx(self) -> float:
        return (self.u + self.v * self.D ** 0.5) / self.w


def eigen_slopes(M) -> tuple[QuadraticSlope, QuadraticSlope]:
    """(unstable, stable) eigen-slopes y/x of a hyperbolic matrix.

    ``M`` is a 4-tuple (a, b, c, d).  Requires |trace| > 2, hence b != 0.
    """
    a, b, c, d = M
    t = a + d
    disc = t * t - 4
    if disc <= 0:
        raise ValueError("matrix is not hyperbolic")
    sgn = 1 if t > 0 else -1
    # eigenvector (b, lambda - a), lambda = (t +- sqrt(disc))/2
    unstable = QuadraticSlope(d - a, sgn, 2 * b, disc)
    stable = QuadraticSlope(d - a, -sgn, 2 * b, disc)
    return unstable, stable


def _in_open_arc(lo: Fraction | None, hi: Fraction | None, s: QuadraticSlope) -> bool:
    """Is slope s in the arc of RP^1 going from lo up to hi?  None is infinity."""
    if lo is None and hi is None:
        raise ValueError("degenerate arc")
    if lo is None:
        return s.cmp_rational(hi) < 0
    if hi is None:
        return s.cmp_rational(lo) > 0
    if lo < hi:
        return s.cmp_rational(lo) > 0 and s.cmp_rational(hi) < 0
    return s.cmp_rational(lo) > 0 or s.cmp_rational(hi) < 0


def _slope(v: tuple[int, int]) -> Fraction | None:
    return None if v[0] == 0 else Fraction(v[1], v[0])


def separating_farey_edges(s1: QuadraticSlope, s2: QuadraticSlope, limit: int = 200):
    """Yield Farey edges whose endpoints separate the irrational slopes s1, s2.

    Edges are pairs of primitive vectors (u, v) with det(u, v) = 1, visited
    breadth-first from the edge (1,0)-(0,1) so nearer edges come first.
    """
    queue = [((1, 0), (0, 1))]
    seen = set()
    found = 0
    while queue and found < limit:
        u, v = queue.pop(0)
        key = frozenset((_slope(u), _slope(v)))
        if key in seen:
            continue
        seen.add(key)
        su, sv = _slope(u), _slope(v)
        if _in_open_arc(su, sv, s1) != _in_open_arc(su, sv, s2):
            found += 1
            yield u, v
        w1 = (u[0] + v[0], u[1] + v[1])
        w2 = (u[0] - v[0], u[1] - v[1])
        queue.append((u, w1))
        queue.append((w1, v))
        queue.append((u, w2))
        queue.append((w2, v))


def slope_vector(s: Fraction | None) -> tuple[int, int]:
    if s is None:
        return (0, 1)
    return (s.denominator, s.numerator)
