"""Mapping classes of the once-punctured torus.

Exact SL(2,Z) evaluation, Nielsen-Thurston type, the fractional Dehn twist
coefficient (translation number of the lifted action on rays), right-veering
and the tightness verdict, plus the conjugation normal forms used by the
Heegaard-diagram certificates.

Lift convention: angles are measured clockwise in units of full turns.  Every
positive twist moves each ray clockwise by less than half a turn, so positive
twists have nonnegative displacement and the boundary twist ``d`` is exactly
one full turn.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .farey import QuadraticSlope, eigen_slopes, separating_farey_edges
from .words import MapClassWord, word

DEFAULT_ORBIT_DEPTH = 64


class PreconditionError(ValueError):
    pass


class FdtcUndetermined(ArithmeticError):
    pass


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class MatrixSL2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries()} is not 1")

    @classmethod
    def identity(cls) -> "MatrixSL2":
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "MatrixSL2") -> "MatrixSL2":
        return MatrixSL2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MatrixSL2":
        return MatrixSL2(self.d, -self.b, -self.c, self.a)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_pm_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __pow__(self, n: int) -> "MatrixSL2":
        base = self if n >= 0 else self.inverse()
        out = MatrixSL2.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out


GENERATOR_MATRIX = {
    "a": MatrixSL2(1, 1, 0, 1),
    "A": MatrixSL2(1, -1, 0, 1),
    "b": MatrixSL2(1, 0, -1, 1),
    "B": MatrixSL2(1, 0, 1, 1),
    "d": MatrixSL2.identity(),
    "D": MatrixSL2.identity(),
}


def evaluate(w: MapClassWord | str) -> MatrixSL2:
    """Product of the generator matrices in word order."""
    out = MatrixSL2.identity()
    for ch in word(w).letters:
        out = out @ GENERATOR_MATRIX[ch]
    return out


def matrix_to_word(M: MatrixSL2) -> MapClassWord:
    """Some word in a, A, b, B evaluating to M (Euclid on the first column)."""
    A1, A2 = GENERATOR_MATRIX["a"], GENERATOR_MATRIX["b"]
    letters: list[str] = []
    cur = M

    def push(letter: str, k: int, gen: MatrixSL2):
        nonlocal cur
        # M = (letters) . gen^k . cur'
        cur = (gen ** (-k)) @ cur
        letters.extend([letter] * k if k > 0 else [letter.upper()] * (-k))

    while cur.c != 0:
        if cur.a == 0:
            push("a", -1, A1)
        elif abs(cur.a) > abs(cur.c):
            push("a", cur.a // cur.c, A1)
        else:
            push("b", -(cur.c // cur.a), A2)
    # cur = +-[[1, k], [0, 1]]
    push("a", cur.b * cur.a, A1)
    if cur.a == -1:
        letters.extend("abaaba")
    out = MapClassWord(tuple(letters))
    if evaluate(out) != M:
        raise RuntimeError("matrix factorisation produced the wrong matrix")
    return out


# ---------------------------------------------------------------- lifted rays

# clockwise sectors starting at +x: +x, Q4, -y, Q3, -x, Q2, +y, Q1
def _sector(v: tuple[int, int]) -> int:
    x, y = v
    if y == 0:
        return 0 if x > 0 else 4
    if x == 0:
        return 2 if y < 0 else 6
    if x > 0:
        return 1 if y < 0 else 7
    return 3 if y < 0 else 5


def cw_compare(u: tuple[int, int], v: tuple[int, int]) -> int:
    """Compare clockwise angles of rays u and v in [0, 1): -1, 0 or 1."""
    su, sv = _sector(u), _sector(v)
    if su != sv:
        return -1 if su < sv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross == 0:
        return 0
    # v clockwise from u  <=>  cross(u, v) < 0
    return -1 if cross < 0 else 1


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    from math import gcd

    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True, order=False)
class LiftedRay:
    """A ray direction ``v`` together with a count ``w`` of full turns."""

    v: tuple[int, int]
    w: int = 0

    def __post_init__(self):
        from math import gcd

        if gcd(*self.v) != 1:
            raise ValueError("ray vector must be primitive")

    def compare(self, other: "LiftedRay") -> int:
        if self.w != other.w:
            return -1 if self.w < other.w else 1
        return cw_compare(self.v, other.v)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def shift_half_turns(self, k: int) -> "LiftedRay":
        v, w = self.v, self.w
        for _ in range(abs(k)):
            neg = (-v[0], -v[1])
            if k > 0:
                # moving clockwise by a half turn crosses 0 iff angle >= 1/2
                w += 1 if cw_compare(v, (-1, 0)) >= 0 else 0
            else:
                w -= 1 if cw_compare(v, (-1, 0)) < 0 else 0
            v = neg
        return LiftedRay(v, w)

    def displacement_to(self, other: "LiftedRay") -> Fraction:
        """Exact ``other - self`` in turns when other.v = +-self.v."""
        if other.v == self.v:
            return Fraction(other.w - self.w)
        if other.v == (-self.v[0], -self.v[1]):
            for k in (-1, 1):
                shifted = self.shift_half_turns(k)
                delta = other.w - shifted.w
                if shifted.v == other.v:
                    return Fraction(k, 2) + delta
        raise ValueError("displacement is only exact between parallel rays")


def lifted_step(letter: str, ray: LiftedRay) -> LiftedRay:
    """Calibrated lift of one generator acting on a ray."""
    if letter == "d":
        return LiftedRay(ray.v, ray.w + 1)
    if letter == "D":
        return LiftedRay(ray.v, ray.w - 1)
    v2 = _primitive(GENERATOR_MATRIX[letter].apply(ray.v))
    c = cw_compare(v2, ray.v)
    if letter in "ab":
        # displacement in [0, 1/2): wrap forward when the new angle is smaller
        w2 = ray.w + (1 if c < 0 else 0)
    else:
        w2 = ray.w - (1 if c > 0 else 0)
    return LiftedRay(v2, w2)


def lifted_action(w: MapClassWord | str, ray: LiftedRay) -> LiftedRay:
    for ch in reversed(word(w).letters):
        ray = lifted_step(ch, ray)
    return ray


# ---------------------------------------------------------------- classification


class NTType(str, enum.Enum):
    PERIODIC = "Periodic"
    REDUCIBLE = "Reducible"
    PSEUDO_ANOSOV = "PseudoAnosov"


@dataclass(frozen=True)
class NTClass:
    kind: NTType
    invariant_slope: tuple[int, int] | None = None
    eigen_slopes: tuple[QuadraticSlope, QuadraticSlope] | None = None


def _invariant_vector(M: MatrixSL2) -> tuple[int, int]:
    """Primitive eigenvector of a parabolic (|trace| = 2, not +-I) matrix."""
    s = 1 if M.trace > 0 else -1
    # (M - s I) v = 0
    r1 = (M.a - s, M.b)
    r2 = (M.c, M.d - s)
    row = r1 if r1 != (0, 0) else r2
    v = _primitive((row[1], -row[0]))
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    return v


def classify(w: MapClassWord | str) -> NTClass:
    M = evaluate(w)
    t = abs(M.trace)
    if t > 2:
        return NTClass(NTType.PSEUDO_ANOSOV, eigen_slopes=eigen_slopes(M.entries()))
    if t == 2 and not M.is_pm_identity():
        return NTClass(NTType.REDUCIBLE, invariant_slope=_invariant_vector(M))
    return NTClass(NTType.PERIODIC)


def is_identity_class(w: MapClassWord | str) -> bool:
    """Trivial mapping class: identity matrix and zero exponent sum."""
    w = word(w)
    return evaluate(w) == MatrixSL2.identity() and w.exponent_sum() == 0


# ---------------------------------------------------------------- FDTC


def _pa_bracket(w: MapClassWord, M: MatrixSL2, depth: int) -> Fraction:
    unstable, _ = eigen_slopes(M.entries())
    # eigen-ray with positive x-coordinate; rational rays from convergents
    lows: list[Fraction] = []
    highs: list[Fraction] = []
    for r in unstable.convergents(depth):
        (lows if unstable.cmp_rational(r) > 0 else highs).append(r)
        if not lows or not highs:
            continue
        lo, hi = lows[-1], highs[-1]
        if (lo > 0) != (hi > 0) or lo == 0 or hi == 0:
            continue
        # x > 0: larger slope has smaller clockwise angle
        x_minus = LiftedRay(_primitive((hi.denominator, hi.numerator)), 0)
        x_plus = LiftedRay(_primitive((lo.denominator, lo.numerator)), 0)
        hm = lifted_action(w, x_minus)
        hp = lifted_action(w, x_plus)
        candidates = []
        # displacement at the eigen-ray is a half-integer j/2 with
        # h(x-) < x+ + j/2 and x- + j/2 < h(x+)
        lo_j = hm.w - x_plus.w - 2
        hi_j = hp.w - x_minus.w + 2
        for j in range(2 * lo_j, 2 * hi_j + 1):
            if hm < x_plus.shift_half_turns(j) and x_minus.shift_half_turns(j) < hp:
                candidates.append(j)
        if len(candidates) == 1:
            return Fraction(candidates[0], 2)
    raise FdtcUndetermined(f"sign bracketing failed for {w} after depth {depth}")


def fdtc(w: MapClassWord | str, orbit_depth: int = DEFAULT_ORBIT_DEPTH) -> Fraction:
    """Fractional Dehn twist coefficient, exact."""
    w = word(w)
    M = evaluate(w)
    nt = classify(w)
    if nt.kind is NTType.PERIODIC:
        n = 1
        P = M
        while P != MatrixSL2.identity():
            P = P @ M
            n += 1
            if n > 12:
                raise RuntimeError("periodic matrix of unexpected order")
        start = LiftedRay((1, 0), 0)
        ray = start
        for _ in range(n):
            ray = lifted_action(w, ray)
        return Fraction(start.displacement_to(ray)) / n
    if nt.kind is NTType.REDUCIBLE:
        start = LiftedRay(nt.invariant_slope, 0)
        return start.displacement_to(lifted_action(w, start))
    return _pa_bracket(w, M, orbit_depth)


def rotation_number_float(w: MapClassWord | str, iterations: int = 4000) -> float:
    """Floating-point translation-number estimate (independent oracle).

    Iterates the matrix on a unit vector and accumulates the clockwise angle
    swept by each letter, using the same calibration only through its sign
    conventions: each positive twist moves clockwise, each negative one
    counterclockwise, and ``d`` adds a full turn.
    """
    import math

    w = word(w)
    mats = {k: (m.a, m.b, m.c, m.d) for k, m in GENERATOR_MATRIX.items()}
    x, y = 1.0, 0.3
    total = 0.0
    for _ in range(iterations):
        for ch in reversed(w.letters):
            if ch == "d":
                total += 1.0
                continue
            if ch == "D":
                total -= 1.0
                continue
            a, b, c, d = mats[ch]
            nx, ny = a * x + b * y, c * x + d * y
            ang = math.atan2(x * ny - y * nx, x * nx + y * ny)  # ccw angle
            cw = -ang / (2 * math.pi)
            if ch in "ab" and cw < 0:
                cw += 1.0
            if ch in "AB" and cw > 0:
                cw -= 1.0
            total += cw
            norm = math.hypot(nx, ny)
            x, y = nx / norm, ny / norm
    return total / iterations


# ---------------------------------------------------------------- normal forms


@dataclass(frozen=True)
class ReducibleForm:
    n: int
    m: int
    basis_change: MatrixSL2


def reducible_normal_form(w: MapClassWord | str) -> ReducibleForm:
    """Write a reducible class as g^n phi^m after conjugating by basis_change.

    g = (aba)^2 and phi = b (the twist along the (0,1)-curve).  basis_change
    P sends the invariant slope to (0, 1), and P M P^-1 = (-1)^n B2^m.
    """
    w = word(w)
    nt = classify(w)
    if nt.kind is not NTType.REDUCIBLE:
        raise PreconditionError("word is not reducible")
    M = evaluate(w)
    v = nt.invariant_slope
    # P with P v = (0, 1): rows (p, q) with p v0 + q v1 = 0 etc.
    from .intlinalg import ext_gcd

    g, s, t = ext_gcd(v[0], v[1])
    # second row (s, t) gives s v0 + t v1 = 1; first row (v1, -v0) kills v
    P = MatrixSL2(v[1], -v[0], s, t)
    if P.apply(v) != (0, 1):
        raise RuntimeError("basis change construction failed")
    C = P @ M @ P.inverse()
    sgn = C.a
    m = -C.c * sgn
    e = w.exponent_sum()
    if (e - m) % 6:
        raise RuntimeError("exponent sum inconsistent with normal form")
    n = (e - m) // 6
    if (-1) ** n != sgn:
        raise RuntimeError("normal form parity mismatch")
    return ReducibleForm(n, m, P)


def normal_form_word(n: int, m: int) -> MapClassWord:
    return word("(aba)^2") ** n * word("b") ** m


def third_quadrant_conjugate(M: MatrixSL2) -> tuple[MatrixSL2, MatrixSL2]:
    """P, B with B = P M P^-1 and every entry of B strictly negative."""
    if M.trace >= -2:
        raise PreconditionError("trace must be < -2")
    if all(x < 0 for x in M.entries()):
        return MatrixSL2.identity(), M
    s_u, s_s = eigen_slopes(M.entries())
    for u, v in separating_farey_edges(s_u, s_s, limit=400):
        for c1, c2 in ((u, v), (v, u)):
            for sgn1, sgn2 in product((1, -1), repeat=2):
                x = (sgn1 * c1[0], sgn1 * c1[1])
                y = (sgn2 * c2[0], sgn2 * c2[1])
                if x[0] * y[1] - x[1] * y[0] != 1:
                    continue
                Pinv = MatrixSL2(x[0], y[0], x[1], y[1])
                P = Pinv.inverse()
                B = P @ M @ Pinv
                if all(e < 0 for e in B.entries()):
                    return P, B
    raise RuntimeError("no third-quadrant conjugate found")


# ---------------------------------------------------------------- verdicts


def right_veering(w: MapClassWord | str, orbit_depth: int = DEFAULT_ORBIT_DEPTH) -> bool:
    w = word(w)
    if is_identity_class(w):
        return True
    c = fdtc(w, orbit_depth)
    if classify(w).kind is NTType.REDUCIBLE and c == 0:
        return reducible_normal_form(w).m >= 0
    return c > 0


class Verdict(str, enum.Enum):
    TIGHT = "Tight"
    OVERTWISTED = "Overtwisted"


class Reason(str, enum.Enum):
    PA_C_POSITIVE = "PA_c_positive"
    PA_C_NONPOSITIVE = "PA_c_nonpositive"
    PERIODIC_POSITIVE = "Periodic_positive"
    PERIODIC_NONPOSITIVE = "Periodic_nonpositive"
    REDUCIBLE_RV = "Reducible_rv"
    REDUCIBLE_NOT_RV = "Reducible_not_rv"
    IDENTITY = "Identity"


@dataclass(frozen=True)
class TightnessVerdict:
    verdict: Verdict
    reason: Reason
    fdtc: Fraction
    nt: NTType = field(default=NTType.PERIODIC)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason.value,
            "fdtc": [self.fdtc.numerator, self.fdtc.denominator],
            "type": self.nt.value,
        }


def tight(w: MapClassWord | str, orbit_depth: int = DEFAULT_ORBIT_DEPTH) -> TightnessVerdict:
    w = word(w)
    kind = classify(w).kind
    c = fdtc(w, orbit_depth)
    rv = right_veering(w, orbit_depth)
    if is_identity_class(w):
        reason = Reason.IDENTITY
    elif kind is NTType.PSEUDO_ANOSOV:
        reason = Reason.PA_C_POSITIVE if rv else Reason.PA_C_NONPOSITIVE
    elif kind is NTType.PERIODIC:
        reason = Reason.PERIODIC_POSITIVE if rv else Reason.PERIODIC_NONPOSITIVE
    else:
        reason = Reason.REDUCIBLE_RV if rv else Reason.REDUCIBLE_NOT_RV
    return TightnessVerdict(Verdict.TIGHT if rv else Verdict.OVERTWISTED, reason, c, kind)
