"""Bordered surfaces cut into a polygon, arc bases, pushoffs and arc slides.

A surface with a basis of r arcs is stored as the polygon P left after cutting
along the arcs.  P has 4r sides alternating between arc sides and boundary
sides: ``sides[k]`` is the signed label (+i for a_i, -i for a_i^-1) of the
k-th arc side in counterclockwise order, and boundary side k (called tau_k)
sits between arc sides k and k+1.

Arcs rel endpoints are reduced free words in the dual generators g_i plus a
start and end boundary side.  On the once-punctured torus bases are also
described by slope pairs, which is what the slide algorithms use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from . import freegroup as fg
from .mcg import MatrixSL2, PreconditionError, matrix_to_word
from .words import MapClassWord, word


@dataclass(frozen=True)
class SurfacePresentation:
    sides: tuple[int, ...]
    name: str = "surface"

    def __post_init__(self):
        for x in set(abs(s) for s in self.sides):
            if self.sides.count(x) != 1 or self.sides.count(-x) != 1:
                raise ValueError(f"arc label {x} must occur once with each sign")

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def rank(self) -> int:
        return self.n // 2

    @property
    def arc_labels(self) -> list[int]:
        return sorted(x for x in self.sides if x > 0)

    def position(self, label: int) -> int:
        return self.sides.index(label)

    def pair(self, k: int) -> int:
        return self.position(-self.sides[k])

    def tau_after(self, k: int) -> int:
        return k % self.n

    def tau_before(self, k: int) -> int:
        return (k - 1) % self.n

    def letter(self, k: int) -> int:
        return self.sides[k]

    def boundary_step(self, t: int) -> tuple[int, int]:
        """Next boundary side along the boundary orientation and the letter crossed."""
        x = (t + 1) % self.n
        return self.tau_after(self.pair(x)), self.letter(x)

    def boundary_components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for t in range(self.n):
            if t in seen:
                continue
            comp = []
            while t not in seen:
                seen.add(t)
                comp.append(t)
                t, _ = self.boundary_step(t)
            comps.append(comp)
        return comps

    @property
    def boundary_count(self) -> int:
        return len(self.boundary_components())

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.rank

    @property
    def genus(self) -> int:
        # chi = 2 - 2g - b
        return (2 - self.euler_characteristic - self.boundary_count) // 2

    def boundary_paths(self, base: int | None = None) -> dict[int, fg.FreeWord]:
        """Words of the boundary paths from the start of ``base`` to each side
        of its boundary component."""
        if base is None:
            base = self.n - 1
        out = {base: ()}
        t, acc = base, ()
        while True:
            t, x = self.boundary_step(t)
            if t == base:
                return out
            acc = acc + (x,)
            out[t] = acc

    def to_json(self) -> dict:
        return {"name": self.name, "sides": list(self.sides)}


def make_punctured_torus() -> SurfacePresentation:
    return SurfacePresentation((1, 2, -1, -2), "punctured-torus")


def make_annulus() -> SurfacePresentation:
    return SurfacePresentation((1, -1), "annulus")


@dataclass(frozen=True)
class FreeArc:
    """A properly embedded arc: a reduced word plus its boundary sides."""

    word: fg.FreeWord
    start: int
    end: int

    def chords(self, S: SurfacePresentation) -> list[tuple[int, int]]:
        """Chords of P as (from, to) pairs of polygon side positions.

        Boundary side tau_k is position 2k+1 and arc side k is 2k, so chord
        endpoints on both kinds of side share one cyclic numbering.
        """
        out = []
        cur = 2 * self.start + 1
        for x in self.word:
            k = S.position(x)
            out.append((cur, 2 * k))
            cur = 2 * S.pair(k)
        out.append((cur, 2 * self.end + 1))
        return out


def pushoffs(S: SurfacePresentation) -> list[FreeArc]:
    """The pushoffs b_i, one per arc label in increasing order.

    b_i runs from the boundary side after a_i^-1 across a_i once and ends on
    the boundary side after a_i, so every boundary side carries one endpoint.
    """
    out = []
    for i in S.arc_labels:
        out.append(FreeArc((-i,), S.tau_after(S.position(-i)), S.tau_after(S.position(i))))
    return out


def pushoff_intersection_sign(S: SurfacePresentation, i: int) -> int:
    """Sign of a_i . b_i with a_i oriented along its + side in P.

    Inside P the pushoff leaves through a_i^-1 and re-enters through a_i; it
    meets the arc once.  With P to the left of its counterclockwise sides the
    crossing goes from the a_i^-1 copy to the a_i copy, which is positive.
    """
    b = pushoffs(S)[S.arc_labels.index(i)]
    if b.word == (-i,):
        return 1
    if b.word == (i,):
        return -1
    raise ValueError("not a pushoff")


# ---------------------------------------------------------------- monodromy


@dataclass(frozen=True)
class TorusWord:
    word: MapClassWord


@dataclass(frozen=True)
class ExplicitImages:
    """Free words of h(b_i), in pushoff order."""

    words: tuple[fg.FreeWord, ...]


MonodromySpec = TorusWord | ExplicitImages


def torus_images(h: MapClassWord | str, S: SurfacePresentation | None = None) -> tuple[fg.FreeWord, ...]:
    """Free words of h(b_i) for a torus mapping class in the standard basis."""
    S = S or make_punctured_torus()
    act = fg.torus_action(word(h).letters)
    sigma = S.boundary_paths()
    out = []
    for b in pushoffs(S):
        s, e = sigma[b.start], sigma[b.end]
        loop = fg.mul(s, b.word, fg.inverse(e))
        out.append(fg.mul(fg.inverse(s), act(loop), e))
    return tuple(out)


def annulus_twist_images(m: int) -> tuple[fg.FreeWord, ...]:
    """Image of the pushoff under the m-th power of the core twist."""
    return (fg.power((1,), m - 1),)


def image_words(S: SurfacePresentation, h: MonodromySpec) -> tuple[fg.FreeWord, ...]:
    if isinstance(h, TorusWord):
        if S.sides != make_punctured_torus().sides:
            raise PreconditionError("torus words need the torus presentation")
        return torus_images(h.word, S)
    if len(h.words) != S.rank:
        raise ValueError("need one image word per basis arc")
    return tuple(fg.reduce_word(w) for w in h.words)


def attach_handle(S: SurfacePresentation, images: Sequence[fg.FreeWord]):
    """Join two boundary components by a 1-handle with cocore a_0.

    Returns the new presentation, the extended images (h is the identity on
    the handle) and the label of a_0.  The new arc side pair is inserted into
    the first boundary side of the first two components.
    """
    comps = S.boundary_components()
    if len(comps) < 2:
        raise PreconditionError("boundary is already connected")
    t1, t2 = min(comps[0]), min(comps[1])
    new = max(abs(x) for x in S.sides) + 1
    sides = list(S.sides)
    # insert after the arc side that precedes each chosen boundary side
    inserts = sorted([(t1, new), (t2, -new)], reverse=True)
    for t, lab in inserts:
        sides.insert(t + 1, lab)
    S2 = SurfacePresentation(tuple(sides), S.name + "+handle")
    labels = S2.arc_labels
    old = dict(zip(S.arc_labels, images))
    ext = tuple(old.get(i, (-i,)) for i in labels)
    return S2, ext, new


# ---------------------------------------------------------------- torus slopes


def _primitive(v: Sequence[int]) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector is not a slope")
    return (v[0] // g, v[1] // g)


def det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class SlopeArc:
    """An arc on the once-punctured torus up to isotopy, as a slope (p, q)."""

    slope: tuple[int, int]

    def __post_init__(self):
        p = _primitive(self.slope)
        # unoriented: normalize sign
        if p[0] < 0 or (p[0] == 0 and p[1] < 0):
            p = (-p[0], -p[1])
        object.__setattr__(self, "slope", p)


@dataclass(frozen=True)
class TorusBasis:
    arcs: tuple[SlopeArc, SlopeArc] = field(
        default_factory=lambda: (SlopeArc((1, 0)), SlopeArc((0, 1))))

    @classmethod
    def of(cls, u, v) -> "TorusBasis":
        return cls((SlopeArc(tuple(u)), SlopeArc(tuple(v))))

    def matrix(self) -> MatrixSL2:
        """F in SL(2,Z) sending the standard slopes to this basis."""
        u, v = self.arcs[0].slope, self.arcs[1].slope
        if det(u, v) == -1:
            v = (-v[0], -v[1])
        return MatrixSL2(u[0], v[0], u[1], v[1])

    def change_word(self) -> MapClassWord:
        return matrix_to_word(self.matrix())

    def __str__(self):
        return "{" + ", ".join(f"({a.slope[0]},{a.slope[1]})" for a in self.arcs) + "}"


def is_basis(B: TorusBasis) -> bool:
    """Two disjoint arcs cut the punctured torus into a disk iff |det| = 1."""
    return abs(det(B.arcs[0].slope, B.arcs[1].slope)) == 1


def geometric_intersection(x: SlopeArc | Sequence[int], y: SlopeArc | Sequence[int]) -> int:
    """Minimal intersection of the closed curves with these slopes."""
    sx = x.slope if isinstance(x, SlopeArc) else x
    sy = y.slope if isinstance(y, SlopeArc) else y
    return abs(det(sx, sy))


def arc_intersection(x: SlopeArc, y: SlopeArc) -> int:
    """Interior intersections of the two arcs in minimal position."""
    return max(geometric_intersection(x, y) - 1, 0)


def basis_intersection(B1: TorusBasis, B2: TorusBasis) -> int:
    return sum(arc_intersection(x, y) for x in B1.arcs for y in B2.arcs)


def conjugated_word(h: MapClassWord | str, B: TorusBasis) -> MapClassWord:
    """The monodromy rewritten so that B plays the role of the standard basis."""
    f = B.change_word()
    return f.inverse() * word(h) * f


@dataclass(frozen=True)
class Slide:
    i: int  # arc being slid (0 or 1)
    sign: int  # +1: a_i + a_j, -1: a_i - a_j

    def to_json(self):
        return {"arc": self.i, "sign": self.sign}


def arc_slide(B: TorusBasis | SurfacePresentation, i: int, j: int | None = None, sign: int = 1) -> TorusBasis:
    """Slide arc i over arc j, replacing a_i by a_i + sign * a_j.

    On the punctured torus the two basis arcs are adjacent along both
    boundary sides between them, so both signs are realized.
    """
    if isinstance(B, SurfacePresentation) or len(getattr(B, "arcs", ())) < 2:
        raise PreconditionError("arc slides need at least two basis arcs")
    j = 1 - i if j is None else j
    if i == j or {i, j} != {0, 1}:
        raise PreconditionError("arcs are not adjacent")
    u, v = B.arcs[i].slope, B.arcs[j].slope
    new = SlopeArc((u[0] + sign * v[0], u[1] + sign * v[1]))
    arcs = list(B.arcs)
    arcs[i] = new
    out = TorusBasis(tuple(arcs))
    assert is_basis(out)
    return out


def _coords(B: TorusBasis, target: TorusBasis) -> list[list[int]]:
    A = B.matrix()
    Ai = A.inverse()
    cols = [Ai.apply(t.slope) for t in target.arcs]
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


def _same_arcs(B1: TorusBasis, B2: TorusBasis) -> bool:
    return set(B1.arcs) == set(B2.arcs)


def slide_sequence(start: TorusBasis, target: TorusBasis, cap: int = 10_000) -> list[Slide]:
    """Arc slides carrying ``start`` to ``target`` (as unordered arc sets).

    Each step picks the slide that most reduces the total arc intersection
    with the target; once the bases are disjoint the coordinates form a signed
    permutation matrix and the arcs already agree.
    """
    if not (is_basis(start) and is_basis(target)):
        raise PreconditionError("both inputs must be bases")
    cur = start
    out: list[Slide] = []
    for _ in range(cap):
        if _same_arcs(cur, target):
            return out
        best = None
        for i in (0, 1):
            for s in (1, -1):
                nxt = arc_slide(cur, i, sign=s)
                C = _coords(nxt, target)
                key = (basis_intersection(nxt, target), sum(abs(c) for row in C for c in row))
                if best is None or key < best[0]:
                    best = (key, Slide(i, s), nxt)
        out.append(best[1])
        cur = best[2]
    raise RuntimeError("slide search did not terminate")


def apply_slides(B: TorusBasis, slides: Sequence[Slide]) -> list[TorusBasis]:
    seq = [B]
    for s in slides:
        seq.append(arc_slide(seq[-1], s.i, sign=s.sign))
    return seq
