"""Pointed Heegaard diagrams of open books, built combinatorially.

Sigma is two copies of the cut polygon P: page 1 (S_{1/2}) carries the
pushoffs b_i as chords, page 0 (-S_0) carries the images h(b_i), and both
carry the arc sides as the alpha arcs.  The pages are glued along the
boundary sides.  Chords on a page are pairwise non-crossing, so their
arrangement is determined by how many chords join each pair of sides; the
faces of each page come from walking the marks around the polygon.

Intersection points sit on arc sides.  A point on alpha_i has four corner
quadrants: on the + copy of a_i the faces before and after its mark, and on
the - copy the same.  With t the position along a_i (counterclockwise on the
+ copy) these are (fwd, t<), (fwd, t>), (rev, t>), (rev, t<).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import freegroup as fg
from .intlinalg import IntegerSystem
from .surface import (
    ExplicitImages,
    FreeArc,
    SurfacePresentation,
    TorusBasis,
    TorusWord,
    annulus_twist_images,
    conjugated_word,
    image_words,
    make_annulus,
    make_punctured_torus,
    pushoffs,
)
from .words import MapClassWord, word

# Sign relating corner balance to "domain from y to x" (calibrated on the
# annulus with trivial monodromy, whose two strips must come out positive).
BALANCE_SIGN = -1


class DiagramError(RuntimeError):
    pass


class UnsupportedConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class IntersectionPoint:
    index: int
    alpha: int  # arc label i of alpha_i
    beta: int  # arc label j of beta_j
    page: int  # 1 for S_{1/2}, 0 for -S_0
    t: int  # position along a_i on this page
    name: str
    in_F: bool = False


@dataclass(frozen=True)
class Generator:
    points: tuple[int, ...]  # point indices ordered by alpha label

    def __str__(self):
        return "(" + ",".join(map(str, self.points)) + ")"


@dataclass
class Page:
    index: int
    curves: list[FreeArc]
    counts: dict = field(default_factory=dict)  # position -> number of marks
    marks: list = field(default_factory=list)  # global cyclic order of (pos, k)
    partner: dict = field(default_factory=dict)  # mark -> mark along a chord
    mark_curve: dict = field(default_factory=dict)  # mark -> beta label
    face_of_segment: list = field(default_factory=list)
    faces: list = field(default_factory=list)  # lists of segment indices


@dataclass
class Region:
    index: int
    faces: list  # (page, face)
    euler: int
    corners: int
    contains_z: bool = False
    tau_pieces: list = field(default_factory=list)

    @property
    def euler_measure(self) -> Fraction:
        return Fraction(self.euler) - Fraction(self.corners, 4)


@dataclass(frozen=True)
class Domain:
    coeffs: tuple[int, ...]

    def __add__(self, other):
        return Domain(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Domain(tuple(-a for a in self.coeffs))

    def scaled(self, c: int) -> "Domain":
        return Domain(tuple(c * a for a in self.coeffs))

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _interleave(c1, c2, n) -> bool:
    a, b = sorted(c1)
    x, y = c2
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def _build_page(S: SurfacePresentation, index: int, curves: list[FreeArc]) -> Page:
    n2 = 2 * S.n
    page = Page(index, curves)
    chords = []
    for arc in curves:
        chords.extend(arc.chords(S))
    for c1, c2 in itertools.combinations(chords, 2):
        if _interleave(c1, c2, n2):
            raise DiagramError(f"chords {c1} and {c2} cross on page {index}")
    # ends[X] = list of partner sides Y, one per chord end on side X
    ends: dict[int, list[int]] = {p: [] for p in range(n2)}
    for x, y in chords:
        ends[x].append(y)
        ends[y].append(x)
    for t in range(S.n):
        if len(ends[2 * t + 1]) != 1:
            raise DiagramError(f"boundary side {t} must carry one endpoint on page {index}")
    # order along each side: farther partners (counterclockwise) come first
    order: dict[int, list[int]] = {}
    for x in range(n2):
        order[x] = sorted(ends[x], key=lambda y: -((y - x) % n2))
        page.counts[x] = len(order[x])
    for x in range(n2):
        for k, y in enumerate(order[x]):
            group_x = [j for j, yy in enumerate(order[x]) if yy == y]
            group_y = [j for j, xx in enumerate(order[y]) if xx == x]
            j = group_x.index(k)
            page.partner[(x, k)] = (y, group_y[len(group_y) - 1 - j])
    page.marks = [(x, k) for x in range(n2) for k in range(page.counts[x])]
    return page


def _faces(page: Page) -> None:
    pos = {m: i for i, m in enumerate(page.marks)}
    M = len(page.marks)
    seg_face = [-1] * M
    faces = []
    for s0 in range(M):
        if seg_face[s0] >= 0:
            continue
        fid = len(faces)
        cyc = []
        s = s0
        while seg_face[s] < 0:
            seg_face[s] = fid
            cyc.append(s)
            end = page.marks[(s + 1) % M]
            s = pos[page.partner[end]]
        if s != s0:
            raise DiagramError("face walk did not close")
        faces.append(cyc)
    page.face_of_segment = seg_face
    page.faces = faces


def _uf_find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


class HeegaardDiagram:
    """The diagram (Sigma, beta, alpha, z) of an open book with a given basis."""

    def __init__(self, S: SurfacePresentation, images: Sequence[fg.FreeWord], label: str = ""):
        self.S = S
        self.label = label
        self.r = S.rank
        self.b_arcs = pushoffs(S)
        self.images = tuple(fg.reduce_word(w) for w in images)
        self.h_arcs = [FreeArc(w, b.start, b.end) for w, b in zip(self.images, self.b_arcs)]
        self.beta_labels = S.arc_labels
        self.pages = {
            1: _build_page(S, 1, self.b_arcs),
            0: _build_page(S, 0, self.h_arcs),
        }
        self.points: list[IntersectionPoint] = []
        self._point_marks: list[dict] = []  # per point: {+1: mark, -1: mark}
        for p in (1, 0):
            self._trace(self.pages[p])
            _faces(self.pages[p])
        self._regions()
        self._balance()
        self.F_zone: set[int] | None = None

    # ---------------------------------------------------------- construction

    def _trace(self, page: Page) -> None:
        S = self.S
        seen: dict[tuple[int, int], int] = {}
        curves = page.curves
        for bl, arc in zip(self.beta_labels, curves):
            mark = (2 * arc.start + 1, 0)
            letters = []
            while True:
                page.mark_curve[mark] = bl
                y, k = page.partner[mark]
                page.mark_curve[(y, k)] = bl
                if y % 2 == 1:
                    if y != 2 * arc.end + 1:
                        raise DiagramError("traced curve ends on the wrong boundary side")
                    break
                side = y // 2
                lab = S.sides[side]
                other = 2 * S.pair(side)
                k2 = page.counts[y] - 1 - k
                letters.append(lab)
                plus_mark, minus_mark = ((y, k), (other, k2)) if lab > 0 else ((other, k2), (y, k))
                t = plus_mark[1]
                key = (abs(lab), t)
                if key in seen:
                    raise DiagramError("curve revisits a crossing")
                seen[key] = len(self.points)
                idx = len(self.points)
                name = f"x{bl}" if page.index == 1 else f"p{abs(lab)}{bl}_{t}"
                self.points.append(IntersectionPoint(idx, abs(lab), bl, page.index, t, name))
                self._point_marks.append({"page": page.index, 1: plus_mark, -1: minus_mark})
                mark = (other, k2)
            if tuple(letters) != arc.word:
                raise DiagramError(
                    f"traced word {fg.fmt(letters)} differs from {fg.fmt(arc.word)} on page {page.index}")
        total = sum(page.counts[2 * s] for s in range(S.n)) // 2
        if total != len(seen):
            raise DiagramError("some chords were not visited by any curve")

    def _regions(self) -> None:
        keys = [(p, f) for p in (1, 0) for f in range(len(self.pages[p].faces))]
        idx = {k: i for i, k in enumerate(keys)}
        parent = list(range(len(keys)))
        pieces = {}  # (tau, half) -> {page: face}
        for p in (1, 0):
            page = self.pages[p]
            M = len(page.marks)
            for i, (x, k) in enumerate(page.marks):
                if x % 2 == 1:
                    before = page.face_of_segment[(i - 1) % M]
                    after = page.face_of_segment[i]
                    pieces.setdefault((x // 2, 0), {})[p] = before
                    pieces.setdefault((x // 2, 1), {})[p] = after
        glue_count = {}
        for key, d in pieces.items():
            a, b = idx[(1, d[1])], idx[(0, d[0])]
            ra, rb = _uf_find(parent, a), _uf_find(parent, b)
            if ra != rb:
                parent[ra] = rb
        roots = sorted({_uf_find(parent, i) for i in range(len(keys))})
        rid = {r: j for j, r in enumerate(roots)}
        self.face_region = {k: rid[_uf_find(parent, idx[k])] for k in keys}
        regions = [Region(j, [], 0, 0) for j in range(len(roots))]
        for k in keys:
            regions[self.face_region[k]].faces.append(k)
        for key, d in pieces.items():
            regions[self.face_region[(1, d[1])]].tau_pieces.append(key)
        for reg in regions:
            reg.euler = len(reg.faces) - len(reg.tau_pieces)
        # corners: two per a-side mark, one on each neighbouring face
        for p in (1, 0):
            page = self.pages[p]
            M = len(page.marks)
            for i, (x, k) in enumerate(page.marks):
                if x % 2 == 0:
                    regions[self.face_region[(p, page.face_of_segment[(i - 1) % M])]].corners += 1
                    regions[self.face_region[(p, page.face_of_segment[i])]].corners += 1
        # basepoint: the page-1 face holding every second boundary piece
        zf = {pieces[(t, 1)][1] for t in range(self.S.n)}
        if len(zf) != 1:
            raise DiagramError("outer boundary pieces of page 1 are not in one face")
        self.z_face = (1, zf.pop())
        self.z = self.face_region[self.z_face]
        regions[self.z].contains_z = True
        self.regions = regions
        self.tau_pieces = pieces

    def quadrants(self, p: int) -> dict[str, int]:
        """Regions at the four corners of point p."""
        pm = self._point_marks[p]
        page = self.pages[pm["page"]]
        pos = {m: i for i, m in enumerate(page.marks)}
        M = len(page.marks)

        def around(mark):
            i = pos[mark]
            return (self.face_region[(page.index, page.face_of_segment[(i - 1) % M])],
                    self.face_region[(page.index, page.face_of_segment[i])])

        fb, fa = around(pm[1])
        rb, ra = around(pm[-1])
        return {"fwd<": fb, "fwd>": fa, "rev>": rb, "rev<": ra}

    def _balance(self) -> None:
        R = len(self.regions)
        rows = []
        self._quads = []
        for p in range(len(self.points)):
            q = self.quadrants(p)
            self._quads.append(q)
            row = [0] * R
            # page 0 enters Sigma with the opposite orientation
            sg = 1 if self.points[p].page == 1 else -1
            row[q["fwd<"]] += sg
            row[q["rev>"]] += sg
            row[q["fwd>"]] -= sg
            row[q["rev<"]] -= sg
            rows.append(row)
        self.balance_rows = rows
        zrow = [0] * R
        zrow[self.z] = 1
        self._system = IntegerSystem(rows + [zrow], R)
        self._system_noz = IntegerSystem(rows, R) if rows else None

    # ---------------------------------------------------------- basic queries

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    def euler_sum(self) -> Fraction:
        return sum((reg.euler_measure for reg in self.regions), Fraction(0))

    def chi_sigma(self) -> int:
        return 2 - 2 * self.r

    def eh_points(self) -> list[int]:
        return [p.index for p in self.points if p.page == 1]

    def eh_generator(self) -> Generator:
        pts = sorted(self.eh_points(), key=lambda i: self.points[i].alpha)
        if len(pts) != self.r or any(self.points[i].alpha != self.points[i].beta for i in pts):
            raise DiagramError("distinguished points are not a generator")
        return Generator(tuple(pts))

    def generators(self) -> list[Generator]:
        by_pair: dict[tuple[int, int], list[int]] = {}
        for pt in self.points:
            by_pair.setdefault((pt.alpha, pt.beta), []).append(pt.index)
        labels = self.beta_labels
        out = []
        for perm in itertools.permutations(labels):
            lists = [by_pair.get((a, b), []) for a, b in zip(labels, perm)]
            for combo in itertools.product(*lists):
                out.append(Generator(tuple(combo)))
        out.sort(key=lambda g: g.points)
        return out

    # ---------------------------------------------------------- domains

    def n_z(self, D: Domain) -> int:
        return D.coeffs[self.z]

    def boundary_defect(self, D: Domain) -> list[int]:
        return [sum(a * b for a, b in zip(row, D.coeffs)) for row in self.balance_rows]

    def periodic_domains(self, include_z: bool = True) -> list[Domain]:
        """Lattice basis of periodic domains (with n_z = 0 unless include_z is False)."""
        sys_ = self._system if include_z else self._system_noz
        if sys_ is None:
            return [Domain(tuple(1 if i == j else 0 for i in range(self.n_regions)))
                    for j in range(self.n_regions)]
        return [Domain(tuple(v)) for v in sys_.kernel()]

    def _defect_target(self, y: Generator, x: Generator) -> list[int]:
        target = [0] * len(self.points)
        for p in x.points:
            target[p] += BALANCE_SIGN
        for p in y.points:
            target[p] -= BALANCE_SIGN
        return target

    def connecting_domain(self, y: Generator, x: Generator) -> Domain | None:
        """Some domain from y to x with n_z = 0, or None if none exists."""
        sol = self._system.solve(self._defect_target(y, x) + [0])
        return None if sol is None else Domain(tuple(sol))

    def is_domain_from(self, D: Domain, y: Generator, x: Generator) -> bool:
        return self.boundary_defect(D) == self._defect_target(y, x)

    def euler_measure(self, D: Domain) -> Fraction:
        return sum((c * reg.euler_measure for c, reg in zip(D.coeffs, self.regions)), Fraction(0))

    def point_multiplicity(self, D: Domain, p: int) -> Fraction:
        q = self._quads[p]
        return Fraction(sum(D.coeffs[q[k]] for k in ("fwd<", "fwd>", "rev>", "rev<")), 4)

    def chern_pairing(self, g: Generator, P: Domain) -> Fraction:
        val = self.euler_measure(P) - 2 * self.n_z(P)
        for p in g.points:
            val += 2 * self.point_multiplicity(P, p)
        return val

    def maslov_index(self, D: Domain, y: Generator, x: Generator) -> Fraction:
        val = self.euler_measure(D)
        for p in y.points:
            val += self.point_multiplicity(D, p)
        for p in x.points:
            val += self.point_multiplicity(D, p)
        return val

    def check_weak_admissibility(self, include_z: bool = True) -> tuple[bool, Domain | None]:
        """(True, None) or (False, nonzero nonnegative periodic domain)."""
        from .admissibility import nonnegative_ray

        basis = self.periodic_domains(include_z)
        ray = nonnegative_ray([list(P.coeffs) for P in basis])
        if ray is None:
            return True, None
        D = Domain(tuple(0 for _ in range(self.n_regions)))
        for c, P in zip(ray, basis):
            D = D + P.scaled(c)
        return False, D

    def default_bound(self, D0: Domain) -> int:
        return max((abs(c) for c in D0.coeffs), default=0) + 1

    def positive_domains(self, y: Generator, x: Generator, bound: int | None = None,
                         first_only: bool = False) -> tuple[list[Domain], int]:
        """Nonnegative domains from y to x with n_z = 0 inside the search box.

        Domains are D0 + sum c_i P_i with |c_i| <= bound.  Returns the list
        (or its first element) and the bound actually used.
        """
        from ._accel import enumerate_nonnegative

        D0 = self.connecting_domain(y, x)
        if D0 is None:
            return [], 0
        basis = self.periodic_domains()
        B = self.default_bound(D0) if bound is None else bound
        sols = enumerate_nonnegative(list(D0.coeffs), [list(P.coeffs) for P in basis], B, first_only)
        out = []
        for c in sols:
            D = D0
            for ci, P in zip(c, basis):
                D = D + P.scaled(int(ci))
            out.append(D)
        return out, B

    def positive_domain_exists(self, y: Generator, x: Generator, bound: int | None = None):
        """(exists, witness or None, bound used)."""
        sols, B = self.positive_domains(y, x, bound, first_only=True)
        return (bool(sols), sols[0] if sols else None, B)

    def is_embedded_bigon(self, D: Domain, y: Generator, x: Generator) -> bool:
        if any(c not in (0, 1) for c in D.coeffs) or D.is_zero():
            return False
        if len(set(y.points) ^ set(x.points)) != 2:
            return False
        if self.euler_measure(D) != Fraction(1, 2):
            return False
        if self.maslov_index(D, y, x) != 1:
            return False
        return self._support_connected(D)

    def _support_connected(self, D: Domain) -> bool:
        supp = {i for i, c in enumerate(D.coeffs) if c}
        if not supp:
            return True
        # regions meet across curve segments: use shared corner quadrants
        adj = {i: set() for i in supp}
        for q in self._quads:
            ring = [q["fwd<"], q["fwd>"], q["rev>"], q["rev<"]]  # cyclic order
            for a in range(4):
                ra, rb = ring[a], ring[(a + 1) % 4]
                if ra in supp and rb in supp and ra != rb:
                    adj[ra].add(rb)
                    adj[rb].add(ra)
        start = next(iter(supp))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen == supp

    def corner_points(self, D: Domain) -> tuple[list[int], list[int]]:
        """Convex (n = 1/4) and reflex (n = 3/4) corners of a 0/1 domain."""
        convex, reflex = [], []
        for p in range(len(self.points)):
            n = self.point_multiplicity(D, p)
            if n == Fraction(1, 4):
                convex.append(p)
            elif n == Fraction(3, 4):
                reflex.append(p)
        return convex, reflex

    def is_rectangle(self, D: Domain) -> bool:
        if any(c not in (0, 1) for c in D.coeffs) or D.is_zero():
            return False
        convex, reflex = self.corner_points(D)
        return (self.euler_measure(D) == 0 and len(convex) == 4 and not reflex
                and self._support_connected(D))

    def rectangle_split(self, P: Domain) -> tuple[Domain, Domain] | None:
        """(R1, R2) with P = R1 - R2 and both rectangles, if that is the shape."""
        pos = Domain(tuple(max(c, 0) for c in P.coeffs))
        neg = Domain(tuple(max(-c, 0) for c in P.coeffs))
        if self.is_rectangle(pos) and self.is_rectangle(neg):
            return pos, neg
        return None

    # ---------------------------------------------------------- filtration zone

    def alpha_ends(self) -> list[tuple[int, str]]:
        """Arc endpoints met in boundary order, starting after the last side.

        ('A' is the end of a_i at small t, 'B' the end at large t.)
        """
        out = []
        t = self.S.n - 1
        for _ in range(self.S.n):
            t, x = self.S.boundary_step(t)
            out.append((abs(x), "A" if x > 0 else "B"))
        return out

    def set_boundary_twist_zone(self) -> None:
        """Mark the zone F for the boundary twist on the punctured torus.

        The dotted arc runs once around a collar of the boundary on page 0.
        Going along the boundary it climbs one spiral layer at each arc end,
        starting from depth 0 just after the side where b_1 begins; points
        of page 0 above it lie in F.
        """
        if self.S.n != 4 or self.S.boundary_count != 1:
            raise UnsupportedConfiguration("the boundary-twist zone is defined on the punctured torus")
        ends = self.alpha_ends()
        start_tau = self.b_arcs[0].start
        # the first arc end crossed after leaving start_tau
        t, j0 = self.S.n - 1, 0
        for j in range(self.S.n):
            if t == start_tau:
                j0 = j
            t, _ = self.S.boundary_step(t)
        depth = {}
        for j in range(self.S.n):
            depth[ends[(j0 + j) % self.S.n]] = j
        below: set[int] = set()
        for (i, e), k in depth.items():
            pts = sorted((p for p in self.points if p.page == 0 and p.alpha == i), key=lambda p: p.t)
            sel = pts[:k] if e == "A" else (pts[len(pts) - k:] if k else [])
            below |= {p.index for p in sel}
        self.dotted_depths = depth
        self.set_F({p.index for p in self.points if p.page == 0 and p.index not in below})

    def set_F(self, points) -> None:
        pts = set(points)
        if any(self.points[i].page != 0 for i in pts):
            raise ValueError("F lies on page 0")
        self.F_zone = pts
        self.points = [IntersectionPoint(p.index, p.alpha, p.beta, p.page, p.t, p.name, p.index in pts)
                       for p in self.points]

    def filtration_minimal_generators(self) -> list[Generator]:
        if self.F_zone is None:
            raise UnsupportedConfiguration("no F zone for this diagram")
        return [g for g in self.generators() if not any(i in self.F_zone for i in g.points)]

    # ---------------------------------------------------------- summaries

    def summary(self) -> dict:
        ok, _ = self.check_weak_admissibility()
        return {
            "label": self.label,
            "points": len(self.points),
            "regions": self.n_regions,
            "generators": len(self.generators()),
            "periodic_rank": len(self.periodic_domains()),
            "weakly_admissible": ok,
            "euler_sum": self.euler_sum(),
        }


# ---------------------------------------------------------------- builders


def build_diagram(S: SurfacePresentation, h, basis: TorusBasis | None = None) -> HeegaardDiagram:
    """Diagram for (S, h) with h a torus word (str or MapClassWord), a
    TorusWord, or ExplicitImages.  A torus basis is handled by conjugating
    the monodromy into the standard basis."""
    if isinstance(h, (str, MapClassWord)):
        h = TorusWord(word(h))
    label = ""
    if isinstance(h, TorusWord):
        w = h.word
        if basis is not None:
            w = conjugated_word(w, basis)
        label = f"torus {h.word}" + (f" basis {basis}" if basis is not None else "")
        h = TorusWord(w)
    elif basis is not None:
        raise UnsupportedConfiguration("slope bases apply to torus words only")
    D = HeegaardDiagram(S, image_words(S, h), label or S.name)
    if isinstance(h, TorusWord) and _is_boundary_twist(h.word):
        D.set_boundary_twist_zone()
    return D


def _is_boundary_twist(w: MapClassWord) -> bool:
    from .mcg import is_identity_class, evaluate

    return evaluate(w).is_pm_identity() and evaluate(w).a == 1 and w.exponent_sum() == 12


def torus_diagram(h, basis: TorusBasis | None = None) -> HeegaardDiagram:
    return build_diagram(make_punctured_torus(), h, basis)


def annulus_diagram(m: int) -> HeegaardDiagram:
    """Annulus open book whose monodromy is the m-th power of the core twist."""
    D = HeegaardDiagram(make_annulus(), annulus_twist_images(m), f"annulus twist {m}")
    D.set_F(())
    return D
