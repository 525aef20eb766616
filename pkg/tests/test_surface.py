import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ehtorus import freegroup as fg
from ehtorus.mcg import PreconditionError, evaluate
from ehtorus.surface import (
    SlopeArc, SurfacePresentation, TorusBasis, annulus_twist_images, apply_slides, arc_intersection, arc_slide,
    attach_handle, basis_intersection, conjugated_word, geometric_intersection, is_basis, make_annulus,
    make_punctured_torus, pushoffs, slide_sequence, torus_images,
)


def test_presentations():
    T, A = make_punctured_torus(), make_annulus()
    assert (T.rank, T.euler_characteristic, T.boundary_count, T.genus) == (2, -1, 1, 1)
    assert (A.rank, A.euler_characteristic, A.boundary_count, A.genus) == (1, 0, 2, 0)


def test_bad_presentation():
    with pytest.raises(ValueError):
        SurfacePresentation((1, 1, -2))


def test_pushoffs_are_single_letters():
    T = make_punctured_torus()
    assert [p.word for p in pushoffs(T)] == [(-1,), (-2,)]


def test_annulus_images():
    assert annulus_twist_images(0) == ((-1,),)
    assert annulus_twist_images(3) == ((1, 1),)


def test_torus_images_identity():
    assert torus_images("") == tuple(p.word for p in pushoffs(make_punctured_torus()))


def test_attach_handle_connects_boundary():
    S2, imgs, new = attach_handle(make_annulus(), annulus_twist_images(1))
    assert S2.boundary_count == 1 and S2.rank == 2
    assert S2.euler_characteristic == -1 and len(imgs) == 2


# ---------------------------------------------------------------- slopes


def _segments(v, off):
    """Pieces of the straight closed curve of slope v in the unit square."""
    p, q = v
    ts = {Fraction(0), Fraction(1)}
    for c, o in ((p, off[0]), (q, off[1])):
        if c:
            lo, hi = sorted((o, o + c))
            for k in range(math.floor(lo), math.ceil(hi) + 1):
                t = (k - o) / c
                if 0 < t < 1:
                    ts.add(t)
    ts = sorted(ts)
    segs = []
    for t0, t1 in zip(ts, ts[1:]):
        m = (t0 + t1) / 2
        sx, sy = math.floor(off[0] + m * p), math.floor(off[1] + m * q)
        a = (off[0] + t0 * p - sx, off[1] + t0 * q - sy)
        b = (off[0] + t1 * p - sx, off[1] + t1 * q - sy)
        segs.append((a, b))
    return segs


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polyline_intersections(u, v) -> int:
    """Crossings of straight representatives, counted segment by segment."""
    s1 = _segments(u, (Fraction(1, 7919), Fraction(3, 7927)))
    s2 = _segments(v, (Fraction(5, 7933), Fraction(2, 7937)))
    n = 0
    for a, b in s1:
        for c, d in s2:
            d1, d2 = _cross(a, b, c), _cross(a, b, d)
            d3, d4 = _cross(c, d, a), _cross(c, d, b)
            assert 0 not in (d1, d2, d3, d4), "degenerate position"
            if (d1 > 0) != (d2 > 0) and (d3 > 0) != (d4 > 0):
                n += 1
    return n


def test_geometric_intersection_example():
    assert geometric_intersection((1, 2), (2, 1)) == 3
    assert arc_intersection(SlopeArc((1, 2)), SlopeArc((2, 1))) == 2
    assert geometric_intersection((1, 0), (0, 1)) == 1


def test_geometric_intersection_polyline_oracle():
    rng = random.Random(11)
    done = 0
    while done < 500:
        u = (rng.randint(-10, 10), rng.randint(-10, 10))
        v = (rng.randint(-10, 10), rng.randint(-10, 10))
        if math.gcd(*u) != 1 or math.gcd(*v) != 1:
            continue
        assert polyline_intersections(u, v) == geometric_intersection(u, v)
        done += 1


def test_slope_normalization():
    assert SlopeArc((-2, -3)).slope == (2, 3)
    assert SlopeArc((0, -1)).slope == (0, 1)


def test_arc_slide_preconditions():
    with pytest.raises(PreconditionError):
        arc_slide(make_annulus(), 0)
    B = TorusBasis()
    assert arc_slide(B, 0, sign=1).arcs[0].slope == (1, 1)


def random_basis(rng, bound=10):
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c in (1, -1):
            return TorusBasis.of((a, c), (b, d))


def test_slide_sequence_random():
    rng = random.Random(3)
    for _ in range(60):
        B1, B2 = random_basis(rng), random_basis(rng)
        seq = apply_slides(B1, slide_sequence(B1, B2))
        assert all(is_basis(B) for B in seq)
        assert set(seq[-1].arcs) == set(B2.arcs)
        for x, y in zip(seq, seq[1:]):
            if basis_intersection(x, B2) > 0:
                assert basis_intersection(y, B2) < basis_intersection(x, B2)


def test_conjugated_word_preserves_invariants():
    from ehtorus import mcg

    B = TorusBasis.of((1, 1), (1, 2))
    h = conjugated_word("(aba)^2 B a", B)
    assert evaluate(h).trace == evaluate("(aba)^2 B a").trace
    assert mcg.fdtc(h) == mcg.fdtc("(aba)^2 B a")
