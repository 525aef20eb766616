from hypothesis import given
from hypothesis import strategies as st

from ehtorus import freegroup as fg
from ehtorus.mcg import evaluate

torus_words = st.text(alphabet="aAbB", max_size=8)


def test_twists_fix_boundary_word():
    for aut in fg.TORUS_TWIST.values():
        assert aut(fg.TORUS_BOUNDARY) == fg.TORUS_BOUNDARY


def test_inverse_pairs():
    ident = fg.Automorphism({1: (1,), 2: (2,)})
    assert fg.TORUS_TWIST["a"].then(fg.TORUS_TWIST["A"]) == ident
    assert fg.TORUS_TWIST["b"].then(fg.TORUS_TWIST["B"]) == ident


def test_boundary_twist_is_conjugation():
    d = fg.torus_action("d")
    c = fg.TORUS_BOUNDARY
    for g in (1, 2):
        assert d((g,)) == fg.mul(c, (g,), fg.inverse(c))


def _abelian_matrix(letters):
    """Action on H_1 in the basis e1 = [g2], e2 = [g1^-1]."""
    aut = fg.torus_action(letters)
    cols = []
    for gen, sgn in ((2, 1), (1, -1)):
        v = fg.abelianize(aut((gen,) if sgn > 0 else (-gen,)), 2)
        cols.append((v[1], -v[0]))
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


@given(torus_words)
def test_abelianization_matches_matrices(s):
    assert _abelian_matrix(s) == evaluate(s).rows()


def test_reduce_and_power():
    assert fg.reduce_word((1, 2, -2, -1, 3)) == (3,)
    assert fg.power((1, 2), -2) == (-2, -1, -2, -1)
    assert fg.fmt(()) == "1"
