from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ehtorus import mcg
from ehtorus.farey import slope_vector
from ehtorus.mcg import LiftedRay, MatrixSL2, NTType, Verdict, evaluate, fdtc, lifted_step
from ehtorus.words import word

short_words = st.text(alphabet="aAbBdD", max_size=8)


def test_evaluate_examples():
    assert evaluate("Ba").rows() == [[1, 1], [1, 2]]
    assert evaluate("(aba)^2").rows() == [[-1, 0], [0, -1]]
    assert evaluate("d").is_pm_identity()


@given(short_words, short_words)
def test_evaluate_is_a_homomorphism(s, t):
    assert evaluate(word(s) * word(t)) == evaluate(s) @ evaluate(t)


@given(short_words)
def test_matrix_to_word_round_trip(s):
    M = evaluate(s)
    assert evaluate(mcg.matrix_to_word(M)) == M


@pytest.mark.parametrize("w,kind", [
    ("", NTType.PERIODIC), ("d", NTType.PERIODIC), ("(aba)^2", NTType.PERIODIC), ("ab", NTType.PERIODIC),
    ("a", NTType.REDUCIBLE), ("B^3", NTType.REDUCIBLE),
    ("Ba", NTType.PSEUDO_ANOSOV), ("(aba)^2 B a", NTType.PSEUDO_ANOSOV),
])
def test_classify(w, kind):
    assert mcg.classify(w).kind is kind


@given(short_words, short_words)
def test_classification_is_conjugation_invariant(s, t):
    w, u = word(s), word(t)
    assert mcg.classify(w).kind is mcg.classify(w.conjugate(u)).kind


def test_lifted_step_examples():
    assert lifted_step("a", LiftedRay((1, 0), 0)) == LiftedRay((1, 0), 0)
    assert lifted_step("a", LiftedRay((0, 1), 0)) == LiftedRay((1, 1), 0)
    assert lifted_step("d", LiftedRay((3, 2), 1)) == LiftedRay((3, 2), 2)


@given(st.sampled_from("aAbB"), st.integers(-20, 20), st.integers(-20, 20))
def test_single_letter_moves_monotonically(ch, p, q):
    from math import gcd

    if gcd(p, q) != 1:
        return
    r = LiftedRay((p, q), 0)
    r2 = lifted_step(ch, r)
    if ch in "ab":
        assert r.compare(r2) <= 0
        assert r2.compare(r.shift_half_turns(1)) < 0
    else:
        assert r2.compare(r) <= 0
        assert r.shift_half_turns(-1).compare(r2) < 0


# fdtc values frozen after agreeing with the floating-point oracle
FDTC = {
    "d": Fraction(1), "D": Fraction(-1), "(aba)^2": Fraction(1, 2), "ab": Fraction(1, 6),
    "aba": Fraction(1, 4), "abab": Fraction(1, 3), "(aba)^2 B a": Fraction(1, 2),
    "(aba)^2 b^-3": Fraction(1, 2), "Ba": Fraction(0), "a": Fraction(0), "B": Fraction(0),
    "dBa": Fraction(1), "(aba)^2 a^3 b^-2": Fraction(1, 2),
}


@pytest.mark.parametrize("w", sorted(FDTC))
def test_fdtc_frozen_values(w):
    assert abs(mcg.rotation_number_float(w, 20000) - float(FDTC[w])) < 1e-3
    assert fdtc(w) == FDTC[w]


def test_fdtc_float_oracle_tight_for_half_twist():
    assert abs(mcg.rotation_number_float("(aba)^2") - 0.5) < 1e-6


@given(short_words, st.integers(-3, 3))
def test_fdtc_shift(s, k):
    w = word(s)
    assert fdtc(word("d") ** k * w) == k + fdtc(w)


@given(short_words, st.integers(1, 4))
def test_fdtc_homogeneity(s, n):
    w = word(s)
    assert fdtc(w ** n) == n * fdtc(w)


def test_calibration():
    assert mcg.right_veering("a") and mcg.right_veering("b")
    assert not mcg.right_veering("A") and not mcg.right_veering("B")
    assert fdtc("d") == 1


def _farey_rays(limit=200):
    out, q = [], 1
    while len(out) < limit:
        for p in range(-3 * q, 3 * q + 1):
            if len(out) < limit and Fraction(p, q).denominator == q:
                out.append(slope_vector(Fraction(p, q)))
        q += 1
    return out


@pytest.mark.parametrize("w", ["a", "b", "ab", "(aba)^2 B a", "(aba)^2 b^-3", "d", "aab", "dBa"])
def test_right_veering_moves_every_sampled_ray_right(w):
    assert mcg.right_veering(w)
    for v in _farey_rays():
        for s in (1, -1):
            r = LiftedRay((s * v[0], s * v[1]), 0)
            assert r.compare(mcg.lifted_action(w, r)) <= 0


def test_third_quadrant_conjugate():
    M = MatrixSL2(0, 1, -1, -3)
    P, B = mcg.third_quadrant_conjugate(M)
    assert B == P @ M @ P.inverse()
    assert all(e < 0 for e in B.entries())
    with pytest.raises(mcg.PreconditionError):
        mcg.third_quadrant_conjugate(evaluate("Ba"))


@given(st.lists(st.sampled_from("aAbB"), max_size=6))
def test_third_quadrant_conjugate_random(ls):
    M = evaluate("(aba)^2 B a") if not ls else evaluate("".join(ls))
    if M.trace >= -2:
        return
    P, B = mcg.third_quadrant_conjugate(M)
    assert B == P @ M @ P.inverse() and all(e < 0 for e in B.entries())


@pytest.mark.parametrize("w,n,m", [("(aba)^2 b", 1, 1), ("d b^-1", 2, -1), ("a^3", 0, 3)])
def test_reducible_normal_form(w, n, m):
    f = mcg.reducible_normal_form(w)
    assert (f.n, f.m) == (n, m)
    P = f.basis_change
    nf = mcg.normal_form_word(n, m)
    assert P @ evaluate(w) @ P.inverse() == evaluate(nf)
    assert fdtc(w) == fdtc(nf)


def test_reducible_normal_form_rejects_pa():
    with pytest.raises(mcg.PreconditionError):
        mcg.reducible_normal_form("Ba")


@given(short_words)
def test_tight_iff_right_veering(s):
    v = mcg.tight(s)
    assert (v.verdict is Verdict.TIGHT) == mcg.right_veering(s)


def test_tight_examples():
    v = mcg.tight("(aba)^2 B a")
    assert v.verdict is Verdict.TIGHT and v.fdtc == Fraction(1, 2)
    assert mcg.tight("B").verdict is Verdict.OVERTWISTED
    assert mcg.tight("").reason is mcg.Reason.IDENTITY
