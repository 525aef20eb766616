import itertools
from fractions import Fraction

import pytest

from ehtorus import mcg
from ehtorus.heegaard import UnsupportedConfiguration, annulus_diagram, torus_diagram
from ehtorus.surface import TorusBasis


@pytest.fixture(scope="module")
def boundary_twist():
    return torus_diagram("d")


@pytest.mark.parametrize("m,count", [(0, 2), (1, 1), (-1, 3)])
def test_annulus_generator_counts(m, count):
    assert len(annulus_diagram(m).generators()) == count


def test_annulus_identity_strips():
    D = annulus_diagram(0)
    x = D.eh_generator()
    (y,) = [g for g in D.generators() if g != x]
    sols, _ = D.positive_domains(y, x)
    bigons = [s for s in sols if not s.is_zero()]
    assert len(bigons) == 2
    assert all(D.is_embedded_bigon(s, y, x) for s in bigons)
    assert all(D.maslov_index(s, y, x) == 1 for s in bigons)


def test_zero_domain_from_x_to_x():
    D = annulus_diagram(0)
    x = D.eh_generator()
    found, wit, _ = D.positive_domain_exists(x, x)
    assert found and wit.is_zero()


def test_boundary_twist_structure(boundary_twist):
    D = boundary_twist
    ok, _ = D.check_weak_admissibility()
    assert ok
    assert len(D.periodic_domains()) == 2
    assert D.euler_sum() == D.chi_sigma() == -2


def test_boundary_twist_rectangles(boundary_twist):
    D = boundary_twist
    for P in D.periodic_domains():
        R1, R2 = D.rectangle_split(P)
        assert D.is_rectangle(R1) and D.is_rectangle(R2)
        assert R1 + (-R2) == P
        assert R1.is_nonnegative() and R2.is_nonnegative()


def test_filtration_minimal_generators(boundary_twist):
    D = boundary_twist
    mins = D.filtration_minimal_generators()
    assert len(mins) == 7
    zero = [g for g in mins if all(D.chern_pairing(g, P) == 0 for P in D.periodic_domains())]
    assert zero == [D.eh_generator()]


def test_F_requires_zone():
    D = torus_diagram("a")
    with pytest.raises(UnsupportedConfiguration):
        D.filtration_minimal_generators()


@pytest.mark.parametrize("w,rank", [("", 2), ("a", 1), ("b^2", 1), ("(aba)^2 B a", 0), ("d", 2)])
def test_periodic_rank_matches_homology(w, rank):
    M = mcg.evaluate(w)
    fixed = 2 - (0 if M.is_pm_identity() and M.a == 1 else (1 if M.trace == 2 else 2))
    assert fixed == rank
    assert len(torus_diagram(w).periodic_domains()) == rank


def _check_structure(D):
    assert D.euler_sum() == D.chi_sigma()
    ok, witness = D.check_weak_admissibility()
    assert ok, witness
    basis = D.periodic_domains()
    gens = D.generators()
    for P in basis:
        vals = [D.chern_pairing(g, P) for g in gens]
        for u, v in itertools.combinations(vals, 2):
            diff = u - v
            assert diff.denominator == 1 and diff.numerator % 2 == 0
    for y, x in itertools.combinations(gens[:12], 2):
        if D.connecting_domain(y, x) is not None:
            assert all(D.chern_pairing(y, P) == D.chern_pairing(x, P) for P in basis)


def test_structure_on_corpus(corpus_words):
    for w in corpus_words:
        _check_structure(torus_diagram(w))
    for m in range(-3, 4):
        _check_structure(annulus_diagram(m))


def test_basis_change_keeps_structure():
    D = torus_diagram("(aba)^2 B a", TorusBasis.of((1, 1), (1, 2)))
    _check_structure(D)
    assert D.euler_sum() == -2


def test_bound_doubling_is_monotone():
    D = torus_diagram("d")
    x = D.eh_generator()
    for y in D.generators():
        D0 = D.connecting_domain(y, x)
        if D0 is None:
            continue
        b = D.default_bound(D0)
        assert D.positive_domain_exists(y, x, b)[0] == D.positive_domain_exists(y, x, 2 * b)[0]


def test_euler_measure_of_regions():
    D = annulus_diagram(0)
    assert sum(r.euler_measure for r in D.regions) == Fraction(0)
