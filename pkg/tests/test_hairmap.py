import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from beadweave.contraction import GropeSpec, build_grope_clasper, complete_contraction
from beadweave.diagram import Diagram, DiagramSum, attach_hair, vassiliev_degree
from beadweave.families import circle, ellipse_generator, joined_generator, theta
from beadweave.hairmap import hair_expand, hairs_on_single_edge, leading_term, place_hairs
from beadweave.laurent import ONE, T_MINUS_ONE, LaurentPoly, T

from helpers import BEADS, random_closed, relabel

seeds = st.integers(0, 2**32 - 1)

# a circle carrying two hairs, written out by hand
CIRCLE_TWO_HAIRS = Diagram(2, 2, [((0, 1), (1, 0)), ((1, 1), (0, 0)), ((0, 2), (2, 0)), ((1, 2), (3, 0))])


def contraction(n):
    return complete_contraction(*build_grope_clasper(GropeSpec(n)))


def test_trivial_beads_unchanged():
    for d in (theta(), circle(), ellipse_generator(2)):
        s = DiagramSum.from_diagram(d, Fraction(3, 4))
        for d_max in range(vassiliev_degree(d), vassiliev_degree(d) + 3):
            assert hair_expand(s, d_max) == s


def test_degree_cutoff_drops_everything_above():
    assert not hair_expand(DiagramSum.from_diagram(theta()), 0)
    with pytest.raises(ValueError):
        hair_expand(DiagramSum(), -1)


def test_beaded_circle_to_two_hairs():
    out = hair_expand(DiagramSum.from_diagram(circle(T_MINUS_ONE)), 2)
    assert out == DiagramSum.from_diagram(CIRCLE_TWO_HAIRS, Fraction(1, 2))


def test_single_placement_equals_average_over_orderings():
    # two hairs on edge 0 of a beaded theta: both orderings give one class
    d = theta()
    near_start = attach_hair(attach_hair(d, 0), 0)
    near_end = attach_hair(attach_hair(d, 0), 3)
    average = DiagramSum.from_terms([(Fraction(1, 2), near_start), (Fraction(1, 2), near_end)])
    assert average == DiagramSum.from_diagram(place_hairs(d, [2, 0, 0]))


def test_theta_with_t_minus_one_bead():
    # (exp(h) - 1) = h + h^2/2 + h^3/6; the single-hair term dies
    s = DiagramSum.from_diagram(theta((T_MINUS_ONE, ONE, ONE)))
    out = hair_expand(s, 3)
    assert all(d.n_uni != 1 for d, _ in out.items())
    degree3 = out.filter(lambda d: vassiliev_degree(d) == 3)
    assert degree3 == DiagramSum.from_diagram(place_hairs(theta(), [2, 0, 0]), Fraction(1, 2))


def test_circle_bead_t_squared():
    # t^2 -> 1 + 2h + 2h^2: the circle survives with coefficient 1
    out = hair_expand(DiagramSum.from_diagram(circle(T**2)), 2)
    assert out.coefficient(circle()) == 1
    assert out.coefficient(CIRCLE_TWO_HAIRS) == 2


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_truncation_consistency(seed):
    rng = random.Random(seed)
    d = random_closed(rng, rng.choice([2, 4]), beads=BEADS, circles=rng.randint(0, 1))
    s = DiagramSum.from_diagram(d)
    hi = vassiliev_degree(d) + 3
    full = hair_expand(s, hi)
    for lo in range(hi):
        assert full.filter(lambda x: vassiliev_degree(x) <= lo) == hair_expand(s, lo)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_independent_of_edge_and_vertex_numbering(seed):
    rng = random.Random(seed)
    d = random_closed(rng, rng.choice([2, 4]), beads=BEADS, circles=rng.randint(0, 1))
    e = relabel(d, rng, flip_edges=False)
    d_max = vassiliev_degree(d) + 2
    assert hair_expand(DiagramSum.from_diagram(d), d_max) == hair_expand(DiagramSum.from_diagram(e), d_max)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_no_single_hair_terms(seed):
    rng = random.Random(seed)
    d = random_closed(rng, rng.choice([2, 4]), beads=BEADS)
    out = hair_expand(DiagramSum.from_diagram(d), vassiliev_degree(d) + 3)
    assert all(x.n_uni != 1 for x, _ in out.items())


def test_leading_term_n1():
    lt = leading_term(hair_expand(contraction(1), 2), 1)
    assert lt.passed
    half = DiagramSum.from_diagram(CIRCLE_TWO_HAIRS, Fraction(1, 2))
    assert lt.part in (half, -half)


@pytest.mark.parametrize("n", range(1, 5))
def test_leading_term_is_half_generator(n):
    lt = leading_term(hair_expand(contraction(n), n + 1), n)
    assert lt.passed and not lt.low_degree
    half = DiagramSum.from_diagram(ellipse_generator(n), Fraction(1, 2))
    assert lt.part in (half, -half)


def test_leading_term_of_empty_sum():
    lt = leading_term(DiagramSum(), 3)
    assert not lt.part and lt.passed


def test_leading_term_reports_bad_shape():
    # two hairs on opposite arcs of a 2-rung ellipse: outside the two-hairs-on-one-edge span
    d = attach_hair(attach_hair(joined_generator(2), 0), 1)
    s = DiagramSum.from_diagram(d)
    assert s
    lt = leading_term(s, 3)
    assert lt.violations and not lt.passed


def test_hairs_on_single_edge_predicate():
    assert hairs_on_single_edge(ellipse_generator(3))
    assert hairs_on_single_edge(CIRCLE_TWO_HAIRS)
    assert not hairs_on_single_edge(attach_hair(attach_hair(theta(), 0), 1))
    assert not hairs_on_single_edge(theta())


def test_odd_hair_count_on_wheel_vanishes():
    # the circle with three hairs has a symmetry reversing all three cyclic orders
    out = hair_expand(DiagramSum.from_diagram(circle(T_MINUS_ONE)), 3)
    assert all(d.n_uni % 2 == 0 for d, _ in out.items())
    assert out.filter(lambda d: d.n_uni == 3) == DiagramSum()


def test_place_hairs_counts_checked():
    with pytest.raises(ValueError):
        place_hairs(theta(), [1, 1])
    d = place_hairs(theta((LaurentPoly(5), ONE, ONE)), [0, 0, 0])
    assert d.all_beads_one()
