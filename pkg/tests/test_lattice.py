from math import comb

import pytest
from hypothesis import given, strategies as st

from kolchin.lattice import (
    IndexedFamily,
    LatticeSet,
    coefficient_sums,
    connectivity_check,
    dagger,
    dagger_prime,
    family_polynomial,
    hilbert_samuel,
    is_compressed,
    kolchin_polynomial,
    lub,
    minimal_elements,
    order_weight,
    shift_back,
    volume,
)
from kolchin.oracle import XorShift64, minimal_elements_quadratic, random_lattice_set
from kolchin.polynomial import NumericalPolynomial as P


def points(m, max_entry=6, max_size=12):
    return st.lists(st.tuples(*[st.integers(0, max_entry)] * m), max_size=max_size)


def lattice_sets(max_m=4, max_order=6, max_points=5):
    return st.builds(random_lattice_set, st.integers(1, max_m), st.just(max_order),
                     st.just(max_points), st.integers(0, 2**32))


# --- minimal elements -------------------------------------------------------


def test_minimal_examples():
    assert set(minimal_elements([(2, 0), (2, 1), (0, 3)])) == {(2, 0), (0, 3)}
    assert LatticeSet.of(3).is_empty


def test_minimal_rejects_mixed_dimensions_and_negatives():
    with pytest.raises(ValueError):
        minimal_elements([(1, 0), (1, 0, 0)])
    with pytest.raises(ValueError):
        minimal_elements([(-1, 0)])
    with pytest.raises(ValueError):
        minimal_elements([])


def test_minimal_fifty_random_points_against_quadratic_filter():
    rng = XorShift64(11)
    for _ in range(20):
        pts = [tuple(rng.below(7) for _ in range(3)) for _ in range(50)]
        assert set(minimal_elements(pts)) == minimal_elements_quadratic(pts)


@given(points(3, max_size=40))
def test_minimal_matches_quadratic_filter_and_is_idempotent(pts):
    E = minimal_elements(pts, 3)
    assert set(E) == minimal_elements_quadratic(pts)
    assert minimal_elements(E.minimals, 3) == E


@given(points(2, max_entry=9, max_size=60))
def test_minimal_large_inputs_use_same_answer(pts):
    # above 24 points the pairwise table path is taken
    assert set(minimal_elements(pts, 2)) == minimal_elements_quadratic(pts)


def test_lub():
    assert lub((1, 0), (0, 1)) == (1, 1)
    assert lub((2, 3), (2, 3)) == (2, 3)
    r = 5
    assert sum(lub((r, 0), (0, r))) == 2 * r
    with pytest.raises(ValueError):
        lub((1,), (1, 2))


def test_serialization_round_trip():
    E = LatticeSet.of(2, [(4, 0), (0, 4), (4, 4)])
    assert E.to_doc() == {"m": 2, "points": [[0, 4], [4, 0]]}
    assert LatticeSet.from_doc(E.to_doc()) == E
    fam = IndexedFamily((E, LatticeSet.of(2)))
    assert IndexedFamily.from_doc(fam.to_doc()) == fam
    with pytest.raises(ValueError):
        LatticeSet.from_doc({"m": 2, "points": [[1, 2, 3]]})
    with pytest.raises(ValueError):
        IndexedFamily.from_doc({"n": 3, "sets": [E.to_doc()]})
    with pytest.raises(ValueError):
        IndexedFamily((E, LatticeSet.of(3)))


# --- counting ---------------------------------------------------------------


def test_volume_examples():
    for m in range(1, 4):
        for s in range(6):
            assert volume(LatticeSet.of(m), s) == comb(s + m, m)
            assert volume(LatticeSet.of(m, [(0,) * m]), s) == 0
    for r in range(1, 8):
        assert volume(LatticeSet.of(2, [(r, 0), (0, r)]), 2 * r) == r * r


def test_hilbert_samuel_examples():
    for m in range(1, 4):
        for d in range(6):
            assert hilbert_samuel(LatticeSet.of(m), d) == comb(m - 1 + d, d)
    assert hilbert_samuel(LatticeSet.of(2, [(2, 0), (1, 1), (0, 3)]), 3) == 0
    assert hilbert_samuel(LatticeSet.of(3, [(1, 0, 0)]), 2) == comb(4, 2) - comb(3, 2) == 3


@given(lattice_sets(), st.integers(0, 9))
def test_volume_is_cumulative_hilbert(E, s):
    assert volume(E, s) == sum(hilbert_samuel(E, d) for d in range(s + 1))


def test_is_compressed_examples():
    assert is_compressed(LatticeSet.of(2, [(3, 0), (2, 1), (1, 3), (0, 5)]))
    assert not is_compressed(LatticeSet.of(2, [(0, 1)]))
    assert is_compressed(LatticeSet.of(3))
    with pytest.raises(ValueError):
        is_compressed(LatticeSet.of(2, [(3, 3)]), cutoff=2)


# --- Kolchin polynomial -----------------------------------------------------


def test_kolchin_examples():
    for m in range(1, 5):
        assert kolchin_polynomial(LatticeSet.of(m)) == P.basis(m)
        assert kolchin_polynomial(LatticeSet.of(m, [(0,) * m])) == P()
    assert kolchin_polynomial(LatticeSet.of(2, [(4, 0), (0, 4)])) == P.constant(16)
    assert kolchin_polynomial(LatticeSet.of(2, [(2, 0), (1, 1), (0, 3)])) == P.constant(4)
    assert kolchin_polynomial(LatticeSet.of(2, [(1, 0)])) == P.basis(1)


@given(lattice_sets())
def test_kolchin_agrees_with_volumes_past_the_corner(E):
    p = kolchin_polynomial(E)
    t_star = sum(E.corner())
    for s in range(t_star, t_star + E.m + 4):
        assert p(s) == volume(E, s)


@given(lattice_sets())
def test_degree_dichotomy(E):
    p = kolchin_polynomial(E)
    assert p.degree <= E.m
    assert (p.degree == E.m) == E.is_empty


def test_shift_back_function():
    assert shift_back(P((0, 1))) == P((-1, 1))


def test_family_polynomial():
    E = LatticeSet.of(3, [(1, 2, 0)])
    assert family_polynomial(IndexedFamily((E,))) == kolchin_polynomial(E)
    assert family_polynomial(IndexedFamily((LatticeSet.of(2), LatticeSet.of(2)))) == P.basis(2, 2)
    fam = IndexedFamily((LatticeSet.of(2, [(1, 0), (0, 1)]), LatticeSet.of(2)))
    assert family_polynomial(fam) == P((1, 0, 1))
    for s in range(5):
        assert family_polynomial(fam)(s) == sum(volume(E, s) for E in fam.sets)


def test_coefficient_sums():
    for m in range(1, 5):
        assert coefficient_sums(P.basis(m), m) == [1] * (m + 1)
        assert coefficient_sums(P(), m) == [0] * (m + 1)
    assert coefficient_sums(P.constant(16), 2) == [0, 0, 16]
    with pytest.raises(ValueError):
        coefficient_sums(P.basis(3), 2)


@given(lattice_sets(max_order=5))
def test_coefficient_sums_bounded_by_powers_of_order_weight(E):
    D = order_weight(E)
    for j, S in enumerate(coefficient_sums(kolchin_polynomial(E), E.m)):
        assert S <= D**j


def test_coefficient_bound_misses_the_empty_set():
    # the sums are 1 while the summed order is 0; only j = 0 survives
    for m in range(1, 5):
        sums = coefficient_sums(kolchin_polynomial(LatticeSet.of(m)), m)
        assert order_weight(LatticeSet.of(m)) == 0
        assert [S <= 0**j for j, S in enumerate(sums)] == [True] + [False] * m


# --- connectivity -----------------------------------------------------------


def test_connectivity_examples():
    for r in range(1, 6):
        M = LatticeSet.of(2, [(r, 0), (r - 1, 1)])
        assert connectivity_check(M, r + 1).connected
    rep = connectivity_check(LatticeSet.of(2, [(2, 0), (0, 2)]), 3)
    assert not rep.connected
    assert rep.failures() == [((0, 2), (2, 0))]
    assert connectivity_check(LatticeSet.of(3, [(1, 1, 1)]), 4).connected
    with pytest.raises(ValueError):
        connectivity_check(LatticeSet.of(2), 1)


def test_connectivity_through_intermediate():
    # (2,0) and (0,2) join through (1,1): both LUBs have order 3
    M = LatticeSet.of(2, [(2, 0), (1, 1), (0, 2)])
    assert connectivity_check(M, 3).connected
    assert not dagger_prime(M, 2)
    assert dagger(M, 2)


def test_connectivity_ignores_elements_above_the_order_limit():
    M = LatticeSet.of(2, [(3, 0), (0, 3)])
    assert connectivity_check(M, 3).connected  # nothing of order <= 2
