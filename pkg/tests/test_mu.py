from itertools import islice

import pytest

from kolchin.bounds import C, Cap, CapExceeded
from kolchin.lattice import LatticeSet, hilbert_samuel, is_compressed, kolchin_polynomial, volume
from kolchin.mu import (
    MuSequence,
    block_start,
    build_concatenated,
    build_mu,
    iter_mu,
    m_frak,
    main_bound_polynomial,
    omega_mu_prefix,
    successor,
    terminal_order,
    vol_mu,
)
from kolchin.oracle import PrefixScanner, mu_by_definition
from kolchin.polynomial import NumericalPolynomial as P


def test_build_mu_plane():
    for r in range(1, 10):
        seq = build_mu(r, 2)
        assert seq.elems == tuple((r - i, max(2 * i - 1, 0)) for i in range(r + 1))
        assert len(seq) == r + 1
    assert build_mu(2, 2).elems == ((2, 0), (1, 1), (0, 3))


def test_build_mu_first_space_case():
    # the second element is (r-1, 1, 0, ...); the rules only act from there on
    seq = build_mu(1, 3)
    assert seq.elems == ((1, 0, 0), (0, 1, 0), (0, 0, 2))
    assert terminal_order(seq) + 1 == C(1, 3, 1) == 3


def test_build_mu_degenerate_cases():
    assert build_mu(0, 3).elems == ((0, 0, 0),)
    assert vol_mu(build_mu(0, 3)) == 0
    assert build_mu(5, 1).elems == ((5,),)
    assert vol_mu(build_mu(5, 1)) == 5
    with pytest.raises(ValueError):
        build_mu(-1, 2)


def test_build_mu_respects_step_cap():
    with pytest.raises(CapExceeded):
        build_mu(10, 3, Cap(steps=100))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_rules_match_the_defining_maximum(m):
    for r in range(0, 5 if m < 4 else 2):
        assert list(iter_mu(r, m)) == mu_by_definition(r, m)


def test_successor_patterns_are_exclusive():
    # rule (i) needs a last nonzero among the first m-1 entries before position m-1,
    # rule (ii) needs u_{m-1} > 0; no tuple matches both
    for m in range(2, 5):
        for seq in (build_mu(r, m) for r in range(1, 4 if m < 4 else 2)):
            for u in seq.elems[1:-1]:
                s = max(k for k in range(m - 1) if u[k])
                rule_one = s < m - 2 and u[s] > 0
                rule_two = u[m - 2] > 0
                assert rule_one != rule_two
    assert successor((0, 0, 7)) is None


def test_order_increases_by_one():
    for m in (2, 3):
        for r in range(1, 6):
            orders = [sum(u) for u in build_mu(r, m).elems]
            assert orders[1] == orders[0]
            assert all(b == a + 1 for a, b in zip(orders[1:], orders[2:]))
            assert all(u == 0 for u in build_mu(r, m).last[:-1])


def test_terminal_order_law():
    for m in (2, 3):
        for r in range(1, 7):
            assert terminal_order(build_mu(r, m)) + 1 == C(r, m, 1)
    assert terminal_order(build_mu(1, 4)) + 1 == C(1, 4, 1) == 5


def test_vol_examples():
    for r in range(1, 10):
        assert vol_mu(build_mu(r, 2)) == r * r
        assert vol_mu(build_mu(2 * r, 2)) == 4 * r * r


def test_vol_is_brute_force_volume():
    for m, rs in ((2, range(1, 7)), (3, range(1, 4)), (4, (1,))):
        for r in rs:
            seq = build_mu(r, m)
            assert vol_mu(seq) == volume(seq.as_set(), terminal_order(seq))


def test_compressed_and_saturated():
    # the full grid r <= 8, m <= 4 is out of reach (C(2,4,1) = 253, C(3,4,1) = 2^256 - 3)
    grid = [(2, r) for r in range(1, 9)] + [(3, r) for r in range(1, 6)] + [(4, 1)]
    for m, r in grid:
        seq = build_mu(r, m)
        E = seq.as_set()
        assert is_compressed(E), (r, m)
        assert hilbert_samuel(E, terminal_order(seq)) == 0


def test_every_prefix_is_compressed():
    for m in (2, 3):
        for r in range(1, 5):
            seq = build_mu(r, m)
            scan = PrefixScanner(m, terminal_order(seq) + m + 1)
            for g in seq.elems:
                scan.add(g)
                assert scan.compressed()


def test_prefix_closed_form_examples():
    for m in range(2, 6):
        for r in range(1, 4):
            seq = MuSequence(r, m, tuple(islice(iter_mu(r, m), 2)))
            assert omega_mu_prefix(seq, 1) == P.basis(m - 1, r)
            assert omega_mu_prefix(seq, 2) == P.basis(m - 1, r - 1) + P.basis(m - 2)
    with pytest.raises(ValueError):
        omega_mu_prefix(build_mu(2, 2), 4)


def test_prefix_closed_form_leading_term_and_final_value():
    """Degree and leading coefficient agree with the recursion on every prefix, and the
    full sequence agrees exactly; lower coefficients of proper prefixes generally do not."""
    for m in (2, 3):
        for r in range(1, 5):
            seq = build_mu(r, m)
            for ell in range(1, len(seq) + 1):
                exact = kolchin_polynomial(seq.as_set(ell))
                closed = omega_mu_prefix(seq, ell)
                assert (exact.degree, exact.leading) == (closed.degree, closed.leading)
            assert exact == closed == P.constant(vol_mu(seq))


def test_prefix_closed_form_lower_terms_counterexample():
    # V(s) = 2s + 1 for the set above (2, 0): the constant term is -1, not 0
    seq = build_mu(2, 2)
    exact = kolchin_polynomial(seq.as_set(1))
    assert [volume(seq.as_set(1), s) for s in range(4)] == [1, 3, 5, 7]
    assert exact == P((-1, 2))
    assert omega_mu_prefix(seq, 1) == P((0, 2))


def test_concatenated():
    for r in range(1, 5):
        cm = build_concatenated(r, 2, 2)
        assert cm.blocks[0] == build_mu(r, 2)
        assert cm.blocks[1] == build_mu(2 * r, 2)
        assert (cm.variable(1), cm.variable(2)) == (2, 1)
        assert cm.vol() == r * r + 4 * r * r
    assert build_concatenated(3, 3, 1).blocks == (build_mu(3, 3),)
    cm = build_concatenated(1, 3, 2)
    assert cm.blocks[1].r0 == block_start(1, 3, 2) == terminal_order(cm.blocks[0]) + 1
    with pytest.raises(CapExceeded):
        build_concatenated(2, 4, 3)


def test_m_frak_examples():
    for m in range(1, 5):
        for r in range(1, 3):
            assert m_frak(r, m, 1, m - 1) == (r, 1)
    for r in range(1, 8):
        assert m_frak(r, 2, 1, 0) == (2 * r - 1, r + 1)
        assert m_frak(r, 3, 1, 1)[0] == 3 * 2 ** (r - 1) - 2
    # for tau = 0 the witness is the last element
    seq = build_mu(4, 3)
    assert m_frak(4, 3, 1, 0)[1] == len(seq)
    with pytest.raises(ValueError):
        m_frak(2, 3, 1, 3)


def test_main_bound_polynomial():
    # block n cut at the witness plus the full volumes of the earlier blocks
    p = main_bound_polynomial(2, 2, 2, 0)
    assert p == P.constant(4 + 16)
    q = main_bound_polynomial(3, 3, 1, 1)
    assert (q.degree, q.leading) == (1, m_frak(3, 3, 1, 1)[0])


def test_serialization():
    seq = build_mu(3, 2)
    doc = seq.to_doc()
    assert doc["ordered"] is True and doc["r0"] == 3
    assert MuSequence.from_doc(doc) == seq
    with pytest.raises(ValueError):
        MuSequence.from_doc({"m": 2, "r0": 1, "points": [[1]]})
    assert seq.as_set() == LatticeSet.of(2, seq.elems)
