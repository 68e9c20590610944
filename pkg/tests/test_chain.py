import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kgonal.chain import (ChainOfCycles, ChipList, CyclePoint, PLFunction, canonical_divisor,
                          chain_edges, gonality_representatives, is_equivalent, k_gonal_chain,
                          k_gonal_profile, normal_form, pl_divisor, solve_pl_function, sweep,
                          torsion_order, xi_tilde)
from kgonal.errors import InputError

from conftest import random_chain, random_rational


@pytest.mark.parametrize("l,m,mu", [(2, 1, 3), (1, 2, 3), (1, 1, 2), (3, 1, 4), (2, 2, 2)])
def test_torsion_order(l, m, mu):
    assert torsion_order(l, m) == mu


def test_torsion_order_generic_flag():
    assert torsion_order(5, 1, generic=True) == 0


@pytest.mark.parametrize("g,k,profile", [
    (5, 3, (0, 0, 3, 0, 0)),
    (4, 3, (0, 0, 0, 0)),
    (25, 5, tuple(5 if 5 <= i <= 21 else 0 for i in range(1, 26))),
])
def test_k_gonal_profile(g, k, profile):
    assert k_gonal_profile(g, k) == profile
    assert k_gonal_chain(g, k).profile == profile


def test_torsion_cycles_are_normalized(g5):
    cyc = g5.cycles[2]
    assert (cyc.l, cyc.m, cyc.mu) == (2, 1, 3)


def test_from_profile_rejects_order_one():
    with pytest.raises(InputError):
        ChainOfCycles.from_profile([0, 1, 0])


def test_normal_form_of_pencils(g5):
    E, E0, E1 = gonality_representatives(g5, 3)
    expected = (0, 1, 2, 0, 1)
    for D in (E, E0, E1):
        N = normal_form(g5, D)
        assert N.d == 3 and N.xi == expected


def test_normal_form_of_canonical(g5):
    K = canonical_divisor(g5)
    assert K.degree == 8
    assert set(K.support()) == {g5.v(j) for j in range(2, 6)} | {g5.w(j) for j in range(1, 5)}
    assert normal_form(g5, K).xi == (0, -1, 1, -3, -4)


def test_canonical_genus_one_is_empty():
    ch = ChainOfCycles.from_profile([0])
    assert canonical_divisor(ch).degree == 0


def test_xi_tilde_values(g5):
    K = canonical_divisor(g5)
    E, _, _ = gonality_representatives(g5, 3)
    assert [xi_tilde(g5, K, j) for j in range(1, 6)] == [0, -2, 2, -6, -8]
    assert [xi_tilde(g5, E, j) for j in range(1, 6)] == [0, 0, 0, -3, -3]
    assert all(xi_tilde(g5, ChipList(), j) == 0 for j in range(1, 6))


def test_xi_tilde_agrees_on_normal_form(g5):
    K = canonical_divisor(g5)
    N = normal_form(g5, K)
    assert [xi_tilde(g5, N, j) for j in range(1, 6)] == [xi_tilde(g5, K, j) for j in range(1, 6)]


def test_equivalence_examples(g5):
    E, _, E1 = gonality_representatives(g5, 3)
    assert is_equivalent(g5, E, E1)
    assert is_equivalent(g5, E, E)
    moved = E + ChipList.of(g5.w(5)) - ChipList.of(g5.v(1))
    assert not is_equivalent(g5, E, moved)


def test_bridge_endpoints_are_equivalent(g5):
    for j in range(1, 5):
        assert is_equivalent(g5, ChipList.of(g5.w(j)), ChipList.of(g5.v(j + 1)))
        mid = g5.bridge_point(j, Fraction(1, 2))
        assert is_equivalent(g5, ChipList.of(mid), ChipList.of(g5.w(j)))


def test_sweep_passes_degree_minus_genus(g5):
    K = canonical_divisor(g5)
    xi, passed = sweep(g5, K)
    assert passed[-1] == 8 - 5


def test_constant_function_has_empty_divisor(g5):
    assert pl_divisor(g5, PLFunction.constant(g5, 7)) == ChipList()


def test_bridge_ramp_divisor(g5):
    edges = {}
    j = 2
    value = Fraction(0)
    for key in chain_edges(g5):
        kind, i = key
        if key == ("bridge", j):
            edges[key] = (value, ((0, 1),))
        else:
            level = 0 if i <= j else g5.bridges[j - 1]
            edges[key] = (level, ((0, 0),))
    f = PLFunction(g5, edges)
    assert pl_divisor(g5, f) == ChipList.of(g5.v(j + 1)) - ChipList.of(g5.w(j))


def test_discontinuous_function_rejected(g5):
    edges = {key: (0, ((0, 0),)) for key in chain_edges(g5)}
    edges[("bridge", 1)] = (1, ((0, 0),))
    with pytest.raises(InputError):
        PLFunction(g5, edges)


def test_non_principal_is_rejected():
    ch = ChainOfCycles.from_profile([0, 0])
    delta = ChipList.of(ch.point(1, Fraction(1, 3))) - ChipList.of(ch.w(1))
    with pytest.raises(InputError):
        solve_pl_function(ch, delta)


def test_torsion_point_of_order_mu_is_principal(g5):
    # on a cycle of torsion order 3, 3<1>_3 ~ 3 w_3
    delta = 3 * ChipList.of(g5.point(3, 1)) - 3 * ChipList.of(g5.w(3))
    f = solve_pl_function(g5, delta)
    assert pl_divisor(g5, f) == delta


def test_chiplist_algebra(g5):
    a = ChipList.of(g5.v(1), g5.w(2))
    b = ChipList.of(g5.w(2))
    assert a - b == ChipList.of(g5.v(1))
    assert (2 * a).degree == 4
    assert (a - a) == ChipList()
    assert not (b - a).is_effective()


def test_invalid_points(g5):
    with pytest.raises(InputError):
        g5.point(6, 0)
    with pytest.raises(InputError):
        g5.bridge_point(1, 5)


def _random_chips(rng, chain, n):
    chips = []
    for _ in range(n):
        if chain.g > 1 and rng.random() < 0.2:
            j = rng.randint(1, chain.g - 1)
            chips.append((chain.bridge_point(j, Fraction(rng.randint(0, 4), 4)), rng.choice((1, -1))))
        else:
            j = rng.randint(1, chain.g)
            chips.append((chain.point(j, random_rational(rng)), rng.choice((1, 1, -1))))
    return ChipList(chips)


@given(st.integers(0, 10 ** 6))
def test_normal_form_is_idempotent(seed):
    rng = random.Random(seed)
    ch = random_chain(rng)
    D = _random_chips(rng, ch, rng.randint(0, 8))
    N = normal_form(ch, D)
    assert normal_form(ch, ch.chips_of(N)) == N
    assert N.d == D.degree


@given(st.integers(0, 10 ** 6))
def test_xi_tilde_is_additive(seed):
    rng = random.Random(seed)
    ch = random_chain(rng)
    A = _random_chips(rng, ch, 4)
    B = _random_chips(rng, ch, 4)
    for j in range(1, ch.g + 1):
        assert xi_tilde(ch, A + B, j) == ch.canon(j, xi_tilde(ch, A, j) + xi_tilde(ch, B, j))


@given(st.integers(0, 10 ** 6))
def test_witness_function_for_normalization(seed):
    rng = random.Random(seed)
    ch = random_chain(rng)
    D = _random_chips(rng, ch, rng.randint(0, 6))
    delta = D - ch.chips_of(normal_form(ch, D))
    f = solve_pl_function(ch, delta)
    assert pl_divisor(ch, f) == ch.canonicalize(delta)
    assert f.start_value(("top", 1)) == 0


@given(st.integers(0, 10 ** 6))
def test_equivalence_is_translation_invariant(seed):
    rng = random.Random(seed)
    ch = random_chain(rng)
    A = _random_chips(rng, ch, 3)
    B = _random_chips(rng, ch, 3)
    C = _random_chips(rng, ch, 3)
    assert is_equivalent(ch, A, B) == is_equivalent(ch, A + C, B + C)


def test_cycle_points_compare_by_canonical_coordinate(g5):
    assert g5.point(3, 4) == g5.point(3, 1) == CyclePoint(3, Fraction(1))
    assert g5.point(1, 4) != g5.point(1, 1)
