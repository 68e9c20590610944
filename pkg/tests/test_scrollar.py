import random

import pytest
from hypothesis import given, strategies as st

from kgonal.chain import ChipList, canonical_divisor, k_gonal_chain, normal_form
from kgonal.errors import InputError
from kgonal.numerics import rho
from kgonal.scrollar import (ScrollarType, best_scrollar_dimension, component_dimension_check,
                             fan_rays, generate_scrollar, has_vertical_step, independence_slopes,
                             is_scrollar, rank_chain, scrollar_symbol_count, serial_subtract,
                             subtraction_count, t_minus_one, t_plus_one)
from kgonal.tableaux import Tableau, torus_dimension

TYPE12_GENUS25 = [
    [1, 2, 3, 7, 8, 9, 13, 14],
    [4, 5, 6, 10, 11, 12, 16, 17],
    [7, 8, 9, 13, 14, 15, 19, 20],
    [10, 11, 12, 16, 17, 18, 22, 23],
    [13, 14, 15, 19, 20, 21, 24, 25],
]
TYPE12_MINUS_ONE = [
    [1, 2, 3, 7, 8],
    [4, 5, 6, 10, 11],
    [7, 8, 9, 13, 14],
    [10, 11, 12, 16, 17],
    [13, 14, 15, 19, 20],
    [16, 17, 18, 22, 23],
    [19, 20, 21, 24, 25],
]


def test_type_validation():
    with pytest.raises(InputError):
        ScrollarType(1, 2, 3)
    with pytest.raises(InputError):
        ScrollarType(0, 1, 5)
    assert ScrollarType(1, 2, 5).shift == 2


def test_fan_rays_balance():
    for a, b in ((1, 0), (1, 1), (1, 2), (2, 1), (3, 0)):
        rays = fan_rays(a, b)
        n = a + b
        if n > 1:
            total = [sum(rays[("e", i)][c] for i in range(n)) for c in range(n)]
            assert total == [0] * n
        u = [x + y for x, y in zip(rays["u0"], rays["u1"])]
        tail = [sum(rays[("e", i)][c] for i in range(b, n)) for c in range(n)] if n > 1 else [0]
        assert u == [-x for x in tail]


def test_type12_genus25_is_scrollar():
    assert is_scrollar(TYPE12_GENUS25, 1, 2, 5, 25)
    broken = [row[:] for row in TYPE12_GENUS25]
    broken[2][3] = 12
    broken[2][4] = 12
    assert not is_scrollar(broken, 1, 2, 5, 25)
    broken = [row[:] for row in TYPE12_GENUS25]
    broken[1][5] = 11
    broken[1][4] = 10
    broken[1][3] = 9
    assert not is_scrollar(broken, 1, 2, 5, 25)


def test_standard_tableau_of_type_b_zero():
    t = [[1, 2, 3], [4, 5, 6]]
    assert is_scrollar(t, 3, 0, 5, 6)


def test_generate_reproduces_type12_genus25():
    assert generate_scrollar(1, 2, 5, 8, 5) == Tableau(TYPE12_GENUS25)
    assert scrollar_symbol_count(1, 2, 5, 8, 5) == 25


def test_generate_rejects_bad_column_count():
    with pytest.raises(InputError):
        generate_scrollar(1, 2, 5, 7, 5)


def test_minus_one_type12_genus25():
    assert t_minus_one(TYPE12_GENUS25, 1, 2, 5) == Tableau(TYPE12_MINUS_ONE)
    assert t_plus_one(TYPE12_MINUS_ONE, 1, 2, 5) == Tableau(TYPE12_GENUS25)


def test_minus_one_genus5():
    t1 = t_minus_one([[1, 2, 3, 4, 5]], 1, 1, 3)
    assert t1 == Tableau([[1, 2, 3], [3, 4, 5]])
    assert t_minus_one(t1, 1, 1, 3) == Tableau([[1], [3], [5]])


def test_vertical_steps():
    assert has_vertical_step([[1, 3], [2, 4], [3, 5]])
    assert not has_vertical_step(TYPE12_GENUS25)
    assert not has_vertical_step([[1, 2, 3]])


def test_serial_subtract_genus5():
    ch = k_gonal_chain(5, 3)
    K = canonical_divisor(ch)
    steps = serial_subtract(ch, [[1, 2, 3, 4, 5]], 1, 1, K, 2)
    assert [s.divisor.xi for s in steps] == [(0, -1, 1, 0, -1), (0, -1, 1, 3, 2)]
    assert [s.tableau.to_lists() for s in steps] == [[[1, 2, 3], [3, 4, 5]], [[1], [3], [5]]]
    assert serial_subtract(ch, [[1, 2, 3, 4, 5]], 1, 1, K, 0) == []
    with pytest.raises(InputError):
        serial_subtract(ch, [[1, 2, 3, 4, 5]], 1, 1, K, 3)


def test_rank_chain_genus5():
    ch = k_gonal_chain(5, 3)
    assert rank_chain(ch, [[1, 2, 3, 4, 5]], 1, 1, canonical_divisor(ch)) == (0, -1)


def test_component_dimension_type12_genus25():
    c = component_dimension_check(TYPE12_GENUS25, 1, 2, 5, 25)
    assert (c.dim, c.ell, c.formula_value, c.agrees) == (0, 5, 0, True)
    assert rho(25, 2, 27) - 25 == 0
    c26 = component_dimension_check(TYPE12_GENUS25, 1, 2, 5, 26)
    assert c26.dim == 1 and c26.agrees


def test_component_dimension_genus5():
    c = component_dimension_check([[1, 2, 3, 4, 5]], 1, 1, 3, 5)
    assert (c.dim, c.ell, c.agrees) == (0, 3, True)


def test_best_scrollar():
    dim, kind = best_scrollar_dimension(5, 3, 2, 5)
    assert dim == 0 and kind is not None


def test_independence_genus5():
    s = independence_slopes([[1, 2, 3, 4, 5]], 1, 1, 3)
    assert s.slopes == (3, 0, 2) and s.distinct and s.shift_identity


def test_independence_type12_genus25():
    s = independence_slopes(TYPE12_GENUS25, 1, 2, 5)
    assert s.slopes == (6, 4, 1, 0, 3)
    assert s.distinct
    assert not s.shift_identity


def test_independence_b_zero_strictly_decreasing():
    t = generate_scrollar(3, 0, 5, 6, 3)
    s = independence_slopes(t, 3, 0, 5)
    assert list(s.slopes) == sorted(s.slopes, reverse=True) and s.distinct


def _random_type(rng):
    k = rng.randint(3, 7)
    n = rng.randint(1, k - 1)
    b = rng.randint(0, n - 1)
    m = rng.randint(1, 4)
    rows = rng.randint(k - n, k - n + 4)
    return n - b, b, k, b + n * m, rows


@given(st.integers(0, 10 ** 6))
def test_generated_tableaux_are_scrollar(seed):
    a, b, k, cols, rows = _random_type(random.Random(seed))
    t = generate_scrollar(a, b, k, cols, rows)
    assert is_scrollar(t, a, b, k)
    assert max(t.symbols()) == scrollar_symbol_count(a, b, k, cols, rows)
    assert len(t.symbols()) == scrollar_symbol_count(a, b, k, cols, rows)


@given(st.integers(0, 10 ** 6))
def test_minus_one_round_trip(seed):
    a, b, k, cols, rows = _random_type(random.Random(seed))
    t = generate_scrollar(a, b, k, cols, rows)
    if t.cols <= a + b:
        return
    t1 = t_minus_one(t, a, b, k)
    assert is_scrollar(t1, a, b, k)
    g = max(t.symbols())
    assert torus_dimension(t1, g) >= torus_dimension(t, g)
    if t1.cols >= a + b:
        # no symbol is lost, and the inverse is determined
        assert t_plus_one(t1, a, b, k) == t
        assert torus_dimension(t1, g) == torus_dimension(t, g)


@given(st.integers(0, 10 ** 6))
def test_serial_subtract_tracks_tori(seed):
    rng = random.Random(seed)
    a, b, k, cols, rows = _random_type(rng)
    t = generate_scrollar(a, b, k, cols, rows)
    g = max(t.symbols())
    if g < k or g > 30:
        return
    ch = k_gonal_chain(g, k)
    from kgonal.tableaux import generic_construction, construction_to_normal
    xi = generic_construction(ch, t, seed=seed, avoid=False)
    D = construction_to_normal(ch, t, xi)
    m = (t.cols - 1) // (a + b)
    assert m == subtraction_count(t, a, b) - (b == 0)
    steps = serial_subtract(ch, t, a, b, D, m)
    assert len(steps) == m
    if m == 0:
        return
    E = k * ChipList.of(ch.v(k))
    assert steps[-1].divisor == normal_form(ch, ch.chips_of(D) - m * E)
