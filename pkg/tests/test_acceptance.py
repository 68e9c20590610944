"""One test per acceptance criterion, each a pass/fail line in the pytest report."""

import random
from fractions import Fraction

from kgonal.chain import (ChainOfCycles, ChipList, canonical_divisor, gonality_representatives,
                          is_equivalent, k_gonal_chain, normal_form, pl_divisor,
                          solve_pl_function)
from kgonal.numerics import max_gonality, rho, rho_bar
from kgonal.scrollar import (best_scrollar_dimension, component_dimension_check,
                             generate_scrollar, independence_slopes, scrollar_symbol_count,
                             subtraction_count, t_minus_one)
from kgonal.tableaux import (construction_to_normal, dim_wrd, generic_construction,
                             is_vertex_avoiding, psi_bridge_slopes, random_tableau, rank,
                             special_representatives, torus)
from kgonal.tropmap import (assign_well_spaced_lengths, build_generic_map, build_scroll_map,
                            check_assumptions, naive_well_spacedness)

from conftest import random_chain, random_rational


def test_hyperelliptic_collapse():
    for g in range(2, 21):
        for r in range(1, g):
            for d in range(r, g):
                assert rho_bar(g, r, d, 2)[0] == d - 2 * r, (g, r, d)


def test_brill_noether_recovery_at_generic_gonality():
    for g in range(1, 13):
        k = (g + 3) // 2
        for r in range(0, g + 3):
            for d in range(r, 3 * g + 2):
                if rho(g, r, d) >= 0:
                    assert rho_bar(g, r, d, k)[0] == rho(g, r, d), (g, r, d)


def test_trigonal_genus5_ranks_memberships_and_slopes():
    ch = k_gonal_chain(5, 3)
    assert ch.profile == (0, 0, 3, 0, 0)
    K = canonical_divisor(ch)
    E, _, _ = gonality_representatives(ch, 3)
    assert [rank(ch, K - i * E) for i in range(4)] == [4, 2, 0, -1]
    assert torus([[1, 2, 3, 4, 5]], ch).contains(normal_form(ch, K))
    assert torus([[1, 2, 3], [3, 4, 5]], ch).contains(normal_form(ch, K - E))
    assert torus([[1], [3], [5]], ch).contains(normal_form(ch, K - 2 * E))
    assert psi_bridge_slopes([[1, 3], [2, 4], [3, 5]], 1, 0) == (2, 3, 3, 2)


def test_scrollar_component_dimension_formula():
    rng = random.Random(4)
    done = 0
    while done < 200:
        k = rng.randint(3, 7)
        n = rng.randint(1, k - 1)
        b = rng.randint(0, n - 1)
        a = n - b
        cols = b + n * rng.randint(1, 4)
        rows = rng.randint(k - n, k - n + 5)
        count = scrollar_symbol_count(a, b, k, cols, rows)
        g = count + rng.randint(0, 3)
        if g > 40:
            continue
        t = generate_scrollar(a, b, k, cols, rows)
        c = component_dimension_check(t, a, b, k, g)
        assert c.dim == rho(g, c.r - c.ell, c.d) - c.ell * k, (a, b, k, cols, rows, g)
        assert c.agrees
        done += 1


def test_upper_bound_and_attainment_small_genus():
    checked = 0
    for g in range(1, 9):
        for k in (2, 3, 4):
            if k > max_gonality(g):
                continue
            ch = k_gonal_chain(g, k)
            for r in range(0, g + 1):
                for d in range(r, 2 * g + 1):
                    if not 1 <= g - d + r <= g:
                        continue
                    dim = dim_wrd(ch, r, d, limit=10 ** 6)
                    bound = rho_bar(g, r, d, k)[0]
                    assert dim == -1 or dim <= bound, (g, k, r, d)
                    best, _ = best_scrollar_dimension(g, k, r, d)
                    if best is not None:
                        assert dim == bound, (g, k, r, d)
                    checked += 1
    assert checked > 500


def test_special_representatives_and_vertex_avoiding_rank():
    rng = random.Random(6)
    avoiding = 0
    for case in range(500):
        ch = random_chain(rng, g_max=10)
        cols, rows = rng.randint(1, 3), rng.randint(1, 3)
        t = random_tableau(ch.profile, cols, rows, seed=case)
        if t is None:
            t = random_tableau(ch.profile, 1, 1, seed=case)
            cols, rows = 1, 1
        xi = generic_construction(ch, t, seed=case, avoid=False)
        reps = special_representatives(ch, t, xi)
        assert all(is_equivalent(ch, reps[0], D) for D in reps[1:])
        N = construction_to_normal(ch, t, xi)
        T = torus(t, ch)
        assert all(T.contains(normal_form(ch, D)) for D in reps)
        if is_vertex_avoiding(ch, t, xi):
            assert rank(ch, N) == cols - 1, (ch.profile, t, xi)
            avoiding += 1
    assert avoiding > 100


def test_riemann_roch():
    rng = random.Random(7)
    for _ in range(200):
        ch = random_chain(rng, g_max=6)
        g = ch.g
        d = rng.randint(-2 * g, 2 * g)
        xi = [random_rational(rng) for _ in range(g)]
        D = ch.divisor(d, xi)
        K = canonical_divisor(ch)
        KD = normal_form(ch, K - ch.chips_of(D))
        assert rank(ch, D) - rank(ch, KD) == d - g + 1, (ch.profile, d, xi)


def test_independence_slopes_are_distinct():
    rng = random.Random(8)
    for _ in range(100):
        k = rng.randint(3, 7)
        n = rng.randint(1, k - 1)
        b = rng.randint(0, n - 1)
        a = n - b
        t = generate_scrollar(a, b, k, b + n * rng.randint(1, 4), rng.randint(k - n, k - n + 4))
        assert independence_slopes(t, a, b, k).distinct, (a, b, k, t)


def _scroll_map(g, k, t, a, b):
    ch = k_gonal_chain(g, k)
    top = t
    for _ in range(subtraction_count(t, a, b) - 1):
        top = t_minus_one(top, a, b, k)
    return build_scroll_map(ch, t, a, b, generic_construction(ch, top, seed=0, avoid=False))


def _tuned_scroll_map_is_certified(sk):
    lengths = assign_well_spaced_lengths(sk)
    assert check_assumptions(sk).passes
    assert naive_well_spacedness(sk).verdict
    j, (tree_id, length) = next(iter(lengths.tuned.items()))
    sk.set_length(sk.trees[tree_id].root_edge, length + 1)
    sk.integrate_positions()
    assert not naive_well_spacedness(sk).verdict


def test_realizability_certificates():
    ch = ChainOfCycles.from_profile((0,) * 6)
    t = [[1, 2, 3], [4, 5, 6]]
    generic = build_generic_map(ch, t, generic_construction(ch, t, seed=1))
    rep = check_assumptions(generic)
    assert not rep.superabundant and rep.spans == [2] * 6
    _tuned_scroll_map_is_certified(_scroll_map(5, 3, [[1, 2, 3, 4, 5]], 1, 1))
    _tuned_scroll_map_is_certified(_scroll_map(25, 5, generate_scrollar(1, 2, 5, 8, 5), 1, 2))


def _random_point(rng, ch):
    if ch.g > 1 and rng.random() < 0.3:
        return ch.bridge_point(rng.randint(1, ch.g - 1), Fraction(rng.randint(0, 6), 6))
    return ch.point(rng.randint(1, ch.g), random_rational(rng))


def _witnessed(ch, left, right):
    delta = left - right
    f = solve_pl_function(ch, delta)
    return pl_divisor(ch, f) == ch.canonicalize(delta)


def test_transport_witnesses():
    rng = random.Random(10)
    for case in range(1000):
        ch = random_chain(rng, g_max=6, mus=(0, 2, 3, 4, 5))
        j = rng.randint(1, ch.g)
        kind = case % 4
        if kind == 0:
            a, b = random_rational(rng), random_rational(rng)
            left = ChipList.of(ch.point(j, a), ch.point(j, b))
            right = ChipList.of(ch.point(j, a + b), ch.w(j))
            assert _witnessed(ch, left, right)
        elif kind == 1:
            if j == ch.g:
                continue
            assert _witnessed(ch, ChipList.of(ch.w(j)), ChipList.of(ch.v(j + 1)))
        elif kind == 2:
            D = ChipList([(_random_point(rng, ch), rng.choice((1, 1, -1)))
                          for _ in range(rng.randint(0, 6))])
            N = normal_form(ch, D)
            assert _witnessed(ch, D, ch.chips_of(N))
            assert normal_form(ch, ch.chips_of(N)) == N
        else:
            d = rng.randint(-3, 3 * ch.g)
            N = ch.divisor(d, [random_rational(rng) for _ in range(ch.g)])
            assert normal_form(ch, ch.chips_of(N)) == N
