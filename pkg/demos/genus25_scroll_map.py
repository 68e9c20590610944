"""Build the scroll map of a generated type-(1,2) scrollar tableau on the
5-gonal genus-25 chain, tune its lengths and show that breaking a tie
destroys well-spacedness."""

from kgonal.chain import k_gonal_chain
from kgonal.scrollar import generate_scrollar, subtraction_count, t_minus_one
from kgonal.tableaux import generic_construction
from kgonal.tropmap import (assign_well_spaced_lengths, build_scroll_map, check_assumptions,
                            naive_well_spacedness)


def main():
    a, b, k = 1, 2, 5
    t = generate_scrollar(a, b, k, 8, 5)
    g = max(t.symbols())
    chain = k_gonal_chain(g, k)
    top = t
    for _ in range(subtraction_count(t, a, b) - 1):
        top = t_minus_one(top, a, b, k)
    xi = generic_construction(chain, top, seed=0, avoid=False)
    sk = build_scroll_map(chain, t, a, b, xi)
    rep = check_assumptions(sk)
    print(f"genus {g}, target dimension {sk.n}")
    print("spans:", rep.spans)
    print("clauses A, B, C:", rep.clause_a, rep.clause_b, rep.clause_c)
    lengths = assign_well_spaced_lengths(sk)
    print("smallest working base:", lengths.threshold)
    print("well spaced after tuning:", lengths.report.verdict)
    j, (tree_id, length) = next(iter(lengths.tuned.items()))
    sk.set_length(sk.trees[tree_id].root_edge, length + 1)
    sk.integrate_positions()
    print(f"after lengthening the tuned tree on cycle {j}:", naive_well_spacedness(sk).verdict)


if __name__ == "__main__":
    main()
