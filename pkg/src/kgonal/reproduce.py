"""The trigonal genus-5 worked example, assembled from the library."""

from .chain import (canonical_divisor, gonality_representatives, k_gonal_chain,
                    normal_form)
from .scrollar import subtraction_count, t_minus_one
from .tableaux import (generic_construction, psi_bridge_slopes, rank, torus,
                       witness_tableau)
from .tropmap import (assign_well_spaced_lengths, build_scroll_map, check_assumptions,
                      naive_well_spacedness)

CANONICAL_TABLEAU = [[1, 2, 3, 4, 5]]
MEMBERSHIP = (
    (0, [[1, 2, 3, 4, 5]]),
    (1, [[1, 2, 3], [3, 4, 5]]),
    (2, [[1], [3], [5]]),
)
PENCIL_TABLEAU = [[1, 3], [2, 4], [3, 5]]


def genus5(base=1000):
    """Chain, rank table, torus memberships, pencil slopes and the tuned
    scroll map of the trigonal genus-5 chain.

    Returns ``(report, skeleton)``.
    """
    chain = k_gonal_chain(5, 3)
    Kc = canonical_divisor(chain)
    K = normal_form(chain, Kc)
    E, _, _ = gonality_representatives(chain, 3)
    table = []
    for i in range(4):
        D = normal_form(chain, Kc - i * E)
        r = rank(chain, D)
        witness = witness_tableau(chain, D, r) if r >= 0 else None
        table.append({"i": i, "degree": D.d, "rank": r, "xi": list(D.xi),
                      "witness": witness.to_lists() if witness is not None else None})
    members = []
    for i, t in MEMBERSHIP:
        D = normal_form(chain, Kc - i * E)
        members.append({"i": i, "tableau": t, "contains": torus(t, chain).contains(D)})
    slopes = psi_bridge_slopes(PENCIL_TABLEAU, 1, 0)

    a, b = 1, 1
    top = CANONICAL_TABLEAU
    for _ in range(subtraction_count(top, a, b) - 1):
        top = t_minus_one(top, a, b, chain.k)
    xi = generic_construction(chain, top, seed=0)
    sk = build_scroll_map(chain, CANONICAL_TABLEAU, a, b, xi)
    before = check_assumptions(sk)
    lengths = assign_well_spaced_lengths(sk, base)
    after = check_assumptions(sk)
    ws = naive_well_spacedness(sk)
    report = {
        "chain": {"g": chain.g, "k": chain.k, "profile": list(chain.profile)},
        "canonical": {"degree": K.d, "xi": list(K.xi)},
        "rank_table": table,
        "membership": members,
        "pencil_slopes": {"tableau": PENCIL_TABLEAU, "psi0": list(slopes)},
        "scroll_map": {
            "tableau": CANONICAL_TABLEAU, "type": [a, b],
            "top_tableau": top.to_lists() if hasattr(top, "to_lists") else top,
            "construction": list(xi),
            "spans": before.spans,
            "superabundant": before.superabundant,
            "contracted_cycles": before.contracted_cycles,
        },
        "certificates": certificate_report(after, ws, lengths),
    }
    return report, sk


def certificate_report(assumptions, ws, lengths=None):
    """Plain-data summary of the certificate checks."""
    out = {
        "assumptions": {
            "A": assumptions.clause_a, "B": assumptions.clause_b, "C": assumptions.clause_c,
            "max_valence": assumptions.max_valence, "betti": assumptions.betti,
            "spans": assumptions.spans, "transverse": assumptions.transverse,
            "superabundant": assumptions.superabundant,
            "contracted_cycles": assumptions.contracted_cycles,
        },
        "well_spacedness": [
            {"cycle": c.cycle, "normal": list(c.normal), "distances": c.distances,
             "escape_sides": [side for _, _, side in c.escapes],
             "rays_in_hyperplane": c.rays_in_hyperplane, "merged_cycles": c.merged_cycles,
             "well_spaced": c.well_spaced}
            for c in ws.cycles
        ],
        "naively-well-spaced": ws.verdict,
        "realizable": (not assumptions.superabundant) or (assumptions.passes and ws.verdict),
    }
    if lengths is not None:
        out["lengths"] = {"base": lengths.base, "bridges": list(lengths.bridges),
                          "tuned": {str(j): {"tree": tr, "length": length}
                                    for j, (tr, length) in lengths.tuned.items()},
                          "threshold": lengths.threshold}
    return out
