"""Piecewise linear maps from a chain of cycles with attached trees.

A map is described by a list of rays ``rho`` of a fan in ``Z^n`` together
with an effective divisor ``Z_rho`` for each.  Coordinate ``c`` of the map is
the piecewise linear function whose divisor is ``sum_rho rho[c] * Z_rho``.
At every point of a ``Z_rho`` a tree is grafted whose leaves are rays in the
directions ``rho``; balancing then forces the direction of the tree's root.

Certificates computed here:

* the span of each cycle's image and the hyperplane containing it,
* trivalence, codimension and transversality checks for consecutive cycles,
* naive well-spacedness at cycles whose image lies in a hyperplane.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
import heapq
import math

import sympy

from .chain import (ChipList, CyclePoint, gonality_representatives,
                    normal_form, solve_pl_function)
from .errors import CertificateError, ConsistencyError, InputError
from .scrollar import (fan_rays, has_vertical_step, is_scrollar, subtraction_count,
                       t_minus_one)
from .tableaux import (as_tableau, check_construction_congruences, is_vertex_avoiding,
                       lattice_path, normal_to_construction, special_representatives)


@dataclass
class Vertex:
    id: int
    kind: str            # "cycle", "node"
    cycle: int | None    # cycle index for cycle vertices, base cycle for tree nodes
    label: str
    pos: tuple = ()


@dataclass
class Edge:
    id: int
    u: int
    v: int | None        # None for an infinite ray
    dir: tuple
    length: Fraction | None
    kind: str            # "arc", "bridge", "root", "spine", "leaf"
    cycle: int | None = None
    tree: int | None = None

    @property
    def is_ray(self):
        return self.v is None


@dataclass
class Tree:
    id: int
    base: int                        # vertex id on the chain
    point: CyclePoint
    leaves: list                     # (ray label, weight, divisor label)
    root_edge: int | None = None     # None when the tree is a single ray
    nodes: list = field(default_factory=list)


class TropicalMapSkeleton:
    """Metric graph, edge directions in ``Z^n`` and vertex positions."""

    def __init__(self, n, chain, kind, rays):
        self.n = n
        self.chain = chain
        self.kind = kind
        self.rays = rays            # label -> vector
        self.vertices = []
        self.edges = []
        self.trees = []
        self.info = {}

    @property
    def g(self):
        return self.chain.g

    def add_vertex(self, kind, cycle, label):
        v = Vertex(len(self.vertices), kind, cycle, label)
        self.vertices.append(v)
        return v.id

    def add_edge(self, u, v, direction, length, kind, cycle=None, tree=None):
        e = Edge(len(self.edges), u, v, tuple(int(c) for c in direction),
                 None if length is None else Fraction(length), kind, cycle, tree)
        self.edges.append(e)
        return e.id

    def cycle_edges(self, j):
        return [e for e in self.edges if e.kind == "arc" and e.cycle == j]

    def cycle_vertices(self, j):
        return sorted({x for e in self.cycle_edges(j) for x in (e.u, e.v)})

    def bridge_edge(self, j):
        for e in self.edges:
            if e.kind == "bridge" and e.cycle == j:
                return e
        raise KeyError(j)

    def incident(self):
        inc = defaultdict(list)
        for e in self.edges:
            inc[e.u].append(e)
            if e.v is not None:
                inc[e.v].append(e)
        return inc

    def set_length(self, edge_id, length):
        e = self.edges[edge_id]
        if e.is_ray or e.kind == "arc":
            raise InputError("only bridge and tree edge lengths are free")
        length = Fraction(length)
        if length <= 0:
            raise InputError("edge lengths must be positive")
        e.length = length
        if e.kind == "bridge":
            bridges = list(self.chain.bridges)
            bridges[e.cycle - 1] = length
            self.chain = self.chain.with_bridges(bridges)

    def integrate_positions(self):
        """Place every vertex by integrating direction times length from ``w_1``."""
        inc = self.incident()
        start = self.info["w"][1]
        pos = {start: tuple(Fraction(0) for _ in range(self.n))}
        stack = [start]
        while stack:
            u = stack.pop()
            for e in inc[u]:
                if e.is_ray:
                    continue
                if e.u == u:
                    other, sign = e.v, 1
                else:
                    other, sign = e.u, -1
                new = tuple(p + sign * d * e.length for p, d in zip(pos[u], e.dir))
                if other in pos:
                    if pos[other] != new:
                        raise ConsistencyError(f"positions do not close up at vertex {other}")
                else:
                    pos[other] = new
                    stack.append(other)
        if len(pos) != len(self.vertices):
            raise ConsistencyError("skeleton is disconnected")
        for v in self.vertices:
            v.pos = pos[v.id]

    def balancing_defects(self):
        """Vertices whose outgoing directions do not sum to zero."""
        total = defaultdict(lambda: [0] * self.n)
        for e in self.edges:
            for c in range(self.n):
                total[e.u][c] += e.dir[c]
                if e.v is not None:
                    total[e.v][c] -= e.dir[c]
        return {v: tuple(s) for v, s in total.items() if any(s)}

    def is_balanced(self):
        return not self.balancing_defects()


# ---------------------------------------------------------------------------
# construction

def _segments_on_cycle(f, chain, j):
    cyc = chain.cycles[j - 1]
    _, top = f.edges[("top", j)]
    _, bottom = f.edges[("bottom", j)]
    return [(o, s) for o, s in top] + [(cyc.l + o, s) for o, s in bottom]


def _slope_at(segs, pos):
    current = None
    for o, s in segs:
        if o <= pos:
            current = s
        else:
            break
    return current


def build_map(chain, rays, kind="custom", tree_length=1):
    """Assemble the skeleton for a list of ``(label, vector, divisor, name)``.

    ``divisor`` is an effective ChipList on the chain and ``name`` labels the
    divisor (used for tree leaves).
    """
    if not rays:
        raise InputError("need at least one ray")
    n = len(rays[0][1])
    for label, vec, Z, _ in rays:
        if len(vec) != n:
            raise InputError("ray vectors must share a dimension")
        if not Z.is_effective() and len(Z):
            raise InputError(f"divisor for ray {label} is not effective")
        for loc in Z:
            if not isinstance(loc, CyclePoint):
                raise InputError("ray divisors must be supported on the cycles")
    rays = [(label, tuple(vec), chain.canonicalize(Z), name) for label, vec, Z, name in rays]
    funcs = []
    for c in range(n):
        delta = ChipList()
        for _, vec, Z, _ in rays:
            if vec[c]:
                delta = delta + vec[c] * Z
        if delta.degree != 0:
            raise ConsistencyError(f"coordinate {c} has a divisor of degree {delta.degree}")
        funcs.append(solve_pl_function(chain, delta))

    sk = TropicalMapSkeleton(n, chain, kind, {label: vec for label, vec, _, _ in rays})
    attach = defaultdict(list)
    for label, vec, Z, name in rays:
        for loc, mult in Z.items():
            attach[loc].append((label, mult, name))

    vid_at = {}
    sk.info["v"], sk.info["w"] = {}, {}
    for j in range(1, chain.g + 1):
        cyc = chain.cycles[j - 1]
        segs = [_segments_on_cycle(f, chain, j) for f in funcs]
        points = {Fraction(0): chain.w(j), cyc.l: chain.v(j)}
        for loc in attach:
            if loc.j == j:
                pos = (loc.xi * cyc.m) % cyc.length
                points.setdefault(pos, loc)
        for s in segs:
            for o, _ in s:
                if o not in points:
                    raise ConsistencyError(f"breakpoint on cycle {j} away from attachment points")
        order = sorted(points)
        ids = []
        for pos in order:
            loc = points[pos]
            if pos == 0:
                name = f"w{j}"
            elif pos == cyc.l:
                name = f"v{j}"
            else:
                name = f"<{loc.xi}>_{j}"
            vid = sk.add_vertex("cycle", j, name)
            ids.append(vid)
            vid_at[chain.canonicalize(ChipList.of(loc)).support()[0]] = vid
        sk.info["w"][j] = ids[0]
        sk.info["v"][j] = ids[order.index(cyc.l)]
        ends = order[1:] + [cyc.length]
        for idx, (pos, end) in enumerate(zip(order, ends)):
            direction = tuple(_slope_at(s, pos) for s in segs)
            sk.add_edge(ids[idx], ids[(idx + 1) % len(ids)], direction, end - pos, "arc", cycle=j)
    for j in range(1, chain.g):
        direction = []
        for f in funcs:
            _, bsegs = f.edges[("bridge", j)]
            if len(bsegs) != 1:
                raise ConsistencyError("bridge carries a breakpoint")
            direction.append(bsegs[0][1])
        sk.add_edge(sk.info["w"][j], sk.info["v"][j + 1], direction, chain.bridges[j - 1],
                    "bridge", cycle=j)

    label_order = {label: i for i, (label, _, _, _) in enumerate(rays)}
    for loc in sorted(attach, key=lambda p: (p.j, p.xi)):
        leaves = sorted(attach[loc], key=lambda x: label_order[x[0]])
        base = vid_at[loc]
        tree = Tree(len(sk.trees), base, loc, [(lab, w, name) for lab, w, name in leaves])
        sk.trees.append(tree)
        root = tuple(sum(w * sk.rays[lab][c] for lab, w, _ in leaves) for c in range(n))
        if len(leaves) == 1:
            lab, w, _ = leaves[0]
            sk.add_edge(base, None, tuple(w * x for x in sk.rays[lab]), None, "leaf", tree=tree.id)
            continue
        node = sk.add_vertex("node", loc.j, f"tree{tree.id}.0")
        tree.nodes.append(node)
        tree.root_edge = sk.add_edge(base, node, root, tree_length, "root", tree=tree.id)
        remaining = list(root)
        for idx, (lab, w, _) in enumerate(leaves):
            vec = tuple(w * x for x in sk.rays[lab])
            sk.add_edge(node, None, vec, None, "leaf", tree=tree.id)
            remaining = [r - x for r, x in zip(remaining, vec)]
            if idx == len(leaves) - 2:
                lab2, w2, _ = leaves[-1]
                last = tuple(w2 * x for x in sk.rays[lab2])
                if tuple(remaining) != last:
                    raise ConsistencyError("tree directions do not balance")
                sk.add_edge(node, None, last, None, "leaf", tree=tree.id)
                break
            nxt = sk.add_vertex("node", loc.j, f"tree{tree.id}.{idx + 1}")
            tree.nodes.append(nxt)
            sk.add_edge(node, nxt, remaining, tree_length, "spine", tree=tree.id)
            node = nxt
    sk.info["functions"] = funcs
    sk.integrate_positions()
    defects = sk.balancing_defects()
    if defects:
        raise ConsistencyError(f"map is not balanced at vertices {sorted(defects)}")
    return sk


def _require_generic(chain):
    if any(chain.profile):
        raise InputError("the generic construction needs a chain with no torsion")


def build_generic_map(chain, t, xi):
    """Map to ``R^r`` by ``(psi_0, ..., psi_{r-1})`` for a vertex avoiding divisor.

    Rays of ``D_i`` point along ``e_i`` with ``e_r = -(1, ..., 1)``.
    """
    _require_generic(chain)
    t = as_tableau(t)
    r = t.cols - 1
    if r < 1:
        raise InputError("need at least two columns")
    if not is_vertex_avoiding(chain, t, xi):
        raise InputError("construction coordinates are not vertex avoiding")
    reps = special_representatives(chain, t, xi)
    rays = []
    for i in range(r + 1):
        vec = [0] * r
        if i < r:
            vec[i] = 1
        else:
            vec = [-1] * r
        rays.append((("e", i), tuple(vec), reps[i], f"D_{i}"))
    sk = build_map(chain, rays, kind="generic")
    sk.info.update(tableau=t.to_lists(), r=r)
    return sk


def scroll_divisors(chain, t, a, b, xi):
    """Divisors feeding the scroll map.

    ``xi`` are construction coordinates for ``t(-m+1)``, the tableau with
    ``n + b`` columns.  Returns a dict with the tableaux ``t(-m+1)`` and
    ``t(-m)``, the representatives of both classes and ``E, E_0, E_1``.
    """
    k = chain.k
    if k is None:
        raise InputError("chain carries no gonality")
    t = as_tableau(t)
    n = a + b
    if not is_scrollar(t, a, b, k, chain.g):
        raise InputError(f"{t!r} is not scrollar of type ({a},{b}) for k = {k}")
    if n > 1 and has_vertical_step(t):
        raise InputError("tableau has a vertical step")
    m = subtraction_count(t, a, b)
    if m < 1:
        raise InputError("tableau needs at least n columns")
    top = t
    for _ in range(m - 1):
        top = t_minus_one(top, a, b, k)
    if not check_construction_congruences(chain, top, xi):
        raise InputError("coordinates violate the congruences of t(-m+1)")
    upper = special_representatives(chain, top, xi)
    E, E0, E1 = gonality_representatives(chain, k)
    out = {"m": m, "top": top, "upper": upper, "E": E, "E0": E0, "E1": E1,
           "bottom": None, "lower": [], "lower_xi": None}
    if b >= 1:
        bottom = t_minus_one(top, a, b, k)
        N = normal_form(chain, chain.chips_of(normal_form(chain, upper[0])) - E)
        lower_xi = normal_to_construction(chain, bottom, N)
        if not is_vertex_avoiding(chain, bottom, lower_xi):
            raise InputError("D(-m) is not vertex avoiding; choose more general coordinates")
        out.update(bottom=bottom, lower=special_representatives(chain, bottom, lower_xi),
                   lower_xi=lower_xi)
    return out


def build_scroll_map(chain, t, a, b, xi):
    """Map to the scroll fan's ambient ``R^n`` by
    ``(phi_0, psi_0, ..., psi_{b-2}, psi_b, ..., psi_{n-1})``.

    Coordinate 0 is ``phi_0`` with divisor ``E_0 - E_1``.  Fan rays carry
    the divisors ``u_1: E_0``, ``u_0: E_1``, ``e_0: D(-m)_{b-1}``,
    ``e_c: D(-m)_{c-1}`` for ``1 <= c < b`` and ``e_c: D(-m+1)_c`` for
    ``c >= b``.  When ``b = 0``, ``e_0`` carries ``D(-m+1)_{n-1}`` and
    ``e_c`` carries ``D(-m+1)_{c-1}``.
    """
    data = scroll_divisors(chain, t, a, b, xi)
    n = a + b
    fan = fan_rays(a, b)
    upper, lower = data["upper"], data["lower"]
    rays = [("u1", fan["u1"], data["E0"], "E_0"), ("u0", fan["u0"], data["E1"], "E_1")]
    if n > 1:
        for c in range(n):
            if b >= 1:
                if c == 0:
                    Z, name = lower[b - 1], f"D(-m)_{b - 1}"
                elif c < b:
                    Z, name = lower[c - 1], f"D(-m)_{c - 1}"
                else:
                    Z, name = upper[c], f"D(-m+1)_{c}"
            else:
                idx = n - 1 if c == 0 else c - 1
                Z, name = upper[idx], f"D(-m+1)_{idx}"
            rays.append((("e", c), fan[("e", c)], Z, name))
    sk = build_map(chain, rays, kind="scroll")
    sk.info.update(tableau=as_tableau(t).to_lists(), a=a, b=b, k=chain.k, m=data["m"],
                   top=data["top"].to_lists())
    return sk


def expected_scroll_bridge_direction(t_top, a, b, k, j):
    """``(k, p_j(n), ..., p_j(n+b-2), p_j(b), ..., p_j(n-1))`` from the path of ``t(-m+1)``."""
    n = a + b
    p = lattice_path(t_top, g=max(j, max(as_tableau(t_top).symbols())))
    return (k,) + tuple(p.at(j, n + i) for i in range(b - 1)) + tuple(p.at(j, i) for i in range(b, n))


# ---------------------------------------------------------------------------
# certificates

def _rank(vectors):
    if not vectors:
        return 0
    return sympy.Matrix([list(v) for v in vectors]).rank()


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector whose first
    nonzero entry is positive."""
    vec = [Fraction(int(x.p), int(x.q)) for x in vec]
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    gcd = math.gcd(*ints)
    ints = [x // gcd for x in ints]
    sign = next((1 if x > 0 else -1 for x in ints if x), 1)
    return tuple(sign * x for x in ints)


@dataclass
class CycleSpan:
    cycle: int
    dimension: int
    basis: list
    normal: tuple | None


def cycle_span(sk, j):
    """Span of the directions of the arcs of cycle ``j``."""
    dirs = [e.dir for e in sk.cycle_edges(j)]
    if not dirs:
        raise InputError(f"cycle {j} has no edges")
    M = sympy.Matrix([list(d) for d in dirs])
    dim = M.rank()
    basis = [tuple(int(c) for c in col) for col in M.T.columnspace()]
    normal = None
    if dim == sk.n - 1:
        null = M.nullspace()
        normal = _primitive(list(null[0]))
    return CycleSpan(j, dim, basis, normal)


def tree_root_span(sk, j):
    """Span of the tree roots on cycle ``j`` and its two bridges."""
    vecs = []
    cyc_vs = set(sk.cycle_vertices(j))
    for e in sk.edges:
        if e.kind in ("root", "leaf") and e.u in cyc_vs:
            vecs.append(e.dir)
        if e.kind == "bridge" and e.cycle in (j - 1, j):
            vecs.append(e.dir)
    return _rank(vecs)


@dataclass
class AssumptionReport:
    trivalent: bool
    max_valence: int
    betti: int
    chain_shaped: bool
    spans: list
    codim_ok: bool
    transverse: list
    transverse_ok: bool
    superabundant: bool
    contracted_cycles: list

    @property
    def clause_a(self):
        return self.trivalent and self.chain_shaped

    @property
    def clause_b(self):
        return self.codim_ok

    @property
    def clause_c(self):
        return self.transverse_ok

    @property
    def passes(self):
        return self.clause_a and self.clause_b and self.clause_c


def check_assumptions(sk):
    """Trivalence, codimension at most one per cycle and transversality of
    consecutive cycles; also reports superabundance."""
    inc = sk.incident()
    valence = {v.id: len(inc[v.id]) for v in sk.vertices}
    max_val = max(valence.values())
    finite = [e for e in sk.edges if not e.is_ray]
    betti = len(finite) - len(sk.vertices) + 1
    chain_shaped = betti == sk.g and all(
        _is_simple_cycle(sk.cycle_edges(j)) for j in range(1, sk.g + 1))
    spans = [cycle_span(sk, j) for j in range(1, sk.g + 1)]
    codim_ok = all(sp.dimension >= sk.n - 1 for sp in spans)
    transverse = []
    for j in range(1, sk.g):
        dirs = [e.dir for e in sk.cycle_edges(j) + sk.cycle_edges(j + 1)]
        transverse.append(_rank(dirs) == sk.n)
    contracted = [sp.cycle for sp in spans if sp.dimension < sk.n]
    return AssumptionReport(
        trivalent=max_val <= 3, max_valence=max_val, betti=betti, chain_shaped=chain_shaped,
        spans=[sp.dimension for sp in spans], codim_ok=codim_ok, transverse=transverse,
        transverse_ok=all(transverse), superabundant=bool(contracted),
        contracted_cycles=contracted)


def _is_simple_cycle(edges):
    if not edges:
        return False
    deg = defaultdict(int)
    for e in edges:
        deg[e.u] += 1
        deg[e.v] += 1
    return all(d == 2 for d in deg.values()) and len(deg) == len(edges)


@dataclass
class CycleEscape:
    cycle: int
    normal: tuple
    offset: Fraction
    escapes: list            # (vertex id, distance, side cycle)
    distances: list
    rays_in_hyperplane: int
    merged_cycles: list
    well_spaced: bool


@dataclass
class WellSpacednessReport:
    cycles: list

    @property
    def verdict(self):
        return all(c.well_spaced for c in self.cycles)


def _side_cycle(sk, vid):
    return sk.vertices[vid].cycle


def escape_data(sk, j):
    """Component of the hyperplane preimage containing cycle ``j`` and its
    1-valent vertices with their distances from the cycle."""
    span = cycle_span(sk, j)
    if span.normal is None:
        return None
    chi = span.normal
    start = sk.cycle_vertices(j)
    offset = sum(Fraction(c) * p for c, p in zip(chi, sk.vertices[start[0]].pos))
    inc = sk.incident()

    def flat(e):
        return sum(c * d for c, d in zip(chi, e.dir)) == 0

    comp = set(start)
    comp_edges = []
    stack = list(start)
    seen_edges = set()
    while stack:
        u = stack.pop()
        for e in inc[u]:
            if e.id in seen_edges or not flat(e):
                continue
            seen_edges.add(e.id)
            comp_edges.append(e)
            if e.is_ray:
                continue
            other = e.v if e.u == u else e.u
            if other not in comp:
                comp.add(other)
                stack.append(other)
    degree = defaultdict(int)
    for e in comp_edges:
        degree[e.u] += 1
        if e.v is not None:
            degree[e.v] += 1
    rays_in = sum(1 for e in comp_edges if e.is_ray)
    # shortest distances from the cycle inside the component
    adj = defaultdict(list)
    for e in comp_edges:
        if not e.is_ray:
            adj[e.u].append((e.v, e.length))
            adj[e.v].append((e.u, e.length))
    dist = {v: Fraction(0) for v in start}
    heap = [(Fraction(0), v) for v in start]
    while heap:
        dcur, u = heapq.heappop(heap)
        if dcur > dist[u]:
            continue
        for w, length in adj[u]:
            nd = dcur + length
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    escapes = sorted(((v, dist[v], _side_cycle(sk, v)) for v in comp if degree[v] == 1),
                     key=lambda x: (x[1], x[0]))
    merged = sorted({e.cycle for e in comp_edges if e.kind == "arc" and e.cycle != j})
    merged = [c for c in merged
              if all(flat(e) for e in sk.cycle_edges(c))
              and all(x in comp for x in sk.cycle_vertices(c))]
    dists = [d for _, d, _ in escapes]
    return CycleEscape(j, chi, offset, escapes, dists, rays_in, merged, min_attained_twice(dists))


def min_attained_twice(distances):
    """True if the smallest distance occurs at least twice, or there are none."""
    distances = list(distances)
    if not distances:
        return True
    return distances.count(min(distances)) >= 2


def naive_well_spacedness(sk):
    """Check that at each cycle lying in a hyperplane the nearest escape
    distance is attained at least twice."""
    out = []
    for j in range(1, sk.g + 1):
        data = escape_data(sk, j)
        if data is not None:
            out.append(data)
    return WellSpacednessReport(out)


def _tree_of_vertex(sk, vid):
    for tree in sk.trees:
        if vid in tree.nodes:
            return tree
    return None


@dataclass
class LengthAssignment:
    base: Fraction
    bridges: tuple
    tuned: dict              # cycle -> (tree id, length)
    report: WellSpacednessReport
    threshold: int | None


def _recipe_bridges(g, k, base):
    bridges = []
    for i in range(1, g):
        if i <= k - 1:
            bridges.append(Fraction(base) ** (k - i))
        elif i >= g - k + 2:
            bridges.append(Fraction(base) ** (i - (g - k + 1)))
        else:
            bridges.append(Fraction(1))
    return bridges


def _apply_bridges(sk, bridges):
    for j, length in enumerate(bridges, start=1):
        sk.set_length(sk.bridge_edge(j).id, length)


def _tune(sk):
    tuned = {}
    for j in range(1, sk.g + 1):
        data = escape_data(sk, j)
        if data is None:
            continue
        cands = []
        for vid, dist, _ in data.escapes:
            tree = _tree_of_vertex(sk, vid)
            if tree is not None and tree.point.j == j and tree.root_edge is not None \
                    and tree.nodes and tree.nodes[0] == vid:
                cands.append(tree)
        if not cands:
            raise CertificateError(f"no tree on cycle {j} can be tuned")
        cands.sort(key=lambda tr: (len(tr.leaves) != 2, tr.id))
        tree = cands[0]
        others = [d for vid, d, _ in data.escapes if vid != tree.nodes[0]]
        if not others:
            raise CertificateError(f"cycle {j} has no other escape to match")
        target = min(others)
        sk.set_length(tree.root_edge, target)
        tuned[j] = (tree.id, target)
    return tuned


def _nearest_on_inner_side(sk, base):
    """True if, with bridge base ``base``, every contracted end cycle's
    nearest non-tree escape lies on the neighbour toward the middle."""
    k = sk.info["k"]
    saved = [e.length for e in sk.edges]
    saved_chain = sk.chain
    try:
        _apply_bridges(sk, _recipe_bridges(sk.g, k, base))
        for j in range(1, sk.g + 1):
            data = escape_data(sk, j)
            if data is None:
                continue
            own = [(d, side) for vid, d, side in data.escapes
                   if not (_tree_of_vertex(sk, vid) and _tree_of_vertex(sk, vid).point.j == j)]
            if not own:
                continue
            lo = min(d for d, _ in own)
            sides = {side for d, side in own if d == lo}
            want = j + 1 if j <= k - 1 else j - 1
            if sides != {want}:
                return False
        return True
    finally:
        for e, length in zip(sk.edges, saved):
            e.length = length
        sk.chain = saved_chain


def recipe_threshold(sk, cap=10 ** 6):
    """Smallest integer base above which the recipe's intended neighbour
    gives the nearest escape for every contracted end cycle, or ``None``."""
    if _nearest_on_inner_side(sk, 2):
        return 2
    hi = 4
    while not _nearest_on_inner_side(sk, hi):
        hi *= 2
        if hi > cap:
            return None
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _nearest_on_inner_side(sk, mid):
            hi = mid
        else:
            lo = mid
    return hi


def assign_well_spaced_lengths(sk, base=1000):
    """Set bridge lengths to powers of ``base`` and tune one two-leaf tree per
    contracted cycle so the nearest escape distance is attained twice.

    Bridges ``i <= k-1`` get ``base**(k-i)`` and bridges ``i >= g-k+2`` get
    ``base**(i-(g-k+1))``; the others keep their length.
    """
    if sk.kind != "scroll":
        raise InputError("the length recipe applies to scroll maps")
    base = Fraction(base)
    if base <= 1:
        raise InputError("base must exceed 1")
    k = sk.info["k"]
    bridges = _recipe_bridges(sk.g, k, base)
    for j, old in enumerate(sk.chain.bridges, start=1):
        if k - 1 < j < sk.g - k + 2:
            bridges[j - 1] = old
    _apply_bridges(sk, bridges)
    tuned = _tune(sk)
    sk.integrate_positions()
    report = naive_well_spacedness(sk)
    if not report.verdict:
        raise CertificateError("tuned lengths did not produce a well-spaced map")
    threshold = recipe_threshold(sk) if report.cycles else None
    return LengthAssignment(base, tuple(bridges), tuned, report, threshold)
