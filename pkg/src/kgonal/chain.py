"""Divisors on a chain of cycles.

The chain has cycles ``gamma_1 .. gamma_g`` joined left to right by bridges.
Bridge ``beta_j`` runs from ``w_j`` on cycle ``j`` to ``v_{j+1}``.  A point of
cycle ``j`` is written ``<xi>_j``: it sits ``xi * m_j`` units counterclockwise
from ``w_j``.  In particular ``w_j = <0>_j`` and ``v_j = <-1>_j``.

Torsion cycles are normalized to ``m_j = 1`` and ``l_j = mu_j - 1``, so two
coordinates name the same point exactly when they agree modulo ``mu_j``.
Generic cycles (``mu_j = 0``) compare coordinates by equality.  They still
carry numeric lengths, which are only used when a concrete metric is needed
(piecewise linear functions and map skeletons).
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, InputError
from .rational import mod, q

# Circumference, in coordinate units, used to realize generic cycles.  It is
# deliberately non-integral so no integer coordinate lands on a vertex after
# wrapping, and large enough that coordinates in practical use never wrap.
GENERIC_CIRCUMFERENCE = Fraction(10007, 10)


def torsion_order(l, m, generic=False):
    """Minimal positive ``mu`` with ``mu*m`` an integer multiple of ``l+m``.

    Returns 0 when the cycle is flagged generic (irrational length ratio).

    >>> torsion_order(2, 1)
    3
    >>> torsion_order(1, 2)
    3
    """
    if generic:
        return 0
    l, m = q(l), q(m)
    if l <= 0 or m <= 0:
        raise InputError("cycle edge lengths must be positive")
    return (m / (l + m)).denominator


@dataclass(frozen=True, order=True)
class CyclePoint:
    """The point ``<xi>_j``.  Build through ``ChainOfCycles.point`` to canonicalize."""

    j: int
    xi: Fraction

    def __repr__(self):
        return f"<{self.xi}>_{self.j}"


@dataclass(frozen=True, order=True)
class BridgePoint:
    """A point at distance ``t`` from ``w_j`` along bridge ``beta_j``."""

    j: int
    t: Fraction

    def __repr__(self):
        return f"beta_{self.j}({self.t})"


class ChipList:
    """A finite integer combination of points of the chain.

    Immutable; supports ``+``, ``-``, negation and integer scaling.
    """

    __slots__ = ("_chips",)

    def __init__(self, chips=None):
        acc = defaultdict(int)
        if chips is not None:
            items = chips.items() if hasattr(chips, "items") else chips
            for loc, mult in items:
                if not isinstance(loc, (CyclePoint, BridgePoint)):
                    raise InputError(f"unknown chip location {loc!r}")
                acc[loc] += int(mult)
        self._chips = {loc: c for loc, c in sorted(acc.items(), key=_loc_key) if c}

    @classmethod
    def of(cls, *locations):
        """Effective chip list with one chip per listed location."""
        return cls((loc, 1) for loc in locations)

    def items(self):
        return self._chips.items()

    def __iter__(self):
        return iter(self._chips)

    def __len__(self):
        return len(self._chips)

    def __getitem__(self, loc):
        return self._chips.get(loc, 0)

    @property
    def degree(self):
        return sum(self._chips.values())

    def is_effective(self):
        return all(c > 0 for c in self._chips.values())

    def support(self):
        return list(self._chips)

    def on_cycle(self, j):
        return {loc: c for loc, c in self._chips.items()
                if isinstance(loc, CyclePoint) and loc.j == j}

    def __add__(self, other):
        if not isinstance(other, ChipList):
            return NotImplemented
        return ChipList(list(self.items()) + list(other.items()))

    def __neg__(self):
        return ChipList((loc, -c) for loc, c in self.items())

    def __sub__(self, other):
        if not isinstance(other, ChipList):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return ChipList((loc, n * c) for loc, c in self.items())

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ChipList) and self._chips == other._chips

    def __hash__(self):
        return hash(tuple(self._chips.items()))

    def __repr__(self):
        if not self._chips:
            return "ChipList(0)"
        terms = [f"{c}*{loc!r}" if c != 1 else repr(loc) for loc, c in self.items()]
        return "ChipList(" + " + ".join(terms) + ")"


def _loc_key(item):
    loc = item[0]
    if isinstance(loc, CyclePoint):
        return (loc.j, 0, loc.xi)
    return (loc.j, 1, loc.t)


@dataclass(frozen=True)
class Cycle:
    """Edge lengths and torsion order of one cycle."""

    l: Fraction
    m: Fraction
    mu: int

    @property
    def length(self):
        return self.l + self.m

    @property
    def generic(self):
        return self.mu == 0


@dataclass(frozen=True)
class Divisor:
    """A divisor class in normal form ``(d-g) w_g + sum_j <xi_j>_j``.

    Build through ``ChainOfCycles.divisor`` or ``normal_form`` so the
    coordinates are canonical; then equality of values is equality of classes.
    """

    d: int
    xi: tuple

    @property
    def g(self):
        return len(self.xi)


class ChainOfCycles:
    """A metric chain of ``g`` cycles with torsion data."""

    def __init__(self, cycles, bridges=None, k=None):
        cycles = tuple(cycles)
        if not cycles:
            raise InputError("a chain needs at least one cycle")
        for c in cycles:
            if not isinstance(c, Cycle):
                raise InputError(f"expected Cycle records, got {c!r}")
            if c.mu < 0:
                raise InputError("torsion orders must be nonnegative")
            if c.l <= 0 or c.m <= 0:
                raise InputError("cycle edge lengths must be positive")
            if c.mu > 0 and (c.m != 1 or c.l != c.mu - 1):
                raise InputError("torsion cycles must be normalized to m = 1, l = mu - 1")
        g = len(cycles)
        if bridges is None:
            bridges = (Fraction(1),) * (g - 1)
        bridges = tuple(q(b) for b in bridges)
        if len(bridges) != g - 1:
            raise InputError(f"expected {g - 1} bridge lengths, got {len(bridges)}")
        if any(b <= 0 for b in bridges):
            raise InputError("bridge lengths must be positive")
        self.cycles = cycles
        self.bridges = bridges
        self.k = k

    # construction -----------------------------------------------------
    @classmethod
    def from_profile(cls, mu, bridges=None, k=None, generic_lengths=None):
        """Chain with torsion profile ``mu``, normalized torsion cycles and
        generic cycles realized with ``GENERIC_CIRCUMFERENCE`` unless
        ``generic_lengths`` maps an index to an explicit ``(l, m)``."""
        cycles = []
        for j, mu_j in enumerate(mu, start=1):
            if not isinstance(mu_j, int) or mu_j < 0:
                raise InputError(f"torsion entries must be nonnegative integers, got {mu_j!r}")
            if mu_j == 1:
                raise InputError("torsion order 1 cannot be realized by positive edge lengths")
            if mu_j > 0:
                cycles.append(Cycle(Fraction(mu_j - 1), Fraction(1), mu_j))
            else:
                l, m = (generic_lengths or {}).get(j, (GENERIC_CIRCUMFERENCE - 1, Fraction(1)))
                cycles.append(Cycle(q(l), q(m), 0))
        return cls(cycles, bridges, k)

    def with_bridges(self, bridges):
        return ChainOfCycles(self.cycles, bridges, self.k)

    # basic data --------------------------------------------------------
    @property
    def g(self):
        return len(self.cycles)

    @property
    def profile(self):
        return tuple(c.mu for c in self.cycles)

    def mu(self, j):
        self._check_index(j)
        return self.cycles[j - 1].mu

    def _check_index(self, j):
        if not isinstance(j, int) or not 1 <= j <= self.g:
            raise InputError(f"cycle index {j!r} outside 1..{self.g}")

    def canon(self, j, xi):
        """Canonical coordinate of ``<xi>_j``."""
        mu = self.mu(j)
        xi = q(xi)
        return mod(xi, mu) if mu > 0 else xi

    def same_coordinate(self, j, a, b):
        return self.canon(j, a) == self.canon(j, b)

    def point(self, j, xi):
        return CyclePoint(j, self.canon(j, xi))

    def v(self, j):
        return self.point(j, -1)

    def w(self, j):
        return self.point(j, 0)

    def bridge_point(self, j, t):
        if not isinstance(j, int) or not 1 <= j < self.g:
            raise InputError(f"bridge index {j!r} outside 1..{self.g - 1}")
        t = q(t)
        if t < 0 or t > self.bridges[j - 1]:
            raise InputError(f"offset {t} outside bridge {j}")
        if t == 0:
            return self.w(j)
        if t == self.bridges[j - 1]:
            return self.v(j + 1)
        return BridgePoint(j, t)

    def divisor(self, d, xi):
        """Normal-form divisor with canonicalized coordinates."""
        xi = tuple(xi)
        if len(xi) != self.g:
            raise InputError(f"expected {self.g} coordinates, got {len(xi)}")
        if not isinstance(d, int):
            raise InputError("degree must be an integer")
        return Divisor(d, tuple(self.canon(j, x) for j, x in enumerate(xi, start=1)))

    def chips_of(self, D):
        """Chip list ``(d-g) w_g + sum <xi_j>_j`` of a normal-form divisor."""
        self._check_divisor(D)
        chips = [(self.point(j, x), 1) for j, x in enumerate(D.xi, start=1)]
        chips.append((self.w(self.g), D.d - self.g))
        return ChipList(chips)

    def _check_divisor(self, D):
        if not isinstance(D, Divisor) or D.g != self.g:
            raise InputError("divisor does not belong to this chain")

    def canonicalize(self, chips):
        """Re-express every chip location in canonical form."""
        out = []
        for loc, c in chips.items():
            if isinstance(loc, CyclePoint):
                out.append((self.point(loc.j, loc.xi), c))
            else:
                out.append((self.bridge_point(loc.j, loc.t), c))
        return ChipList(out)

    def __eq__(self, other):
        return (isinstance(other, ChainOfCycles) and self.cycles == other.cycles
                and self.bridges == other.bridges)

    def __hash__(self):
        return hash((self.cycles, self.bridges))

    def __repr__(self):
        return f"ChainOfCycles(g={self.g}, profile={self.profile}, k={self.k})"


def k_gonal_profile(g, k):
    """Torsion ``k`` on cycles ``k .. g-k+1`` and generic elsewhere."""
    return tuple(0 if (i <= k - 1 or i >= g - k + 2) else k for i in range(1, g + 1))


def k_gonal_chain(g, k, bridges=None):
    """The chain whose torsion profile realizes gonality ``k``.

    >>> k_gonal_chain(5, 3).profile
    (0, 0, 3, 0, 0)
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"gonality must be an integer >= 2, got {k!r}")
    if not isinstance(g, int) or g < 1:
        raise InputError(f"genus must be a positive integer, got {g!r}")
    return ChainOfCycles.from_profile(k_gonal_profile(g, k), bridges=bridges, k=k)


def _as_chips(chain, D):
    if isinstance(D, Divisor):
        return chain.chips_of(D)
    if isinstance(D, ChipList):
        return chain.canonicalize(D)
    raise InputError(f"expected a Divisor or ChipList, got {type(D).__name__}")


def sweep(chain, chips):
    """Left-to-right normalization sweep.

    Returns the list of coordinates and the list of counts passed across
    each cycle.  ``passed[j-1]`` is the number of chips leaving cycle ``j``
    to the right (negative means virtual chips).
    """
    chips = _as_chips(chain, chips)
    g = chain.g
    resident_count = [0] * (g + 1)
    resident_sum = [Fraction(0)] * (g + 1)
    bridge_count = [0] * (g + 1)
    for loc, c in chips.items():
        if isinstance(loc, CyclePoint):
            resident_count[loc.j] += c
            resident_sum[loc.j] += c * loc.xi
        else:
            bridge_count[loc.j] += c
    xi, passed = [], []
    entering = 0
    for j in range(1, g + 1):
        xi.append(chain.canon(j, resident_sum[j] - entering))
        leaving = entering + resident_count[j] - 1
        passed.append(leaving)
        entering = leaving + bridge_count[j]
    return xi, passed


def normal_form(chain, chips):
    """The unique normal-form divisor equivalent to ``chips``.

    >>> ch = k_gonal_chain(5, 3)
    >>> normal_form(ch, ChipList.of(ch.v(1), ch.point(1, 1), ch.point(2, 2)))
    Divisor(d=3, xi=(Fraction(0, 1), Fraction(1, 1), Fraction(2, 1), Fraction(0, 1), Fraction(1, 1)))
    """
    if isinstance(chips, Divisor):
        chain._check_divisor(chips)
        return chips
    chips = _as_chips(chain, chips)
    xi, passed = sweep(chain, chips)
    d = chips.degree
    if passed[-1] != d - chain.g:
        raise ConsistencyError(
            f"sweep passed {passed[-1]} chips past the last cycle, expected {d - chain.g}")
    return Divisor(d, tuple(xi))


def xi_tilde(chain, D, j):
    """Linear functional ``(resident coordinates on gamma_j) - (degree left of gamma_j)``.

    Reduced modulo ``mu_j`` on torsion cycles.  On a normal form this is
    ``xi_j - (j - 1)``.
    """
    chain._check_index(j)
    if isinstance(D, Divisor):
        chain._check_divisor(D)
        return chain.canon(j, D.xi[j - 1] - (j - 1))
    chips = _as_chips(chain, D)
    total = Fraction(0)
    left = 0
    for loc, c in chips.items():
        if isinstance(loc, CyclePoint):
            if loc.j == j:
                total += c * loc.xi
            elif loc.j < j:
                left += c
        elif loc.j < j:
            left += c
    return chain.canon(j, total - left)


def is_equivalent(chain, D1, D2):
    """True when the two divisors (normal forms or chip lists) are linearly equivalent."""
    return normal_form(chain, D1) == normal_form(chain, D2)


def canonical_divisor(chain):
    """``K = v_2 + ... + v_g + w_1 + ... + w_{g-1}``, of degree ``2g - 2``."""
    g = chain.g
    return ChipList.of(*[chain.v(j) for j in range(2, g + 1)],
                       *[chain.w(j) for j in range(1, g)])


def gonality_representatives(chain, k):
    """The three degree-``k`` pencil divisors ``E = k v_k``, ``E_0`` and ``E_1``.

    ``E_1`` is ``v_1 + sum_{j<k} <j>_j`` and ``E_0`` is
    ``w_g + sum_{j >= g-k+2} <j-(g+2)>_j``.
    """
    g = chain.g
    if chain.profile != k_gonal_profile(g, k):
        raise InputError(f"chain profile {chain.profile} is not the {k}-gonal profile")
    if k > g:
        raise InputError("gonality exceeds the genus")
    E = k * ChipList.of(chain.v(k))
    E1 = ChipList.of(chain.v(1), *[chain.point(j, j) for j in range(1, k)])
    E0 = ChipList.of(chain.w(g), *[chain.point(j, j - (g + 2)) for j in range(g - k + 2, g + 1)])
    return E, E0, E1


# ---------------------------------------------------------------------------
# piecewise linear functions

def _edge_length(chain, key):
    kind, j = key
    if kind == "top":
        return chain.cycles[j - 1].l
    if kind == "bottom":
        return chain.cycles[j - 1].m
    return chain.bridges[j - 1]


def chain_edges(chain):
    """Keys of the chain's edges: ``("top", j)`` runs ``w_j -> v_j``
    counterclockwise, ``("bottom", j)`` runs ``v_j -> w_j`` counterclockwise
    and ``("bridge", j)`` runs ``w_j -> v_{j+1}``."""
    keys = []
    for j in range(1, chain.g + 1):
        keys += [("top", j), ("bottom", j)]
        if j < chain.g:
            keys.append(("bridge", j))
    return keys


class PLFunction:
    """A continuous piecewise linear function with integer slopes on the chain.

    ``edges`` maps each edge key to ``(start_value, segments)``, where
    ``segments`` is a tuple of ``(offset, slope)`` pairs with strictly
    increasing offsets starting at 0.
    """

    def __init__(self, chain, edges):
        self.chain = chain
        clean = {}
        for key in chain_edges(chain):
            if key not in edges:
                raise InputError(f"missing edge {key}")
            start, segs = edges[key]
            length = _edge_length(chain, key)
            segs = tuple((q(o), s) for o, s in segs)
            if not segs or segs[0][0] != 0:
                raise InputError(f"edge {key}: first segment must start at offset 0")
            for (o1, _), (o2, _) in zip(segs, segs[1:]):
                if not o1 < o2:
                    raise InputError(f"edge {key}: offsets must increase")
            if segs[-1][0] >= length:
                raise InputError(f"edge {key}: breakpoint beyond the edge")
            for _, s in segs:
                if isinstance(s, Fraction):
                    if s.denominator != 1:
                        raise InputError(f"edge {key}: non-integer slope {s}")
                    s = s.numerator
                if not isinstance(s, int):
                    raise InputError(f"edge {key}: non-integer slope {s!r}")
            clean[key] = (q(start), tuple((o, int(s)) for o, s in segs))
        self.edges = clean
        self._check_continuity()

    @classmethod
    def constant(cls, chain, value=0):
        return cls(chain, {key: (value, ((0, 0),)) for key in chain_edges(chain)})

    def end_value(self, key):
        start, segs = self.edges[key]
        length = _edge_length(self.chain, key)
        total = start
        bounds = [o for o, _ in segs[1:]] + [length]
        for (o, s), nxt in zip(segs, bounds):
            total += s * (nxt - o)
        return total

    def start_value(self, key):
        return self.edges[key][0]

    def value_at(self, key, offset):
        start, segs = self.edges[key]
        total = start
        offset = q(offset)
        bounds = [o for o, _ in segs[1:]] + [_edge_length(self.chain, key)]
        for (o, s), nxt in zip(segs, bounds):
            if offset <= o:
                break
            total += s * (min(offset, nxt) - o)
        return total

    def first_slope(self, key):
        return self.edges[key][1][0][1]

    def last_slope(self, key):
        return self.edges[key][1][-1][1]

    def _vertex_values(self):
        """Every (vertex, value) pair implied by edge endpoints."""
        g = self.chain.g
        pairs = []
        for j in range(1, g + 1):
            pairs.append((("w", j), self.start_value(("top", j))))
            pairs.append((("v", j), self.end_value(("top", j))))
            pairs.append((("v", j), self.start_value(("bottom", j))))
            pairs.append((("w", j), self.end_value(("bottom", j))))
            if j < g:
                pairs.append((("w", j), self.start_value(("bridge", j))))
                pairs.append((("v", j + 1), self.end_value(("bridge", j))))
        return pairs

    def _check_continuity(self):
        seen = {}
        for vert, val in self._vertex_values():
            if seen.setdefault(vert, val) != val:
                raise InputError(f"function is discontinuous at {vert[0]}_{vert[1]}")


def _offset_to_location(chain, key, offset):
    kind, j = key
    cyc = chain.cycles[j - 1] if kind != "bridge" else None
    if kind == "bridge":
        return chain.bridge_point(j, offset)
    pos = offset if kind == "top" else cyc.l + offset
    xi = pos / cyc.m
    if cyc.generic:
        circ = cyc.length / cyc.m
        if xi > circ / 2:
            xi -= circ
    return chain.point(j, xi)


def pl_divisor(chain, f):
    """Divisor of ``f``: the order at a point is the sum of incoming slopes,
    i.e. minus the sum of outgoing slopes."""
    if f.chain != chain:
        raise InputError("function lives on a different chain")
    chips = defaultdict(int)
    for key, (_, segs) in f.edges.items():
        for (_, s_before), (o, s_after) in zip(segs, segs[1:]):
            chips[_offset_to_location(chain, key, o)] += s_before - s_after
    g = chain.g
    for j in range(1, g + 1):
        out_v = -f.last_slope(("top", j)) + f.first_slope(("bottom", j))
        out_w = f.first_slope(("top", j)) - f.last_slope(("bottom", j))
        if j > 1:
            out_v -= f.last_slope(("bridge", j - 1))
        if j < g:
            out_w += f.first_slope(("bridge", j))
        chips[chain.v(j)] -= out_v
        chips[chain.w(j)] -= out_w
    return ChipList(chips.items())


def cycle_position(chain, j, xi):
    """Counterclockwise distance from ``w_j`` to ``<xi>_j`` in the realization."""
    cyc = chain.cycles[j - 1]
    return mod(q(xi) * cyc.m, cyc.length)


def solve_pl_function(chain, delta):
    """A piecewise linear function ``f`` with ``div f = delta``.

    ``delta`` must be principal.  The function is normalized by
    ``f(w_1) = 0``.  Raises ``InputError`` if no integer-slope solution
    exists, which means ``delta`` is not principal on this metric.
    """
    delta = chain.canonicalize(delta)
    if delta.degree != 0:
        raise InputError("a principal divisor has degree 0")
    g = chain.g
    on_cycle = defaultdict(lambda: defaultdict(int))
    on_bridge = defaultdict(lambda: defaultdict(int))
    for loc, c in delta.items():
        if isinstance(loc, CyclePoint):
            on_cycle[loc.j][cycle_position(chain, loc.j, loc.xi)] += c
        else:
            on_bridge[loc.j][loc.t] += c

    # bridge slopes follow from the degree to the left
    bridge_segs = {}
    left = 0
    for j in range(1, g):
        left += sum(on_cycle[j].values())
        segs = [(Fraction(0), -left)]
        for t, c in sorted(on_bridge[j].items()):
            left += c
            segs.append((t, -left))
        bridge_segs[j] = segs

    cycle_segs = {}
    for j in range(1, g + 1):
        cyc = chain.cycles[j - 1]
        L = cyc.length
        extra = defaultdict(int)
        if j < g:
            extra[Fraction(0)] += bridge_segs[j][0][1]
        if j > 1:
            extra[cyc.l] -= bridge_segs[j - 1][-1][1]
        positions = sorted(set(on_cycle[j]) | set(extra) | {Fraction(0), cyc.l})
        offsets = [0]
        for p in positions[1:]:
            offsets.append(offsets[-1] - on_cycle[j][p] - extra[p])
        wrap = offsets[-1] - on_cycle[j][Fraction(0)] - extra[Fraction(0)]
        if wrap != 0:
            raise ConsistencyError(f"slope bookkeeping does not close on cycle {j}")
        ends = positions[1:] + [L]
        moment = sum(c * (e - p) for c, p, e in zip(offsets, positions, ends))
        s0 = -moment / L
        if s0.denominator != 1:
            raise InputError(f"divisor is not principal: no integer slopes on cycle {j}")
        slopes = [int(s0) + c for c in offsets]
        cycle_segs[j] = list(zip(positions, slopes))

    edges = {}
    value = Fraction(0)  # f(w_1)
    for j in range(1, g + 1):
        cyc = chain.cycles[j - 1]
        segs = cycle_segs[j]
        top = [(p, s) for p, s in segs if p < cyc.l]
        bottom = [(p - cyc.l, s) for p, s in segs if p >= cyc.l]
        if j > 1:
            # value arriving at v_j fixes the value at w_j
            rise = _integral(top, cyc.l)
            value = value - rise
        edges[("top", j)] = (value, tuple(top))
        v_value = value + _integral(top, cyc.l)
        edges[("bottom", j)] = (v_value, tuple(bottom))
        if j < g:
            bsegs = bridge_segs[j]
            edges[("bridge", j)] = (value, tuple(bsegs))
            value = value + _integral(bsegs, chain.bridges[j - 1])
    return PLFunction(chain, edges)


def _integral(segs, length):
    bounds = [o for o, _ in segs[1:]] + [length]
    return sum(s * (e - o) for (o, s), e in zip(segs, bounds))
