"""Displacement tableaux, lattice paths and the rank of divisors on a chain.

A tableau is a rectangular array ``t(x, y)`` with ``x`` the column and ``y``
the row, counted from the top-left corner.  It is stored as a tuple of rows,
so ``[[1, 3], [2, 4], [3, 5]]`` has columns ``(1, 2, 3)`` and ``(3, 4, 5)``.

The divisor classes of degree ``d`` and rank at least ``r`` on a chain are
the union of tori ``T(t)`` over displacement tableaux with ``r + 1`` columns
and ``g - d + r`` rows.  A class lies in ``T(t)`` when every box satisfies
``xi_{t(x,y)} = y - x`` modulo the torsion order of its symbol.
"""

from dataclasses import dataclass
from fractions import Fraction
import random
import warnings

from .chain import ChainOfCycles, ChipList, Divisor, normal_form
from .errors import ConsistencyError, InputError, SearchLimitError
from .rational import mod, q


class Tableau:
    """An immutable rectangular filling by positive integers."""

    __slots__ = ("rows_", "_hash")

    def __init__(self, rows):
        if isinstance(rows, Tableau):
            rows = rows.rows_
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if not rows or not rows[0]:
            raise InputError("a tableau needs at least one box")
        if any(len(row) != len(rows[0]) for row in rows):
            raise InputError("ragged tableau: all rows must have the same length")
        if any(v < 1 for row in rows for v in row):
            raise InputError("tableau entries must be positive")
        self.rows_ = rows
        self._hash = hash(rows)

    @property
    def cols(self):
        return len(self.rows_[0])

    @property
    def rows(self):
        return len(self.rows_)

    def __call__(self, x, y):
        return self.rows_[y][x]

    def boxes(self):
        """Yield ``(x, y, symbol)`` in reading order."""
        for y, row in enumerate(self.rows_):
            for x, v in enumerate(row):
                yield x, y, v

    def column(self, x):
        return tuple(row[x] for row in self.rows_)

    def symbols(self):
        return sorted({v for row in self.rows_ for v in row})

    def positions(self):
        """Map each symbol to the list of boxes ``(x, y)`` holding it."""
        out = {}
        for x, y, v in self.boxes():
            out.setdefault(v, []).append((x, y))
        return out

    def columns_containing(self, j):
        return [x for x, y, v in self.boxes() if v == j]

    def to_lists(self):
        return [list(row) for row in self.rows_]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows_ == other.rows_

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tableau({self.to_lists()})"


def as_tableau(t):
    return t if isinstance(t, Tableau) else Tableau(t)


def _profile_of(chain_or_profile):
    if isinstance(chain_or_profile, ChainOfCycles):
        return chain_or_profile.profile
    profile = tuple(chain_or_profile)
    if any(not isinstance(m, int) or m < 0 for m in profile):
        raise InputError("torsion profile entries must be nonnegative integers")
    if 1 in profile:
        warnings.warn("torsion order 1 makes every residue condition vacuous", stacklevel=3)
    return profile


def _same_diagonal(mu, a, b):
    if mu == 0:
        return a == b
    return (a - b) % mu == 0


def is_displacement_tableau(t, profile):
    """Strictly increasing rows and columns, and equal symbols ``j`` sit at
    lattice distance a positive multiple of ``mu_j`` (never for ``mu_j = 0``).

    >>> is_displacement_tableau([[1, 3], [2, 4], [3, 5]], (0, 0, 3, 0, 0))
    True
    """
    t = as_tableau(t)
    profile = _profile_of(profile)
    g = len(profile)
    for x, y, v in t.boxes():
        if v > g:
            return False
        if x > 0 and t(x - 1, y) >= v:
            return False
        if y > 0 and t(x, y - 1) >= v:
            return False
    for j, boxes in t.positions().items():
        mu = profile[j - 1]
        for a in range(len(boxes)):
            for b in range(a + 1, len(boxes)):
                (x1, y1), (x2, y2) = boxes[a], boxes[b]
                dist = abs(x1 - x2) + abs(y1 - y2)
                if mu == 0 or dist % mu != 0:
                    return False
    return True


def torus_dimension(t, g):
    """Number of symbols from ``1..g`` absent from ``t``."""
    return g - len(as_tableau(t).symbols())


@dataclass(frozen=True)
class TorusComponent:
    """The torus ``T(t)``: congruences on normal-form coordinates.

    ``constraints`` maps a symbol ``j`` to the required value of ``xi_j``,
    canonical modulo ``mu_j`` (exact when ``mu_j = 0``).
    """

    tableau: Tableau
    profile: tuple
    constraints: dict
    free: tuple

    @property
    def dimension(self):
        return len(self.free)

    def contains(self, D):
        if not isinstance(D, Divisor) or D.g != len(self.profile):
            raise InputError("divisor does not live on a chain of this genus")
        for j, value in self.constraints.items():
            if not _same_diagonal(self.profile[j - 1], D.xi[j - 1], value):
                return False
        return True


def torus(t, chain_or_profile):
    """Build ``T(t)`` for a displacement tableau on the given profile."""
    t = as_tableau(t)
    profile = _profile_of(chain_or_profile)
    if not is_displacement_tableau(t, profile):
        raise InputError(f"{t!r} is not a displacement tableau for profile {profile}")
    cons = {}
    for x, y, j in t.boxes():
        mu = profile[j - 1]
        cons.setdefault(j, Fraction(mod(y - x, mu) if mu > 0 else y - x))
    free = tuple(j for j in range(1, len(profile) + 1) if j not in cons)
    return TorusComponent(t, profile, cons, free)


def contains(torus_component, D):
    """True iff the normal-form divisor ``D`` lies in the torus."""
    return torus_component.contains(D)


# ---------------------------------------------------------------------------
# enumeration

def _allowed_by_divisor(profile, xi, j, diag):
    return xi is None or _same_diagonal(profile[j - 1], xi[j - 1], diag)


def _fill(profile, cols, rows, xi=None, prefix=(), stop=None):
    """Depth-first fillings in reading order, smallest symbols first.

    With ``stop`` set, yields the partial reading words of that length
    instead of complete tableaux.
    """
    g = len(profile)
    n = cols * rows
    grid = [[0] * cols for _ in range(rows)]
    where = {}

    def ok_repeat(j, x, y):
        mu = profile[j - 1]
        for (x2, y2) in where.get(j, ()):
            dist = abs(x - x2) + abs(y - y2)
            if mu == 0 or dist % mu != 0:
                return False
        return True

    def rec(pos):
        if stop is not None and pos == stop:
            yield tuple(grid[b // cols][b % cols] for b in range(stop))
            return
        if pos == n:
            yield Tableau(grid)
            return
        y, x = divmod(pos, cols)
        lo = max(grid[y][x - 1] if x else 0, grid[y - 1][x] if y else 0)
        hi = g - (cols - 1 - x) - (rows - 1 - y)
        cands = range(lo + 1, hi + 1)
        if pos < len(prefix):
            cands = [prefix[pos]] if lo < prefix[pos] <= hi else []
        for j in cands:
            if not _allowed_by_divisor(profile, xi, j, y - x):
                continue
            if not ok_repeat(j, x, y):
                continue
            grid[y][x] = j
            where.setdefault(j, []).append((x, y))
            yield from rec(pos + 1)
            where[j].pop()
            grid[y][x] = 0
        grid[y][x] = 0

    yield from rec(0)


def enumerate_tableaux(g, profile, cols, rows, divisor=None, prefix=()):
    """Every displacement tableau of the given shape, in reading-word order.

    Parameters
    ----------
    g : int
        Size of the alphabet ``1..g``.
    profile : sequence of int
        Torsion orders, one per symbol.
    cols, rows : int
        Shape of the rectangle.
    divisor : Divisor, optional
        Only yield tableaux whose torus contains this normal form.
    prefix : tuple of int, optional
        Fix the first entries in reading order.  Streams for different
        prefixes are disjoint, which lets callers split the work.
    """
    profile = _profile_of(profile)
    if len(profile) != g:
        raise InputError(f"profile has length {len(profile)}, expected {g}")
    if cols < 1 or rows < 1:
        raise InputError("tableau shape must have at least one row and column")
    xi = None
    if divisor is not None:
        if divisor.g != g:
            raise InputError("divisor genus does not match")
        xi = divisor.xi
    yield from _fill(profile, cols, rows, xi, tuple(prefix))


def split_prefixes(g, profile, cols, rows, depth=1, divisor=None):
    """Prefixes of length ``depth`` that extend to at least one tableau.

    Concatenating the streams ``enumerate_tableaux(..., prefix=p)`` over the
    returned prefixes, in order, reproduces the full stream.
    """
    profile = _profile_of(profile)
    depth = min(depth, cols * rows)
    xi = divisor.xi if divisor is not None else None
    out = []
    for pre in _fill(profile, cols, rows, xi, stop=depth):
        if next(_fill(profile, cols, rows, xi, prefix=pre), None) is not None:
            out.append(pre)
    return out


def dim_wrd(chain, r, d, limit=None):
    """Dimension of ``W^r_d`` on the chain, or -1 if it is empty.

    Uses the largest torus over all displacement tableaux of the classifying
    shape.  ``limit`` caps the number of search nodes; exceeding it raises
    ``SearchLimitError``.
    """
    if r < 0:
        raise InputError("rank must be nonnegative")
    g = chain.g
    s = g - d + r
    if s <= 0:
        return g
    fewest = _min_symbols(chain.profile, r + 1, s, limit)
    return -1 if fewest is None else g - fewest


def _min_symbols(profile, cols, rows, limit=None):
    """Fewest distinct symbols in a displacement tableau of the shape."""
    g = len(profile)
    n = cols * rows
    grid = [[0] * cols for _ in range(rows)]
    where = {}
    best = [None]
    nodes = [0]

    def rec(pos, used):
        nodes[0] += 1
        if limit is not None and nodes[0] > limit:
            raise SearchLimitError(f"search exceeded {limit} nodes")
        if best[0] is not None and used >= best[0]:
            return
        if pos == n:
            best[0] = used
            return
        y, x = divmod(pos, cols)
        lo = max(grid[y][x - 1] if x else 0, grid[y - 1][x] if y else 0)
        hi = g - (cols - 1 - x) - (rows - 1 - y)
        # reuse an existing symbol first: it never adds to the count
        order = sorted(range(lo + 1, hi + 1), key=lambda j: (j not in where or not where[j], j))
        for j in order:
            mu = profile[j - 1]
            occ = where.get(j, ())
            if occ and (mu == 0 or any((abs(x - a) + abs(y - b)) % mu for a, b in occ)):
                continue
            fresh = not occ
            if best[0] is not None and used + fresh >= best[0]:
                continue
            grid[y][x] = j
            where.setdefault(j, []).append((x, y))
            rec(pos + 1, used + fresh)
            where[j].pop()
            if not where[j]:
                del where[j]
        grid[y][x] = 0

    rec(0, 0)
    return best[0]


# ---------------------------------------------------------------------------
# rank

def _greedy_tableau(profile, xi, cols, rows):
    """Entrywise smallest tableau of the shape whose torus contains ``xi``.

    Each box takes the least admissible symbol exceeding its left and upper
    neighbours.  Any containing tableau dominates this one box by box, so
    the greedy filling exists exactly when some containing tableau does.
    """
    g = len(profile)
    grid = [[0] * cols for _ in range(rows)]
    for y in range(rows):
        for x in range(cols):
            lo = max(grid[y][x - 1] if x else 0, grid[y - 1][x] if y else 0)
            diag = y - x
            pick = 0
            for j in range(lo + 1, g + 1):
                if _same_diagonal(profile[j - 1], xi[j - 1], diag):
                    pick = j
                    break
            if not pick:
                return None
            grid[y][x] = pick
    return Tableau(grid)


def witness_tableau(chain, D, r):
    """A tableau with ``r + 1`` columns whose torus contains ``D``, or ``None``.

    Returns ``None`` also in the nonspecial range, where no tableau is needed.
    """
    D = normal_form(chain, D)
    s = chain.g - D.d + r
    if s <= 0 or r < 0:
        return None
    return _greedy_tableau(chain.profile, D.xi, r + 1, s)


def rank(chain, D):
    """Rank of a divisor class on the chain (-1 if not effective)."""
    D = normal_form(chain, D)
    g, d = chain.g, D.d
    if d < 0:
        return -1
    r = d - g if d - g >= 0 else -1
    while r + 1 <= d:
        s = g - d + (r + 1)
        if s > 0 and _greedy_tableau(chain.profile, D.xi, r + 2, s) is None:
            break
        r += 1
    return r


# ---------------------------------------------------------------------------
# lattice paths and distinguished representatives

class LatticePath:
    """The vectors ``p_0 .. p_g`` in ``Z^r`` attached to a tableau.

    ``p_0 = (r, ..., 1)``.  Each occurrence of symbol ``j`` in column
    ``x < r`` adds 1 to coordinate ``x`` of ``p_j``; an occurrence in the last
    column subtracts 1 from every coordinate.  ``at(j, r)`` is 0 by convention.
    """

    def __init__(self, steps, r):
        self.steps = tuple(tuple(p) for p in steps)
        self.r = r

    def __getitem__(self, j):
        return self.steps[j]

    def __len__(self):
        return len(self.steps)

    def at(self, j, i):
        if i == self.r:
            return 0
        return self.steps[j][i]

    def __eq__(self, other):
        return isinstance(other, LatticePath) and self.steps == other.steps

    def __repr__(self):
        return f"LatticePath({list(self.steps)})"


def lattice_path(t, r=None, g=None):
    """Lattice path of ``t`` with ``r + 1 = cols``, run up to symbol ``g``.

    >>> lattice_path([[1, 3], [2, 4], [3, 5]], 1).steps
    ((1,), (2,), (3,), (3,), (2,), (1,))
    """
    t = as_tableau(t)
    if r is None:
        r = t.cols - 1
    if r != t.cols - 1:
        raise InputError(f"tableau has {t.cols} columns, expected r + 1 = {r + 1}")
    if g is None:
        g = max(t.symbols())
    p = list(range(r, 0, -1))
    steps = [tuple(p)]
    cols_of = {}
    for x, _, v in t.boxes():
        cols_of.setdefault(v, []).append(x)
    for j in range(1, g + 1):
        for x in cols_of.get(j, ()):
            if x < r:
                p[x] += 1
            else:
                p = [v - 1 for v in p]
        steps.append(tuple(p))
    return LatticePath(steps, r)


def _smaller_in_column(t, x, j):
    return sum(1 for v in t.column(x) if v < j)


def _check_construction(chain, t, xi):
    t = as_tableau(t)
    if len(xi) != chain.g:
        raise InputError(f"expected {chain.g} construction coordinates, got {len(xi)}")
    xi = tuple(q(v) for v in xi)
    if not is_displacement_tableau(t, chain.profile):
        raise InputError(f"{t!r} is not a displacement tableau on this chain")
    return t, xi


def check_construction_congruences(chain, t, xi):
    """True iff ``xi_{t(x,y)} = p_{t(x,y)-1}(x)`` modulo the torsion order."""
    t, xi = _check_construction(chain, t, xi)
    p = lattice_path(t, g=chain.g)
    for x, _, j in t.boxes():
        if not _same_diagonal(chain.mu(j), xi[j - 1], p.at(j - 1, x)):
            return False
    return True


def special_representatives(chain, t, xi, check=True):
    """The divisors ``D_0 .. D_r`` built from construction coordinates.

    ``D_i = i v_1 + (r-i) w_g + sum_{j not in column i} <xi_j - p_{j-1}(i)>_j``.
    With ``check`` set, confirms that all of them are equivalent and lie in
    ``T(t)``.
    """
    t, xi = _check_construction(chain, t, xi)
    if not check_construction_congruences(chain, t, xi):
        raise InputError("construction coordinates violate the tableau congruences")
    g, r = chain.g, t.cols - 1
    p = lattice_path(t, g=g)
    reps = []
    for i in range(r + 1):
        col = set(t.column(i))
        chips = [(chain.v(1), i), (chain.w(g), r - i)]
        for j in range(1, g + 1):
            if j not in col:
                chips.append((chain.point(j, xi[j - 1] - p.at(j - 1, i)), 1))
        reps.append(ChipList(chips))
    if check:
        T = torus(t, chain)
        base = normal_form(chain, reps[0])
        for i, D in enumerate(reps):
            N = normal_form(chain, D)
            if N != base:
                raise ConsistencyError(f"D_{i} is not equivalent to D_0")
            if not T.contains(N):
                raise ConsistencyError(f"D_{i} does not lie in T(t)")
    return reps


def construction_to_normal(chain, t, xi):
    """Normal-form coordinates of the class built from construction coordinates.

    ``xi_j(normal) = xi_j(construction) - r + c_j`` where ``c_j`` counts the
    entries of the last column smaller than ``j``.  The degree is
    ``g + r - rows``.
    """
    t, xi = _check_construction(chain, t, xi)
    r = t.cols - 1
    coords = [xi[j - 1] - r + _smaller_in_column(t, r, j) for j in range(1, chain.g + 1)]
    return chain.divisor(chain.g + r - t.rows, coords)


def normal_to_construction(chain, t, D):
    """Inverse of ``construction_to_normal`` (canonical residues)."""
    t = as_tableau(t)
    D = normal_form(chain, D)
    r = t.cols - 1
    if D.d != chain.g + r - t.rows:
        raise InputError("divisor degree does not match the tableau shape")
    return tuple(chain.canon(j, D.xi[j - 1] + r - _smaller_in_column(t, r, j))
                 for j in range(1, chain.g + 1))


def is_vertex_avoiding(chain, t, xi):
    """Genericity test for construction coordinates.

    For every column ``i`` and symbol ``j``: ``xi_j - p_{j-1}(i)`` is never
    ``-1`` and is ``0`` only when ``j`` appears in column ``i`` (both read
    modulo ``mu_j``, exactly on generic cycles).
    """
    t, xi = _check_construction(chain, t, xi)
    p = lattice_path(t, g=chain.g)
    for i in range(t.cols):
        col = set(t.column(i))
        for j in range(1, chain.g + 1):
            mu = chain.mu(j)
            val = xi[j - 1] - p.at(j - 1, i)
            if _same_diagonal(mu, val, -1):
                return False
            if _same_diagonal(mu, val, 0) and j not in col:
                return False
    return True


def psi_bridge_slopes(t, r, i, g=None):
    """Slopes ``p_1(i) .. p_{g-1}(i)`` of ``psi_i`` along the bridges."""
    t = as_tableau(t)
    if not 0 <= i <= r:
        raise InputError(f"column index {i} outside 0..{r}")
    p = lattice_path(t, r, g)
    return tuple(p.at(j, i) for j in range(1, len(p) - 1))


def generic_construction(chain, t, seed=None, denominator=7, avoid=True):
    """Construction coordinates for ``t`` with free coordinates chosen at random.

    Symbols of ``t`` get ``p_{j-1}(x)`` for their column ``x``, shifted by a
    random multiple of ``mu_j`` on torsion cycles; symbols not in
    ``t`` get a random non-integral rational, which keeps them away from every
    vertex.  With ``avoid`` set, raises if the result is not vertex avoiding;
    symbols of ``t`` on torsion cycles can force a chip onto a vertex.
    """
    t = as_tableau(t)
    if not is_displacement_tableau(t, chain.profile):
        raise InputError(f"{t!r} is not a displacement tableau on this chain")
    rng = random.Random(seed)
    p = lattice_path(t, g=chain.g)
    cols = {j: x for x, _, j in t.boxes()}
    xi = []
    for j in range(1, chain.g + 1):
        if j in cols:
            shift = chain.mu(j) * rng.randint(-2, 2)
            xi.append(Fraction(p.at(j - 1, cols[j]) + shift))
        else:
            num = rng.randrange(1, denominator)
            xi.append(Fraction(rng.randrange(-chain.g, chain.g) * denominator + num, denominator))
    xi = tuple(xi)
    if avoid and not is_vertex_avoiding(chain, t, xi):
        raise ConsistencyError("tableau forces a vertex; no vertex avoiding coordinates")
    return xi


def random_tableau(profile, cols, rows, seed=None):
    """A displacement tableau of the given shape drawn by randomized backtracking.

    Returns ``None`` when the shape admits no tableau.  Not uniform.
    """
    profile = _profile_of(profile)
    g = len(profile)
    rng = random.Random(seed)
    n = cols * rows
    grid = [[0] * cols for _ in range(rows)]
    where = {}

    def fits(j, x, y):
        mu = profile[j - 1]
        return all(mu and (abs(x - x2) + abs(y - y2)) % mu == 0 for x2, y2 in where.get(j, ()))

    def rec(pos):
        if pos == n:
            return True
        y, x = divmod(pos, cols)
        lo = max(grid[y][x - 1] if x else 0, grid[y - 1][x] if y else 0)
        hi = g - (cols - 1 - x) - (rows - 1 - y)
        cands = [j for j in range(lo + 1, hi + 1) if fits(j, x, y)]
        rng.shuffle(cands)
        for j in cands:
            grid[y][x] = j
            where.setdefault(j, []).append((x, y))
            if rec(pos + 1):
                return True
            where[j].pop()
            grid[y][x] = 0
        return False

    return Tableau(grid) if rec(0) else None


def _collect(args):
    g, profile, cols, rows, divisor, prefix, limit = args
    out = []
    for t in enumerate_tableaux(g, profile, cols, rows, divisor, prefix):
        out.append(t.to_lists())
        if limit is not None and len(out) >= limit:
            break
    return out


def enumerate_parallel(g, profile, cols, rows, workers, divisor=None, limit=None, depth=2):
    """Same stream as ``enumerate_tableaux`` computed by ``workers`` processes.

    The work is split by reading-word prefixes and reassembled in prefix
    order, so the output does not depend on ``workers``.
    """
    from concurrent.futures import ProcessPoolExecutor

    profile = _profile_of(profile)
    prefixes = split_prefixes(g, profile, cols, rows, depth, divisor)
    jobs = [(g, profile, cols, rows, divisor, p, limit) for p in prefixes]
    if workers <= 1:
        chunks = map(_collect, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        chunks = pool.map(_collect, jobs)
    count = 0
    try:
        for chunk in chunks:
            for rows_ in chunk:
                if limit is not None and count >= limit:
                    return
                yield Tableau(rows_)
                count += 1
    finally:
        if workers > 1:
            pool.shutdown(cancel_futures=True)
