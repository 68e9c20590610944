"""Scrollar tableaux and the bookkeeping of repeated pencil subtraction.

A tableau of type ``(a, b)`` with ``n = a + b < k`` repeats a symbol exactly
along knight moves ``(x, y) -> (x + n, y - (k - n))`` and has a number of
columns congruent to ``b`` modulo ``n``.  Removing ``n`` columns while adding
``k - n`` rows (``t_minus_one``) tracks what happens to the torus when the
pencil ``E = k v_k`` is subtracted.
"""

from dataclasses import dataclass

from .chain import ChipList, k_gonal_profile, normal_form
from .errors import ConsistencyError, InputError
from .numerics import rho, rho_bar
from .tableaux import (Tableau, as_tableau, is_displacement_tableau, lattice_path,
                       rank, torus, torus_dimension)


@dataclass(frozen=True)
class ScrollarType:
    """Type ``(a, b)`` of a scrollar tableau for gonality ``k``."""

    a: int
    b: int
    k: int

    def __post_init__(self):
        if not isinstance(self.a, int) or self.a < 1:
            raise InputError(f"a must be a positive integer, got {self.a!r}")
        if not isinstance(self.b, int) or self.b < 0:
            raise InputError(f"b must be a nonnegative integer, got {self.b!r}")
        if not isinstance(self.k, int) or self.k < 2:
            raise InputError(f"k must be an integer >= 2, got {self.k!r}")
        if self.n >= self.k:
            raise InputError(f"need a + b < k, got n = {self.n}, k = {self.k}")

    @property
    def n(self):
        return self.a + self.b

    @property
    def shift(self):
        """Extra rows gained by one subtraction, ``k - n``."""
        return self.k - self.n


def fan_rays(a, b):
    """Ray generators of the scroll fan in ``Z^n``.

    Coordinate 0 carries ``u_1``; coordinates ``1 .. n-1`` carry
    ``e_1 .. e_{n-1}``.  Then ``e_0 = -(e_1 + ... + e_{n-1})`` and
    ``u_0 = -u_1 - (e_b + ... + e_{n-1})``.  Returns a dict keyed by
    ``"u0"``, ``"u1"`` and ``("e", i)``.
    """
    n = a + b
    if a < 1 or b < 0:
        raise InputError("need a >= 1 and b >= 0")

    def unit(i):
        v = [0] * n
        v[i] = 1
        return v

    e = {i: unit(i) for i in range(1, n)}
    e[0] = [0] + [-1] * (n - 1)
    u1 = unit(0)
    u0 = [-c for c in u1]
    for i in range(b, n):
        u0 = [x - y for x, y in zip(u0, e[i])]
    rays = {"u0": tuple(u0), "u1": tuple(u1)}
    if n > 1:
        rays.update({("e", i): tuple(v) for i, v in e.items()})
    return rays


def _genus_of(t):
    return max(as_tableau(t).symbols())


def is_scrollar(t, a, b, k, g=None):
    """Scrollar test: repeats exactly along knight moves, ``cols = b mod n``,
    and a valid displacement tableau for the ``k``-gonal profile."""
    t = as_tableau(t)
    try:
        st = ScrollarType(a, b, k)
    except InputError:
        return False
    n, sh = st.n, st.shift
    if t.cols % n != b % n:
        return False
    g = _genus_of(t) if g is None else g
    if not is_displacement_tableau(t, k_gonal_profile(g, k)):
        return False
    for j, boxes in t.positions().items():
        boxes = sorted(boxes)
        for (x1, y1), (x2, y2) in zip(boxes, boxes[1:]):
            dx, dy = x2 - x1, y1 - y2
            if dx % n or dx // n * sh != dy:
                return False
    for x, y, v in t.boxes():
        if x + n < t.cols and y - sh >= 0 and t(x + n, y - sh) != v:
            return False
    return True


def generate_scrollar(a, b, k, cols, rows):
    """Canonical scrollar tableau of the given type and shape.

    Columns are grouped in blocks of ``n``.  The first block is filled row by
    row with fresh symbols.  In each later block, the top ``rows - (k-n)``
    rows copy the block to the left shifted down by ``k - n``, and the
    remaining rows take fresh symbols, again row by row.
    """
    st = ScrollarType(a, b, k)
    n, sh = st.n, st.shift
    if cols < 1 or cols % n != b % n:
        raise InputError(f"number of columns must be congruent to b = {b} modulo n = {n}")
    if rows < sh:
        raise InputError(f"need at least k - n = {sh} rows, got {rows}")
    grid = [[0] * cols for _ in range(rows)]
    fresh = 0
    for start in range(0, cols, n):
        block = range(start, min(start + n, cols))
        for y in range(rows):
            for x in block:
                if start > 0 and y < rows - sh:
                    grid[y][x] = grid[y + sh][x - n]
                else:
                    fresh += 1
                    grid[y][x] = fresh
    t = Tableau(grid)
    if not is_scrollar(t, a, b, k):
        raise ConsistencyError(f"generated filling {t!r} is not scrollar")
    return t


def scrollar_symbol_count(a, b, k, cols, rows):
    """``n (s - l) + l k`` with ``l = cols - n``: symbols in a scrollar tableau."""
    n = a + b
    ell = cols - n
    return n * (rows - ell) + ell * k


def t_minus_one(t, a, b, k):
    """Drop ``n`` columns and add ``k - n`` rows.

    ``t(-1)(x, y) = t(x, y)`` for ``y < rows`` and ``t(x + n, y - (k - n))``
    otherwise.
    """
    t = as_tableau(t)
    st = ScrollarType(a, b, k)
    n, sh = st.n, st.shift
    if t.cols <= n:
        raise InputError(f"t(-1) needs more than n = {n} columns")
    cols, rows = t.cols - n, t.rows + sh
    grid = [[t(x, y) if y < t.rows else t(x + n, y - sh) for x in range(cols)]
            for y in range(rows)]
    return Tableau(grid)


def t_plus_one(t, a, b, k):
    """Inverse of ``t_minus_one`` for tableaux with at least ``n`` columns."""
    t = as_tableau(t)
    st = ScrollarType(a, b, k)
    n, sh = st.n, st.shift
    if t.cols < n:
        raise InputError("inverse needs at least n columns")
    if t.rows < sh:
        raise InputError("inverse needs at least k - n rows")
    cols, rows = t.cols + n, t.rows - sh
    if rows < 1:
        raise InputError("inverse would have no rows")
    grid = [[t(x, y) if x < t.cols else t(x - n, y + sh) for x in range(cols)]
            for y in range(rows)]
    return Tableau(grid)


def subtraction_count(t, a, b):
    """``m = floor(cols / n)``."""
    return as_tableau(t).cols // (a + b)


def has_vertical_step(t):
    """True if some column holds consecutive integers in consecutive rows."""
    t = as_tableau(t)
    return any(t(x, y + 1) == t(x, y) + 1 for x in range(t.cols) for y in range(t.rows - 1))


@dataclass
class SubtractionStep:
    i: int
    divisor: object
    tableau: Tableau
    contained: bool


def serial_subtract(chain, t, a, b, D, m):
    """Subtract the pencil ``E = k v_k`` ``m`` times, tracking tableaux.

    Returns the list of steps ``i = 1..m`` with ``D(-i)`` in normal form,
    ``t(-i)`` and the membership certificate.  A failed certificate raises
    ``ConsistencyError``.
    """
    k = chain.k
    if k is None:
        raise InputError("chain carries no gonality")
    t = as_tableau(t)
    if not is_scrollar(t, a, b, k, chain.g):
        raise InputError(f"{t!r} is not scrollar of type ({a},{b}) for k = {k}")
    n = a + b
    if m < 0 or m > (t.cols - 1) // n:
        raise InputError(f"m must lie in 0..{(t.cols - 1) // n} for {t.cols} columns")
    D = normal_form(chain, D)
    if not torus(t, chain).contains(D):
        raise InputError("divisor does not lie in T(t)")
    E = k * ChipList.of(chain.v(k))
    steps = []
    cur_t = t
    for i in range(1, m + 1):
        cur_t = t_minus_one(cur_t, a, b, k)
        Di = normal_form(chain, chain.chips_of(D) - i * E)
        ok = torus(cur_t, chain).contains(Di)
        if not ok:
            raise ConsistencyError(f"D(-{i}) is not contained in T(t(-{i}))")
        steps.append(SubtractionStep(i, Di, cur_t, ok))
    return steps


def rank_chain(chain, t, a, b, D):
    """Ranks of ``D(-m)`` and ``D(-m-1)`` with ``m = floor(cols / n)``."""
    m = subtraction_count(t, a, b)
    E = chain.k * ChipList.of(chain.v(chain.k))
    D = normal_form(chain, D)
    base = chain.chips_of(D)
    return rank(chain, base - m * E), rank(chain, base - (m + 1) * E)


@dataclass
class DimensionCheck:
    dim: int
    ell: int
    formula_value: int
    agrees: bool
    r: int
    d: int
    rho_bar: int
    best_scrollar: int | None
    attains_rho_bar: bool


def best_scrollar_dimension(g, k, r, d):
    """Largest torus dimension among canonical scrollar tableaux with
    ``r + 1`` columns and ``g - d + r`` rows that fit in ``g`` symbols.

    Returns ``(dim, (a, b))`` or ``(None, None)``.
    """
    s = g - d + r
    best, kind = None, None
    for n in range(1, min(k - 1, r + 1) + 1):
        b = (r + 1) % n
        a = n - b
        if s < k - n:
            continue
        count = scrollar_symbol_count(a, b, k, r + 1, s)
        if count > g:
            continue
        t = generate_scrollar(a, b, k, r + 1, s)
        if not is_displacement_tableau(t, k_gonal_profile(g, k)):
            continue
        dim = torus_dimension(t, g)
        if best is None or dim > best:
            best, kind = dim, (a, b)
    return best, kind


def component_dimension_check(t, a, b, k, g):
    """Compare the torus dimension with ``rho(g, r - l, d) - l k``."""
    t = as_tableau(t)
    if not is_scrollar(t, a, b, k, g):
        raise InputError(f"{t!r} is not scrollar of type ({a},{b}) for k = {k}")
    n = a + b
    r, s = t.cols - 1, t.rows
    ell = r + 1 - n
    d = g + r - s
    dim = torus_dimension(t, g)
    formula = rho(g, r - ell, d) - ell * k
    rb, _ = rho_bar(g, r, d, k)
    best, _ = best_scrollar_dimension(g, k, r, d)
    return DimensionCheck(dim, ell, formula, dim == formula, r, d, rb, best,
                          best is not None and best == rb)


@dataclass
class IndependenceSlopes:
    slopes: tuple
    distinct: bool
    shift_identity: bool


def independence_slopes(t, a, b, k):
    """Bridge slopes along ``beta_{k-1}`` of the ``2b + a`` functions
    ``phi_0 + psi_i``, ``phi_1 + psi_i`` (``i < b``) and ``psi_i`` (``i >= b``).

    They are read off the lattice path of ``t(-m+1)`` at step ``k - 1``:
    ``p(i)`` and ``p(n + i)`` for ``i < b``, then ``p(i)`` for ``b <= i < n``.
    ``shift_identity`` reports whether ``k + p(n+i) = p(i)`` for all ``i < b``.
    """
    t = as_tableau(t)
    st = ScrollarType(a, b, k)
    n = st.n
    m = subtraction_count(t, a, b)
    if m < 1:
        raise InputError("need at least n columns")
    top = t
    for _ in range(m - 1):
        top = t_minus_one(top, a, b, k)
    p = lattice_path(top, g=max(k - 1, max(top.symbols())))
    step = k - 1
    slopes = [p.at(step, i) for i in range(b)]
    slopes += [p.at(step, n + i) for i in range(b)]
    slopes += [p.at(step, i) for i in range(b, n)]
    identity = all(k + p.at(step, n + i) == p.at(step, i) for i in range(b))
    return IndependenceSlopes(tuple(slopes), len(set(slopes)) == len(slopes), identity)
