"""Brill-Noether numerology for curves of fixed gonality.

All functions here are closed-form and work on plain integers.  The
``bn_region`` helper additionally samples the boundary curve with floats,
which is only meant for drawing.
"""

from dataclasses import dataclass, field
import math

from .errors import InputError


def _check_grd(g, r, d):
    for name, val in (("g", g), ("r", r), ("d", d)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InputError(f"{name} must be an integer, got {val!r}")
    if g < 1:
        raise InputError(f"genus must be at least 1, got g={g}")
    if r < 0:
        raise InputError(f"rank must be nonnegative, got r={r}")
    if d < 0:
        raise InputError(f"degree must be nonnegative, got d={d}")


def max_gonality(g):
    """Largest gonality a genus ``g`` curve can have."""
    return (g + 3) // 2


def check_gonality(g, k):
    if not isinstance(k, int) or k < 2 or k > max_gonality(g):
        raise InputError(
            f"gonality k={k} outside the valid range 2..{max_gonality(g)} for g={g}")


@dataclass(frozen=True)
class BNParams:
    """A genus, rank, degree triple with optional gonality."""

    g: int
    r: int
    d: int
    k: int | None = None

    def __post_init__(self):
        _check_grd(self.g, self.r, self.d)
        if self.k is not None:
            check_gonality(self.g, self.k)

    @property
    def s(self):
        """Number of rows of the tableaux that classify W^r_d."""
        return self.g - self.d + self.r


def rho(g, r, d):
    """Brill-Noether number ``g - (r+1)(g-d+r)``.

    >>> rho(2, 1, 2)
    0
    >>> rho(5, 2, 5)
    -1
    """
    _check_grd(g, r, d)
    return g - (r + 1) * (g - d + r)


def r_prime(g, r, d):
    """Upper end ``min(r, g-d+r-1)`` of the correction range.  May be negative."""
    _check_grd(g, r, d)
    return min(r, g - d + r - 1)


def rho_bar_terms(g, r, d, k):
    """Values of ``rho(g, r-l, d) - l*k`` for every admissible ``l``.

    The range is ``0..max(r', 0)`` so ``l = 0`` is always present.
    """
    top = max(r_prime(g, r, d), 0)
    return {ell: rho(g, r - ell, d) - ell * k for ell in range(top + 1)}


def rho_bar(g, r, d, k):
    """Expected dimension of W^r_d for a general curve of gonality ``k``.

    Returns
    -------
    value : int
        Maximum of ``rho(g, r-l, d) - l*k`` over the admissible ``l``.
    maximizers : frozenset of int
        Every ``l`` attaining the maximum.

    >>> rho_bar(5, 2, 5, 3)
    (0, frozenset({1}))
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"gonality must be an integer >= 2, got k={k!r}")
    terms = rho_bar_terms(g, r, d, k)
    best = max(terms.values())
    return best, frozenset(ell for ell, v in terms.items() if v == best)


def boundary_height(g, k, x):
    """Float ``y`` solving ``min_l (x-l)(y-l) + l*k = g`` for a fixed ``x``.

    The left side is nondecreasing in ``y``, so bisection suffices.  Returns
    ``None`` when no solution exists in ``y >= 1``.
    """

    def lhs(y):
        top = max(int(math.floor(min(x, y) - 1)), 0)
        return min((x - ell) * (y - ell) + ell * k for ell in range(top + 1))

    lo, hi = 1.0, 1.0
    if lhs(lo) > g:
        return None
    while lhs(hi) <= g:
        hi *= 2.0
        if hi > 1e9:
            return None
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if lhs(mid) <= g:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class BNRegion:
    """Classification of lattice points ``(x, y) = (r+1, g-d+r)``.

    ``points`` holds tuples ``(x, y, r, d, rho_bar, nonempty)``.  The
    ``boundary`` is a list of float ``(x, y)`` pairs on the curve
    ``g = min_l (x-l)(y-l) + l*k``.
    """

    g: int
    k: int
    points: list = field(default_factory=list)
    boundary: list = field(default_factory=list)

    def nonempty_points(self):
        return [(p[0], p[1]) for p in self.points if p[5]]


def bn_region(g, k, x_max, y_max, step=0.05):
    """Tabulate where W^r_d is nonempty for a general k-gonal curve of genus g."""
    if not isinstance(g, int) or g < 1:
        raise InputError(f"genus must be a positive integer, got {g!r}")
    check_gonality(g, k)
    if x_max < 1 or y_max < 1 or step <= 0:
        raise InputError("sampling bounds must be positive")
    region = BNRegion(g=g, k=k)
    for x in range(1, x_max + 1):
        for y in range(1, y_max + 1):
            r = x - 1
            d = g - y + r
            if d < 0:
                region.points.append((x, y, r, d, None, False))
                continue
            value, _ = rho_bar(g, r, d, k)
            region.points.append((x, y, r, d, value, value >= 0))
    n = int(round((x_max - 1) / step))
    for i in range(n + 1):
        x = 1.0 + i * step
        y = boundary_height(g, k, x)
        if y is not None and y <= y_max:
            region.boundary.append((x, y))
    return region
