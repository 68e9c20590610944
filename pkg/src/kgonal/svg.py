"""Static SVG figures: the Brill-Noether region and skeleton projections.

Coordinates are converted to floats here only for drawing.
"""

from .errors import InputError

_W, _H, _PAD = 480, 480, 40


def _header(w=_W, h=_H):
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            f'<rect width="{w}" height="{h}" fill="white"/>']


def _scaler(xs, ys, w=_W, h=_H, pad=_PAD):
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    sx = (w - 2 * pad) / (x1 - x0 or 1)
    sy = (h - 2 * pad) / (y1 - y0 or 1)
    s = min(sx, sy)

    def f(x, y):
        return pad + (x - x0) * s, h - pad - (y - y0) * s

    return f


def _polyline(points, color, width=1.5, dash=None):
    pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>'


def bn_region_svg(region):
    """Lattice points (filled where nonempty), the k-gonal boundary curve and
    the hyperbola ``xy = g`` for comparison."""
    xs = [p[0] for p in region.points] + [0]
    ys = [p[1] for p in region.points] + [0]
    f = _scaler(xs, ys)
    out = _header()
    ox, oy = f(0, 0)
    ex, _ = f(max(xs), 0)
    _, ey = f(0, max(ys))
    out.append(f'<line x1="{ox:.3f}" y1="{oy:.3f}" x2="{ex:.3f}" y2="{oy:.3f}" stroke="black"/>')
    out.append(f'<line x1="{ox:.3f}" y1="{oy:.3f}" x2="{ox:.3f}" y2="{ey:.3f}" stroke="black"/>')
    hyper = []
    steps = 200
    for i in range(steps + 1):
        x = 1 + i * (max(xs) - 1) / steps
        y = region.g / x
        if y <= max(ys):
            hyper.append(f(x, y))
    if hyper:
        out.append(_polyline(hyper, "gray", dash="4 3"))
    if region.boundary:
        out.append(_polyline([f(x, y) for x, y in region.boundary], "crimson", 2))
    for x, y, _, _, _, nonempty in region.points:
        px, py = f(x, y)
        fill = "black" if nonempty else "white"
        out.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="3" fill="{fill}" stroke="black"/>')
    out.append(f'<text x="{_PAD}" y="20" font-size="12">g = {region.g}, k = {region.k}; '
               f'x = r + 1, y = g - d + r</text>')
    out.append("</svg>")
    return "\n".join(out)


def skeleton_svg(sk, coords=(0, 1), ray_length=None):
    """Project a skeleton onto two chosen coordinates.

    Cycle arcs are drawn in blue, bridges in black, tree edges in green and
    infinite rays as short gray segments.
    """
    if sk.n < 1:
        raise InputError("skeleton has no coordinates")
    cx, cy = coords
    if not (0 <= cx < sk.n and 0 <= cy < sk.n):
        raise InputError(f"coordinates {coords} outside 0..{sk.n - 1}")

    def proj(v):
        return float(v.pos[cx]), float(v.pos[cy]) if sk.n > 1 else 0.0

    finite = [e for e in sk.edges if not e.is_ray]
    pts = [proj(v) for v in sk.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if ray_length is None:
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        ray_length = span / 10
    ends = []
    for e in sk.edges:
        if e.is_ray:
            x, y = pts[e.u]
            dx = e.dir[cx]
            dy = e.dir[cy] if sk.n > 1 else 0
            norm = (dx * dx + dy * dy) ** 0.5 or 1.0
            ends.append((e, (x, y), (x + ray_length * dx / norm, y + ray_length * dy / norm)))
    f = _scaler(xs + [b[0] for _, _, b in ends], ys + [b[1] for _, _, b in ends])
    colors = {"arc": "steelblue", "bridge": "black", "root": "seagreen", "spine": "seagreen"}
    out = _header()
    for e in finite:
        (x1, y1), (x2, y2) = f(*pts[e.u]), f(*pts[e.v])
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                   f'stroke="{colors.get(e.kind, "black")}" stroke-width="2"/>')
    for e, a, b in ends:
        (x1, y1), (x2, y2) = f(*a), f(*b)
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                   f'stroke="gray" stroke-width="1.5" stroke-dasharray="3 2"/>')
    for v, p in zip(sk.vertices, pts):
        x, y = f(*p)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2.5" fill="black"/>')
    out.append(f'<text x="{_PAD}" y="20" font-size="12">{sk.kind} map, '
               f'coordinates {cx} and {cy}</text>')
    out.append("</svg>")
    return "\n".join(out)
