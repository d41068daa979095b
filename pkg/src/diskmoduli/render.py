"""Schematic SVG drawings of arc diagrams.

Boundary particles are spread evenly around the disk in the tree's planar
order.  Each disk bubble becomes a geodesic arc (a circle meeting the
boundary at right angles) cutting off the stretch of boundary it encloses;
each sphere bubble becomes a loop around its interior particles.  Interior
items of a bubble are drawn as a "pocket" sitting between its arc and the
boundary.  The layout is combinatorial only, and the output is byte-stable
for a fixed tree.
"""
from __future__ import annotations

from math import atan2, cos, degrees, pi, sin, sqrt, tan

from .trees import BP, IP, Disk, validate_tree

SIZE = 420
CENTER = SIZE / 2
RADIUS = 160
UNIT = 16


def _f(x):
    return f"{x:.2f}"


def _height(node):
    if isinstance(node, Disk):
        return 1 + max((_height(c) for c in node.boundary), default=0)
    return 0


def _atoms(items, out, arcs):
    """Flatten boundary items into atoms (particles and interior pockets),
    recording the atom range covered by each disk."""
    for item in items:
        if isinstance(item, BP):
            out.append(("bp", item))
            continue
        lo = len(out)
        half = len(item.boundary) // 2
        _atoms(item.boundary[:half], out, arcs)
        if item.interior:
            out.append(("pocket", item.interior))
        _atoms(item.boundary[half:], out, arcs)
        arcs.append((lo, len(out) - 1, item))


def _geodesic(a, b):
    """Centre and radius of the circle orthogonal to the boundary through
    the boundary points at angles ``a`` and ``b``."""
    span = (b - a) % (2 * pi)
    mid = a + span / 2
    if span > pi:
        span, mid = 2 * pi - span, mid + pi
    half = min(span / 2, pi / 2 - 1e-3)
    dist = RADIUS / cos(half)
    return (CENTER + dist * cos(mid), CENTER + dist * sin(mid)), RADIUS * tan(half)


def _ray_hit(theta, centre):
    """Distance from the disk centre at which the ray at ``theta`` meets the
    geodesic, or None."""
    ux, uy = cos(theta), sin(theta)
    uc = ux * (centre[0] - CENTER) + uy * (centre[1] - CENTER)
    disc = uc * uc - RADIUS * RADIUS
    if uc <= 0 or disc < 0:
        return None
    r = uc - sqrt(disc)
    return r if r < RADIUS else None


def _width(node):
    if isinstance(node, IP):
        return 1.0
    return sum(_width(c) for c in node.children) + 0.6


def _sphere_depth(node):
    if isinstance(node, IP):
        return 0
    return 1 + max(_sphere_depth(c) for c in node.children)


def _cluster(items, x, y, rot, shapes):
    """Lay interior items in a row centred on ``(x, y)`` and turned by
    ``rot`` radians."""
    dx, dy = cos(rot), sin(rot)
    total = sum(_width(c) for c in items)
    offset = -total * UNIT / 2
    for item in items:
        w = _width(item)
        t = offset + w * UNIT / 2
        cx, cy = x + t * dx, y + t * dy
        if isinstance(item, IP):
            shapes.append(f'<circle class="ip" cx="{_f(cx)}" cy="{_f(cy)}" r="3.5"/>')
            shapes.append(f'<text x="{_f(cx + 4)}" y="{_f(cy - 5)}" font-size="10">{item.index}</text>')
        else:
            _cluster(item.children, cx, cy, rot, shapes)
            rx = (w - 0.1) * UNIT / 2
            ry = UNIT * (0.45 + 0.2 * _sphere_depth(item))
            shapes.append(
                f'<ellipse class="sphere" cx="{_f(cx)}" cy="{_f(cy)}" rx="{_f(rx)}" ry="{_f(ry)}" '
                f'transform="rotate({_f(degrees(rot))} {_f(cx)} {_f(cy)})" fill="none" stroke="#1f5fa8"/>')
        offset += w * UNIT


def render_svg(tree):
    """SVG arc diagram of ``tree``."""
    validate_tree(tree)
    atoms, arcs = [], []
    _atoms(tree.boundary, atoms, arcs)
    if tree.interior:
        atoms.append(("pocket", tree.interior))
    shapes = [f'<circle class="disk" cx="{_f(CENTER)}" cy="{_f(CENTER)}" r="{RADIUS}" '
              f'fill="none" stroke="black" stroke-width="1.5"/>']
    step = 2 * pi / max(1, len(atoms))

    def angle(k):
        return -pi / 2 + k * step

    circles = []
    for lo, hi, disk in arcs:
        pad = step * (0.5 - 0.4 / (_height(disk) + 1))
        a, b = angle(lo) - pad, angle(hi) + pad
        centre, rho = _geodesic(a, b)
        circles.append(centre)
        p1 = (CENTER + RADIUS * cos(a), CENTER + RADIUS * sin(a))
        p2 = (CENTER + RADIUS * cos(b), CENTER + RADIUS * sin(b))
        f1 = atan2(p1[1] - centre[1], p1[0] - centre[0])
        f2 = atan2(p2[1] - centre[1], p2[0] - centre[0])
        sweep = (f2 - f1 + pi) % (2 * pi) - pi  # the short way round
        points = [(centre[0] + rho * cos(f1 + sweep * s / 40),
                   centre[1] + rho * sin(f1 + sweep * s / 40)) for s in range(41)]
        d = "M " + " L ".join(f"{_f(x)} {_f(y)}" for x, y in points)
        kind, color = ("flat", "#b5651d") if disk.flat else ("punctured", "#2e7d32")
        shapes.append(f'<path class="{kind}" d="{d}" fill="none" stroke="{color}" stroke-width="1.2"/>')

    for k, (kind, item) in enumerate(atoms):
        theta = angle(k)
        if kind == "bp":
            x, y = CENTER + RADIUS * cos(theta), CENTER + RADIUS * sin(theta)
            lx, ly = CENTER + (RADIUS + 14) * cos(theta), CENTER + (RADIUS + 14) * sin(theta)
            shapes.append(f'<circle class="bp" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="white" stroke="black"/>')
            shapes.append(f'<text x="{_f(lx - 3)}" y="{_f(ly + 4)}" font-size="11">{item.index}</text>')
            continue
        hits = [h for h in (_ray_hit(theta, c) for c in circles) if h is not None]
        if hits:
            r = (RADIUS + max(hits)) / 2
            _cluster(item, CENTER + r * cos(theta), CENTER + r * sin(theta), theta + pi / 2, shapes)
        else:
            _cluster(item, CENTER, CENTER, 0.0, shapes)

    body = "\n  ".join(shapes)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n  <title>{tree.encode()}</title>\n  {body}\n</svg>\n')
