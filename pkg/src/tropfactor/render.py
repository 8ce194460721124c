"""Deterministic SVG pictures of plane subdivisions and polygon lists."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .geometry import Polytope, convex_hull, format_rational

PALETTE = ["#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4", "#fed9a6", "#ffffcc", "#e5d8bd",
           "#fddaec", "#f2f2f2", "#b3e2cd"]


class NonPlanarError(ValueError):
    """The input cannot be drawn in the plane."""


@dataclass(frozen=True)
class RenderSpec:
    """``drop`` is the coordinate removed from homogeneous 3-variable input
    (None means the last one); ``size`` is the panel side in pixels."""

    size: int = 320
    labels: bool = True
    drop: int | None = None


def project(p: Polytope, spec: RenderSpec = RenderSpec()) -> list[tuple[Fraction, Fraction]]:
    """Plane coordinates of the vertices of ``p``."""
    n = p.ambient_dim
    if n == 2:
        return [tuple(Fraction(x) for x in v) for v in p.vertices]
    if n == 3:
        drop = 2 if spec.drop is None else spec.drop
        if len({sum(v) for v in p.vertices}) > 1:
            raise NonPlanarError("3-variable input must be homogeneous to be drawn")
        return [tuple(Fraction(x) for i, x in enumerate(v) if i != drop) for v in p.vertices]
    if n == 1:
        return [(Fraction(v[0]), Fraction(0)) for v in p.vertices]
    raise NonPlanarError(f"cannot draw polytopes in dimension {n}")


def _cyclic(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Boundary order of a convex polygon's vertices."""
    hull = convex_hull(points)
    pts = list(hull.vertices)
    if len(pts) <= 2:
        return pts
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)

    def key(p):
        # exact angular order: half-plane first, then cross products
        dx, dy = p[0] - cx, p[1] - cy
        return (0 if (dy > 0 or (dy == 0 and dx > 0)) else 1, _Angle(dx, dy))

    return sorted(pts, key=key)


class _Angle:
    __slots__ = ("dx", "dy")

    def __init__(self, dx, dy):
        self.dx, self.dy = dx, dy

    def __lt__(self, other: "_Angle") -> bool:
        return self.dx * other.dy - self.dy * other.dx > 0


def _num(x: Fraction) -> str:
    s = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    def __init__(self, polys: Sequence[list], box: tuple[float, float, float, float]):
        xs = [p[0] for poly in polys for p in poly]
        ys = [p[1] for poly in polys for p in poly]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), Fraction(1))
        left, top, width, height = box
        pad = Fraction(24)
        self.scale = (Fraction(min(width, height)) - 2 * pad) / span
        self.left, self.top, self.pad = Fraction(left), Fraction(top), pad

    def __call__(self, p) -> tuple[str, str]:
        x = self.left + self.pad + (p[0] - self.x0) * self.scale
        y = self.top + self.pad + (self.y1 - p[1]) * self.scale
        return _num(x), _num(y)


def _shape(pts, frame: _Frame, fill: str) -> str:
    ring = _cyclic(pts)
    coords = [frame(p) for p in ring]
    if len(ring) == 1:
        x, y = coords[0]
        return f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>'
    if len(ring) == 2:
        (x1, y1), (x2, y2) = coords
        return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>'
                f'<circle cx="{x1}" cy="{y1}" r="3"/><circle cx="{x2}" cy="{y2}" r="3"/>')
    path = " ".join(f"{x},{y}" for x, y in coords)
    return f'<polygon points="{path}" fill="{fill}" stroke="black" stroke-width="1"/>'


def _text(x, y, s: str, size: int = 11, anchor: str = "middle") -> str:
    return (f'<text x="{x}" y="{y}" font-family="monospace" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(s)}</text>')


def _centroid(pts):
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def _document(width: int, height: int, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body,
                      "</svg>"]) + "\n"


def _panel(cells: list[list], labels: list[str], left: int, spec: RenderSpec,
           title: str = "") -> list[str]:
    frame = _Frame(cells, (left, 0, spec.size, spec.size))
    out = [_shape(c, frame, PALETTE[i % len(PALETTE)]) for i, c in enumerate(cells)]
    if spec.labels:
        for c, lab in zip(cells, labels):
            x, y = frame(_centroid(_cyclic(c)))
            out.append(_text(x, y, lab))
    if title:
        out.append(_text(left + spec.size // 2, spec.size + 14, title, 12))
    return out


def render_polytope(p: Polytope, spec: RenderSpec = RenderSpec()) -> str:
    pts = project(p, spec)
    body = _panel([pts], [""], 0, RenderSpec(spec.size, False, spec.drop))
    return _document(spec.size, spec.size, body)


def render_subdivision(cells: Sequence[Polytope], spec: RenderSpec = RenderSpec(),
                       rows: Sequence[str] = (), compare: Sequence[Polytope] | None = None,
                       compare_rows: Sequence[str] = (), titles: tuple[str, str] = ("", "")) -> str:
    """Cells as labelled polygons; ``rows`` are printed underneath, one per cell.

    ``compare`` draws a second subdivision to the right.
    """
    panels = [([project(c, spec) for c in cells], list(rows))]
    if compare is not None:
        panels.append(([project(c, spec) for c in compare], list(compare_rows)))
    body = []
    line = 16
    n_rows = max(len(r) for _, r in panels)
    height = spec.size + 24 + line * n_rows
    for k, (polys, rws) in enumerate(panels):
        left = k * spec.size
        labels = [f"C{i + 1}" for i in range(len(polys))]
        body += _panel(polys, labels, left, spec, titles[k])
        for i, r in enumerate(rws):
            body.append(_text(left + 8, spec.size + 24 + line * (i + 1) - 4,
                              f"C{i + 1}: {r}", 11, "start"))
    return _document(spec.size * len(panels), height, body)


def render_strip(polys: Sequence[Polytope], names: Sequence[str],
                 spec: RenderSpec = RenderSpec(size=120)) -> str:
    """Polygons side by side, each in its own box with its name underneath."""
    body = []
    for i, (p, nm) in enumerate(zip(polys, names)):
        pts = project(p, spec)
        body += _panel([pts], [""], i * spec.size, RenderSpec(spec.size, False, spec.drop),
                       nm if spec.labels else "")
    return _document(spec.size * len(polys), spec.size + 24, body)


def decomposition_label(coeffs: Sequence, names: Sequence[str], w: Sequence[int] = ()) -> str:
    parts = []
    for c, nm in zip(coeffs, names):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign}{'' if mag == 1 else format_rational(mag)}{nm}")
    text = "".join(parts).lstrip("+") or "0"
    if any(w):
        text += " + (" + ",".join(str(x) for x in w) + ")"
    return text
