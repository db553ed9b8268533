"""Static SVG pictures of polygons, cycles, arrangements and winding chains."""

from __future__ import annotations

from typing import Iterable, Sequence
from xml.sax.saxutils import escape

SIZE = 480
PAD = 24


class Canvas:
    def __init__(self, points: Iterable[Sequence]):
        pts = [(float(p[0]), float(p[1])) for p in points] or [(0.0, 0.0)]
        self.x0 = min(p[0] for p in pts)
        self.y1 = max(p[1] for p in pts)
        w = max(p[0] for p in pts) - self.x0
        h = self.y1 - min(p[1] for p in pts)
        self.scale = (SIZE - 2 * PAD) / max(w, h, 1e-9)
        self.items: list[str] = []

    def xy(self, p) -> tuple[float, float]:
        return PAD + (float(p[0]) - self.x0) * self.scale, PAD + (self.y1 - float(p[1])) * self.scale

    def path(self, loops, fill="none", stroke="black", width=1.5, opacity=1.0) -> None:
        d = []
        for loop in loops:
            pts = [self.xy(p) for p in loop]
            d.append("M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in pts) + " Z")
        self.items.append(
            f'<path d="{" ".join(d)}" fill="{fill}" fill-rule="evenodd" fill-opacity="{opacity}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def segment(self, p, q, stroke="black", width=1.5, arrow=False) -> None:
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        marker = ' marker-end="url(#arrow)"' if arrow else ""
        self.items.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="{stroke}" stroke-width="{width}"{marker}/>'
        )

    def label(self, p, text: str) -> None:
        x, y = self.xy(p)
        self.items.append(f'<text x="{x:.2f}" y="{y:.2f}" font-size="12" text-anchor="middle">{escape(text)}</text>')

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">'
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" '
            'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>'
            f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>'
        )
        return head + "".join(self.items) + "</svg>\n"


def _weight_color(w: int) -> str:
    if w == 0:
        return "#dddddd"
    shade = max(40, 200 - 50 * (abs(w) - 1))
    return f"rgb({shade},{shade},255)" if w > 0 else f"rgb(255,{shade},{shade})"


def winding_chain_svg(chain, cycle=None) -> str:
    """Regions colored blue for positive and red for negative weight, labeled by weight."""
    pts = [p for _, r in chain.regions for loop in r.loops for p in loop]
    if cycle is not None:
        pts += list(cycle.points)
    c = Canvas(pts)
    for w, r in chain.regions:
        c.path(r.loops, fill=_weight_color(w), stroke="none", opacity=0.8)
        c.label(r.sample, str(w))
    if cycle is not None:
        for p, q in cycle.segments():
            c.segment(p, q, arrow=True)
    return c.render()


def polygons_svg(polytopes) -> str:
    pts = [v for p in polytopes for v in p.vertices]
    c = Canvas(pts)
    for p in polytopes:
        if p.dim == 2:
            c.path([p.boundary_cycle()], fill="#88aaff", opacity=0.4)
        elif p.dim == 1:
            c.segment(p.vertices[0], p.vertices[-1])
        else:
            c.label(p.vertices[0], "•")
    return c.render()


def segments_svg(segments, regions=()) -> str:
    pts = [p for s in segments for p in s]
    c = Canvas(pts)
    for r in regions:
        c.path(r.loops, fill="#ffe08a", stroke="none", opacity=0.7)
    for p, q in segments:
        c.segment(p, q)
    return c.render()
