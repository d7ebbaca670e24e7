"""Minimal SVG drawings of ornaments, braid diagrams and flow trajectories."""

from __future__ import annotations

from xml.sax.saxutils import escape

from realloops.loops import ConfigLoop
from realloops.ornament import Ornament, kronecker_terms

COLORS = ("#d62728", "#1f77b4", "#2ca02c")


class _Canvas:
    def __init__(self, x0, y0, x1, y1, size=480, pad=24):
        self.x0, self.y0 = x0, y0
        w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
        self.s = (size - 2 * pad) / max(w, h)
        self.pad = pad
        self.W, self.H = w * self.s + 2 * pad, h * self.s + 2 * pad
        self.h = h
        self.items: list[str] = []

    def pt(self, x, y, flip=True):
        px = self.pad + (float(x) - self.x0) * self.s
        py = self.pad + ((self.h - (float(y) - self.y0)) if flip else (float(y) - self.y0)) * self.s
        return f"{px:.2f},{py:.2f}"

    def polyline(self, pts, color, closed=False, flip=True, width=1.5):
        tag = "polygon" if closed else "polyline"
        coords = " ".join(self.pt(x, y, flip) for x, y in pts)
        self.items.append(f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>')

    def text(self, x, y, s, color="black", flip=True):
        px, py = self.pt(x, y, flip).split(",")
        self.items.append(f'<text x="{px}" y="{py}" font-size="11" fill="{color}">{escape(s)}</text>')

    def render(self) -> str:
        body = "\n  ".join(self.items)
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.W:.0f}" height="{self.H:.0f}">\n'
                f'  <rect width="100%" height="100%" fill="white"/>\n  {body}\n</svg>\n')


def ornament_svg(o: Ornament) -> str:
    x0, y0, x1, y1 = (float(v) for v in o.bbox())
    c = _Canvas(x0, y0, x1, y1)
    for i, cur in enumerate(o.curves):
        c.polyline(cur, COLORS[i], closed=True)
    for x, v in kronecker_terms(o):
        label = {1: "+", -1: "-", 0: "0"}[v]
        c.text(x.point[0], x.point[1], label)
    return c.render()


def loop_svg(loop: ConfigLoop) -> str:
    """Braid diagram: time runs down the page, position across."""
    xs = [float(v) for s in loop.segments for v in (s.x0, s.x1)] or [0.0]
    c = _Canvas(min(xs), float(loop.t_start), max(xs), float(loop.t_end))
    for s in loop.segments:
        c.polyline([(s.x0, s.t0), (s.x1, s.t1)], COLORS[s.kind], flip=False)
    return c.render()


def trajectory_svg(traj: list[dict]) -> str:
    """Worldlines of a recorded flow run; time runs down the page."""
    if not traj:
        return _Canvas(0, 0, 1, 1).render()
    xs = [v for row in traj for v in row["x"]] or [0.0]
    c = _Canvas(min(xs), traj[0]["t"], max(xs), traj[-1]["t"])
    # consecutive rows with the same particle count belong to one segment
    start = 0
    for k in range(1, len(traj) + 1):
        if k == len(traj) or len(traj[k]["x"]) != len(traj[start]["x"]):
            rows = traj[start:k]
            for j, kind in enumerate(rows[0]["kinds"]):
                c.polyline([(r["x"][j], r["t"]) for r in rows], COLORS[kind], flip=False)
            start = k
    return c.render()
