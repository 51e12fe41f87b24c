"""SVG rendering of the input disc and the straightened disc.

Pictures are presentation only: every coordinate is the decimal expansion of
an exact rational to 12 significant digits, and the element structure (ids,
counts) is deterministic so renders can be snapshot-tested structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .family import FamilyPair, especial_disc
from .hullgeom import PlanePoint, hull, linked_cells, param_to_point
from .straighten import StraightenedDisc

__all__ = ["RenderOptions", "render_input_svg", "render_straightened_svg"]


@dataclass(frozen=True)
class RenderOptions:
    """Stable render defaults; sizes in pixels."""

    width: int = 720
    height: int = 720
    margin: int = 24
    stroke_width: float = 2.0
    leaf_stroke_width: float = 1.6
    point_radius: float = 3.0
    plus_color: str = "#2563eb"
    minus_color: str = "#dc2626"
    region_color: str = "#a78bfa"
    hulls: bool = True
    cells: bool = True
    linked_region: bool = True
    leaf_trees: bool = True
    labels: bool = False


def _fmt(v: float) -> str:
    return "%.12g" % v


class _Canvas:
    def __init__(self, opts: RenderOptions):
        self.opts = opts
        self.cx = opts.width / 2.0
        self.cy = opts.height / 2.0
        self.radius = min(opts.width, opts.height) / 2.0 - opts.margin
        self.parts = [
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            'width="%d" height="%d" viewBox="0 0 %d %d">'
            % (opts.width, opts.height, opts.width, opts.height)
        ]

    def px(self, p: PlanePoint) -> tuple:
        return (self.cx + self.radius * float(p.x), self.cy - self.radius * float(p.y))

    def boundary(self) -> None:
        self.parts.append(
            '<circle id="boundary" cx="%s" cy="%s" r="%s" fill="none" '
            'stroke="#111111" stroke-width="%s"/>'
            % (_fmt(self.cx), _fmt(self.cy), _fmt(self.radius), _fmt(self.opts.stroke_width)))

    def dot(self, eid: str, p: PlanePoint, color: str, r: float) -> None:
        x, y = self.px(p)
        self.parts.append('<circle id="%s" cx="%s" cy="%s" r="%s" fill="%s"/>'
                          % (eid, _fmt(x), _fmt(y), _fmt(r), color))

    def line(self, eid: str, p: PlanePoint, q: PlanePoint, color: str, width: float) -> None:
        x1, y1 = self.px(p)
        x2, y2 = self.px(q)
        self.parts.append(
            '<line id="%s" x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>'
            % (eid, _fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2), color, _fmt(width)))

    def polygon(self, eid: str, pts, color: str, fill: str, opacity: float) -> None:
        coords = " ".join("%s,%s" % (_fmt(x), _fmt(y)) for x, y in (self.px(p) for p in pts))
        if fill == "none":
            style = 'fill="none" stroke="%s" stroke-width="%s"' % (color, _fmt(self.opts.stroke_width))
        else:
            style = 'fill="%s" fill-opacity="%s" stroke="%s" stroke-width="1"' % (
                fill, _fmt(opacity), color)
        self.parts.append('<polygon id="%s" points="%s" %s/>' % (eid, coords, style))

    def text(self, eid: str, p: PlanePoint, content: str, color: str) -> None:
        x, y = self.px(p)
        self.parts.append('<text id="%s" x="%s" y="%s" font-size="12" fill="%s">%s</text>'
                          % (eid, _fmt(x), _fmt(y), color, escape(content)))

    def open_group(self, gid: str) -> None:
        self.parts.append('<g id="%s">' % gid)

    def close_group(self) -> None:
        self.parts.append('</g>')

    def finish(self) -> str:
        self.parts.append('</svg>')
        return "\n".join(self.parts) + "\n"


def _draw_cell(canvas: _Canvas, eid: str, cell, color: str, fill: str, opacity: float) -> None:
    if cell.dim == 0:
        canvas.dot(eid, cell.vertices[0], color, canvas.opts.point_radius)
    elif cell.dim == 1:
        canvas.line(eid, cell.vertices[0], cell.vertices[1], color, canvas.opts.stroke_width)
    else:
        canvas.polygon(eid, cell.vertices, color, fill, opacity)


def render_input_svg(fp: FamilyPair, opts: RenderOptions = RenderOptions()) -> str:
    """The embedded picture: circle, hulls, and the shaded linked region."""
    canvas = _Canvas(opts)
    canvas.boundary()
    if opts.hulls:
        for name, sets, color in (("plus", fp.plus, opts.plus_color),
                                  ("minus", fp.minus, opts.minus_color)):
            for i, s in enumerate(sets):
                _draw_cell(canvas, "hull-%s-%d" % (name, i), hull(s), color, "none", 0)
    if opts.cells or opts.linked_region:
        cells = linked_cells(fp, especial_disc(fp))
        fill = opts.region_color if opts.linked_region else "none"
        for (i, j) in sorted(cells):
            _draw_cell(canvas, "cell-%d-%d" % (i, j), cells[(i, j)], opts.region_color, fill, 0.55)
    if opts.labels:
        for name, sets, color in (("plus", fp.plus, opts.plus_color),
                                  ("minus", fp.minus, opts.minus_color)):
            labels = fp.plus_labels if name == "plus" else fp.minus_labels
            for i, s in enumerate(sets):
                tag = labels[i] if labels else "%s%d" % (name, i)
                canvas.text("label-%s-%d" % (name, i), param_to_point(s.points[0]), tag, color)
    return canvas.finish()


def render_straightened_svg(sd: StraightenedDisc, opts: RenderOptions = RenderOptions()) -> str:
    """The straightened picture: circle, leaf trees, Z-points."""
    canvas = _Canvas(opts)
    canvas.boundary()
    if opts.leaf_trees:
        for leaves, color in ((sd.leaves_plus, opts.plus_color),
                              (sd.leaves_minus, opts.minus_color)):
            for leaf in leaves:
                canvas.open_group("leaf-%s-%d" % (leaf.family, leaf.element))
                for idx, (u, v) in enumerate(leaf.edges):
                    p = sd.position(leaf.family, leaf.element, u)
                    q = sd.position(leaf.family, leaf.element, v)
                    canvas.line("leaf-%s-%d-e%d" % (leaf.family, leaf.element, idx),
                                p, q, color, opts.leaf_stroke_width)
                canvas.close_group()
    for (fam, el) in sorted(sd.virtual_positions):
        canvas.dot("virtual-%s-%d" % (fam, el), sd.virtual_positions[(fam, el)],
                   "#6b7280", opts.point_radius * 0.8)
    for (i, j) in sorted(sd.layout):
        color = "#111111" if (i, j) in sd.boundary_anchors else opts.region_color
        canvas.dot("z-%d-%d" % (i, j), sd.layout[(i, j)], color, opts.point_radius)
    if opts.labels:
        for (i, j) in sorted(sd.layout):
            canvas.text("zlabel-%d-%d" % (i, j), sd.layout[(i, j)], "(%d,%d)" % (i, j), "#374151")
    return canvas.finish()
