import svgwrite

from . import exceptions, hardcode
from .core import sort_total

SCALE = 20
FILL = '#4a7ab5'
STROKE = '#1d2b3a'


def _order_color(i, n):
    # blue for the first vertex built, red for the last
    t = i / (n - 1) if n > 1 else 0.0
    return 'rgb(%d,0,%d)' % (round(255 * t), round(255 * (1 - t)))


def render_svg(animal, style=hardcode.render_squares, color_order=False):
    """
    SVG drawing of a finite animal: one rotated unit square per vertex,
    or one domino of width slightly less than 2 per vertex (a heap of
    pieces). With `color_order` vertices are colored by construction
    order.
    """
    if style not in dict(hardcode.render_style):
        raise exceptions.DomainError('render_svg', style)
    xs = [v.x for v in animal]
    left = min(xs) - 1
    top = animal.height + 1
    width = (max(xs) + 1 - left) * SCALE
    height = (top + 1) * SCALE
    drawing = svgwrite.Drawing(size=(width, height))
    drawing.viewbox(0, 0, width, height)

    order = sort_total(animal) if color_order else list(animal.vertices)
    for i, v in enumerate(order):
        fill = _order_color(i, len(order)) if color_order else FILL
        cx, cy = (v.x - left) * SCALE, (top - v.y) * SCALE
        if style == hardcode.render_squares:
            shape = drawing.polygon(
                [(cx, cy - SCALE), (cx + SCALE, cy), (cx, cy + SCALE),
                 (cx - SCALE, cy)],
                fill=fill, stroke=STROKE)
        else:
            shape = drawing.rect(
                insert=(cx - 0.95 * SCALE, cy - 0.5 * SCALE),
                size=(1.9 * SCALE, SCALE), fill=fill, stroke=STROKE)
        drawing.add(shape)
    return drawing.tostring()
