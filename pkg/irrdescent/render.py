"""Standalone SVG drawings of figures, shaded by cover multiplicity."""
import logging
import pathlib
import typing as tp
from dataclasses import dataclass, field

from . import geometry as geo
from .constructions import Figure

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg width="%(size)d" height="%(size)d" viewBox="0 0 %(size)d %(size)d" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<title>%(title)s</title>
"""

POSTAMBLE = """\
</svg>
"""

POLYGON = '<polygon class="%(css_class)s" points="%(points)s" ' \
          'style="fill:%(fill)s;stroke:#000000;stroke-width:%(stroke).2f"/>'


def _default_palette() -> dict[int, str]:
    # uncovered white, single light red, double pink, triple deep rose
    return {0: '#ffffff', 1: '#f4a3a3', 2: '#f06fa8', 3: '#a8326e'}


@dataclass(frozen=True)
class RenderStyle:
    """Canvas and colors.

    Attributes:
        canvas_px: side of the square canvas in pixels.
        palette: fill color per multiplicity 0 .. 3.
        stroke_width: outline width in pixels.
        margin: blank border as a fraction of the canvas.
    """
    canvas_px: int = 600
    palette: dict[int, str] = field(default_factory=_default_palette)
    stroke_width: float = 1.0
    margin: float = 0.05

    def __post_init__(self) -> None:
        if self.canvas_px <= 0:
            raise ValueError(f'canvas size must be positive, got {self.canvas_px}')
        missing = {0, 1, 2, 3} - set(self.palette)
        if missing:
            raise ValueError(f'palette has no color for multiplicities {sorted(missing)}')
        if not 0 <= self.margin < 0.5:
            raise ValueError(f'margin must be in [0, 0.5), got {self.margin}')


class _Canvas:
    """Maps figure coordinates onto the canvas with the y axis pointing up."""

    def __init__(self, big: geo.ConvexPolygon, style: RenderStyle) -> None:
        x0, y0, x1, y1 = big.bounds()
        span = max(x1 - x0, y1 - y0)
        self.border = style.canvas_px * style.margin
        self.scale = (style.canvas_px - 2 * self.border) / span
        self.x0, self.y0 = x0, y0
        self.size = style.canvas_px

    def points(self, polygon: geo.ConvexPolygon) -> str:
        pairs = []
        for vertex in polygon.vertices:
            x = self.border + float((vertex.x - self.x0) * self.scale)
            y = self.size - self.border - float((vertex.y - self.y0) * self.scale)
            pairs.append(f'{x:.4f},{y:.4f}')
        return ' '.join(pairs)


def figure_to_svg(fig: Figure, style: tp.Optional[RenderStyle] = None) -> str:
    """Draws the big outline, the small polygons, then the double and triple cells.

    Args:
        fig: figure to draw.
        style: canvas and colors, RenderStyle() by default.

    Return:
        SVG 1.1 document.
    """
    style = style or RenderStyle()
    canvas = _Canvas(fig.big, style)
    regions = geo.overlap_regions(fig.smalls, fig.kind.max_multiplicity)
    layers: list[tuple[str, int, tp.Sequence[geo.ConvexPolygon]]] = [
        ('big', 0, [fig.big]),
        ('small', 1, fig.smalls),
        ('double', 2, regions.double_cells),
        ('triple', 3, list(regions.triples.values())),
    ]
    commands = []
    for css_class, multiplicity, polygons in layers:
        for polygon in polygons:
            commands.append(POLYGON % {
                'css_class': css_class,
                'points': canvas.points(polygon),
                'fill': style.palette[multiplicity],
                'stroke': style.stroke_width,
            })
    title = f'{fig.kind.label} figure, a = {fig.a}, b = {fig.b}'
    header = PREAMBLE % {'size': style.canvas_px, 'title': title}
    return header + '\n'.join(commands) + '\n' + POSTAMBLE


def default_filename(fig: Figure) -> str:
    """'<kind>_<a>_<b>.svg', e.g. 'tri3_5_2.svg'."""
    return f'{fig.kind.label}_{fig.a}_{fig.b}.svg'


def write_svg(fig: Figure, style: tp.Optional[RenderStyle] = None,
              path: tp.Union[str, pathlib.Path, None] = None) -> pathlib.Path:
    """Writes figure_to_svg(fig, style) to path, or to default_filename(fig)."""
    target = pathlib.Path(path) if path is not None else pathlib.Path(default_filename(fig))
    target.write_text(figure_to_svg(fig, style), encoding='utf-8')
    logger.debug('wrote %s', target)
    return target
