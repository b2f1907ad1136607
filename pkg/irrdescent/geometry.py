"""Convex polygons with high precision coordinates.

Coordinates are mpmath floats of a dedicated context so the precision of
figure computations can be changed without touching the global
``mpmath.mp``. Tolerances are scale relative: ``eps_geom`` is ``2**-40``
times the largest coordinate magnitude and ``eps_area = eps_geom**2``.

The precision of ``CONTEXT`` is process-wide configuration. Geometry
functions only read it, so clipping may run concurrently, but
``set_precision`` and ``precision`` mutate it and must not be called while
other threads evaluate geometry.
"""
import contextlib
import logging
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from mpmath.ctx_mp import MPContext

from .exact import QuadExt

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 128
MIN_PRECISION = 64
CONTEXT = MPContext()
CONTEXT.prec = DEFAULT_PRECISION

RELATIVE_EPS = CONTEXT.mpf(2) ** -40

TReal = tp.Any


class MultiplicityOverflow(RuntimeError):
    """A point is covered by more small polygons than allowed."""


class ContainmentError(RuntimeError):
    """A small polygon sticks out of the big one."""


def set_precision(bits: int) -> None:
    """Sets the working precision of all geometry, in bits.

    Not thread-safe: the precision is shared by every caller of this module.
    """
    if bits < MIN_PRECISION:
        raise ValueError(f'precision must be at least {MIN_PRECISION} bits, got {bits}')
    CONTEXT.prec = bits


@contextlib.contextmanager
def precision(bits: int) -> tp.Generator[None, None, None]:
    """Temporarily changes the working precision, restoring it on exit.

    Not thread-safe, like set_precision.
    """
    previous = CONTEXT.prec
    set_precision(bits)
    try:
        yield
    finally:
        CONTEXT.prec = previous


def real(value: tp.Any) -> TReal:
    """Converts int, Fraction, QuadExt, float or mpf to a context float."""
    if isinstance(value, QuadExt):
        return quad_to_real(value)
    if isinstance(value, Fraction):
        return CONTEXT.mpf(value.numerator) / value.denominator
    return CONTEXT.mpf(value)


def quad_to_real(x: QuadExt) -> TReal:
    return real(x.p) + real(x.q) * CONTEXT.sqrt(x.m)


def angle(multiple_of_pi: tp.Union[int, Fraction]) -> TReal:
    """Radians of a rational multiple of pi."""
    return CONTEXT.pi * real(Fraction(multiple_of_pi))


def shape_constant(sides: int) -> TReal:
    """Area of the regular polygon with unit side.

    Args:
        sides: number of sides.

    Return:
        sqrt(3)/4, 1, sqrt(25 + 10 sqrt(5))/4, or sides / (4 tan(pi/sides)).
    """
    if sides == 3:
        return CONTEXT.sqrt(3) / 4
    if sides == 4:
        return CONTEXT.mpf(1)
    if sides == 5:
        return CONTEXT.sqrt(25 + 10 * CONTEXT.sqrt(5)) / 4
    return CONTEXT.mpf(sides) / (4 * CONTEXT.tan(CONTEXT.pi / sides))


@dataclass(frozen=True)
class Point:
    x: TReal
    y: TReal

    def __post_init__(self) -> None:
        object.__setattr__(self, 'x', real(self.x))
        object.__setattr__(self, 'y', real(self.y))
        if not (CONTEXT.isfinite(self.x) and CONTEXT.isfinite(self.y)):
            raise ValueError(f'point coordinates must be finite, got ({self.x}, {self.y})')

    def __add__(self, other: 'Point') -> 'Point':
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: 'Point') -> 'Point':
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, factor: TReal) -> 'Point':
        return Point(self.x * factor, self.y * factor)

    def cross(self, other: 'Point') -> TReal:
        return self.x * other.y - self.y * other.x

    def length(self) -> TReal:
        return CONTEXT.hypot(self.x, self.y)

    def magnitude(self) -> TReal:
        return max(abs(self.x), abs(self.y))


def polar(length: TReal, direction: TReal) -> Point:
    return Point(length * CONTEXT.cos(direction), length * CONTEXT.sin(direction))


def _signed_area(vertices: tp.Sequence[Point]) -> TReal:
    total = CONTEXT.mpf(0)
    for current, following in zip(vertices, [*vertices[1:], vertices[0]]):
        total += current.cross(following)
    return total / 2


def _offset(start: Point, end: Point, point: Point) -> TReal:
    """Signed distance of point from the directed line start -> end, left positive."""
    edge = end - start
    return edge.cross(point - start) / edge.length()


def eps_geom(*polygons: 'ConvexPolygon') -> TReal:
    scale = max((vertex.magnitude() for polygon in polygons for vertex in polygon.vertices),
                default=CONTEXT.mpf(1))
    return RELATIVE_EPS * max(scale, CONTEXT.mpf(1))


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise convex polygon.

    Attributes:
        vertices: at least three points, counterclockwise.
    """
    vertices: tuple[Point, ...] = field()

    def __post_init__(self) -> None:
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError(f'a polygon needs at least 3 vertices, got {len(self.vertices)}')
        eps = self.eps
        if _signed_area(self.vertices) < -eps * eps:
            raise ValueError('polygon vertices must be counterclockwise')
        for start, end in self.edges():
            if (end - start).length() <= eps:
                continue
            if any(_offset(start, end, vertex) < -eps for vertex in self.vertices):
                raise ValueError('polygon is not convex')

    @property
    def eps(self) -> TReal:
        return eps_geom(self)

    def edges(self) -> tp.Iterator[tuple[Point, Point]]:
        return zip(self.vertices, [*self.vertices[1:], self.vertices[0]])

    def area(self) -> TReal:
        return shoelace_area(self)

    def bounds(self) -> tuple[TReal, TReal, TReal, TReal]:
        xs = [vertex.x for vertex in self.vertices]
        ys = [vertex.y for vertex in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def side_lengths(self) -> list[TReal]:
        return [(end - start).length() for start, end in self.edges()]

    def contains(self, other: 'ConvexPolygon') -> bool:
        """Every vertex of other lies inside self, up to eps_geom."""
        eps = eps_geom(self, other)
        return all(_offset(start, end, vertex) >= -eps
                   for start, end in self.edges()
                   for vertex in other.vertices)


def regular_ngon(sides: int, side_length: TReal, anchor: Point, rotation: TReal) -> ConvexPolygon:
    """Regular polygon walked counterclockwise from anchor.

    Args:
        sides: number of sides, at least 3.
        side_length: positive side length.
        anchor: first vertex.
        rotation: direction of the first edge, in radians.

    Return:
        the polygon.
    """
    if sides < 3:
        raise ValueError(f'a regular polygon needs at least 3 sides, got {sides}')
    side_length = real(side_length)
    if side_length <= 0:
        raise ValueError(f'side length must be positive, got {side_length}')
    turn = 2 * CONTEXT.pi / sides
    vertices = [anchor]
    for i in range(sides - 1):
        vertices.append(vertices[-1] + polar(side_length, real(rotation) + i * turn))
    return ConvexPolygon(tuple(vertices))


def shoelace_area(polygon: ConvexPolygon) -> TReal:
    """Area by the shoelace formula; never negative."""
    return max(_signed_area(polygon.vertices), CONTEXT.mpf(0))


def _bounds_overlap(first: ConvexPolygon, second: ConvexPolygon, eps: TReal) -> bool:
    x0, y0, x1, y1 = first.bounds()
    u0, v0, u1, v1 = second.bounds()
    return x0 <= u1 + eps and u0 <= x1 + eps and y0 <= v1 + eps and v0 <= y1 + eps


def _clean(vertices: list[Point], eps: TReal) -> list[Point]:
    """Drops repeated and collinear vertices."""
    changed = True
    while changed and len(vertices) >= 3:
        changed = False
        for i, vertex in enumerate(vertices):
            previous, following = vertices[i - 1], vertices[(i + 1) % len(vertices)]
            if (vertex - previous).length() <= eps or (following - previous).length() <= eps \
                    or abs(_offset(previous, following, vertex)) <= eps:
                del vertices[i]
                changed = True
                break
    return vertices


def convex_clip(subject: ConvexPolygon, clip: ConvexPolygon) -> tp.Optional[ConvexPolygon]:
    """Intersection of two convex polygons by successive half-plane clipping.

    Args:
        subject: polygon to clip.
        clip: polygon whose edges define the half-planes.

    Return:
        the intersection, or None when its area is below eps_area.
    """
    eps = eps_geom(subject, clip)
    if not _bounds_overlap(subject, clip, eps):
        return None
    output = list(subject.vertices)
    for edge_start, edge_end in clip.edges():
        if not output:
            return None
        candidates, output = output, []
        offsets = [_offset(edge_start, edge_end, vertex) for vertex in candidates]
        previous, previous_offset = candidates[-1], offsets[-1]
        for current, current_offset in zip(candidates, offsets):
            if current_offset >= -eps:
                if previous_offset < -eps:
                    output.append(_crossing(previous, previous_offset, current, current_offset))
                output.append(current)
            elif previous_offset >= -eps:
                output.append(_crossing(previous, previous_offset, current, current_offset))
            previous, previous_offset = current, current_offset
    output = _clean(output, eps)
    if len(output) < 3 or _signed_area(output) < eps * eps:
        return None
    return ConvexPolygon(tuple(output))


def _crossing(start: Point, start_offset: TReal, end: Point, end_offset: TReal) -> Point:
    ratio = start_offset / (start_offset - end_offset)
    return start + (end - start).scale(ratio)


@dataclass
class OverlapRegions:
    """Nonempty intersections of a family of small polygons.

    Attributes:
        pairs: pairwise intersections keyed by index pairs.
        triples: triple intersections keyed by index triples.
        double_cells: pair regions not covered by any third polygon.
    """
    pairs: dict[tuple[int, int], ConvexPolygon] = field(default_factory=dict)
    triples: dict[tuple[int, int, int], ConvexPolygon] = field(default_factory=dict)
    double_cells: list[ConvexPolygon] = field(default_factory=list)


def _area_tolerance(area: TReal, eps: TReal) -> TReal:
    return eps * eps + area * CONTEXT.mpf(2) ** -(CONTEXT.prec // 2)


def overlap_regions(smalls: tp.Sequence[ConvexPolygon], max_multiplicity: int) -> OverlapRegions:
    """Pairwise and triple clip regions of smalls.

    Args:
        smalls: polygons to intersect.
        max_multiplicity: 2 or 3; deeper overlaps raise MultiplicityOverflow.

    Return:
        the regions.
    """
    if max_multiplicity not in (2, 3):
        raise ValueError(f'max_multiplicity must be 2 or 3, got {max_multiplicity}')
    regions = OverlapRegions()
    count = len(smalls)
    for i, j in combinations(range(count), 2):
        region = convex_clip(smalls[i], smalls[j])
        if region is not None:
            regions.pairs[i, j] = region
    for (i, j), region in regions.pairs.items():
        for other in range(j + 1, count):
            triple = convex_clip(region, smalls[other])
            if triple is None:
                continue
            if max_multiplicity == 2:
                raise MultiplicityOverflow(f'polygons {i}, {j}, {other} overlap with multiplicity 3')
            regions.triples[i, j, other] = triple
    if max_multiplicity == 3:
        for (i, j, other), region in regions.triples.items():
            for fourth in range(other + 1, count):
                if convex_clip(region, smalls[fourth]) is not None:
                    raise MultiplicityOverflow(
                        f'polygons {i}, {j}, {other}, {fourth} overlap with multiplicity 4')
    for (i, j), region in regions.pairs.items():
        area = region.area()
        tolerance = _area_tolerance(area, region.eps)
        covered = any(
            set(key) >= {i, j} and triple.area() >= area - tolerance
            for key, triple in regions.triples.items()
        )
        if not covered:
            regions.double_cells.append(region)
    return regions


@dataclass
class CoverageReport:
    """Area bookkeeping of small polygons inside a big one.

    Attributes:
        union_area: area covered at least once.
        excess_area: sum over cells of (multiplicity - 1) * area.
        uncovered_area: area of big not covered.
        regions: the clip regions the report was computed from.
    """
    union_area: TReal
    excess_area: TReal
    uncovered_area: TReal
    regions: OverlapRegions


def multiplicity_accounting(big: ConvexPolygon,
                            smalls: tp.Sequence[ConvexPolygon],
                            max_multiplicity: int) -> CoverageReport:
    """Union, excess and uncovered areas by inclusion-exclusion.

    Args:
        big: containing polygon.
        smalls: polygons inside big.
        max_multiplicity: 2 or 3.

    Return:
        the coverage report.
    """
    for index, small in enumerate(smalls):
        if not big.contains(small):
            raise ContainmentError(f'small polygon {index} is not inside the big polygon')
    regions = overlap_regions(smalls, max_multiplicity)
    total = CONTEXT.fsum(small.area() for small in smalls)
    pair_sum = CONTEXT.fsum(region.area() for region in regions.pairs.values())
    triple_sum = CONTEXT.fsum(region.area() for region in regions.triples.values())
    union = total - pair_sum + triple_sum
    logger.debug('coverage of %d polygons: %d pair regions, %d triple regions',
                 len(smalls), len(regions.pairs), len(regions.triples))
    return CoverageReport(
        union_area=union,
        excess_area=total - union,
        uncovered_area=big.area() - union,
        regions=regions,
    )
