import dataclasses
from fractions import Fraction

import pytest
from pytest import approx

from irrdescent import geometry as geo
from irrdescent.exact import QuadExt


def square(x0: float, y0: float, side: float) -> geo.ConvexPolygon:
    return geo.regular_ngon(4, side, geo.Point(x0, y0), 0)


def polygon(*points: tuple[float, float]) -> geo.ConvexPolygon:
    return geo.ConvexPolygon(tuple(geo.Point(x, y) for x, y in points))


@pytest.mark.parametrize('sides, constant', [(3, 0.4330127019), (4, 1.0), (5, 1.7204774006), (6, 2.5980762114)])
def test_shape_constant(sides: int, constant: float) -> None:
    assert float(geo.shape_constant(sides)) == approx(constant)
    assert float(geo.regular_ngon(sides, 1, geo.Point(0, 0), 0).area()) == approx(constant)


def test_regular_square_vertices() -> None:
    vertices = square(0, 0, 1).vertices
    expected = [(0, 0), (1, 0), (1, 1), (0, 1)]
    for vertex, (x, y) in zip(vertices, expected):
        assert float(vertex.x) == approx(x, abs=1e-30)
        assert float(vertex.y) == approx(y, abs=1e-30)


def test_real_conversions() -> None:
    assert float(geo.real(Fraction(1, 3)) * 3) == approx(1.0)
    assert float(geo.quad_to_real(QuadExt(5, -2, 1))) == approx(0.2360679775)
    assert float(geo.angle(Fraction(1, 2))) == approx(1.5707963268)


@dataclasses.dataclass
class ClipCase:
    subject: geo.ConvexPolygon
    clip: geo.ConvexPolygon
    area: float | None


CLIP_CASES = [
    ClipCase(square(0, 0, 2), square(1, 1, 2), 1.0),
    ClipCase(square(0, 0, 2), square(0.5, 0.5, 1), 1.0),
    ClipCase(square(0, 0, 1), square(2, 2, 1), None),
    ClipCase(square(0, 0, 1), square(1, 0, 1), None),
    ClipCase(square(0, 0, 1), square(1, 1, 1), None),
    ClipCase(geo.regular_ngon(3, 2, geo.Point(0, 0), 0), square(0, 0, 1), 0.7113248654),
]


@pytest.mark.parametrize('case', CLIP_CASES)
def test_convex_clip(case: ClipCase) -> None:
    region = geo.convex_clip(case.subject, case.clip)
    if case.area is None:
        assert region is None
    else:
        assert region is not None
        assert float(region.area()) == approx(case.area)
        assert float(geo.convex_clip(case.clip, case.subject).area()) == approx(case.area)


def test_clip_region_sides() -> None:
    region = geo.convex_clip(square(0, 0, 2), square(1, 1, 2))
    assert len(region.vertices) == 4
    assert [float(side) for side in region.side_lengths()] == approx([1.0] * 4)


def test_invalid_polygons() -> None:
    with pytest.raises(ValueError):
        polygon((0, 0), (1, 0))
    with pytest.raises(ValueError):
        polygon((0, 0), (0, 1), (1, 1), (1, 0))
    with pytest.raises(ValueError):
        polygon((0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2))
    with pytest.raises(ValueError):
        geo.regular_ngon(2, 1, geo.Point(0, 0), 0)
    with pytest.raises(ValueError):
        geo.regular_ngon(4, 0, geo.Point(0, 0), 0)
    with pytest.raises(ValueError):
        geo.Point(float('inf'), 0)


def test_needle_is_accepted() -> None:
    needle = polygon((0, 0), (1, 0), (0.5, 1e-20))
    assert float(needle.area()) == approx(0.0, abs=1e-15)


def test_contains() -> None:
    assert square(0, 0, 3).contains(square(1, 1, 2))
    assert not square(0, 0, 3).contains(square(2, 2, 2))


def test_overlap_regions() -> None:
    first = geo.regular_ngon(3, 2, geo.Point(0, 0), 0)
    second = geo.regular_ngon(3, 2, geo.Point(1, 0), 0)
    third = geo.regular_ngon(3, 2, geo.Point(0.5, 0.5), 0)
    with pytest.raises(geo.MultiplicityOverflow):
        geo.overlap_regions([first, second, third], 2)
    regions = geo.overlap_regions([first, second, third], 3)
    assert len(regions.pairs) == 3
    assert len(regions.triples) == 1
    with pytest.raises(ValueError):
        geo.overlap_regions([first], 4)


def test_fourfold_overlap() -> None:
    smalls = [square(0, 0, 2), square(1, 0, 2), square(0, 1, 2), square(1, 1, 2)]
    with pytest.raises(geo.MultiplicityOverflow):
        geo.overlap_regions(smalls, 3)


def test_multiplicity_accounting() -> None:
    report = geo.multiplicity_accounting(square(0, 0, 3), [square(0, 0, 2), square(1, 1, 2)], 2)
    assert float(report.union_area) == approx(7.0)
    assert float(report.excess_area) == approx(1.0)
    assert float(report.uncovered_area) == approx(2.0)
    assert len(report.regions.double_cells) == 1


def test_accounting_with_triple_cell() -> None:
    smalls = [square(0, 0, 2), square(1, 0, 2), square(0.5, 1, 2)]
    report = geo.multiplicity_accounting(square(0, 0, 3), smalls, 3)
    # pairs: 2, 1.5, 1.5; triple: [1, 2] x [1, 2] has area 1
    assert float(report.union_area) == approx(12 - 5 + 1)
    assert float(report.excess_area) == approx(4.0)
    assert len(report.regions.triples) == 1
    assert len(report.regions.double_cells) == 3


def test_containment_error() -> None:
    with pytest.raises(geo.ContainmentError):
        geo.multiplicity_accounting(square(0, 0, 2), [square(1, 1, 2)], 2)


def test_precision_context() -> None:
    assert geo.CONTEXT.prec == geo.DEFAULT_PRECISION
    with geo.precision(256):
        assert geo.CONTEXT.prec == 256
    assert geo.CONTEXT.prec == geo.DEFAULT_PRECISION
    with pytest.raises(ValueError):
        geo.set_precision(32)


def test_precision_is_restored_after_errors() -> None:
    with pytest.raises(geo.ContainmentError):
        with geo.precision(192):
            assert geo.CONTEXT.prec == 192
            geo.multiplicity_accounting(square(0, 0, 2), [square(1, 1, 2)], 2)
    assert geo.CONTEXT.prec == geo.DEFAULT_PRECISION
