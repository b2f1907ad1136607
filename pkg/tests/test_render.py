import collections
import pathlib
import xml.etree.ElementTree as ET

import pytest

from irrdescent import render
from irrdescent.constructions import FigureKind, build_figure

SVG = '{http://www.w3.org/2000/svg}'


def polygon_classes(document: str) -> collections.Counter:
    root = ET.fromstring(document)
    return collections.Counter(polygon.get('class') for polygon in root.iter(f'{SVG}polygon'))


@pytest.mark.parametrize('kind, a, b, counts', [
    (FigureKind.sqrt2(), 7, 5, {'big': 1, 'small': 2, 'double': 1}),
    (FigureKind.sqrt3(), 7, 4, {'big': 1, 'small': 3, 'double': 3}),
    (FigureKind.sqrt6(), 5, 2, {'big': 1, 'small': 6, 'double': 6, 'triple': 1}),
    (FigureKind.triangular(3), 5, 2, {'big': 1, 'small': 6, 'double': 6, 'triple': 1}),
    (FigureKind.sqrt5(), 9, 4, {'big': 1, 'small': 5, 'double': 5}),
])
def test_figure_layers(kind: FigureKind, a: int, b: int, counts: dict[str, int]) -> None:
    document = render.figure_to_svg(build_figure(kind, a, b))
    assert polygon_classes(document) == counts


def test_svg_is_deterministic() -> None:
    first = render.figure_to_svg(build_figure(FigureKind.triangular(4), 19, 6))
    second = render.figure_to_svg(build_figure(FigureKind.triangular(4), 19, 6))
    assert first == second
    assert first.startswith('<?xml')
    assert '<title>tri4 figure, a = 19, b = 6</title>' in first


def test_points_stay_on_canvas() -> None:
    style = render.RenderStyle(canvas_px=200, margin=0.1)
    root = ET.fromstring(render.figure_to_svg(build_figure(FigureKind.sqrt2(), 17, 12), style))
    assert root.get('width') == '200'
    for polygon in root.iter(f'{SVG}polygon'):
        for pair in polygon.get('points').split():
            x, y = (float(value) for value in pair.split(','))
            assert 20 - 1e-6 <= x <= 180 + 1e-6
            assert 20 - 1e-6 <= y <= 180 + 1e-6


def test_palette() -> None:
    style = render.RenderStyle(palette={0: '#000001', 1: '#000002', 2: '#000003', 3: '#000004'})
    document = render.figure_to_svg(build_figure(FigureKind.sqrt2(), 7, 5), style)
    assert 'fill:#000003' in document
    assert 'fill:#f06fa8' not in document


def test_default_filename() -> None:
    assert render.default_filename(build_figure(FigureKind.triangular(3), 5, 2)) == 'tri3_5_2.svg'
    assert render.default_filename(build_figure(FigureKind.sqrt5(), 9, 4)) == 'sqrt5_9_4.svg'


def test_write_svg(tmp_path: pathlib.Path) -> None:
    fig = build_figure(FigureKind.sqrt3(), 7, 4)
    path = render.write_svg(fig, path=tmp_path / 'out.svg')
    assert path == tmp_path / 'out.svg'
    assert path.read_text(encoding='utf-8') == render.figure_to_svg(fig)


def test_write_svg_default_path(tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    path = render.write_svg(build_figure(FigureKind.sqrt2(), 7, 5))
    assert path == pathlib.Path('sqrt2_7_5.svg')
    assert (tmp_path / 'sqrt2_7_5.svg').exists()


@pytest.mark.parametrize('kwargs', [
    {'canvas_px': 0},
    {'palette': {0: '#ffffff', 1: '#000000'}},
    {'margin': 0.5},
    {'margin': -0.1},
])
def test_invalid_style(kwargs: dict) -> None:
    with pytest.raises(ValueError):
        render.RenderStyle(**kwargs)
