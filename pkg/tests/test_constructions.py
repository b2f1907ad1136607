import dataclasses
from fractions import Fraction

import pytest
import sympy
from pytest import approx

from irrdescent import constructions as cons
from irrdescent import geometry as geo
from irrdescent.constructions import FigureKind
from irrdescent.exact import QuadExt


@dataclasses.dataclass
class FigureCase:
    kind: FigureKind
    a: int
    b: int
    smalls: int
    doubles: int
    triples: int
    excess_over_c: float
    uncovered_over_c: float


FIGURE_CASES = [
    FigureCase(FigureKind.sqrt2(), 7, 5, 2, 1, 0, 9.0, 8.0),
    FigureCase(FigureKind.sqrt2(), 17, 12, 2, 1, 0, 49.0, 50.0),
    FigureCase(FigureKind.sqrt3(), 7, 4, 3, 3, 0, 3.0, 4.0),
    FigureCase(FigureKind.sqrt6(), 5, 2, 6, 6, 1, 2.0, 3.0),
    FigureCase(FigureKind.triangular(3), 49, 20, 6, 6, 1, 242.0, 243.0),
    FigureCase(FigureKind.triangular(4), 19, 6, 10, 9, 3, 125 / 3, 128 / 3),
]


@pytest.mark.parametrize('case', FIGURE_CASES, ids=lambda case: f'{case.kind.label}-{case.a}-{case.b}')
def test_verify_figure(case: FigureCase) -> None:
    fig = cons.build_figure(case.kind, case.a, case.b)
    assert len(fig.smalls) == case.smalls

    report = cons.verify_figure(fig)
    assert report.passed, report.failures
    constant = float(case.kind.shape_constant())
    assert float(report.excess) == approx(case.excess_over_c * constant)
    assert float(report.uncovered) == approx(case.uncovered_over_c * constant)
    residual = constant * (case.a ** 2 - case.kind.k * case.b ** 2)
    assert float(report.residual) == approx(residual, abs=1e-9)

    regions = geo.overlap_regions(fig.smalls, case.kind.max_multiplicity)
    assert len(regions.double_cells) == case.doubles
    assert len(regions.triples) == case.triples


@pytest.mark.parametrize('a, b', [(9, 4), (38, 17), (161, 72)])
def test_sqrt5_figure(a: int, b: int) -> None:
    report = cons.verify_figure(cons.build_figure(FigureKind.sqrt5(), a, b))
    assert report.passed, report.failures
    names = [check.name for check in report.identities]
    assert names == ['accounting', 'pell_residual', 'double_cells', 'kite_congruence', 'uncovered_cells']


def test_triangular_identity_names() -> None:
    report = cons.verify_figure(cons.build_figure(FigureKind.triangular(4), 19, 6))
    assert [check.name for check in report.identities] == [
        'accounting', 'pell_residual', 'excess_cells', 'uncovered_cells', 'overlap_side', 'double_cells',
        'triple_cells']


@pytest.mark.parametrize('n', [2, 3, 4])
def test_expected_region_counts(n: int) -> None:
    expected = cons.expected_regions(FigureKind.triangular(n))
    assert expected.doubly_count == 3 * (n - 1)
    assert expected.triply_count == (n - 2) * (n - 1) // 2
    assert expected.uncovered_count == (n - 1) * n // 2


def test_side_formulas() -> None:
    a, b = cons.A, cons.B
    sqrt6 = cons.side_formulas(FigureKind.sqrt6())
    assert sympy.expand(sqrt6.t - (3 * b - a) / 2) == 0
    assert sympy.expand(sqrt6.s - (a - 2 * b)) == 0
    assert sqrt6.evaluate(5, 2) == (Fraction(1, 2), Fraction(1))
    assert cons.side_formulas(FigureKind.sqrt2()).evaluate(7, 5) == (3, 2)
    assert cons.side_formulas(FigureKind.sqrt5()).evaluate(9, 4) == (1, 2)
    tri4 = cons.side_formulas(FigureKind.triangular(4))
    assert tri4.evaluate(19, 6) == (Fraction(5, 3), Fraction(8, 3))


def test_exact_solution_balances_cells() -> None:
    # at a = sqrt(6) b the doubly covered and uncovered areas agree: 16 t^2 = 6 s^2
    sides = cons.side_formulas(FigureKind.sqrt6())
    root = sympy.sqrt(6)
    t = sides.t.subs({cons.A: root, cons.B: 1})
    s = sides.s.subs({cons.A: root, cons.B: 1})
    assert sympy.simplify(16 * t ** 2 - 6 * s ** 2) == 0
    assert sympy.simplify(8 * t ** 2 - 3 * s ** 2) == 0


@pytest.mark.parametrize('kind, a, b', [
    (FigureKind.sqrt2(), 10, 3),
    (FigureKind.sqrt2(), 5, 5),
    (FigureKind.sqrt5(), 3, 4),
    (FigureKind.triangular(4), 12, 3),
    (FigureKind.sqrt3(), 0, 0),
])
def test_construction_domain(kind: FigureKind, a: int, b: int) -> None:
    with pytest.raises(cons.ConstructionDomainError, match='b < a <'):
        cons.build_figure(kind, a, b)


def test_upper_ratio() -> None:
    assert FigureKind.sqrt2().upper_ratio == 3
    assert FigureKind.sqrt6().upper_ratio == 3
    assert FigureKind.triangular(4).upper_ratio == 4
    assert FigureKind.triangular(7).upper_ratio == 7


def test_disjoint_squares_fail_the_cell_identities() -> None:
    report = cons.verify_figure(cons.build_figure(FigureKind.sqrt2(), 5, 2))
    assert not report.passed
    assert 'excess_cells' in report.failures
    assert 'pell_residual' not in report.failures


def test_malformed_figure_is_reported() -> None:
    report = cons.verify_figure(cons.build_figure(FigureKind.sqrt3(), 4, 3))
    assert not report.passed
    assert report.failures == ['construction']
    assert report.to_dict()['excess'] is None


def test_report_to_dict() -> None:
    data = cons.verify_figure(cons.build_figure(FigureKind.sqrt2(), 7, 5)).to_dict()
    assert data['kind'] == 'sqrt2'
    assert (data['a'], data['b']) == (7, 5)
    assert data['residual'] == approx(-1.0)
    assert all(check['pass'] for check in data['identities'])
    assert set(data['identities'][0]) == {'name', 'pass', 'lhs', 'rhs', 'tol'}


@pytest.mark.parametrize('name, n, label', [
    ('sqrt2', None, 'sqrt2'),
    ('sqrt6', None, 'sqrt6'),
    ('tri', 5, 'tri5'),
])
def test_kind_lookup(name: str, n: int | None, label: str) -> None:
    kind = FigureKind.by_name(name, n)
    assert kind.label == label
    assert FigureKind.by_label(label) == kind


def test_kind_lookup_errors() -> None:
    with pytest.raises(ValueError):
        FigureKind.by_name('tri')
    with pytest.raises(ValueError):
        FigureKind.by_name('sqrt7')
    with pytest.raises(ValueError):
        FigureKind.triangular(8)
    with pytest.raises(ValueError):
        FigureKind.by_label('tri49')


def test_pentagon_lemma_side() -> None:
    side = cons.pentagon_lemma_side()
    assert side == QuadExt(5, -2, 1)
    assert side == QuadExt.sqrt(5) - 2


def test_middle_pentagon_side_at_exact_solution() -> None:
    # with a = sqrt(5) b the middle pentagon has side 5b - 2a
    root = QuadExt.sqrt(5)
    b = 1
    middle = QuadExt(5, 0, 0) + (root - 1) * root - root * b
    assert middle == 5 * b - 2 * root
    assert cons.middle_pentagon_side(9, 4) == QuadExt(5, -9, 5)


def test_pentagon_angle_chase() -> None:
    chase = dict(cons.pentagon_angle_chase())
    assert chase['pentagon angle sum'] == 3
    assert chase['regular pentagon angle'] == Fraction(3, 5)
    assert chase['edge triangle base angle'] == Fraction(2, 5)
    assert chase['small pentagon angle next to triangle base'] == Fraction(3, 5)
    assert chase['small pentagon top angle'] == Fraction(3, 5)
    assert chase['edge triangle apex angle'] == Fraction(1, 5)
    assert chase['kite top angle'] == Fraction(3, 5)
    assert chase['middle pentagon angle'] == Fraction(3, 5)
    assert chase['middle pentagon angle'] == chase['kite top angle']
