"""The overlap figures behind the geometric descents, and their exact lemmas.

Every figure places small regular polygons of side ``b`` inside a big one of
side ``a``. Corner polygons are homotheties of the big polygon about one of
its vertices; the triangular family fills the big triangle with ``n`` rows
of equally spaced upward triangles.
"""
import logging
import re
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import geometry as geo
from .exact import QuadExt, exact_isqrt, q_inv

logger = logging.getLogger(__name__)

A, B = sympy.symbols('a b')

AngleRat = Fraction  # a multiple of pi


class ConstructionDomainError(ValueError):
    """(a, b) outside the range where a figure can be drawn."""


class LemmaFailure(AssertionError):
    """An exact lemma did not hold."""


@dataclass(frozen=True)
class FigureKind:
    """One of the construction families.

    Attributes:
        label: 'sqrt2', 'sqrt3', 'sqrt5', 'sqrt6' or 'tri<n>'.
        sides: sides of the big and small polygons.
        k: radicand the figure is about.
        rows: row count for the triangular layout, None otherwise.
    """
    label: str
    sides: int
    k: int
    rows: tp.Optional[int] = None

    @classmethod
    def sqrt2(cls) -> 'FigureKind':
        return cls('sqrt2', 4, 2)

    @classmethod
    def sqrt3(cls) -> 'FigureKind':
        return cls('sqrt3', 3, 3, rows=2)

    @classmethod
    def sqrt5(cls) -> 'FigureKind':
        return cls('sqrt5', 5, 5)

    @classmethod
    def sqrt6(cls) -> 'FigureKind':
        return cls('sqrt6', 3, 6, rows=3)

    @classmethod
    def triangular(cls, n: int) -> 'FigureKind':
        if n < 2:
            raise ValueError(f'triangular figures need n >= 2, got {n}')
        k = n * (n + 1) // 2
        root = exact_isqrt(k)
        if root is not None:
            raise ValueError(f'T_{n} = {k} = {root}^2 is a square triangular number')
        return cls(f'tri{n}', 3, k, rows=n)

    @classmethod
    def by_name(cls, name: str, n: tp.Optional[int] = None) -> 'FigureKind':
        """'sqrt2', 'sqrt3', 'sqrt5', 'sqrt6', or 'tri' together with n."""
        named = {'sqrt2': cls.sqrt2, 'sqrt3': cls.sqrt3, 'sqrt5': cls.sqrt5, 'sqrt6': cls.sqrt6}
        if name in named:
            return named[name]()
        if name == 'tri':
            if n is None:
                raise ValueError('tri figures need the row count n')
            return cls.triangular(n)
        raise ValueError(f'unknown figure kind {name!r}')

    @classmethod
    def by_label(cls, label: str) -> 'FigureKind':
        """Inverse of label: 'sqrt2' .. 'sqrt6' or 'tri<n>'."""
        match = re.fullmatch(r'tri(\d+)', label)
        if match is not None:
            return cls.triangular(int(match.group(1)))
        return cls.by_name(label)

    @property
    def is_triangular(self) -> bool:
        return self.rows is not None

    @property
    def upper_ratio(self) -> int:
        """a must stay below upper_ratio * b."""
        if self.rows is not None and self.rows >= 4:
            return self.rows
        return 3

    @property
    def max_multiplicity(self) -> int:
        return 3 if self.rows is not None and self.rows >= 3 else 2

    def shape_constant(self) -> geo.TReal:
        return geo.shape_constant(self.sides)


@dataclass(frozen=True)
class SideFormulas:
    """Overlap side t and uncovered side s as linear forms in a and b."""
    t: sympy.Expr
    s: sympy.Expr

    def evaluate(self, a: int, b: int) -> tuple[Fraction, Fraction]:
        values = []
        for form in (self.t, self.s):
            value = sympy.Rational(form.subs({A: a, B: b}))
            values.append(Fraction(int(value.p), int(value.q)))
        return values[0], values[1]


@dataclass(frozen=True)
class ExpectedRegions:
    doubly_count: int
    triply_count: int
    uncovered_count: int
    sides: SideFormulas


@dataclass
class Figure:
    kind: FigureKind
    a: int
    b: int
    big: geo.ConvexPolygon
    smalls: list[geo.ConvexPolygon]
    expected: ExpectedRegions


def side_formulas(kind: FigureKind) -> SideFormulas:
    """Side lengths of the overlap and uncovered cells.

    Triangular family: t = (nb - a)/(n - 1), s = b - 2t = (2a - (n + 1) b)/(n - 1).
    sqrt2: t = 2b - a, s = a - b. sqrt5: t = a - 2b, s = 5b - 2a.

    Args:
        kind: figure kind.

    Return:
        the two linear forms.
    """
    if kind.rows is not None:
        n = kind.rows
        t = (n * B - A) / (n - 1)
        s = (2 * A - (n + 1) * B) / (n - 1)
    elif kind.sides == 4:
        return SideFormulas(2 * B - A, A - B)
    else:
        t = A - 2 * B
        s = 5 * B - 2 * A
    if sympy.expand(s - (B - 2 * t)) != 0:
        raise LemmaFailure(f'{kind.label}: s = {s} differs from b - 2t = {sympy.expand(B - 2 * t)}')
    return SideFormulas(sympy.expand(t), sympy.expand(s))


def expected_regions(kind: FigureKind) -> ExpectedRegions:
    sides = side_formulas(kind)
    if kind.rows is not None:
        n = kind.rows
        return ExpectedRegions(3 * (n - 1), (n - 2) * (n - 1) // 2, (n - 1) * n // 2, sides)
    if kind.sides == 4:
        return ExpectedRegions(1, 0, 2, sides)
    # five kites; five edge triangles and the middle pentagon uncovered
    return ExpectedRegions(5, 0, 6, sides)


def build_figure(kind: FigureKind, a: int, b: int) -> Figure:
    """Places the small polygons of a figure.

    Args:
        kind: figure kind.
        a: side of the big polygon.
        b: side of the small polygons, b < a < kind.upper_ratio * b.

    Return:
        the figure.
    """
    if not (0 < b < a < kind.upper_ratio * b):
        raise ConstructionDomainError(
            f'{kind.label} figure needs 0 < b < a < {kind.upper_ratio}b, got a={a}, b={b}')
    origin = geo.Point(0, 0)
    big = geo.regular_ngon(kind.sides, a, origin, 0)
    turn = Fraction(2, kind.sides)
    if kind.rows is not None:
        smalls = _triangular_layout(kind.rows, a, b)
    elif kind.sides == 4:
        smalls = [geo.regular_ngon(4, b, big.vertices[i], geo.angle(i * turn)) for i in (0, 2)]
    else:
        smalls = [geo.regular_ngon(5, b, vertex, geo.angle(i * turn)) for i, vertex in enumerate(big.vertices)]
    logger.debug('built %s figure for a=%d, b=%d with %d small polygons', kind.label, a, b, len(smalls))
    return Figure(kind, a, b, big, smalls, expected_regions(kind))


def _triangular_layout(n: int, a: int, b: int) -> list[geo.ConvexPolygon]:
    spacing = geo.real(Fraction(a - b, n - 1))
    right = geo.Point(1, 0)
    up_right = geo.Point(geo.real(Fraction(1, 2)), geo.CONTEXT.sqrt(3) / 2)
    smalls = []
    for row in range(n):
        for column in range(n - row):
            anchor = right.scale(spacing * column) + up_right.scale(spacing * row)
            smalls.append(geo.regular_ngon(3, b, anchor, 0))
    return smalls


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    lhs: geo.TReal
    rhs: geo.TReal
    tol: float

    def to_dict(self) -> dict[str, tp.Any]:
        return {'name': self.name, 'pass': self.passed, 'lhs': float(self.lhs),
                'rhs': float(self.rhs), 'tol': self.tol}


@dataclass
class VerificationReport:
    kind: str
    a: int
    b: int
    excess: geo.TReal = None
    uncovered: geo.TReal = None
    residual: geo.TReal = None
    identities: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.identities) and all(check.passed for check in self.identities)

    @property
    def failures(self) -> list[str]:
        return [check.name for check in self.identities if not check.passed]

    def to_dict(self) -> dict[str, tp.Any]:
        def number(value: geo.TReal) -> tp.Optional[float]:
            return None if value is None else float(value)

        return {
            'kind': self.kind,
            'a': self.a,
            'b': self.b,
            'excess': number(self.excess),
            'uncovered': number(self.uncovered),
            'residual': number(self.residual),
            'identities': [check.to_dict() for check in self.identities],
        }


def _check(name: str, lhs: geo.TReal, rhs: geo.TReal, tol: float) -> IdentityCheck:
    lhs, rhs = geo.real(lhs), geo.real(rhs)
    scale = max(abs(lhs), abs(rhs), geo.CONTEXT.mpf(1))
    passed = bool(abs(lhs - rhs) <= tol * scale)
    if not passed:
        logger.info('identity %s failed: %s != %s', name, geo.CONTEXT.nstr(lhs, 15), geo.CONTEXT.nstr(rhs, 15))
    return IdentityCheck(name, passed, lhs, rhs, tol)


def _farthest_side(regions: tp.Iterable[geo.ConvexPolygon], target: geo.TReal) -> geo.TReal:
    sides = [side for region in regions for side in region.side_lengths()]
    if not sides:
        return geo.CONTEXT.mpf(0)
    return max(sides, key=lambda side: abs(side - target))


def verify_figure(fig: Figure, tol: float = 1e-9) -> VerificationReport:
    """Checks the area identities of a figure.

    Always: inclusion-exclusion accounting and the residual law
    uncovered - excess = C (a^2 - k b^2). Triangular family and sqrt2:
    excess and uncovered from the cell counts and the sides t and s, the
    measured overlap sides, the multiplicity cell counts. sqrt5: congruent
    kites and uncovered = five edge triangles + the middle pentagon.

    Args:
        fig: figure to verify.
        tol: relative tolerance.

    Return:
        the report; failures are recorded, not raised.
    """
    kind = fig.kind
    report = VerificationReport(kind.label, fig.a, fig.b)
    try:
        coverage = geo.multiplicity_accounting(fig.big, fig.smalls, kind.max_multiplicity)
    except (geo.ContainmentError, geo.MultiplicityOverflow) as error:
        logger.error('%s figure (%d, %d) is malformed: %s', kind.label, fig.a, fig.b, error)
        report.identities.append(IdentityCheck('construction', False, geo.real(0), geo.real(0), tol))
        return report

    constant = kind.shape_constant()
    excess, uncovered = coverage.excess_area, coverage.uncovered_area
    report.excess, report.uncovered = excess, uncovered
    report.residual = uncovered - excess
    small_total = geo.CONTEXT.fsum(small.area() for small in fig.smalls)
    checks = report.identities
    checks.append(_check('accounting', small_total - fig.big.area(), excess - uncovered, tol))
    checks.append(_check('pell_residual', uncovered - excess,
                         constant * (fig.a * fig.a - kind.k * fig.b * fig.b), tol))

    expected = fig.expected
    regions = coverage.regions
    t, s = expected.sides.evaluate(fig.a, fig.b)
    if kind.sides == 5:
        kite_areas = [cell.area() for cell in regions.double_cells]
        checks.append(_check('double_cells', len(regions.double_cells), expected.doubly_count, tol))
        checks.append(_check('kite_congruence', max(kite_areas, default=0), min(kite_areas, default=0), tol))
        gap = geo.real(fig.a - 2 * fig.b)
        edge_triangle = gap * gap * geo.CONTEXT.tan(geo.angle(Fraction(2, 5))) / 4
        middle_side = geo.quad_to_real(middle_pentagon_side(fig.a, fig.b))
        checks.append(_check('uncovered_cells', uncovered,
                             5 * edge_triangle + constant * middle_side * middle_side, tol))
        return report

    t_real, s_real = geo.real(t), geo.real(s)
    weighted = expected.doubly_count + 2 * expected.triply_count
    checks.append(_check('excess_cells', excess, weighted * constant * t_real * t_real, tol))
    checks.append(_check('uncovered_cells', uncovered, expected.uncovered_count * constant * s_real * s_real, tol))
    checks.append(_check('overlap_side', _farthest_side(regions.pairs.values(), t_real), t_real, tol))
    overlapping = t > 0
    checks.append(_check('double_cells', len(regions.double_cells),
                         expected.doubly_count if overlapping else 0, tol))
    checks.append(_check('triple_cells', len(regions.triples),
                         expected.triply_count if overlapping else 0, tol))
    return report


def middle_pentagon_side(a: int, b: int) -> QuadExt:
    """Side of the uncovered middle pentagon, (sqrt(5) - 1) a - sqrt(5) b.

    Equals 5b - 2a exactly when a = sqrt(5) b.
    """
    return QuadExt(5, -a, a - b)


def cos_two_fifths_pi() -> QuadExt:
    """cos(2 pi / 5) = (sqrt(5) - 1) / 4."""
    return QuadExt(5, Fraction(-1, 4), Fraction(1, 4))


def pentagon_lemma_side() -> QuadExt:
    """Side x of the doubly covered pentagons with b = 1 and a = sqrt(5).

    x = b - 2 (a - 2b) / (2 cos(2 pi / 5)) must equal sqrt(5) - 2 = a - 2b.

    Return:
        x, exactly.
    """
    b = QuadExt.rational(1, 5)
    a = QuadExt.sqrt(5)
    cosine = cos_two_fifths_pi()
    if 4 * cosine * cosine + 2 * cosine - 1 != 0:
        raise LemmaFailure(f'{cosine} is not a root of 4x^2 + 2x - 1')
    numeric = geo.quad_to_real(cosine) - geo.CONTEXT.cos(geo.angle(Fraction(2, 5)))
    if abs(numeric) > geo.RELATIVE_EPS:
        raise LemmaFailure(f'{cosine} differs from cos(2 pi / 5) by {numeric}')
    through_inverse = b - (a - 2 * b) * 2 * q_inv(2 * cosine)
    through_conjugate = b - (a - 2 * b) * cosine.conjugate() / cosine.norm()
    if through_inverse != through_conjugate:
        raise LemmaFailure(f'evaluation orders disagree: {through_inverse} != {through_conjugate}')
    if through_inverse != a - 2 * b:
        raise LemmaFailure(f'x = {through_inverse}, expected a - 2b = {a - 2 * b}')
    return through_inverse


def pentagon_angle_chase() -> list[tuple[str, AngleRat]]:
    """Angles of the doubly covered pentagon, in multiples of pi.

    Return:
        labelled angles; raises LemmaFailure unless all five angles of the
        small pentagon are 3/5 and the middle pentagon angle, read off
        the kites, is 3/5 as well.
    """
    # five triangles from the center give 5 pi, minus the full turn
    angle_sum = 5 * AngleRat(1) - 2
    regular = angle_sum / 5
    triangle_base = 1 - regular
    next_to_base = 1 - triangle_base
    adjacent = regular
    top = angle_sum - 2 * next_to_base - 2 * adjacent
    # the kite's bottom vertex is opposite the edge triangle's apex, its side
    # vertices are corners of the corner pentagons
    apex = 1 - 2 * triangle_base
    kite_top = 2 - apex - 2 * regular
    # two corner pentagon edges cross at a middle vertex: opposite angles
    middle = kite_top
    chase = [
        ('pentagon angle sum', angle_sum),
        ('regular pentagon angle', regular),
        ('edge triangle base angle', triangle_base),
        ('small pentagon angle next to triangle base', next_to_base),
        ('small pentagon angle next to those', adjacent),
        ('small pentagon top angle', top),
        ('edge triangle apex angle', apex),
        ('kite top angle', kite_top),
        ('middle pentagon angle', middle),
    ]
    small_pentagon = [next_to_base, next_to_base, adjacent, adjacent, top]
    if any(value != AngleRat(3, 5) for value in small_pentagon):
        raise LemmaFailure(f'small pentagon angles are {small_pentagon}, expected 3/5 each')
    if sum(small_pentagon) != angle_sum:
        raise LemmaFailure('small pentagon angles do not add up to 3 pi')
    if middle != AngleRat(3, 5) or 5 * middle != angle_sum:
        raise LemmaFailure(f'middle pentagon angle is {middle}, expected 3/5 at each of its five vertices')
    return chase
