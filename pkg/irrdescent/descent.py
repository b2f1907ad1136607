"""Descent maps on candidate solutions of a^2 = k b^2.

A descent map is an integer linear map ``(a, b) -> ((alpha a + beta b) / d,
(gamma a + delta b) / d)`` that multiplies the Pell form ``a^2 - k b^2`` by a
constant ``c`` and shrinks ``b`` on the ray ``a = sqrt(k) b``. Iterating it
from a positive solution of ``a^2 = k b^2`` would never stop, which is the
infinite descent behind every irrationality proof in the package.
"""
import enum
import logging
import math
import re
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .exact import MAX_RADICAND, QuadExt, exact_isqrt, q_sign

logger = logging.getLogger(__name__)

_A, _B = sympy.symbols('a b')


class NotADescentOfThisForm(ValueError):
    """The map does not multiply the Pell form by a constant."""


class NonIntegralImage(ArithmeticError):
    """The image of an integer pair is not integral.

    Attributes:
        name: name of the map.
        point: the integer pair that was mapped.
        image: the exact rational image.
    """

    def __init__(self, name: str, point: tuple[int, int], image: tuple[Fraction, Fraction]) -> None:
        self.name = name
        self.point = point
        self.image = image
        super().__init__(f'{name} maps {point} to non-integral ({image[0]}, {image[1]})')


@dataclass(frozen=True)
class PellForm:
    """Binary quadratic form a^2 - k b^2 with k >= 2 not a perfect square.

    Attributes:
        k: the radicand.
    """
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 2:
            raise ValueError(f'Pell form needs an integer k >= 2, got {self.k!r}')
        root = exact_isqrt(self.k)
        if root is not None:
            raise ValueError(f'k = {self.k} = {root}^2 is a perfect square')

    def value(self, a: int, b: int) -> int:
        return a * a - self.k * b * b

    def sqrt_k(self) -> QuadExt:
        return QuadExt.sqrt(self.k)


@dataclass(frozen=True)
class DescentMap:
    """Integer matrix with a common divisor acting on (a, b).

    Attributes:
        form: Pell form the map descends on.
        alpha, beta, gamma, delta: matrix entries.
        d: positive common divisor.
        name: label used in reports and on the command line.
    """
    form: PellForm
    alpha: int
    beta: int
    gamma: int
    delta: int
    d: int = 1
    name: str = ''

    def __post_init__(self) -> None:
        if self.d <= 0:
            raise ValueError(f'divisor must be positive, got {self.d}')
        if self.determinant == 0:
            raise ValueError(f'map {self.name or self.matrix} is singular')

    @property
    def k(self) -> int:
        return self.form.k

    @property
    def matrix(self) -> tuple[int, int, int, int]:
        return self.alpha, self.beta, self.gamma, self.delta

    @property
    def determinant(self) -> int:
        return self.alpha * self.delta - self.beta * self.gamma

    def reduced(self) -> 'DescentMap':
        """Same map with entries and divisor divided by their common gcd."""
        g = math.gcd(self.alpha, self.beta, self.gamma, self.delta, self.d)
        return DescentMap(self.form, self.alpha // g, self.beta // g, self.gamma // g,
                          self.delta // g, self.d // g, self.name)


class Termination(str, enum.Enum):
    """Why a descent trajectory stopped."""
    NON_POSITIVE_B = 'NonPositiveB'
    NON_INTEGRAL = 'NonIntegral'
    MAX_STEPS = 'MaxSteps'


@dataclass(frozen=True)
class Step:
    a: int
    b: int
    form_value: int


@dataclass
class Trajectory:
    """Iterated images of a starting pair.

    Attributes:
        name: name of the map.
        steps: visited pairs with their form values, starting pair first.
        termination: reason the iteration stopped.
    """
    name: str
    steps: list[Step] = field(default_factory=list)
    termination: Termination = Termination.MAX_STEPS


def map_sqrt2() -> DescentMap:
    """(a, b) -> (2b - a, a - b), from (2b - a)^2 = 2 (a - b)^2."""
    return DescentMap(PellForm(2), -1, 2, 1, -1, 1, 'sqrt2')


def map_sqrt3() -> DescentMap:
    """(a, b) -> (2a - 3b, 2b - a), from 3 (2b - a)^2 = (2a - 3b)^2."""
    return DescentMap(PellForm(3), 2, -3, -1, 2, 1, 'sqrt3')


def map_sqrt5() -> DescentMap:
    """(a, b) -> (5b - 2a, a - 2b), from 5 (a - 2b)^2 = (5b - 2a)^2."""
    return DescentMap(PellForm(5), -2, 5, 1, -2, 1, 'sqrt5')


def map_sqrt6() -> DescentMap:
    """(a, b) -> (4t, s) = (2 (3b - a), a - 2b), from 16 t^2 = 6 s^2."""
    return DescentMap(PellForm(6), -2, 6, 1, -2, 1, 'sqrt6')


def triangular_number(n: int) -> int:
    return n * (n + 1) // 2


# largest n with T_n <= MAX_RADICAND, so that sqrt(T_n) stays in the supported fields
MAX_TRIANGULAR_INDEX = (math.isqrt(8 * MAX_RADICAND + 1) - 1) // 2


def map_triangular(n: int) -> DescentMap:
    """Descent for sqrt(T_n), T_n = n (n + 1) / 2.

    (a, b) -> (n (2a - (n + 1) b) / 2, nb - a), stored with divisor 2.

    Args:
        n: row count of the triangular construction, n >= 2 and
            n <= MAX_TRIANGULAR_INDEX.

    Return:
        the map; rejected when T_n is a perfect square.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f'triangular descent needs an integer n >= 2, got {n!r}')
    if n > MAX_TRIANGULAR_INDEX:
        raise ValueError(f'triangular descent supports n <= {MAX_TRIANGULAR_INDEX} (T_n <= {MAX_RADICAND}), got {n}')
    t_n = triangular_number(n)
    root = exact_isqrt(t_n)
    if root is not None:
        raise ValueError(f'T_{n} = {t_n} = {root}^2 is a square triangular number: '
                         f'sqrt(T_{n}) is rational and no descent can exist')
    return DescentMap(PellForm(t_n), 2 * n, -n * (n + 1), -2, 2 * n, 2, f'tri{n}')


def apply(descent_map: DescentMap, a: int, b: int) -> tuple[int, int]:
    """Exact image of an integer pair.

    Args:
        descent_map: map to apply.
        a, b: integer pair.

    Return:
        the integer image.
    """
    a_num = descent_map.alpha * a + descent_map.beta * b
    b_num = descent_map.gamma * a + descent_map.delta * b
    if a_num % descent_map.d or b_num % descent_map.d:
        raise NonIntegralImage(descent_map.name, (a, b),
                               (Fraction(a_num, descent_map.d), Fraction(b_num, descent_map.d)))
    return a_num // descent_map.d, b_num // descent_map.d


def form_multiplier(descent_map: DescentMap) -> Fraction:
    """Constant c with a'^2 - k b'^2 = c (a^2 - k b^2) identically.

    Both sides are expanded as binary quadratic forms and compared
    coefficient by coefficient.

    Args:
        descent_map: map to analyse.

    Return:
        the exact multiplier.
    """
    k = descent_map.k
    a_image = sympy.Rational(descent_map.alpha, descent_map.d) * _A + sympy.Rational(descent_map.beta, descent_map.d) * _B
    b_image = sympy.Rational(descent_map.gamma, descent_map.d) * _A + sympy.Rational(descent_map.delta, descent_map.d) * _B
    image_form = sympy.expand(a_image ** 2 - k * b_image ** 2)
    base_form = _A ** 2 - k * _B ** 2
    leading = sympy.Poly(image_form, _A, _B).coeff_monomial(_A ** 2)
    residual = sympy.expand(image_form - leading * base_form)
    if residual != 0:
        raise NotADescentOfThisForm(
            f'{descent_map.name or descent_map.matrix}: a\'^2 - {k} b\'^2 = {image_form} '
            f'is not a multiple of a^2 - {k} b^2')
    c = sympy.Rational(leading)
    return Fraction(int(c.p), int(c.q))


def ray_image(descent_map: DescentMap) -> tuple[QuadExt, QuadExt]:
    """Image of (sqrt(k), 1), computed in Q(sqrt(k))."""
    root = descent_map.form.sqrt_k()
    a_image = (root * descent_map.alpha + descent_map.beta) / descent_map.d
    b_image = (root * descent_map.gamma + descent_map.delta) / descent_map.d
    return a_image, b_image


def decrease_factor(descent_map: DescentMap) -> QuadExt:
    """Factor lambda with b' = lambda b on the ray a = sqrt(k) b.

    Args:
        descent_map: map to analyse.

    Return:
        lambda as an element of Q(sqrt(k)).
    """
    _, b_image = ray_image(descent_map)
    return b_image


def is_descent_factor(factor: QuadExt) -> bool:
    """0 < lambda < 1, decided exactly."""
    return q_sign(factor) > 0 and q_sign(factor - 1) < 0


def is_valid_descent(descent_map: DescentMap) -> bool:
    return is_descent_factor(decrease_factor(descent_map))


def preserves_ray(descent_map: DescentMap) -> bool:
    """The image of an exact solution (sqrt(k), 1) is again an exact solution."""
    a_image, b_image = ray_image(descent_map)
    return a_image * a_image - b_image * b_image * descent_map.k == 0


def descend_sequence(descent_map: DescentMap, a: int, b: int, max_steps: int) -> Trajectory:
    """Iterates the map while b stays positive.

    The starting pair counts as the first step; the iteration stops after
    recording a pair with b <= 0, on a non-integral image, or when
    max_steps pairs have been recorded.

    Args:
        descent_map: map to iterate.
        a, b: starting pair, both nonnegative.
        max_steps: maximal number of recorded pairs, at least 1.

    Return:
        the trajectory.
    """
    if a < 0 or b < 0:
        raise ValueError(f'descent starts from a nonnegative pair, got ({a}, {b})')
    if max_steps < 1:
        raise ValueError(f'max_steps must be positive, got {max_steps}')
    form = descent_map.form
    trajectory = Trajectory(descent_map.name, [Step(a, b, form.value(a, b))])
    while True:
        if b <= 0:
            trajectory.termination = Termination.NON_POSITIVE_B
            break
        if len(trajectory.steps) >= max_steps:
            trajectory.termination = Termination.MAX_STEPS
            break
        try:
            a, b = apply(descent_map, a, b)
        except NonIntegralImage as error:
            logger.warning('%s', error)
            trajectory.termination = Termination.NON_INTEGRAL
            break
        trajectory.steps.append(Step(a, b, form.value(a, b)))
    return trajectory


NAMED_MAPS: dict[str, tp.Callable[[], DescentMap]] = {
    'sqrt2': map_sqrt2,
    'sqrt3': map_sqrt3,
    'sqrt5': map_sqrt5,
    'sqrt6': map_sqrt6,
}

_TRIANGULAR_NAME = re.compile(r'tri(\d+)')


def map_by_name(name: str) -> DescentMap:
    """Looks up 'sqrt2', 'sqrt3', 'sqrt5', 'sqrt6' or 'tri<n>'."""
    if name in NAMED_MAPS:
        return NAMED_MAPS[name]()
    match = _TRIANGULAR_NAME.fullmatch(name)
    if match is None:
        raise KeyError(f'unknown map {name!r}; expected one of {", ".join(NAMED_MAPS)} or tri<n>')
    return map_triangular(int(match.group(1)))


def catalog(triangular_max: int = 8) -> list[DescentMap]:
    """The four named maps followed by tri2 .. tri<triangular_max>.

    Square triangular numbers have no descent and are skipped.
    """
    maps = [factory() for factory in NAMED_MAPS.values()]
    for n in range(2, triangular_max + 1):
        if exact_isqrt(triangular_number(n)) is not None:
            logger.info('skipping tri%d: T_%d = %d is a perfect square', n, n, triangular_number(n))
            continue
        maps.append(map_triangular(n))
    return maps


def safe_form_multiplier(descent_map: DescentMap) -> tp.Optional[Fraction]:
    """form_multiplier, logging and returning None for maps that break the form."""
    try:
        return form_multiplier(descent_map)
    except NotADescentOfThisForm as error:
        logger.error('%s', error)
        return None
