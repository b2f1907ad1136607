"""Triangular-number survey, brute-force oracle and convergents of sqrt(k)."""
import logging
import math
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

from . import operations as ops
from .descent import MAX_TRIANGULAR_INDEX, decrease_factor, form_multiplier, map_triangular, triangular_number
from .exact import QuadExt, exact_isqrt, q_sign, q_to_decimal
from .graph import Graph

logger = logging.getLogger(__name__)

LAMBDA_DIGITS = 10


def square_triangular(n: int) -> tp.Optional[int]:
    """Root of T_n when T_n = n (n + 1) / 2 is a perfect square.

    Args:
        n: index, at least 1.

    Return:
        the integer root or None.
    """
    return exact_isqrt(triangular_number(n))


def descent_applicable(n: int) -> bool:
    """Whether the triangular descent shrinks b, i.e. n - sqrt(T_n) < 1.

    Both sides of n - 1 < sqrt(T_n) are nonnegative, so squaring gives the
    integer test 2 (n - 1)^2 < n (n + 1), which holds exactly for n <= 4.

    Args:
        n: index, at least 2, with T_n not a perfect square.

    Return:
        True if 0 < lambda < 1.
    """
    if n < 2:
        raise ValueError(f'descent applicability needs n >= 2, got {n}')
    root = square_triangular(n)
    if root is not None:
        raise ValueError(f'T_{n} = {root}^2 is a perfect square, there is nothing to prove')
    return 2 * (n - 1) ** 2 < n * (n + 1)


def descent_applicable_in_field(n: int) -> bool:
    """The same test decided in Q(sqrt(T_n)) through the map's decrease factor."""
    return q_sign(decrease_factor(map_triangular(n)) - 1) < 0


@dataclass(frozen=True)
class SurveyRow:
    """One triangular number of the survey.

    Attributes:
        n: index.
        t_n: n (n + 1) / 2.
        square_root: root of t_n when it is a perfect square.
        descent_applicable: lambda < 1; False for square t_n.
        multiplier_c: form multiplier n (n - 1) / 2.
        lambda_: decrease factor n - sqrt(t_n), None for square t_n.
    """
    n: int
    t_n: int
    square_root: tp.Optional[int]
    descent_applicable: bool
    multiplier_c: Fraction
    lambda_: tp.Optional[QuadExt]

    @property
    def is_square(self) -> bool:
        return self.square_root is not None

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            'n': self.n,
            'T_n': self.t_n,
            'is_square': self.square_root,
            'descent_applicable': self.descent_applicable,
            'multiplier_c': str(self.multiplier_c),
            'lambda': None if self.lambda_ is None else str(self.lambda_),
            'lambda_decimal': None if self.lambda_ is None else q_to_decimal(self.lambda_, LAMBDA_DIGITS),
        }


def _checked_multiplier(n: int, square_root: tp.Optional[int]) -> Fraction:
    expected = Fraction(n * (n - 1), 2)
    if square_root is None:
        computed = form_multiplier(map_triangular(n))
        if computed != expected:
            raise ArithmeticError(f'tri{n} multiplies the form by {computed}, expected {expected}')
    return expected


def _applicable(n: int, square_root: tp.Optional[int]) -> bool:
    if square_root is not None:
        return False
    applicable = descent_applicable(n)
    if applicable != descent_applicable_in_field(n):
        raise ArithmeticError(f'integer and field applicability tests disagree for n = {n}')
    return applicable


def _survey_lambda(n: int, square_root: tp.Optional[int]) -> tp.Optional[QuadExt]:
    if square_root is not None:
        return None
    return decrease_factor(map_triangular(n))


def survey_graph(input_stream_name: str) -> Graph:
    """Constructs graph which adds the survey columns to rows {'n': n}.

    Args:
        input_stream_name: name of the iterator with the indices.

    Return:
        graph yielding n, T_n, square_root, descent_applicable, multiplier_c, lambda.
    """
    return Graph.graph_from_iter(input_stream_name) \
        .map(ops.Apply(triangular_number, ['n'], 'T_n')) \
        .map(ops.Apply(exact_isqrt, ['T_n'], 'square_root')) \
        .map(ops.Apply(_applicable, ['n', 'square_root'], 'descent_applicable')) \
        .map(ops.Apply(_checked_multiplier, ['n', 'square_root'], 'multiplier_c')) \
        .map(ops.Apply(_survey_lambda, ['n', 'square_root'], 'lambda'))


def run_survey(n_max: int) -> list[SurveyRow]:
    """Survey of sqrt(T_n) for n = 2 .. n_max.

    Args:
        n_max: last index, at least 2 and at most MAX_TRIANGULAR_INDEX.

    Return:
        one row per index.
    """
    if n_max < 2:
        raise ValueError(f'survey needs n_max >= 2, got {n_max}')
    if n_max > MAX_TRIANGULAR_INDEX:
        raise ValueError(f'survey supports n_max <= {MAX_TRIANGULAR_INDEX}, got {n_max}')
    rows = survey_graph('numbers').run(numbers=lambda: ({'n': n} for n in range(2, n_max + 1)))
    survey = [
        SurveyRow(row['n'], row['T_n'], row['square_root'], row['descent_applicable'],
                  row['multiplier_c'], row['lambda'])
        for row in rows
    ]
    for row in survey:
        if row.is_square:
            logger.info('T_%d = %d^2 is a square triangular number', row.n, row.square_root)
    return survey


def survey_table(rows: tp.Sequence[SurveyRow]) -> str:
    """Aligned text table of survey rows."""
    header = ('n', 'T_n', 'square', 'c', 'lambda', 'applicable')
    body = [
        (str(row.n), str(row.t_n), '-' if row.square_root is None else str(row.square_root),
         str(row.multiplier_c),
         '-' if row.lambda_ is None else q_to_decimal(row.lambda_, LAMBDA_DIGITS),
         'yes' if row.descent_applicable else 'no')
        for row in rows
    ]
    widths = [max(len(line[i]) for line in [header, *body]) for i in range(len(header))]
    return '\n'.join('  '.join(cell.rjust(width) for cell, width in zip(line, widths))
                     for line in [header, *body])


@dataclass(frozen=True)
class OracleResult:
    """Outcome of the brute-force search for a^2 = k b^2.

    Attributes:
        k: radicand.
        b_max: largest b tried.
        no_solution: True if no 1 <= b <= b_max works.
        witness: the first solution (a, b) otherwise.
    """
    k: int
    b_max: int
    no_solution: bool
    witness: tp.Optional[tuple[int, int]] = None

    def to_dict(self) -> dict[str, tp.Any]:
        return {
            'k': self.k,
            'b_max': self.b_max,
            'no_solution': self.no_solution,
            'witness': None if self.witness is None else list(self.witness),
        }


def oracle_graph(input_stream_name: str) -> Graph:
    """Constructs graph which keeps the first row {'k', 'b'} with k b^2 a square.

    Args:
        input_stream_name: name of the iterator with the candidates, ordered by k.

    Return:
        graph yielding at most one witness row per k, with the root in 'a'.
    """
    return Graph.graph_from_iter(input_stream_name) \
        .map(ops.Apply(lambda k, b: exact_isqrt(k * b * b), ['k', 'b'], 'a')) \
        .map(ops.Filter(lambda row: row['a'] is not None)) \
        .reduce(ops.FirstReducer(), ['k']) \
        .map(ops.Project(['k', 'a', 'b']))


def brute_force_no_solution(k: int, b_max: int) -> OracleResult:
    """Tries every 1 <= b <= b_max for an integer a with a^2 = k b^2.

    Args:
        k: positive integer.
        b_max: search bound, at least 1.

    Return:
        the verdict with the first witness when there is one.
    """
    if k < 1:
        raise ValueError(f'k must be positive, got {k}')
    if b_max < 1:
        raise ValueError(f'b_max must be positive, got {b_max}')
    rows = oracle_graph('candidates').run(candidates=lambda: ({'k': k, 'b': b} for b in range(1, b_max + 1)))
    witness = next(iter(rows), None)
    if witness is None:
        return OracleResult(k, b_max, True)
    logger.info('k = %d has the solution a = %d, b = %d', k, witness['a'], witness['b'])
    return OracleResult(k, b_max, False, (witness['a'], witness['b']))


@dataclass
class ConvergentSeq:
    """Continued fraction convergents a/b of sqrt(k).

    Attributes:
        k: nonsquare radicand.
        pairs: (a, b) with strictly increasing b after the first two.
        partial_quotients: the continued fraction terms used.
    """
    k: int
    pairs: list[tuple[int, int]] = field(default_factory=list)
    partial_quotients: list[int] = field(default_factory=list)


def convergents(k: int, count: int) -> ConvergentSeq:
    """First convergents of sqrt(k) from its periodic continued fraction.

    Uses the integer recurrence m' = d t - m, d' = (k - m'^2) / d,
    t' = (t_0 + m') // d' for the partial quotients t.

    Args:
        k: nonsquare integer, at least 2.
        count: number of convergents, at least 1.

    Return:
        the convergents.
    """
    if count < 1:
        raise ValueError(f'count must be positive, got {count}')
    if k < 2 or exact_isqrt(k) is not None:
        raise ValueError(f'sqrt({k}) has no infinite continued fraction: k must be a nonsquare >= 2')
    first = math.isqrt(k)
    m, d, term = 0, 1, first
    a_prev, a = 1, first
    b_prev, b = 0, 1
    sequence = ConvergentSeq(k, [(a, b)], [term])
    while len(sequence.pairs) < count:
        m = d * term - m
        d = (k - m * m) // d
        term = (first + m) // d
        a_prev, a = a, term * a + a_prev
        b_prev, b = b, term * b + b_prev
        sequence.pairs.append((a, b))
        sequence.partial_quotients.append(term)
    return sequence
