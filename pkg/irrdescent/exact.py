"""Exact rational and real quadratic field arithmetic.

Every exact check in the package goes through this module: rational numbers
are :class:`fractions.Fraction` values and elements ``p + q*sqrt(m)`` of a
real quadratic field are :class:`QuadExt` values.
"""
import math
import typing as tp
from dataclasses import dataclass, field
from fractions import Fraction

Rational = Fraction
TRationalLike = tp.Union[int, Fraction]

MAX_RADICAND = 10 ** 6


class RadicandMismatch(ValueError):
    """Two field elements with different radicands were combined."""


def exact_isqrt(n: int) -> tp.Optional[int]:
    """Integer square root of a perfect square.

    Args:
        n: integer to test.

    Return:
        the root r with r * r == n, or None when n is not a perfect square.
    """
    if n < 0:
        return None
    root = math.isqrt(n)
    return root if root * root == n else None


def is_squarefree(m: int) -> bool:
    """Trial division test, valid for 1 <= m <= MAX_RADICAND.

    Args:
        m: positive integer.

    Return:
        True if no square of a prime divides m.
    """
    if m < 1 or m > MAX_RADICAND:
        raise ValueError(f'squarefree test supports 1 <= m <= {MAX_RADICAND}, got {m}')
    for d in range(2, math.isqrt(m) + 1):
        if m % (d * d) == 0:
            return False
    return True


def square_part(k: int) -> tuple[int, int]:
    """Splits k into f and m with k == f * f * m and m squarefree.

    Args:
        k: positive integer.

    Return:
        pair (f, m).
    """
    if k < 1:
        raise ValueError(f'square part is defined for positive integers, got {k}')
    factor, rest = 1, k
    for d in range(2, math.isqrt(k) + 1):
        while rest % (d * d) == 0:
            rest //= d * d
            factor *= d
    return factor, rest


@dataclass(frozen=True, eq=False)
class QuadExt:
    """Element p + q*sqrt(m) of the real quadratic field Q(sqrt(m)).

    Attributes:
        m: squarefree radicand, 2 <= m <= MAX_RADICAND.
        p: rational part.
        q: coefficient of sqrt(m).
    """
    m: int
    p: Fraction = field(default=Fraction(0))
    q: Fraction = field(default=Fraction(0))

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError(f'radicand must be an integer >= 2, got {self.m!r}')
        if not is_squarefree(self.m):
            raise ValueError(f'radicand {self.m} is not squarefree')
        object.__setattr__(self, 'p', Fraction(self.p))
        object.__setattr__(self, 'q', Fraction(self.q))

    @classmethod
    def rational(cls, value: TRationalLike, m: int) -> 'QuadExt':
        """Embeds a rational number into Q(sqrt(m))."""
        return cls(m, Fraction(value), Fraction(0))

    @classmethod
    def sqrt(cls, k: int) -> 'QuadExt':
        """Square root of a nonsquare integer k >= 2.

        The square part is pulled out of the radical, so sqrt(28) is
        represented as 2*sqrt(7).

        Args:
            k: positive nonsquare integer.

        Return:
            sqrt(k) as a field element.
        """
        factor, m = square_part(k)
        if m == 1:
            raise ValueError(f'{k} is a perfect square, sqrt({k}) = {factor} is rational')
        return cls(m, Fraction(0), Fraction(factor))

    def _lift(self, other: tp.Any) -> 'QuadExt':
        if isinstance(other, QuadExt):
            if other.m != self.m:
                raise RadicandMismatch(f'cannot combine elements of Q(sqrt({self.m})) and Q(sqrt({other.m}))')
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt.rational(other, self.m)
        raise TypeError(f'unsupported operand {other!r}')

    def conjugate(self) -> 'QuadExt':
        return QuadExt(self.m, self.p, -self.q)

    def norm(self) -> Fraction:
        """Field norm p^2 - m*q^2."""
        return self.p * self.p - self.m * self.q * self.q

    def is_rational(self) -> bool:
        return self.q == 0

    def __add__(self, other: tp.Any) -> 'QuadExt':
        return q_add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self) -> 'QuadExt':
        return QuadExt(self.m, -self.p, -self.q)

    def __sub__(self, other: tp.Any) -> 'QuadExt':
        return q_add(self, -self._lift(other))

    def __rsub__(self, other: tp.Any) -> 'QuadExt':
        return q_add(self._lift(other), -self)

    def __mul__(self, other: tp.Any) -> 'QuadExt':
        return q_mul(self, self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other: tp.Any) -> 'QuadExt':
        return q_mul(self, q_inv(self._lift(other)))

    def __rtruediv__(self, other: tp.Any) -> 'QuadExt':
        return q_mul(self._lift(other), q_inv(self))

    def __pow__(self, exponent: int) -> 'QuadExt':
        if exponent < 0:
            return q_inv(self) ** -exponent
        result = QuadExt.rational(1, self.m)
        for _ in range(exponent):
            result = q_mul(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        # sqrt(m) is irrational, so componentwise equality is exact equality
        return self.m == other.m and self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(self.p)
        return hash((self.m, self.p, self.q))

    def __lt__(self, other: tp.Any) -> bool:
        return q_sign(self - other) < 0

    def __le__(self, other: tp.Any) -> bool:
        return q_sign(self - other) <= 0

    def __gt__(self, other: tp.Any) -> bool:
        return q_sign(self - other) > 0

    def __ge__(self, other: tp.Any) -> bool:
        return q_sign(self - other) >= 0

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        if self.q == 1:
            radical = f'sqrt({self.m})'
        elif self.q == -1:
            radical = f'-sqrt({self.m})'
        else:
            radical = f'{self.q}*sqrt({self.m})'
        if self.p == 0:
            return radical
        if radical.startswith('-'):
            return f'{self.p} - {radical[1:]}'
        return f'{self.p} + {radical}'

    def __repr__(self) -> str:
        return f'QuadExt(m={self.m}, p={self.p}, q={self.q})'


def q_add(x: QuadExt, y: QuadExt) -> QuadExt:
    """Sum of two elements of the same field.

    Args:
        x: first summand.
        y: second summand.

    Return:
        componentwise sum.
    """
    if x.m != y.m:
        raise RadicandMismatch(f'cannot add elements of Q(sqrt({x.m})) and Q(sqrt({y.m}))')
    return QuadExt(x.m, x.p + y.p, x.q + y.q)


def q_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    """Product (p1 p2 + q1 q2 m) + (p1 q2 + p2 q1) sqrt(m).

    Args:
        x: first factor.
        y: second factor.

    Return:
        the product.
    """
    if x.m != y.m:
        raise RadicandMismatch(f'cannot multiply elements of Q(sqrt({x.m})) and Q(sqrt({y.m}))')
    return QuadExt(x.m, x.p * y.p + x.q * y.q * x.m, x.p * y.q + y.p * x.q)


def q_inv(x: QuadExt) -> QuadExt:
    """Multiplicative inverse: conjugate over norm.

    Args:
        x: nonzero element.

    Return:
        (p - q sqrt(m)) / (p^2 - m q^2).
    """
    if x.p == 0 and x.q == 0:
        raise ZeroDivisionError('inverse of zero in a quadratic field')
    norm = x.norm()
    assert norm != 0, f'nonzero {x!r} has zero norm'
    return QuadExt(x.m, x.p / norm, -x.q / norm)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def q_sign(x: QuadExt) -> int:
    """Exact sign of p + q sqrt(m).

    Args:
        x: field element.

    Return:
        -1, 0 or 1.
    """
    sign_p, sign_q = _sign(x.p), _sign(x.q)
    if sign_q == 0:
        return sign_p
    if sign_p == 0 or sign_p == sign_q:
        return sign_q
    # opposite signs: the larger of p^2 and m q^2 wins
    return sign_p if x.p * x.p > x.m * x.q * x.q else sign_q


def _floor_scaled(x: QuadExt, scale: int) -> int:
    """floor((p + q sqrt(m)) * scale) with integer square roots only."""
    denominator = math.lcm(x.p.denominator, x.q.denominator)
    p_num = x.p.numerator * (denominator // x.p.denominator) * scale
    q_num = x.q.numerator * (denominator // x.q.denominator) * scale
    root = math.isqrt(q_num * q_num * x.m)
    if q_num < 0:
        # q_num * sqrt(m) is irrational for q_num != 0, never an integer
        root = -root - 1
    return (p_num + root) // denominator


def q_to_decimal(x: QuadExt, digits: int) -> str:
    """Decimal expansion truncated toward zero.

    The result is exact up to the last printed digit: truncation never
    rounds, so the true value lies within one unit in the last place
    away from zero of the string.

    Args:
        x: field element.
        digits: number of fractional digits, at least 1.

    Return:
        decimal string such as '0.837' for 4 - sqrt(10) and 3 digits.
    """
    if digits < 1:
        raise ValueError(f'digits must be positive, got {digits}')
    scale = 10 ** digits
    sign = q_sign(x)
    truncated = _floor_scaled(-x if sign < 0 else x, scale)
    whole, fraction = divmod(truncated, scale)
    text = f'{whole}.{fraction:0{digits}d}'
    return f'-{text}' if sign < 0 else text
