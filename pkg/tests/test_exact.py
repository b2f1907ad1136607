import dataclasses
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from irrdescent import geometry
from irrdescent.exact import (QuadExt, RadicandMismatch, exact_isqrt, is_squarefree, q_inv, q_mul, q_sign,
                              q_to_decimal, square_part)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=60)
elements = st.builds(lambda p, q: QuadExt(5, p, q), rationals, rationals)


@pytest.mark.parametrize('n, root', [(0, 0), (1, 1), (36, 6), (1225, 35), (35, None), (10, None), (-4, None)])
def test_exact_isqrt(n: int, root: int | None) -> None:
    assert exact_isqrt(n) == root


@pytest.mark.parametrize('m, expected', [(1, True), (2, True), (30, True), (28, False), (49, False), (10, True)])
def test_is_squarefree(m: int, expected: bool) -> None:
    assert is_squarefree(m) is expected


@pytest.mark.parametrize('k, parts', [(7, (1, 7)), (28, (2, 7)), (72, (6, 2)), (36, (6, 1))])
def test_square_part(k: int, parts: tuple[int, int]) -> None:
    assert square_part(k) == parts


def test_sqrt_pulls_out_square_part() -> None:
    root = QuadExt.sqrt(28)
    assert (root.m, root.p, root.q) == (7, 0, 2)
    assert root * root == 28


@pytest.mark.parametrize('m', [0, 1, 4, 12])
def test_invalid_radicand(m: int) -> None:
    with pytest.raises(ValueError):
        QuadExt(m, 1, 1)


def test_sqrt_of_square_is_rejected() -> None:
    with pytest.raises(ValueError):
        QuadExt.sqrt(36)


def test_radicand_mismatch() -> None:
    with pytest.raises(RadicandMismatch):
        QuadExt.sqrt(2) + QuadExt.sqrt(3)
    with pytest.raises(ValueError):
        q_mul(QuadExt.sqrt(2), QuadExt.sqrt(3))


def test_products_and_inverses() -> None:
    root2 = QuadExt.sqrt(2)
    assert (1 + root2) * (1 - root2) == -1
    assert q_inv(root2 - 1) == root2 + 1
    assert (root2 - 1) ** -1 == root2 + 1
    assert root2 ** 4 == 4
    assert QuadExt(2, Fraction(1, 2), 0) == Fraction(1, 2)


def test_inverse_of_zero() -> None:
    with pytest.raises(ZeroDivisionError):
        q_inv(QuadExt(5))


@dataclasses.dataclass
class SignCase:
    value: QuadExt
    sign: int


SIGN_CASES = [
    SignCase(QuadExt(10, 4, -1), 1),
    SignCase(QuadExt(10, 3, -1), -1),
    SignCase(QuadExt(10, -4, 1), -1),
    SignCase(QuadExt(2, -1, 1), 1),
    SignCase(QuadExt(2, 0, -3), -1),
    SignCase(QuadExt(3, Fraction(-7, 4), 1), -1),
    SignCase(QuadExt(3, Fraction(-17, 10), 1), 1),
    SignCase(QuadExt(6), 0),
]


@pytest.mark.parametrize('case', SIGN_CASES)
def test_q_sign(case: SignCase) -> None:
    assert q_sign(case.value) == case.sign


def test_ordering() -> None:
    root10 = QuadExt.sqrt(10)
    assert root10 - 3 < 1
    assert 4 - root10 > 0
    assert QuadExt.sqrt(2) - 1 <= QuadExt.sqrt(2) - 1


@pytest.mark.parametrize('value, digits, text', [
    (QuadExt(10, 4, -1), 3, '0.837'),
    (QuadExt(2, 0, 1), 5, '1.41421'),
    (QuadExt(2, 1, -1), 4, '-0.4142'),
    (QuadExt(2, Fraction(-1, 3), 0), 3, '-0.333'),
    (QuadExt(5, -2, 1), 10, '0.2360679774'),
    (QuadExt(7, 0, 2), 2, '5.29'),
])
def test_q_to_decimal(value: QuadExt, digits: int, text: str) -> None:
    assert q_to_decimal(value, digits) == text


def test_q_to_decimal_needs_digits() -> None:
    with pytest.raises(ValueError):
        q_to_decimal(QuadExt.sqrt(2), 0)


def test_str() -> None:
    assert str(QuadExt(10, 4, -1)) == '4 - sqrt(10)'
    assert str(QuadExt(7, 0, 2)) == '2*sqrt(7)'
    assert str(QuadExt(5, -2, 1)) == '-2 + sqrt(5)'
    assert str(QuadExt(3, Fraction(1, 2), 0)) == '1/2'


@given(x=elements, y=elements, z=elements)
def test_field_axioms(x: QuadExt, y: QuadExt, z: QuadExt) -> None:
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    assert x * 1 == x


@given(x=elements)
def test_inverse(x: QuadExt) -> None:
    assume(x != 0)
    assert x * q_inv(x) == 1
    assert x / x == 1


@given(x=elements, y=elements)
def test_norm_is_multiplicative(x: QuadExt, y: QuadExt) -> None:
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * x.conjugate() == x.norm()


@given(x=elements, y=elements)
def test_sign_agrees_with_evaluation(x: QuadExt, y: QuadExt) -> None:
    sign = q_sign(x)
    assert (sign == 0) == (x == 0)
    assert sign * geometry.quad_to_real(x) >= 0
    assert q_sign(x - y) == -q_sign(y - x)


mixed_elements = st.builds(QuadExt, st.sampled_from([2, 3, 5, 6, 10, 15]), rationals, rationals)


def decimal_sign(text: str) -> int:
    if text.startswith('-'):
        return -1
    return 0 if set(text) <= {'0', '.'} else 1


@given(x=mixed_elements)
@settings(max_examples=1000)
def test_sign_agrees_with_decimal(x: QuadExt) -> None:
    # nonzero elements with these bounds stay far above 10^-30
    assert q_sign(x) == decimal_sign(q_to_decimal(x, 30))
