from __future__ import annotations

import pytest

from hankelfrac.models.polynomial import Polynomial, render_poly, series_div, series_inverse, series_mul
from hankelfrac.utils.errors import NonReducibleError, NotDivisibleError, PolynomialSyntaxError
from hankelfrac.utils.poly_parser import parse_poly

from conftest import F2, F3, F5, QQ


@pytest.mark.parametrize('text, spec, rendered', [
    ('1+4*x', F5, '1+4*x'),
    ('-x+x^5', F5, '4*x+x^5'),
    ('-1+x^4', F2, '1+x^4'),
    ('1 - x + x^2 - x^3', QQ, '1-x+x^2-x^3'),
    ('1/2*x^2 - 3x', QQ, '-3*x+1/2*x^2'),
    ('x + x', F2, '0'),
    ('2x^3 + 3x^3', F5, '0'),
])
def test_parse_and_render(text, spec, rendered):
    assert render_poly(parse_poly(text, spec)) == rendered


@pytest.mark.parametrize('text', ['', '1+', '*x', '1+*x', 'x^', 'y', '1/0', '2 3'])
def test_syntax_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(text, QQ)


def test_syntax_error_carries_position():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly('1+x+?', QQ)
    assert info.value.position == 4


def test_rational_coefficient_with_pole():
    with pytest.raises(NonReducibleError):
        parse_poly('1/3 + x', F3)


def test_degree_and_valuation():
    p = parse_poly('x^2 + x^5', F3)
    assert p.degree == 5
    assert p.valuation == 2
    zero = Polynomial.zero(F3)
    assert zero.degree == -1
    assert zero.is_zero()


def test_arithmetic(poly):
    a = poly('1+x', F2)
    assert a * a == poly('1+x^2', F2)
    assert a + a == Polynomial.zero(F2)
    assert (a * a).div_by_power(0) == poly('1+x^2', F2)
    assert poly('x^3+x^4', F5).div_by_power(3) == poly('1+x', F5)
    assert poly('1+x', F3).compose_x_power(2) == poly('1+x^2', F3)
    assert poly('1+x', F3).power(3) == poly('1+x^3', F3)


def test_div_by_power_requires_exactness(poly):
    with pytest.raises(NotDivisibleError):
        poly('x+x^2', F5).div_by_power(2)


def test_series_kernels():
    assert series_inverse(F2, [1, 1], 4) == [1, 1, 1, 1]
    assert series_mul(F3, [1, 1], [1, 1], 3) == [1, 2, 1]
    assert series_div(F5, [1, 0, 0], [1, 4], 3) == [1, 1, 1]
