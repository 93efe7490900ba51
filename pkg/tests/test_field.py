from __future__ import annotations

from fractions import Fraction

import pytest

from hankelfrac.models.field import FieldElement, FieldSpec, multiplicative_order, reduce_mod_p
from hankelfrac.utils.errors import (
    FieldDivisionByZero, FieldMismatchError, InputError, NoSquareRootError, NonReducibleError
)

from conftest import F2, F3, F5, QQ


def test_prime_field_arithmetic():
    two, three = F5.element(2), F5.element(3)
    assert two * three == 1
    assert two + three == 0
    assert two.inv() == 3
    assert (two / three).value == 4
    assert -two == 3
    assert two ** 4 == 1


def test_rational_arithmetic_is_exact():
    half = QQ.element(Fraction(1, 2))
    third = QQ.element('1/3')
    assert (half + third).value == Fraction(5, 6)
    assert str(half - third) == '1/6'
    assert str(QQ.element(-4)) == '-4'


def test_values_are_canonical():
    assert F5.element(-1).value == 4
    assert F5.element(Fraction(1, 2)).value == 3
    assert str(F5.element(7)) == '2'


def test_division_by_zero():
    with pytest.raises(FieldDivisionByZero):
        F3.element(0).inv()
    with pytest.raises(ZeroDivisionError):
        QQ.element(1) / QQ.element(0)


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        F2.element(1) + F3.element(1)


@pytest.mark.parametrize('text, expected', [('F2', F2), ('f5', F5), ('Q', QQ), ('Z', QQ)])
def test_parse(text, expected):
    assert FieldSpec.parse(text) == expected


@pytest.mark.parametrize('text', ['F4', 'F1', 'GF', 'R'])
def test_parse_rejects_non_primes(text):
    with pytest.raises(InputError):
        FieldSpec.parse(text)


def test_reduce_mod_p():
    assert reduce_mod_p(Fraction(1, 3), 2) == FieldElement(F2, 1)
    assert reduce_mod_p(Fraction(-1, 4), 5).value == 1
    with pytest.raises(NonReducibleError):
        reduce_mod_p(Fraction(1, 2), 2)


@pytest.mark.parametrize('value, order', [(1, 1), (4, 2), (2, 4), (3, 4)])
def test_multiplicative_order_f5(value, order):
    assert multiplicative_order(F5.element(value)) == order


def test_sqrt():
    assert F5.sqrt(4) == 2
    assert F3.sqrt(1) == 1
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NoSquareRootError):
        F3.sqrt(2)
    with pytest.raises(NoSquareRootError):
        QQ.sqrt(Fraction(2))
