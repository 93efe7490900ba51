from __future__ import annotations

from fractions import Fraction

import pytest

from hankelfrac.services.oracle import hankel_det, hankel_det_from_coeffs, hankel_sequence_bruteforce, hankel_window
from hankelfrac.services.sequences import example_series, stern_series
from hankelfrac.services.series import RationalSeries, explicit
from hankelfrac.utils.errors import InputError, InsufficientDataError

from conftest import F2, F5, QQ


def _values(seq):
    return tuple(v.value for v in seq)


def test_empty_determinant_is_one():
    assert hankel_det_from_coeffs(F5, [], 0) == 1
    assert hankel_det(explicit(QQ, [7]), 1) == 7


def test_window_shape():
    assert hankel_window([1, 2, 3, 4, 5], 2, 1) == [[2, 3], [3, 4]]
    with pytest.raises(InputError):
        hankel_window([1, 2], 2)


def test_small_determinants():
    assert hankel_det_from_coeffs(F5, [1, 2, 1], 2) == 2
    assert hankel_det_from_coeffs(QQ, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], 2) == Fraction(1, 72)


def test_stern_over_integers():
    assert _values(hankel_sequence_bruteforce(stern_series(), 3)) == (1, 1, 1, -2)


def test_shifted_window():
    assert _values(hankel_sequence_bruteforce(stern_series(), 2, k=1)) == (1, 1, -3)


def test_geometric_series(poly):
    geometric = RationalSeries(poly('1', QQ), poly('1-x', QQ))
    assert _values(hankel_sequence_bruteforce(geometric, 5)) == (1, 1, 0, 0, 0, 0)


def test_quadratic_example_over_f2():
    values = hankel_sequence_bruteforce(example_series('i.2'), 10)
    assert _values(values) == (1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1)
    assert all(v.spec == F2 for v in values)


def test_distinct_partitions():
    values = hankel_sequence_bruteforce(example_series('ex2.2'), 15)
    assert _values(values) == (1, 1, 0, -1, 0, 0, -1, 0, 1, 1, 0, -1, -1, 0, 1, -4)


def test_short_prefix():
    with pytest.raises(InsufficientDataError):
        hankel_sequence_bruteforce(explicit(F5, [1, 2, 3]), 3)


def test_negative_order():
    with pytest.raises(InputError):
        hankel_det_from_coeffs(F5, [1], -1)
