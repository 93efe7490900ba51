from __future__ import annotations

import random
from typing import List

import pytest

from hankelfrac.models.field import FieldSpec
from hankelfrac.models.polynomial import Polynomial
from hankelfrac.models.triple import QuadraticTriple
from hankelfrac.services.series import QuadraticRootSeries, RationalSeries, SeriesHandle
from hankelfrac.utils.config_manager import ConfigManager, reload_config
from hankelfrac.utils.poly_parser import parse_poly

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()

SEED = 20240611


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Каждый тест видит конфигурацию без переменных окружения HANKELFRAC_*"""
    for key in ConfigManager.ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.delenv('STRUCTURED_LOGS', raising=False)
    reload_config()
    yield
    reload_config()


@pytest.fixture
def poly():
    return parse_poly


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


def random_poly(rng: random.Random, spec: FieldSpec, degree: int, constant=None) -> Polynomial:
    p = spec.p or 7
    values = [rng.randrange(-p, p) if spec.p is None else rng.randrange(p) for _ in range(degree + 1)]
    if constant is not None:
        values[0] = constant
    return Polynomial(spec, tuple(values))


def random_series(rng: random.Random, spec: FieldSpec) -> SeriesHandle:
    """Случайный рациональный ряд или корень квадратного уравнения с C(0) = 0"""
    if rng.random() < 0.5:
        numerator = random_poly(rng, spec, rng.randint(0, 6))
        if numerator.is_zero():
            numerator = Polynomial.one(spec)
        return RationalSeries(numerator, random_poly(rng, spec, rng.randint(0, 4), constant=1))
    A = random_poly(rng, spec, rng.randint(0, 4))
    B = random_poly(rng, spec, rng.randint(0, 4), constant=1)
    C = random_poly(rng, spec, rng.randint(0, 3)).mul_x_power(1)
    return QuadraticRootSeries(A, B, C, spec.neg(A.coefficient(0)))


def random_canonical_triple(rng: random.Random, spec: FieldSpec, max_degree: int = 6) -> QuadraticTriple:
    """Тройка с B(0) = 1, C(0) = 0, C != 0"""
    A = random_poly(rng, spec, rng.randint(0, max_degree))
    B = random_poly(rng, spec, rng.randint(0, max_degree), constant=1)
    C = random_poly(rng, spec, rng.randint(0, max_degree - 1)).mul_x_power(1)
    if C.is_zero():
        C = Polynomial.monomial(spec, 1, 1)
    return QuadraticTriple(A, B, C)


@pytest.fixture
def corpus(rng) -> List[SeriesHandle]:
    """Детерминированный корпус: по 70 рядов над F2, F3, F5"""
    return [random_series(rng, spec) for spec in (F2, F3, F5) for _ in range(70)]
