"""
Именованные последовательности и их функциональные уравнения

Для каждой последовательности есть прямой генератор коэффициентов (сторона оракула)
и, где возможно, квадратная тройка над F_p (сторона конвейера HFrac).
"""

import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from hankelfrac.models.field import FieldSpec
from hankelfrac.models.polynomial import Polynomial
from hankelfrac.models.sequences import GraftingReport, GraftingRow
from hankelfrac.models.triple import QuadraticTriple
from hankelfrac.services.oracle import hankel_sequence_bruteforce
from hankelfrac.services.series import (
    BinomialPowerSeries, ProductSeries, QuadraticRootSeries, RationalSeries, ReciprocalSeries,
    ReducedSeries, ScaleSeries, SequenceSeries, SeriesHandle, ShiftDivSeries, SqrtSeries, SumSeries,
    polynomial_series
)
from hankelfrac.utils.errors import InputError, UnknownSequenceError
from hankelfrac.utils.poly_parser import parse_poly

logger = logging.getLogger(__name__)

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()


def _poly(text: str, spec: FieldSpec) -> Polynomial:
    return parse_poly(text, spec)


# Складывание бумаги


def paperfolding_coefficients(a: int, b: int, n: int) -> List[int]:
    """
    Первые n коэффициентов G_{a,b} над F_2 прямым перебором

    Показатель e отмечается для каждой пары (j, k) с e + 2^a = 2^(j+a) + k*2^(j+b),
    отметки складываются по модулю 2.
    """
    if a < 0 or b < 0:
        raise InputError(f"Paperfolding parameters must be non-negative, got a={a}, b={b}")
    out = [0] * n
    j = 0
    while (1 << (j + a)) - (1 << a) < n:
        base = (1 << (j + a)) - (1 << a)
        for e in range(base, n, 1 << (j + b)):
            out[e] ^= 1
        j += 1
    return out


def paperfolding_triple(a: int, b: int) -> QuadraticTriple:
    """1 + (1 + x^(2^b))*f + x^(2^a)*(1 + x^(2^b))*f^2 = 0 над F_2"""
    shift = Polynomial.one(F2) + Polynomial.monomial(F2, 1, 1 << b)
    return QuadraticTriple(Polynomial.one(F2), shift, shift.mul_x_power(1 << a))


def paperfolding_series(a: int, b: int) -> Tuple[SeriesHandle, QuadraticTriple]:
    """Ряд G_{a,b} по прямой сумме и его квадратное уравнение"""
    series = SequenceSeries(F2, lambda n: paperfolding_coefficients(a, b, n), f"paperfolding({a},{b})")
    return series, paperfolding_triple(a, b)


# Рудин-Шапиро


def rudin_shapiro(n_max: int) -> List[int]:
    """u_0..u_{n_max-1}: u_{2n} = u_n, u_{4n+1} = u_n, u_{4n+3} = 1 - u_{2n+1}"""
    u = [0] * max(n_max, 0)
    for n in range(1, n_max):
        if n % 2 == 0:
            u[n] = u[n // 2]
        elif n % 4 == 1:
            u[n] = u[n // 4]
        else:
            u[n] = 1 - u[n // 2]
    return u


def rudin_shapiro_base_triple() -> QuadraticTriple:
    """x^3 + (1+x)^4*f + (1+x)^5*f^2 = 0 над F_2"""
    one_x = _poly("1+x", F2)
    return QuadraticTriple(Polynomial.monomial(F2, 1, 3), one_x.power(4), one_x.power(5))


def rudin_shapiro_triples() -> Dict[int, QuadraticTriple]:
    """Уравнения на f_s = f/x^s, s = 1, 2, 3 (u_0 = u_1 = u_2 = 0)"""
    one_x = _poly("1+x", F2)
    triples = {}
    for s in (1, 2, 3):
        triples[s] = QuadraticTriple(
            Polynomial.monomial(F2, 1, 3 - s), one_x.power(4), one_x.power(5).mul_x_power(s)
        )
    return triples


def rudin_shapiro_series(shift: int = 0) -> SeriesHandle:
    if not 0 <= shift <= 3:
        raise InputError(f"Rudin-Shapiro shift must be in 0..3, got {shift}")
    return SequenceSeries(F2, lambda n: rudin_shapiro(n + shift)[shift:], f"rudin_shapiro({shift})")


# Штерн


def stern(n_max: int) -> List[int]:
    """a_0..a_{n_max-1}: a_{2n} = a_n, a_{2n+1} = a_n + a_{n+1}"""
    a = [0, 1][:max(n_max, 0)] + [0] * max(n_max - 2, 0)
    for n in range(2, n_max):
        half = n // 2
        a[n] = a[half] if n % 2 == 0 else a[half] + a[half + 1]
    return a


def twisted_stern(n_max: int) -> List[int]:
    """b_0..b_{n_max-1}: b_{2n} = -b_n, b_{2n+1} = -(b_n + b_{n+1})"""
    b = [0, 1][:max(n_max, 0)] + [0] * max(n_max - 2, 0)
    for n in range(2, n_max):
        half = n // 2
        b[n] = -b[half] if n % 2 == 0 else -(b[half] + b[half + 1])
    return b


def stern_series(twisted: bool = False) -> SeriesHandle:
    """S(x) = sum a_{n+1} x^n (или B(x) для скрученного варианта) над Q"""
    generator = twisted_stern if twisted else stern
    name = 'twisted_stern' if twisted else 'stern'
    return SequenceSeries(QQ, lambda n: generator(n + 1)[1:], name)


def grafted_triple() -> QuadraticTriple:
    """(1+x+x^2) + (1+x+x^2)*G + x^4*G^2 = 0 над F_2 (G(x^2) = G(x)^2)"""
    tri = _poly("1+x+x^2", F2)
    return QuadraticTriple(tri, tri, Polynomial.monomial(F2, 1, 4))


def _grafted_series(series: SeriesHandle, twisted: bool) -> SeriesHandle:
    """
    Привитый ряд над Q

    S = 1/(1 - x - x^2/(1 + 2x + 2x^2*G)),  B = 1/(1 + x + x^2/(1 + 2x^2*U))
    """
    one = polynomial_series(Polynomial.one(QQ))
    if twisted:
        rest = ShiftDivSeries(SumSeries(ReciprocalSeries(series), polynomial_series(_poly("-1-x", QQ))), 2)
        inner = SumSeries(ReciprocalSeries(rest), ScaleSeries(-1, one))
    else:
        rest = ShiftDivSeries(
            SumSeries(polynomial_series(_poly("1-x", QQ)), ScaleSeries(-1, ReciprocalSeries(series))), 2
        )
        inner = SumSeries(ReciprocalSeries(rest), polynomial_series(_poly("-1-2*x", QQ)))
    return ScaleSeries(Fraction(1, 2), ShiftDivSeries(inner, 2))


def stern_family(n_max: int = 24, check_depth: int = 40) -> List[GraftingReport]:
    """
    Отчёты о прививке для рядов Штерна S и скрученного Штерна B

    Привитый ряд, посчитанный над Q и приведённый по модулю 2, сверяется с корнем
    привитой тройки; H_n/2^(n-2) mod 2 по оракулу над Z сравнивается с H_{n-2}(G) mod 2.
    """
    from hankelfrac.services.periodicity import certified_hankel_period
    from hankelfrac.services.quadratic import hfrac_quadratic

    triple = grafted_triple()
    root = QuadraticRootSeries(triple.A, triple.B, triple.C, 1)
    grafted_hankel = certified_hankel_period(hfrac_quadratic(triple).fraction)

    reports = []
    for twisted in (False, True):
        series = stern_series(twisted)
        reduced = ReducedSeries(_grafted_series(series, twisted), 2)
        matches = reduced.prefix_raw(check_depth) == root.prefix_raw(check_depth)

        values = hankel_sequence_bruteforce(series, n_max)
        rows = []
        for n in range(2, n_max + 1):
            scaled = Fraction(values[n].value) / (1 << (n - 2))
            parity = scaled.numerator % 2 if scaled.denominator == 1 else None
            rows.append(GraftingRow(n, parity, grafted_hankel.value(n - 2)))

        if twisted:
            report = GraftingReport(
                'twisted_stern', "B = 1/(1+x + x^2/(1 + 2*x^2*U))", "H_n(B) = -2^(n-2)*H_{n-2}(U)",
                triple, matches, grafted_hankel, rows
            )
        else:
            report = GraftingReport(
                'stern', "S = 1/(1-x - x^2/(1+2*x + 2*x^2*G))", "H_n(S) = (-1)^n*2^(n-2)*H_{n-2}(G)",
                triple, matches, grafted_hankel, rows
            )
        logger.info(f"🌿 Grafting check for {report.name}: {'passed' if report.holds else 'FAILED'}")
        reports.append(report)
    return reports


# Разбиения на различные части


def distinct_partitions(n_max: int) -> List[int]:
    """Число разбиений n на различные части, n = 0..n_max-1"""
    counts = [1] + [0] * max(n_max - 1, 0)
    for part in range(1, n_max):
        for total in range(n_max - 1, part - 1, -1):
            counts[total] += counts[total - part]
    return counts[:n_max]


# Примеры


def _example_2_1() -> SeriesHandle:
    """f = (1 - sqrt(1 - 4x^4/(1+x))) / (2x^4) над Q"""
    root = SqrtSeries(RationalSeries(_poly("1+x-4*x^4", QQ), _poly("1+x", QQ)))
    one = polynomial_series(Polynomial.one(QQ))
    return ScaleSeries(Fraction(1, 2), ShiftDivSeries(SumSeries(one, ScaleSeries(-1, root)), 4))


def _example_2_3() -> SeriesHandle:
    return BinomialPowerSeries(Fraction(1, 3), RationalSeries(_poly("1-x", QQ), _poly("1", QQ)), F2)


def _example_iv() -> SeriesHandle:
    """F = x*sqrt((1-x)/(1+x^3)) над F_3"""
    root = SqrtSeries(RationalSeries(_poly("1-x", F3), _poly("1+x^3", F3)))
    return ProductSeries(polynomial_series(_poly("x", F3)), root)


# id -> (тройка, ветвь) для примеров с квадратным уравнением
EXAMPLE_TRIPLES: Dict[str, Callable[[], Tuple[QuadraticTriple, Optional[int]]]] = {
    'i.1': lambda: (QuadraticTriple(_poly("-1", F5), _poly("1-x^4", F5), _poly("-x+x^5", F5)), None),
    'i.2': lambda: (QuadraticTriple(_poly("1", F2), _poly("1+x^4", F2), _poly("x+x^5", F2)), None),
    'iii.1': lambda: (QuadraticTriple(_poly("-x", F2), _poly("1-x^4", F2), _poly("-1+x^4", F2)), 0),
    'iii.2': lambda: (QuadraticTriple(_poly("-x", F2), _poly("1-x^4", F2), _poly("-1+x^4", F2)), 1),
    'iv': lambda: (QuadraticTriple(_poly("-x^2+x^3", F3), Polynomial.zero(F3), _poly("1+x^3", F3)), None),
}

EXAMPLE_IDS = ('ex2.1', 'ex2.2', 'ex2.3', 'i.1', 'i.2', 'iii.1', 'iii.2', 'iv')


def example_series(example_id: str) -> SeriesHandle:
    """Ряд из разобранного примера по его id"""
    if example_id == 'ex2.1':
        return _example_2_1()
    if example_id == 'ex2.2':
        return SequenceSeries(QQ, distinct_partitions, 'distinct_partitions')
    if example_id == 'ex2.3':
        return _example_2_3()
    if example_id == 'iv':
        return _example_iv()
    if example_id in EXAMPLE_TRIPLES:
        triple, branch = EXAMPLE_TRIPLES[example_id]()
        f0 = branch if branch is not None else triple.spec.neg(triple.A.coefficient(0))
        return QuadraticRootSeries(triple.A, triple.B, triple.C, f0)
    raise UnknownSequenceError(f"Unknown example id: {example_id!r}")


# Реестр имён

NAMED = {
    'paperfolding': "G_{a,b} over F2, params a, b",
    'rudin_shapiro': "Rudin-Shapiro over F2 divided by x^shift, param shift in 0..3",
    'stern': "Stern a_{n+1} over Q",
    'twisted_stern': "twisted Stern b_{n+1} over Q",
    'distinct_partitions': "partitions into distinct parts over Q",
    'grafted_stern': "grafted Stern series G over F2 (root of its triple)",
    'example': "series of a worked example, param id",
}


def list_named() -> List[str]:
    names = [f"{name}: {description}" for name, description in NAMED.items()]
    names.extend(f"{example_id}: worked example" for example_id in EXAMPLE_IDS)
    return names


def _int_param(params: Dict[str, Any], key: str, default: Optional[int] = None) -> int:
    if key not in params:
        if default is None:
            raise InputError(f"Named sequence needs parameter '{key}'")
        return default
    try:
        return int(params[key])
    except (TypeError, ValueError) as e:
        raise InputError(f"Parameter '{key}' must be an integer, got {params[key]!r}") from e


def named_series(name: str, **params: Any) -> SeriesHandle:
    """Ряд по имени из реестра (параметры как в JSON-описании)"""
    if name == 'paperfolding':
        series, _ = paperfolding_series(_int_param(params, 'a'), _int_param(params, 'b'))
        return series
    if name == 'rudin_shapiro':
        return rudin_shapiro_series(_int_param(params, 'shift', 0))
    if name == 'stern':
        return stern_series()
    if name == 'twisted_stern':
        return stern_series(twisted=True)
    if name == 'distinct_partitions':
        return example_series('ex2.2')
    if name == 'grafted_stern':
        triple = grafted_triple()
        return QuadraticRootSeries(triple.A, triple.B, triple.C, 1)
    if name == 'example':
        return example_series(str(params.get('id', '')))
    if name in EXAMPLE_IDS:
        return example_series(name)
    raise UnknownSequenceError(f"Unknown named sequence: {name!r}")


def named_triple(name: str, **params: Any) -> Tuple[QuadraticTriple, Optional[int]]:
    """Квадратная тройка и ветвь для именованной последовательности"""
    if name == 'paperfolding':
        return paperfolding_triple(_int_param(params, 'a'), _int_param(params, 'b')), None
    if name == 'rudin_shapiro':
        shift = _int_param(params, 'shift', 1)
        triples = rudin_shapiro_triples()
        if shift not in triples:
            raise InputError(f"Rudin-Shapiro triples exist for shift 1..3, got {shift}")
        return triples[shift], None
    if name == 'grafted_stern':
        return grafted_triple(), None
    if name == 'example':
        name = str(params.get('id', ''))
    if name in EXAMPLE_TRIPLES:
        return EXAMPLE_TRIPLES[name]()
    raise UnknownSequenceError(f"No quadratic equation is known for {name!r}")
