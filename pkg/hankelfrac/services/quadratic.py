"""
H-дроби рядов, удовлетворяющих квадратному уравнению A + B*F + C*F^2 = 0 над F_p

Один шаг снимает головной уровень F = c*x^k / (D - x^(k+delta)*G) и выписывает уравнение на G.
Итерация шагов с запоминанием троек даёт периодическую дробь: повтор тройки и есть сертификат.
"""

import logging
from typing import Any, List, Optional, Sequence, Tuple

from hankelfrac.models.field import FieldElement, FieldSpec, Raw
from hankelfrac.models.hfraction import HFraction, PartialQuotient, Tail, TailKind
from hankelfrac.models.polynomial import Polynomial, series_inverse
from hankelfrac.models.triple import (
    NextStepResult, PeelStep, PeriodicHFracResult, QuadraticCase, QuadraticTriple
)
from hankelfrac.services.expansion import expand_super_delta
from hankelfrac.services.series import (
    QuadraticRootSeries, RationalSeries, ShiftDivSeries, SqrtSeries
)
from hankelfrac.utils.errors import (
    InputError, InvalidBranchError, InvariantViolation, NoSquareRootError, NotDivisibleError,
    PreconditionError, UnsupportedCaseError
)

logger = logging.getLogger(__name__)


def _peel(A: Polynomial, B: Polynomial, C: Polynomial, delta: int, c: Raw, k: int,
          scaled_prefix: Sequence[Raw]) -> Tuple[QuadraticTriple, Polynomial]:
    """
    Подстановка F = c*x^k / (D - x^(k+delta)*G) в A + B*F + C*F^2 = 0

    scaled_prefix - первые k+delta коэффициентов F/x^k. Уравнение на G нормируется так,
    чтобы свободный член коэффициента при G был равен 1.
    """
    spec = A.spec
    window = k + delta
    c_inv = spec.inv(c)
    normalized = [spec.mul(x, c_inv) for x in scaled_prefix[:window]]
    if len(normalized) < window:
        raise InvariantViolation(f"Peel needs {window} coefficients of F/x^{k}, got {len(normalized)}")
    D = Polynomial.from_raw(spec, series_inverse(spec, normalized, window))

    head = Polynomial.monomial(spec, c, k)
    linear = (A * D).scale(2) + B * head
    if linear.is_zero():
        raise InvariantViolation("Peeled equation lost its linear term")
    e = int(linear.valuation)
    lam_inv = spec.inv(linear.coefficient(e))
    constant = A * D * D + B * head * D + C * head * head

    try:
        A_next = (-constant).div_by_power(e + window).scale(lam_inv)
        B_next = linear.div_by_power(e).scale(lam_inv)
        C_next = (-A).mul_x_power(window).div_by_power(e).scale(lam_inv)
    except NotDivisibleError as e_div:
        raise InvariantViolation(f"Non-exact division while transforming the triple: {e_div}") from e_div

    return QuadraticTriple(A_next, B_next, C_next, delta), D


def _quotient(spec: FieldSpec, c: Raw, k: int, D: Polynomial) -> PartialQuotient:
    u = (D - Polynomial.one(spec)).div_by_power(1)
    return PartialQuotient(FieldElement(spec, c), k, u)


def next_abc(t: QuadraticTriple) -> NextStepResult:
    """
    Один шаг преобразования тройки (B(0)=1, C(0)=0, C != 0, A != 0)

    Returns:
        NextStepResult: новая тройка, k = val A, A_k, D с D(0)=1 и deg D <= k+delta-1
    """
    t.check_canonical()
    if t.A.is_zero():
        raise PreconditionError("Iteration step needs A != 0")
    spec = t.spec
    k = int(t.A.valuation)
    a_k = t.A.coefficient(k)
    root = QuadraticRootSeries(t.A, t.B, t.C, spec.neg(t.A.coefficient(0)))
    scaled = root.prefix_raw(2 * k + t.delta)[k:]

    following, D = _peel(t.A, t.B, t.C, t.delta, spec.neg(a_k), k, scaled)

    if following.B.coefficient(0) != 1 or following.C.coefficient(0) != 0 or following.C.is_zero():
        raise InvariantViolation(f"Transformed triple {following} left the canonical form")
    if following.measure() > t.measure():
        raise InvariantViolation(
            f"Degree measure grew from {t.measure()} to {following.measure()} on {t}"
        )
    return NextStepResult(following, k, FieldElement(spec, a_k), D)


def _iteration_cap(t: QuadraticTriple) -> int:
    return t.spec.p ** (3 * (t.measure() + 3)) + 1


def hfrac_quadratic(t: QuadraticTriple) -> PeriodicHFracResult:
    """
    Итерация next_abc с запоминанием троек

    Останавливается на A = 0 (хвост Terminated) или на повторе тройки с индексом i < j
    (хвост Periodic(m=i, t=j-i)). В trace последним лежит повторившаяся тройка.
    """
    t.check_canonical()
    spec = t.spec
    if not spec.is_prime_field:
        raise PreconditionError("Periodicity search needs a prime field")

    cap = _iteration_cap(t)
    seen = {}
    trace: List[QuadraticTriple] = []
    quotients: List[PartialQuotient] = []
    current = t

    while True:
        if current.A.is_zero():
            trace.append(current)
            fraction = HFraction(spec, t.delta, quotients, Tail.terminated())
            logger.debug(f"Iteration reached A=0 after {len(quotients)} quotients",
                         extra={'field': spec.name, 'quotients': len(quotients)})
            return PeriodicHFracResult(fraction, trace)

        key = current.key()
        if key in seen:
            m = seen[key]
            period = len(trace) - m
            trace.append(current)
            fraction = HFraction(spec, t.delta, quotients, Tail.periodic(m, period))
            logger.debug(f"Triple repeated: m={m}, t={period}",
                         extra={'field': spec.name, 'quotients': len(quotients), 'period': period})
            return PeriodicHFracResult(fraction, trace, m, period)

        seen[key] = len(trace)
        trace.append(current)
        if len(trace) > cap:
            raise InvariantViolation(f"No triple repetition within {cap} steps")

        step = next_abc(current)
        quotients.append(step.quotient)
        current = step.next


def _normalize(A: Polynomial, B: Polynomial, C: Polynomial, factor: Raw) -> Tuple[Polynomial, ...]:
    return A.scale(factor), B.scale(factor), C.scale(factor)


def _with_head(result: PeriodicHFracResult,
               peel: Optional[PeelStep], origin: QuadraticTriple, case: QuadraticCase) -> PeriodicHFracResult:
    """Присоединение снятого уровня к результату итерации на преобразованной тройке"""
    core = result.fraction
    quotients = [peel.quotient] + core.quotients
    if core.tail.kind == TailKind.PERIODIC:
        tail = Tail.periodic(core.tail.m + 1, core.tail.t)
        m, t = core.tail.m + 1, core.tail.t
    else:
        tail, m, t = Tail.terminated(), None, None
    fraction = HFraction(core.spec, core.delta, quotients, tail)
    return PeriodicHFracResult(fraction, [origin] + result.triple_trace, m, t, case, [peel])


def _terminated(spec: FieldSpec, delta: int, quotients: List[PartialQuotient], origin: QuadraticTriple,
                case: QuadraticCase) -> PeriodicHFracResult:
    return PeriodicHFracResult(HFraction(spec, delta, quotients, Tail.terminated()), [origin], case=case)


def dispatch_theorem11(A: Polynomial, B: Polynomial, C: Polynomial, delta: int = 2,
                       branch: Any = None) -> PeriodicHFracResult:
    """
    Разбор уравнения A + B*F + C*F^2 = 0 по случаям и построение периодической дроби

    Args:
        A, B, C: многочлены над F_p
        delta: параметр дроби (2 - H-дробь, 1 - супер 1-дробь)
        branch: F(0) в случае C(0) != 0 (0 или -1/C(0), по умолчанию 0);
                старший коэффициент a_k в случае B = 0 (по умолчанию канонический корень)

    Returns:
        PeriodicHFracResult с номером случая и снятыми уровнями
    """
    spec = A.spec
    if not (A.spec == B.spec == C.spec):
        raise InputError("A, B, C must live over one field")
    if not spec.is_prime_field:
        raise UnsupportedCaseError("Quadratic periodicity is available over prime fields only")
    if delta not in (1, 2):
        raise InputError(f"Quadratic periodicity needs delta 1 or 2, got {delta}")

    if not B.is_zero():
        b0 = B.coefficient(0)
        if b0 == 0:
            raise UnsupportedCaseError("B(0)=0 with B != 0 is not covered by any case")
        A, B, C = _normalize(A, B, C, spec.inv(b0))
        origin = QuadraticTriple(A, B, C, delta)

        if C.is_zero():
            logger.info("➗ Linear equation: F = -A/B is rational")
            fraction = expand_super_delta(RationalSeries(-A, B), delta)
            return PeriodicHFracResult(fraction, [origin], case=QuadraticCase.LINEAR)

        if C.coefficient(0) == 0:
            result = hfrac_quadratic(origin)
            result.case = QuadraticCase.CANONICAL
            return result

        return _dispatch_unit_c(origin, branch)

    if C.is_zero():
        raise UnsupportedCaseError("Both B and C vanish: the equation does not define F")
    c0 = C.coefficient(0)
    if c0 == 0:
        raise UnsupportedCaseError("B = 0 needs C(0) != 0")
    A, B, C = _normalize(A, B, C, spec.inv(c0))
    return _dispatch_pure_square(QuadraticTriple(A, B, C, delta), branch)


def _dispatch_unit_c(origin: QuadraticTriple, branch: Any) -> PeriodicHFracResult:
    """B(0) = 1, C(0) != 0, A(0) = 0: две ветви F(0) = 0 и F(0) = -1/C(0)"""
    A, B, C, delta = origin.A, origin.B, origin.C, origin.delta
    spec = origin.spec
    case = QuadraticCase.UNIT_C
    if A.coefficient(0) != 0:
        raise UnsupportedCaseError("C(0) != 0 needs A(0) = 0")

    c0 = C.coefficient(0)
    other = spec.neg(spec.inv(c0))
    f0 = spec.coerce(0) if branch is None else spec.coerce(branch)
    if f0 not in (spec.coerce(0), other):
        raise InvalidBranchError(
            f"Branch F(0)={spec.format_raw(f0)} is neither 0 nor -1/C(0)={spec.format_raw(other)}"
        )

    if A.is_zero():
        if f0 == 0:
            return _terminated(spec, delta, [], origin, case)
        fraction = expand_super_delta(RationalSeries(-B, C), delta)
        return PeriodicHFracResult(fraction, [origin], case=case)

    if f0 == 0:
        k = int(A.valuation)
        c = spec.neg(A.coefficient(k))
        description = f"F(0)=0 branch: head -A_k*x^{k}"
    else:
        k = 0
        c = other
        description = "F(0)=-1/C(0) branch: head -1/C(0)"

    root = QuadraticRootSeries(A, B, C, f0)
    scaled = root.prefix_raw(2 * k + delta)[k:]
    transformed, D = _peel(A, B, C, delta, c, k, scaled)
    peel = PeelStep(description, _quotient(spec, c, k, D), transformed)
    logger.info(f"🔪 Peeled head {peel.quotient.to_dict()} -> {transformed}")

    result = hfrac_quadratic(transformed)
    return _with_head(result, peel, origin, case)


def _dispatch_pure_square(origin: QuadraticTriple, branch: Any) -> PeriodicHFracResult:
    """B = 0, C(0) = 1: F = x^k * sqrt((-A/C) / x^(2k))"""
    A, C, delta = origin.A, origin.C, origin.delta
    spec = origin.spec
    case = QuadraticCase.PURE_SQUARE
    if spec.p == 2:
        raise UnsupportedCaseError("B = 0 is not supported in characteristic 2")
    if A.is_zero():
        return _terminated(spec, delta, [], origin, case)

    valuation = int(A.valuation)
    if valuation % 2:
        raise UnsupportedCaseError(f"B = 0 needs A of even valuation, got {valuation}")
    k = valuation // 2
    square = spec.neg(A.coefficient(valuation))
    try:
        a_k = spec.sqrt(square) if branch is None else spec.coerce(branch)
    except NoSquareRootError as e:
        raise UnsupportedCaseError(f"-A_{valuation} = {spec.format_raw(square)} is not a square in {spec}") from e
    if a_k == 0 or spec.mul(a_k, a_k) != square:
        raise InvalidBranchError(f"a_k={spec.format_raw(a_k)} does not square to {spec.format_raw(square)}")

    inner = ShiftDivSeries(RationalSeries(-A, C), 2 * k)
    scaled = SqrtSeries(inner, root=a_k).prefix_raw(k + delta)
    transformed, D = _peel(A, origin.B, C, delta, a_k, k, scaled)
    peel = PeelStep(f"pure square: head a_k*x^{k}", _quotient(spec, a_k, k, D), transformed)
    logger.info(f"🔪 Peeled head {peel.quotient.to_dict()} -> {transformed}")

    result = hfrac_quadratic(transformed)
    return _with_head(result, peel, origin, case)


def super1_quadratic(t: QuadraticTriple, branch: Any = None) -> PeriodicHFracResult:
    """Тот же конвейер с delta = 1 (супер 1-дробь)"""
    return dispatch_theorem11(t.A, t.B, t.C, delta=1, branch=branch)
