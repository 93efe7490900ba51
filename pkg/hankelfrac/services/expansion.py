"""
Разложение ряда в супер delta-дробь и обратные операции

    F = v0*x^k0 / (1 + u1*x - v1*x^(k0+k1+delta) / (1 + u2*x - ...))

Неполное частное j хранит (v_j, k_j) и многочлен u знаменателя прямо под своим числителем.
Для delta = 2 по (v_j, k_j) восстанавливаются все ненулевые определители Ганкеля.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from hankelfrac.models.field import FieldElement, FieldSpec, Raw
from hankelfrac.models.hfraction import HFraction, PartialQuotient, Tail, TailKind
from hankelfrac.models.polynomial import Polynomial, series_div, series_inverse
from hankelfrac.services.oracle import hankel_det_from_coeffs
from hankelfrac.services.series import RationalSeries, SeriesHandle
from hankelfrac.utils.config import get_max_quotients, get_series_depth, get_tail_guard
from hankelfrac.utils.errors import (
    InputError, InsufficientDataError, InsufficientQuotientsError, InvariantViolation, NotDivisibleError
)

logger = logging.getLogger(__name__)


def _first_nonzero(values: Sequence[Raw]) -> Optional[int]:
    for i, c in enumerate(values):
        if c != 0:
            return i
    return None


def _sign(spec: FieldSpec, k: int) -> Raw:
    """(-1)^(k(k+1)/2)"""
    return spec.coerce(-1) if (k * (k + 1) // 2) % 2 else spec.coerce(1)


# Разложение


def expand_super_delta(f: SeriesHandle, delta: int = 2, max_quotients: Optional[int] = None,
                       depth: Optional[int] = None) -> HFraction:
    """
    Супер delta-дробь ряда f

    Рациональный источник раскладывается точно (хвост Terminated), прочие по префиксу
    длины depth с честным TruncatedAtDepth.

    Args:
        f: ряд
        delta: параметр дроби (>= 1)
        max_quotients: предел числа частных (по умолчанию из конфигурации)
        depth: длина префикса (по умолчанию из конфигурации)

    Returns:
        HFraction
    """
    if delta < 1:
        raise InputError(f"delta must be >= 1, got {delta}")
    if max_quotients is None:
        max_quotients = get_max_quotients()

    if isinstance(f, RationalSeries):
        fraction = _expand_rational(f, delta, max_quotients)
    else:
        if depth is None:
            depth = get_series_depth()
        if f.known_depth is not None:
            depth = min(depth, f.known_depth)
        fraction = expand_prefix(f.spec, f.prefix_raw(depth), delta, max_quotients)

    logger.debug(f"Expanded {f.kind} series over {f.spec}: {len(fraction.quotients)} quotients, {fraction.tail}")
    return fraction


def expand_prefix(spec: FieldSpec, coeffs: Sequence[Raw], delta: int = 2,
                  max_quotients: Optional[int] = None) -> HFraction:
    """Разложение по известному префиксу; глубина хвоста = сколько коэффициентов фиксируют частные"""
    if max_quotients is None:
        max_quotients = get_max_quotients()
    remainder = [spec.coerce(c) for c in coeffs]
    quotients: List[PartialQuotient] = []
    consumed = 0

    while True:
        k = _first_nonzero(remainder)
        if k is None:
            return HFraction(spec, delta, quotients, Tail.truncated(consumed + len(remainder)))
        if len(quotients) >= max_quotients or len(remainder) < 2 * k + delta:
            return HFraction(spec, delta, quotients, Tail.truncated(consumed + k))

        v = remainder[k]
        inv_v = spec.inv(v)
        normalized = [spec.mul(c, inv_v) for c in remainder[k:]]
        reciprocal = series_inverse(spec, normalized, len(normalized))
        u = Polynomial.from_raw(spec, reciprocal[1:k + delta])
        quotients.append(PartialQuotient(FieldElement(spec, v), k, u))

        remainder = [spec.neg(c) for c in reciprocal[k + delta:]]
        consumed += 2 * k + delta


def _expand_rational(f: RationalSeries, delta: int, max_quotients: int) -> HFraction:
    spec = f.spec
    numerator, denominator = f.numerator, f.denominator
    quotients: List[PartialQuotient] = []
    consumed = 0

    while not numerator.is_zero():
        k = int(numerator.valuation)
        if len(quotients) >= max_quotients:
            return HFraction(spec, delta, quotients, Tail.truncated(consumed + k))
        shifted = numerator.div_by_power(k)
        v = spec.div(shifted.coefficient(0), denominator.coefficient(0))
        scaled = denominator.scale(v)
        window = k + delta
        head = Polynomial.from_raw(spec, series_div(spec, scaled.padded(window), shifted.padded(window), window))
        u = Polynomial.from_raw(spec, head.padded(window)[1:])
        quotients.append(PartialQuotient(FieldElement(spec, v), k, u))
        try:
            numerator = (head * shifted - scaled).div_by_power(window)
        except NotDivisibleError as e:
            raise InvariantViolation(f"Rational expansion step lost exactness: {e}") from e
        denominator = shifted
        consumed += 2 * k + delta

    return HFraction(spec, delta, quotients, Tail.terminated())


# Вычисление ряда по дроби


def eval_hfrac_raw(h: HFraction, n: int) -> List[Raw]:
    """Первые n коэффициентов ряда, заданного дробью (снизу вверх)"""
    spec = h.spec
    if h.tail.kind == TailKind.TRUNCATED and n > h.tail.depth:
        raise InsufficientQuotientsError(
            f"Fraction determines {h.tail.depth} coefficients, {n} requested"
        )

    levels = []
    need, j = n, 0
    while need > 0:
        if not h.is_periodic and j >= len(h.quotients):
            break
        q = h.quotient(j)
        levels.append((q, need))
        need -= 2 * q.k + h.delta
        j += 1

    zero = spec.coerce(0)
    below: List[Raw] = []
    for q, need in reversed(levels):
        k = q.k
        if need <= k:
            below = [zero] * need
            continue
        size = need - k
        den = q.denominator.padded(size)
        shift = k + h.delta
        for i, c in enumerate(below):
            if i + shift >= size:
                break
            den[i + shift] = spec.sub(den[i + shift], c)
        inverse = series_inverse(spec, den, size)
        v = q.v.value
        below = [zero] * k + [spec.mul(v, c) for c in inverse]

    return below + [zero] * (n - len(below))


def eval_hfrac(h: HFraction, n: int) -> List[FieldElement]:
    return [FieldElement(h.spec, c) for c in eval_hfrac_raw(h, n)]


# Определители Ганкеля


def hankel_ladder(h: HFraction, n_max: int) -> List[tuple]:
    """Пары (s_j, H_{s_j}) для s_j <= n_max"""
    spec = h.spec
    points = [(0, spec.coerce(1))]
    s, product, value = 0, spec.coerce(1), spec.coerce(1)
    j = 0
    while True:
        if not h.is_periodic and j >= len(h.quotients):
            break
        q = h.quotient(j)
        product = spec.mul(product, q.v.value)
        value = spec.mul(value, spec.mul(_sign(spec, q.k), spec.power(product, q.k + 1)))
        s += q.k + 1
        if s > n_max:
            break
        points.append((s, value))
        j += 1
    return points


def determined_hankel_index(h: HFraction) -> Optional[int]:
    """
    Последний индекс n, для которого H_n зафиксирован оборванной дробью

    После последнего частного известны ещё нули остатка: depth - sum(2k_j + 2)
    ведущих коэффициентов, значит следующее k не меньше, и столько же H_n
    за последней точкой лестницы равны нулю. None для необорванных дробей.
    """
    if h.tail.kind != TailKind.TRUNCATED:
        return None
    s = sum(q.k + 1 for q in h.quotients)
    consumed = sum(2 * q.k + h.delta for q in h.quotients)
    return s + max(0, (h.tail.depth or 0) - consumed)


def hankel_from_hfrac(h: HFraction, n_max: int, guard: Optional[int] = None) -> List[FieldElement]:
    """
    H_0..H_{n_max} по H-дроби: значения на лестнице s_j, нули вне её

    Для завершённой дроби нули после последнего s_j дополнительно сверяются
    с прямым вычислением на guard индексах.
    """
    spec = h.spec
    if h.delta != 2:
        raise InputError(f"Hankel determinant formula needs delta = 2, got {h.delta}")
    points = hankel_ladder(h, n_max)
    last = points[-1][0]

    known = determined_hankel_index(h)
    if known is not None and n_max > known:
        raise InsufficientQuotientsError(
            f"Truncated fraction fixes Hankel determinants up to index {known}, {n_max} requested"
        )

    values = [spec.coerce(0)] * (n_max + 1)
    for s, value in points:
        values[s] = value

    if h.tail.kind == TailKind.TERMINATED and n_max > last:
        _check_rational_tail(h, last, min(n_max, last + (get_tail_guard() if guard is None else guard)))

    return [FieldElement(spec, v) for v in values]


def _check_rational_tail(h: HFraction, last: int, top: int) -> None:
    if top <= last:
        return
    coeffs = eval_hfrac_raw(h, 2 * top - 1)
    for n in range(last + 1, top + 1):
        value = hankel_det_from_coeffs(h.spec, coeffs, n)
        if value != 0:
            raise InvariantViolation(
                f"Rational tail check failed: H_{n} = {h.spec.format_raw(value)} after the last ladder index {last}"
            )
    logger.debug(f"Rational tail verified on indices {last + 1}..{top}")


# Лемма о снятии уровня


@dataclass
class PeelRelationCheck:
    """Обе стороны H_n(F) = (-1)^(k(k+1)/2) H_{n-k-1}(G) по n"""

    k: int
    rows: List[tuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(lhs == rhs for _, lhs, rhs in self.rows)


def lemma22_reduce(spec: FieldSpec, g_prefix: Sequence[Raw], k: int, u: Polynomial, n_max: int,
                   f_prefix: Optional[Sequence[Raw]] = None) -> PeelRelationCheck:
    """
    Проверка соотношения для F = x^k / (1 + u*x - x^(k+2)*G)

    Args:
        spec: поле
        g_prefix: префикс G
        k: показатель головы
        u: многочлен степени не выше k
        n_max: наибольший порядок в проверке
        f_prefix: префикс F, если он уже есть (иначе строится по G)
    """
    if k < 0:
        raise InputError(f"k must be non-negative, got {k}")
    if u.spec != spec:
        raise InputError("u must live over the same field as the series")
    if u.degree > k:
        raise InputError(f"deg u = {u.degree} exceeds k = {k}")

    need_f = max(2 * n_max - 1, 0)
    need_g = max(2 * (n_max - k - 1) - 1, 0)
    g = [spec.coerce(c) for c in g_prefix]
    if f_prefix is None:
        window = need_f - k
        if len(g) < max(window - k - 2, 0):
            raise InsufficientDataError(f"G prefix too short: {window - k - 2} coefficients needed")
        den = (Polynomial.one(spec) + u.mul_x_power(1)).padded(max(window, 0))
        for i, c in enumerate(g):
            if i + k + 2 >= window:
                break
            den[i + k + 2] = spec.sub(den[i + k + 2], c)
        f = [spec.coerce(0)] * k + series_inverse(spec, den, max(window, 0))
    else:
        f = [spec.coerce(c) for c in f_prefix]
    if len(f) < need_f or len(g) < need_g:
        raise InsufficientDataError("Prefixes are too short for the requested order")

    sign = _sign(spec, k)
    check = PeelRelationCheck(k)
    for n in range(k + 1, n_max + 1):
        lhs = hankel_det_from_coeffs(spec, f, n)
        rhs = spec.mul(sign, hankel_det_from_coeffs(spec, g, n - k - 1))
        check.rows.append((n, FieldElement(spec, lhs), FieldElement(spec, rhs)))
    return check


# J-дробь (процедура Стилтьеса)


@dataclass
class JFracResult:
    """
    Коэффициенты J-дроби v0/(1 + u1*x - v1*x^2/(1 + u2*x - ...))

    failure_index = n означает L(p_n^2) = 0, то есть H_{n+1}(f) = 0, при несовпадении
    конечной дроби с префиксом.
    """

    spec: FieldSpec
    u: List[FieldElement] = field(default_factory=list)
    v: List[FieldElement] = field(default_factory=list)
    terminated: bool = False
    failure_index: Optional[int] = None
    depth: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_index is None

    def to_hfraction(self) -> HFraction:
        quotients = [
            PartialQuotient(self.v[j], 0, Polynomial.from_raw(self.spec, [self.u[j].value]))
            for j in range(min(len(self.v), len(self.u)))
        ]
        tail = Tail.terminated() if self.terminated else Tail.truncated(2 * len(quotients))
        return HFraction(self.spec, 2, quotients, tail)


def _functional(moments: Sequence[Raw], poly: Sequence[Raw], spec: FieldSpec) -> Raw:
    total = spec.coerce(0)
    for i, c in enumerate(poly):
        if c != 0:
            total = spec.add(total, spec.mul(c, moments[i]))
    return total


def _poly_mul(spec: FieldSpec, a: Sequence[Raw], b: Sequence[Raw]) -> List[Raw]:
    if not a or not b:
        return []
    out = [spec.coerce(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != 0:
            for j, y in enumerate(b):
                out[i + j] = spec.add(out[i + j], spec.mul(x, y))
    return out


def jfrac_expand(f: SeriesHandle, max_depth: int) -> JFracResult:
    """
    J-дробь ряда через трёхчленную рекуррентность p_{n+1} = (t - b_n) p_n - lambda_n p_{n-1}

    Моменты функционала L(t^i) = f_i. Нулевое lambda_n завершает процедуру:
    это конец дроби, если конечная J-дробь воспроизводит префикс, иначе провал на индексе n.
    """
    spec = f.spec
    size = 2 * max_depth + 1
    if f.known_depth is not None:
        size = min(size, f.known_depth)
    moments = f.prefix_raw(size)
    result = JFracResult(spec)
    zero, one = spec.coerce(0), spec.coerce(1)

    previous: List[Raw] = []
    current: List[Raw] = [one]
    previous_norm: Optional[Raw] = None

    for n in range(max_depth):
        square = _poly_mul(spec, current, current)
        if len(square) + 1 > len(moments):
            break
        norm = _functional(moments, square, spec)
        if norm == 0:
            _finish_jfrac(result, moments, n)
            return result
        b = spec.div(_functional(moments, [zero] + square, spec), norm)
        if n == 0:
            result.v.append(FieldElement(spec, norm))
        else:
            result.v.append(FieldElement(spec, spec.div(norm, previous_norm)))
        result.u.append(FieldElement(spec, spec.neg(b)))

        lam = spec.div(norm, previous_norm) if n > 0 else zero
        shifted = [zero] + current
        following = [spec.sub(shifted[i], spec.mul(b, current[i]) if i < len(current) else zero)
                     for i in range(len(shifted))]
        for i, c in enumerate(previous):
            following[i] = spec.sub(following[i], spec.mul(lam, c))
        previous, current, previous_norm = current, following, norm

    result.depth = 2 * len(result.u)
    return result


def _finish_jfrac(result: JFracResult, moments: Sequence[Raw], n: int) -> None:
    spec = result.spec
    result.depth = 2 * len(result.u)
    if n == 0:
        if all(c == 0 for c in moments):
            result.terminated = True
        else:
            result.failure_index = 0
        return
    finite = HFraction(spec, 2, result.to_hfraction().quotients, Tail.terminated())
    if eval_hfrac_raw(finite, len(moments)) == list(moments):
        result.terminated = True
    else:
        result.failure_index = n
