"""
Периодичность последовательности определителей Ганкеля

Для периодической H-дроби над F_p последовательность H(F) периодична начиная с s_m,
а её период делит оценку bound. Поэтому префикса длины s_m + 2*bound + 1 хватает,
чтобы найти минимальные предпериод и период.
"""

import logging
from math import lcm
from typing import Optional, Sequence, Tuple

from hankelfrac.models.field import FieldElement, multiplicative_order
from hankelfrac.models.hfraction import HFraction, TailKind
from hankelfrac.models.sequences import EventuallyPeriodicSeq
from hankelfrac.models.triple import PeriodBound
from hankelfrac.services.expansion import hankel_from_hfrac
from hankelfrac.utils.config import get_tail_guard
from hankelfrac.utils.errors import InvariantViolation, PeriodSearchError, PreconditionError

logger = logging.getLogger(__name__)


def detect_eventual_period(prefix: Sequence, max_pre: int, max_per: int,
                           divisor_of: Optional[int] = None) -> Optional[Tuple[int, int]]:
    """
    Лексикографически минимальная пара (предпериод, период), согласованная со всем префиксом

    Args:
        prefix: значения (FieldElement или сырые)
        max_pre: наибольший допустимый предпериод
        max_per: наибольший допустимый период
        divisor_of: если задано, рассматриваются только периоды, делящие это число

    Returns:
        (pre, per) или None
    """
    if max_pre < 0 or max_per < 1:
        raise PeriodSearchError(f"Bad search limits: max_pre={max_pre}, max_per={max_per}")
    n = len(prefix)
    if n < max_pre + 2 * max_per:
        raise PeriodSearchError(
            f"Prefix of length {n} is too short for max_pre={max_pre}, max_per={max_per}"
        )

    periods = [per for per in range(1, max_per + 1) if divisor_of is None or divisor_of % per == 0]
    for pre in range(max_pre + 1):
        for per in periods:
            if all(prefix[i] == prefix[i + per] for i in range(pre, n - per)):
                return pre, per
    return None


def period_bound_lemma34(h: HFraction) -> PeriodBound:
    """
    Оценка периода H(F) по данным периодической H-дроби над F_p

    r = s_{m+t} - s_m, beta - произведение v_i по периоду, gamma собирается из знаков,
    степеней v_i и предпериодных v_i. pi = lcm(ord beta, ord gamma^2), bound = 2*pi*r
    (для p = 2 достаточно r).
    """
    spec = h.spec
    if not h.is_periodic:
        raise PreconditionError(f"Period bound needs a periodic fraction, got tail {h.tail}")
    if not spec.is_prime_field:
        raise PreconditionError("Period bound is defined over prime fields only")
    if h.delta != 2:
        raise PreconditionError(f"Period bound needs delta = 2, got {h.delta}")

    m, t = h.tail.m, h.tail.t
    s = h.ladder(m + t)
    r = s[m + t] - s[m]
    one = spec.one
    minus_one = spec.element(-1)

    beta, gamma1, gamma2, gamma3 = one, one, one, one
    for i in range(m, m + t):
        q = h.quotient(i)
        beta = beta * q.v
        if (q.k * (q.k + 1) // 2) % 2:
            gamma1 = gamma1 * minus_one
        gamma2 = gamma2 * (q.v ** (s[m] - s[i]))
    for i in range(m):
        gamma3 = gamma3 * h.quotient(i).v

    gamma = gamma1 * (gamma3 ** r) * gamma2 * (beta ** (r - s[m]))
    pi = lcm(multiplicative_order(beta), multiplicative_order(gamma * gamma))
    bound = r if spec.p == 2 else 2 * pi * r

    result = PeriodBound(r, beta, gamma1, gamma2, gamma3, gamma, pi, bound)
    logger.debug(f"Period bound: r={r}, beta={beta}, gamma={gamma}, pi={pi}, bound={bound}",
                 extra={'field': spec.name, 'period': bound})
    return result


def certified_hankel_period(h: HFraction) -> EventuallyPeriodicSeq:
    """
    Сертифицированная последовательность H(F) в виде (предпериод, (период)*)

    Завершённая дробь: значения до последнего s_j, дальше нули.
    Периодическая: префикс до s_m + 2*bound и поиск периода среди делителей bound.
    """
    spec = h.spec
    if h.delta != 2:
        raise PreconditionError(f"Hankel sequence from a fraction needs delta = 2, got {h.delta}")

    if h.tail.kind == TailKind.TERMINATED:
        last = _ladder_end(h)
        values = hankel_from_hfrac(h, last + get_tail_guard())
        preperiod = [v.value for v in values[:last + 1]]
        return EventuallyPeriodicSeq(spec, preperiod, [spec.coerce(0)], certified=True, minimal=True)

    if h.tail.kind != TailKind.PERIODIC:
        raise PreconditionError("A truncated fraction does not determine the whole Hankel sequence")

    bound = period_bound_lemma34(h).bound
    start = h.ladder(h.tail.m)[-1]
    values = hankel_from_hfrac(h, start + 2 * bound)
    found = detect_eventual_period(values, max_pre=start, max_per=bound, divisor_of=bound)
    if found is None:
        raise InvariantViolation(
            f"No Hankel period dividing {bound} from index {start}: the period bound is violated"
        )
    pre, per = found
    raw = [v.value for v in values]
    logger.info(f"🔁 Hankel sequence period {per} (preperiod {pre}, bound {bound})",
                extra={'field': spec.name, 'period': per})
    return EventuallyPeriodicSeq(spec, raw[:pre], raw[pre:pre + per], certified=True, minimal=True)


def _ladder_end(h: HFraction) -> int:
    return sum(q.k + 1 for q in h.quotients)


def hankel_prefix(h: HFraction, n_max: int) -> Sequence[FieldElement]:
    """H_0..H_{n_max} из сертифицированной формы (для любой длины)"""
    seq = certified_hankel_period(h)
    return [FieldElement(h.spec, v) for v in seq.prefix(n_max + 1)]
