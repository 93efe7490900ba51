"""
Формальные степенные ряды с контрактом «префикс по запросу»

Каждый SeriesHandle мемоизирует вычисленный префикс; prefix(n) всегда является
префиксом prefix(m) при n <= m. Кэш защищён блокировкой, поэтому один объект
можно читать из нескольких потоков.
"""

import logging
import threading
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from hankelfrac.models.field import FieldElement, FieldSpec, Raw
from hankelfrac.models.polynomial import Polynomial, series_mul
from hankelfrac.utils.errors import (
    FieldMismatchError, InputError, InsufficientDataError, InvalidBranchError,
    NoSquareRootError, NonReducibleError, UnsolvableBranchError
)
from hankelfrac.utils.poly_parser import parse_poly

logger = logging.getLogger(__name__)


class SeriesHandle(ABC):
    """Базовый класс источника ряда"""

    kind = 'abstract'

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._cache: List[Raw] = []
        self._lock = threading.RLock()

    @property
    def known_depth(self) -> Optional[int]:
        """Сколько коэффициентов источник способен выдать (None - сколько угодно)"""
        return None

    def prefix_raw(self, n: int) -> List[Raw]:
        """Первые n коэффициентов в сыром представлении поля"""
        if n < 0:
            raise InputError(f"Prefix length must be non-negative, got {n}")
        depth = self.known_depth
        if depth is not None and n > depth:
            raise InsufficientDataError(
                f"{self.kind} series knows {depth} coefficients, {n} requested"
            )
        with self._lock:
            if n > len(self._cache):
                self._extend(n)
            return self._cache[:n]

    def prefix(self, n: int) -> List[FieldElement]:
        return [FieldElement(self.spec, c) for c in self.prefix_raw(n)]

    def coefficient(self, i: int) -> Raw:
        return self.prefix_raw(i + 1)[i]

    @abstractmethod
    def _extend(self, n: int) -> None:
        """Дописать self._cache как минимум до длины n"""

    def __repr__(self) -> str:
        return f"<{type(self).__name__} over {self.spec} cached={len(self._cache)}>"


class ExplicitSeries(SeriesHandle):
    """Явно заданный префикс, точный до N коэффициентов"""

    kind = 'explicit'

    def __init__(self, spec: FieldSpec, coeffs: Sequence[Any], exact_up_to: Optional[int] = None):
        super().__init__(spec)
        values = [spec.coerce(c) for c in coeffs]
        self.exact_up_to = len(values) if exact_up_to is None else exact_up_to
        if self.exact_up_to < len(values):
            values = values[:self.exact_up_to]
        self._values = values

    @property
    def known_depth(self) -> Optional[int]:
        return self.exact_up_to

    def _extend(self, n: int) -> None:
        zero = self.spec.coerce(0)
        self._cache = [self._values[i] if i < len(self._values) else zero for i in range(n)]


class RationalSeries(SeriesHandle):
    """P(x)/Q(x) при Q(0) != 0"""

    kind = 'rational'

    def __init__(self, numerator: Polynomial, denominator: Polynomial):
        if numerator.spec != denominator.spec:
            raise FieldMismatchError("Numerator and denominator over different fields")
        if denominator.coefficient(0) == 0:
            raise InputError(f"Denominator {denominator} must have a nonzero constant term")
        super().__init__(numerator.spec)
        self.numerator = numerator
        self.denominator = denominator
        self._den_inv = self.spec.inv(denominator.coefficient(0))

    def _extend(self, n: int) -> None:
        spec = self.spec
        q = self.denominator.raw
        f = self._cache
        for m in range(len(f), n):
            acc = self.numerator.coefficient(m)
            for i in range(1, min(m, len(q) - 1) + 1):
                if q[i] != 0:
                    acc = spec.sub(acc, spec.mul(q[i], f[m - i]))
            f.append(spec.mul(acc, self._den_inv))


class QuadraticRootSeries(SeriesHandle):
    """Корень A + B*F + C*F^2 = 0 с F(0) = f0, методом неопределённых коэффициентов"""

    kind = 'quadratic'

    def __init__(self, A: Polynomial, B: Polynomial, C: Polynomial, f0: Any):
        if not (A.spec == B.spec == C.spec):
            raise FieldMismatchError("A, B, C must live over one field")
        super().__init__(A.spec)
        spec = self.spec
        self.A, self.B, self.C = A, B, C
        root = spec.coerce(f0)
        a0, b0, c0 = A.coefficient(0), B.coefficient(0), C.coefficient(0)
        constant = spec.add(a0, spec.add(spec.mul(b0, root), spec.mul(c0, spec.mul(root, root))))
        if constant != 0:
            raise InvalidBranchError(
                f"f0={spec.format_raw(root)} does not satisfy the constant equation over {spec}"
            )
        lead = spec.add(b0, spec.mul(spec.coerce(2), spec.mul(c0, root)))
        if lead == 0:
            raise UnsolvableBranchError(
                f"Linear coefficient B0+2*C0*f0 vanishes for f0={spec.format_raw(root)}"
            )
        self.f0 = root
        self._lead_inv = spec.inv(lead)
        self._cache = [root]
        self._squares = [spec.mul(root, root)]

    def _extend(self, n: int) -> None:
        spec = self.spec
        add, mul = spec.add, spec.mul
        f, sq = self._cache, self._squares
        b, c = self.B.raw, self.C.raw
        c0 = self.C.coefficient(0)
        while len(f) < n:
            m = len(f)
            acc = self.A.coefficient(m)
            for i in range(1, min(m, len(b) - 1) + 1):
                if b[i] != 0:
                    acc = add(acc, mul(b[i], f[m - i]))
            for i in range(1, min(m, len(c) - 1) + 1):
                if c[i] != 0:
                    acc = add(acc, mul(c[i], sq[m - i]))
            if c0 != 0:
                cross = spec.coerce(0)
                for j in range(1, m):
                    cross = add(cross, mul(f[j], f[m - j]))
                acc = add(acc, mul(c0, cross))
            f.append(spec.neg(mul(acc, self._lead_inv)))
            total = spec.coerce(0)
            for j in range(m + 1):
                total = add(total, mul(f[j], f[m - j]))
            sq.append(total)


class SqrtSeries(SeriesHandle):
    """Квадратный корень ряда: Фробениус в характеристике 2, иначе почленная рекурсия"""

    kind = 'sqrt'

    def __init__(self, inner: SeriesHandle, root: Any = None):
        super().__init__(inner.spec)
        self.inner = inner
        self.frobenius = inner.spec.characteristic == 2
        if not self.frobenius:
            spec = self.spec
            s0 = inner.coefficient(0)
            if s0 == 0:
                raise NoSquareRootError("Square root needs a nonzero constant term; shift by x^2k first")
            r = spec.sqrt(s0) if root is None else spec.coerce(root)
            if spec.mul(r, r) != s0:
                raise NoSquareRootError(f"{spec.format_raw(r)} is not a square root of the constant term")
            self._cache = [r]
            self._half_inv = spec.inv(spec.mul(spec.coerce(2), r))

    @property
    def known_depth(self) -> Optional[int]:
        depth = self.inner.known_depth
        if depth is None:
            return None
        return (depth + 1) // 2 if self.frobenius else depth

    def _extend(self, n: int) -> None:
        spec = self.spec
        if self.frobenius:
            data = self.inner.prefix_raw(2 * n - 1)
            for i in range(1, len(data), 2):
                if data[i] != 0:
                    raise NoSquareRootError(
                        f"Series has odd exponent x^{i} in characteristic 2: no square root"
                    )
            self._cache = [data[2 * i] for i in range(n)]
            return
        s = self.inner.prefix_raw(n)
        g = self._cache
        for m in range(len(g), n):
            acc = s[m]
            for j in range(1, m):
                acc = spec.sub(acc, spec.mul(g[j], g[m - j]))
            g.append(spec.mul(acc, self._half_inv))


class BinomialPowerSeries(SeriesHandle):
    """base^r: вычисление над Q по рекуррентности Миллера и редукция в целевое поле"""

    kind = 'binomial'

    def __init__(self, r: Any, base: SeriesHandle, target: FieldSpec):
        super().__init__(target)
        self.r = Fraction(r)
        self.base = base
        if target.is_prime_field and self.r.denominator % target.p == 0:
            raise NonReducibleError(
                f"Exponent {self.r} has denominator divisible by {target.p} (p-adic pole)"
            )
        if _lift(base.spec, base.coefficient(0)) != 1:
            raise InputError("binomial_power needs a base with constant term 1")
        self._rational: List[Fraction] = [Fraction(1)]

    @property
    def known_depth(self) -> Optional[int]:
        return self.base.known_depth

    def _extend(self, n: int) -> None:
        b = [_lift(self.base.spec, c) for c in self.base.prefix_raw(n)]
        support = [k for k in range(1, n) if b[k] != 0]
        g, r1 = self._rational, self.r + 1
        for m in range(len(g), n):
            acc = Fraction(0)
            for k in support:
                if k > m:
                    break
                acc += (r1 * k - m) * b[k] * g[m - k]
            g.append(acc / m)
        try:
            self._cache = [self.spec.coerce(c) for c in g[:n]]
        except NonReducibleError as e:
            raise NonReducibleError(f"binomial_power hit a p-adic pole: {e}") from e


class SequenceSeries(SeriesHandle):
    """Ряд из генератора последовательности producer(n) -> первые n значений"""

    kind = 'sequence'

    def __init__(self, spec: FieldSpec, producer: Callable[[int], Sequence[Any]], name: str = ''):
        super().__init__(spec)
        self.producer = producer
        self.name = name

    def _extend(self, n: int) -> None:
        size = max(n, 2 * len(self._cache), 16)
        values = self.producer(size)
        self._cache = [self.spec.coerce(v) for v in values[:size]]


# Комбинаторы


class SumSeries(SeriesHandle):
    kind = 'add'

    def __init__(self, s: SeriesHandle, t: SeriesHandle):
        _same_field(s, t)
        super().__init__(s.spec)
        self.s, self.t = s, t

    @property
    def known_depth(self) -> Optional[int]:
        return _min_depth(self.s.known_depth, self.t.known_depth)

    def _extend(self, n: int) -> None:
        a, b = self.s.prefix_raw(n), self.t.prefix_raw(n)
        self._cache = [self.spec.add(x, y) for x, y in zip(a, b)]


class ProductSeries(SeriesHandle):
    kind = 'mul'

    def __init__(self, s: SeriesHandle, t: SeriesHandle):
        _same_field(s, t)
        super().__init__(s.spec)
        self.s, self.t = s, t

    @property
    def known_depth(self) -> Optional[int]:
        return _min_depth(self.s.known_depth, self.t.known_depth)

    def _extend(self, n: int) -> None:
        self._cache = series_mul(self.spec, self.s.prefix_raw(n), self.t.prefix_raw(n), n)


class ComposeXPowerSeries(SeriesHandle):
    """s(x^d)"""

    kind = 'compose'

    def __init__(self, s: SeriesHandle, d: int):
        if d < 1:
            raise InputError(f"compose_x_power needs d >= 1, got {d}")
        super().__init__(s.spec)
        self.s, self.d = s, d

    @property
    def known_depth(self) -> Optional[int]:
        depth = self.s.known_depth
        return None if depth is None else depth * self.d

    def _extend(self, n: int) -> None:
        d = self.d
        source = self.s.prefix_raw((n + d - 1) // d)
        zero = self.spec.coerce(0)
        self._cache = [source[m // d] if m % d == 0 else zero for m in range(n)]


class ShiftDivSeries(SeriesHandle):
    """s / x^m при нулевых первых m коэффициентах"""

    kind = 'shift'

    def __init__(self, s: SeriesHandle, m: int):
        super().__init__(s.spec)
        self.s, self.m = s, m
        low = s.prefix_raw(m)
        if any(c != 0 for c in low):
            raise InputError(f"shift_div by x^{m}: low-order coefficients are not zero")

    @property
    def known_depth(self) -> Optional[int]:
        depth = self.s.known_depth
        return None if depth is None else max(depth - self.m, 0)

    def _extend(self, n: int) -> None:
        self._cache = self.s.prefix_raw(n + self.m)[self.m:]


class ScaleSeries(SeriesHandle):
    kind = 'scale'

    def __init__(self, c: Any, s: SeriesHandle):
        super().__init__(s.spec)
        self.c = s.spec.coerce(c)
        self.s = s

    @property
    def known_depth(self) -> Optional[int]:
        return self.s.known_depth

    def _extend(self, n: int) -> None:
        self._cache = [self.spec.mul(self.c, v) for v in self.s.prefix_raw(n)]


class ReciprocalSeries(SeriesHandle):
    """1/s при обратимом s(0)"""

    kind = 'reciprocal'

    def __init__(self, s: SeriesHandle):
        super().__init__(s.spec)
        self.s = s
        self._inv0 = self.spec.inv(s.coefficient(0))

    @property
    def known_depth(self) -> Optional[int]:
        return self.s.known_depth

    def _extend(self, n: int) -> None:
        spec = self.spec
        a = self.s.prefix_raw(n)
        out = self._cache or [self._inv0]
        for m in range(len(out), n):
            acc = spec.coerce(0)
            for i in range(1, m + 1):
                if a[i] != 0:
                    acc = spec.add(acc, spec.mul(a[i], out[m - i]))
            out.append(spec.neg(spec.mul(acc, self._inv0)))
        self._cache = out


class ReducedSeries(SeriesHandle):
    """Редукция ряда над Q в F_p"""

    kind = 'reduce'

    def __init__(self, s: SeriesHandle, p: int):
        if s.spec.is_prime_field:
            raise InputError("Only series over Q can be reduced modulo p")
        super().__init__(FieldSpec(p))
        self.s = s

    @property
    def known_depth(self) -> Optional[int]:
        return self.s.known_depth

    def _extend(self, n: int) -> None:
        self._cache = [self.spec.coerce(v) for v in self.s.prefix_raw(n)]


def _lift(spec: FieldSpec, value: Raw) -> Fraction:
    return Fraction(value)


def _same_field(s: SeriesHandle, t: SeriesHandle) -> None:
    if s.spec != t.spec:
        raise FieldMismatchError(f"Series over {s.spec} and {t.spec} cannot be combined")


def _min_depth(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# Фабрики


def explicit(spec: FieldSpec, coeffs: Sequence[Any], exact_up_to: Optional[int] = None) -> SeriesHandle:
    return ExplicitSeries(spec, coeffs, exact_up_to)


def polynomial_series(poly: Polynomial) -> RationalSeries:
    """Многочлен как ряд с известным нулевым хвостом"""
    return RationalSeries(poly, Polynomial.one(poly.spec))


def rational(numerator: Polynomial, denominator: Polynomial) -> RationalSeries:
    return RationalSeries(numerator, denominator)


def solve_quadratic_root(A: Polynomial, B: Polynomial, C: Polynomial, f0: Any) -> QuadraticRootSeries:
    return QuadraticRootSeries(A, B, C, f0)


def sqrt_series(s: SeriesHandle, root: Any = None) -> SqrtSeries:
    return SqrtSeries(s, root)


def binomial_power(r: Any, base: SeriesHandle, target: FieldSpec) -> BinomialPowerSeries:
    return BinomialPowerSeries(r, base, target)


def add(s: SeriesHandle, t: SeriesHandle) -> SumSeries:
    return SumSeries(s, t)


def mul(s: SeriesHandle, t: SeriesHandle) -> ProductSeries:
    return ProductSeries(s, t)


def compose_x_power(s: SeriesHandle, d: int) -> ComposeXPowerSeries:
    return ComposeXPowerSeries(s, d)


def shift_div(s: SeriesHandle, m: int) -> ShiftDivSeries:
    return ShiftDivSeries(s, m)


def scale(c: Any, s: SeriesHandle) -> ScaleSeries:
    return ScaleSeries(c, s)


def reciprocal(s: SeriesHandle) -> ReciprocalSeries:
    return ReciprocalSeries(s)


def quadratic_residual(A: Polynomial, B: Polynomial, C: Polynomial,
                       coeffs: Sequence[Raw], n: Optional[int] = None) -> Polynomial:
    """A + B*F + C*F^2 mod x^n для префикса F (n по умолчанию = длина префикса)"""
    spec = A.spec
    n = len(coeffs) if n is None else n
    f = list(coeffs)[:n]
    square = series_mul(spec, f, f, n)
    bf = series_mul(spec, B.padded(n), f, n)
    cff = series_mul(spec, C.padded(n), square, n)
    a = A.padded(n)
    return Polynomial.from_raw(spec, [spec.add(a[i], spec.add(bf[i], cff[i])) for i in range(n)])


def series_from_spec(payload: Dict[str, Any], field: Optional[FieldSpec] = None) -> SeriesHandle:
    """
    Построение ряда из JSON-описания

    Args:
        payload: {"field": "F2", "source": {"kind": "quadratic" | "rational" | "explicit" | "named", ...}}
        field: поле по умолчанию, если в описании его нет

    Returns:
        SeriesHandle
    """
    source = payload.get('source', payload)
    kind = source.get('kind')
    if kind == 'named':
        # поле задаёт сама последовательность
        from hankelfrac.services.sequences import named_series
        params = {k: v for k, v in source.items() if k not in ('kind', 'name')}
        return named_series(str(source.get('name')), **params)

    if 'field' in payload:
        spec = FieldSpec.parse(str(payload['field']))
    elif field is not None:
        spec = field
    else:
        raise InputError("Series specification needs a 'field'")
    logger.debug(f"Building {kind} series over {spec}")

    if kind == 'quadratic':
        A, B, C = (parse_poly(str(source[key]), spec) for key in ('A', 'B', 'C'))
        if 'f0' not in source:
            raise InputError("Quadratic source needs the branch value 'f0'")
        return solve_quadratic_root(A, B, C, str(source['f0']))
    if kind == 'rational':
        return rational(parse_poly(str(source['num']), spec), parse_poly(str(source.get('den', '1')), spec))
    if kind == 'explicit':
        coeffs = [str(c) for c in source.get('coeffs', [])]
        return explicit(spec, coeffs, source.get('exact_up_to'))
    raise InputError(f"Unknown series source kind: {kind!r}")
