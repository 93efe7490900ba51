"""
Плотные многочлены одной переменной над полем и ядра усечённой арифметики рядов
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from hankelfrac.models.field import FieldElement, FieldSpec, Raw
from hankelfrac.utils.errors import FieldMismatchError, NotDivisibleError

# Валюация нулевого многочлена
INFINITE_VALUATION = math.inf


@dataclass(frozen=True)
class Polynomial:
    """Многочлен в канонической форме: старший коэффициент ненулевой, ноль = пустой кортеж"""

    spec: FieldSpec
    raw: Tuple[Raw, ...] = ()

    def __post_init__(self):
        values = [self.spec.coerce(c) for c in self.raw]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, 'raw', tuple(values))

    @classmethod
    def from_raw(cls, spec: FieldSpec, values: Iterable[Raw]) -> 'Polynomial':
        """Построение из уже нормализованных значений поля (без приведения)"""
        values = list(values)
        while values and values[-1] == 0:
            values.pop()
        poly = object.__new__(cls)
        object.__setattr__(poly, 'spec', spec)
        object.__setattr__(poly, 'raw', tuple(values))
        return poly

    @classmethod
    def zero(cls, spec: FieldSpec) -> 'Polynomial':
        return cls.from_raw(spec, ())

    @classmethod
    def constant(cls, spec: FieldSpec, value) -> 'Polynomial':
        return cls(spec, (value,))

    @classmethod
    def monomial(cls, spec: FieldSpec, value, exponent: int) -> 'Polynomial':
        return cls(spec, (0,) * exponent + (value,))

    @classmethod
    def one(cls, spec: FieldSpec) -> 'Polynomial':
        return cls.constant(spec, 1)

    # Свойства

    @property
    def coeffs(self) -> List[FieldElement]:
        return [FieldElement(self.spec, c) for c in self.raw]

    @property
    def degree(self) -> int:
        """Степень; у нулевого многочлена -1"""
        return len(self.raw) - 1

    @property
    def valuation(self) -> Union[int, float]:
        """Наименьший показатель с ненулевым коэффициентом; у нуля INFINITE_VALUATION"""
        for i, c in enumerate(self.raw):
            if c != 0:
                return i
        return INFINITE_VALUATION

    def is_zero(self) -> bool:
        return not self.raw

    def coefficient(self, i: int) -> Raw:
        if 0 <= i < len(self.raw):
            return self.raw[i]
        return self.spec.coerce(0)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.spec, self.coefficient(i))

    # Арифметика

    def _check(self, other: 'Polynomial') -> None:
        if other.spec != self.spec:
            raise FieldMismatchError(f"Polynomials over {self.spec} and {other.spec} cannot be combined")

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        self._check(other)
        n = max(len(self.raw), len(other.raw))
        add = self.spec.add
        return Polynomial.from_raw(
            self.spec, [add(self.coefficient(i), other.coefficient(i)) for i in range(n)]
        )

    def __sub__(self, other: 'Polynomial') -> 'Polynomial':
        self._check(other)
        n = max(len(self.raw), len(other.raw))
        sub = self.spec.sub
        return Polynomial.from_raw(
            self.spec, [sub(self.coefficient(i), other.coefficient(i)) for i in range(n)]
        )

    def __neg__(self) -> 'Polynomial':
        return Polynomial.from_raw(self.spec, [self.spec.neg(c) for c in self.raw])

    def __mul__(self, other) -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.spec)
        spec = self.spec
        out = [spec.coerce(0)] * (len(self.raw) + len(other.raw) - 1)
        for i, a in enumerate(self.raw):
            if a == 0:
                continue
            for j, b in enumerate(other.raw):
                out[i + j] = spec.add(out[i + j], spec.mul(a, b))
        return Polynomial.from_raw(spec, out)

    __rmul__ = __mul__

    def scale(self, c) -> 'Polynomial':
        value = self.spec.coerce(c)
        return Polynomial.from_raw(self.spec, [self.spec.mul(value, a) for a in self.raw])

    def mul_x_power(self, m: int) -> 'Polynomial':
        if self.is_zero():
            return self
        return Polynomial.from_raw(self.spec, (self.spec.coerce(0),) * m + self.raw)

    def div_by_power(self, m: int) -> 'Polynomial':
        """Точное деление на x^m; NotDivisibleError, если младшие коэффициенты ненулевые"""
        if any(c != 0 for c in self.raw[:m]):
            raise NotDivisibleError(f"{render_poly(self)} is not divisible by x^{m}")
        return Polynomial.from_raw(self.spec, self.raw[m:])

    def truncate(self, n: int) -> 'Polynomial':
        """Остаток по модулю x^n"""
        return Polynomial.from_raw(self.spec, self.raw[:n])

    def compose_x_power(self, d: int) -> 'Polynomial':
        """P(x^d)"""
        out = [self.spec.coerce(0)] * (d * self.degree + 1 if self.raw else 0)
        for i, c in enumerate(self.raw):
            out[i * d] = c
        return Polynomial.from_raw(self.spec, out)

    def power(self, n: int) -> 'Polynomial':
        result = Polynomial.one(self.spec)
        for _ in range(n):
            result = result * self
        return result

    def padded(self, n: int) -> List[Raw]:
        """Первые n коэффициентов с дополнением нулями"""
        zero = self.spec.coerce(0)
        return [self.raw[i] if i < len(self.raw) else zero for i in range(n)]

    def __str__(self) -> str:
        return render_poly(self)


def render_poly(poly: Polynomial) -> str:
    """Каноническая запись многочлена в грамматике parse_poly"""
    if poly.is_zero():
        return '0'
    spec = poly.spec
    parts: List[str] = []
    for exponent, value in enumerate(poly.raw):
        if value == 0:
            continue
        negative = spec.p is None and value < 0
        magnitude = -value if negative else value
        if exponent == 0:
            monomial = ''
        elif exponent == 1:
            monomial = 'x'
        else:
            monomial = f'x^{exponent}'
        if not monomial:
            term = spec.format_raw(magnitude)
        elif magnitude == 1:
            term = monomial
        else:
            term = f"{spec.format_raw(magnitude)}*{monomial}"
        if not parts:
            parts.append(f"-{term}" if negative else term)
        else:
            parts.append(f"{'-' if negative else '+'}{term}")
    return ''.join(parts)


# Усечённая арифметика рядов на сырых списках коэффициентов


def series_mul(spec: FieldSpec, a: Sequence[Raw], b: Sequence[Raw], n: int) -> List[Raw]:
    """Первые n коэффициентов произведения a*b"""
    zero = spec.coerce(0)
    out = [zero] * n
    add, mul = spec.add, spec.mul
    for i in range(min(len(a), n)):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(len(b), n - i)):
            if b[j] != 0:
                out[i + j] = add(out[i + j], mul(ai, b[j]))
    return out


def series_inverse(spec: FieldSpec, a: Sequence[Raw], n: int) -> List[Raw]:
    """Первые n коэффициентов 1/a при обратимом a[0]"""
    if n <= 0:
        return []
    inv0 = spec.inv(a[0])
    out = [inv0]
    add, mul = spec.add, spec.mul
    zero = spec.coerce(0)
    for m in range(1, n):
        acc = zero
        for i in range(1, min(m, len(a) - 1) + 1):
            if a[i] != 0:
                acc = add(acc, mul(a[i], out[m - i]))
        out.append(spec.neg(mul(acc, inv0)))
    return out


def series_div(spec: FieldSpec, a: Sequence[Raw], b: Sequence[Raw], n: int) -> List[Raw]:
    """Первые n коэффициентов a/b при обратимом b[0]"""
    return series_mul(spec, a, series_inverse(spec, b, n), n)
