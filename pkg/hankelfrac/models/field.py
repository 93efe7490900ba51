"""
Точная арифметика над простыми полями F_p и над рациональными числами
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import List, Optional, Union

from hankelfrac.utils.errors import (
    FieldDivisionByZero, FieldMismatchError, InputError, NoSquareRootError, NonReducibleError
)

MAX_PRIME = 2 ** 31

Raw = Union[int, Fraction]


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    """Проверка простоты пробным делением (n < 2^31)"""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _prime_factors(n: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


@dataclass(frozen=True)
class FieldSpec:
    """Описание поля: F_p (p задано) или Q (p = None)"""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or self.p >= MAX_PRIME:
                raise InputError(f"Modulus must be an integer below 2^31, got {self.p}")
            if not is_prime(self.p):
                raise InputError(f"Modulus {self.p} is not prime")

    # Конструкторы

    @classmethod
    def rationals(cls) -> 'FieldSpec':
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> 'FieldSpec':
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> 'FieldSpec':
        """Разбор текстовой формы поля: 'F2', 'F5', 'Q' (а также 'Z' как Q)"""
        value = text.strip()
        if value.upper() in ('Q', 'Z'):
            return cls(None)
        if value[:1].upper() == 'F' and value[1:].isdigit():
            return cls(int(value[1:]))
        raise InputError(f"Unknown field '{text}': expected F<p> or Q")

    # Свойства

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p if self.p is not None else 0

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p is not None else 'Q'

    def __str__(self) -> str:
        return self.name

    # Сырые операции над представлениями (int для F_p, Fraction для Q)

    def coerce(self, value) -> Raw:
        """Приведение int / Fraction / str / FieldElement к сырому значению поля"""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError(f"Element of {value.spec} used in {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return _reduce_raw(value, self.p)
        return int(value) % self.p

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a: Raw) -> Raw:
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a: Raw) -> Raw:
        if a == 0:
            raise FieldDivisionByZero(f"Division by zero in {self}")
        if self.p is not None:
            return pow(a, self.p - 2, self.p)
        return 1 / Fraction(a)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    def power(self, a: Raw, n: int) -> Raw:
        if n < 0:
            return self.power(self.inv(a), -n)
        if self.p is not None:
            return pow(a, n, self.p)
        return Fraction(a) ** n

    def sqrt(self, a: Raw) -> Raw:
        """Канонический квадратный корень: наименьший вычет в F_p, неотрицательный в Q"""
        if self.p is None:
            a = Fraction(a)
            if a < 0:
                raise NoSquareRootError(f"{a} has no rational square root")
            num, den = isqrt(a.numerator), isqrt(a.denominator)
            if num * num != a.numerator or den * den != a.denominator:
                raise NoSquareRootError(f"{a} is not a rational square")
            return Fraction(num, den)
        root = _tonelli_shanks(a % self.p, self.p)
        return min(root, self.p - root)

    @property
    def zero(self) -> 'FieldElement':
        return FieldElement(self, self.coerce(0))

    @property
    def one(self) -> 'FieldElement':
        return FieldElement(self, self.coerce(1))

    def element(self, value) -> 'FieldElement':
        return FieldElement(self, self.coerce(value))

    def format_raw(self, value: Raw) -> str:
        """Каноническая запись: вычет в [0, p) либо a/b в несократимом виде"""
        if self.p is not None:
            return str(value)
        return str(Fraction(value))


def _tonelli_shanks(a: int, p: int) -> int:
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise NoSquareRootError(f"{a} is not a square in F{p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _reduce_raw(value: Fraction, p: int) -> int:
    if value.denominator % p == 0:
        raise NonReducibleError(f"Cannot reduce {value} modulo {p}: denominator divisible by {p}")
    return value.numerator * pow(value.denominator, p - 2, p) % p


@dataclass(frozen=True)
class FieldElement:
    """Элемент поля с нормализованным значением"""

    spec: FieldSpec
    value: Raw

    def __post_init__(self):
        object.__setattr__(self, 'value', self.spec.coerce(self.value))

    def _other(self, other) -> Raw:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"Cannot combine elements of {self.spec} and {other.spec}")
            return other.value
        return self.spec.coerce(other)

    def __add__(self, other) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __rsub__(self, other) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.value))

    def __mul__(self, other) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __truediv__(self, other) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.div(self.value, self._other(other)))

    def __pow__(self, n: int) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.power(self.value, n))

    def inv(self) -> 'FieldElement':
        return FieldElement(self.spec, self.spec.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.spec.coerce(other)
            except InputError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __str__(self) -> str:
        return self.spec.format_raw(self.value)

    def __repr__(self) -> str:
        return f"{self}@{self.spec}"


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def reduce_mod_p(a, p: int) -> FieldElement:
    """Редукция рационального числа в F_p; p | знаменатель -> NonReducibleError"""
    target = FieldSpec(p)
    value = a.value if isinstance(a, FieldElement) else a
    return FieldElement(target, _reduce_raw(Fraction(value), p))


def multiplicative_order(a: FieldElement) -> int:
    """Порядок ненулевого элемента F_p по делителям p - 1"""
    if not a.spec.is_prime_field:
        raise InputError("Multiplicative order is defined here for prime fields only")
    if a.is_zero():
        raise FieldDivisionByZero("Zero has no multiplicative order")
    p = a.spec.p
    order = p - 1
    for q in _prime_factors(p - 1):
        while order % q == 0 and pow(a.value, order // q, p) == 1:
            order //= q
    return order
