from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from hankelfrac.models.field import FieldElement, FieldSpec
from hankelfrac.models.hfraction import HFraction, PartialQuotient
from hankelfrac.models.polynomial import Polynomial, render_poly
from hankelfrac.utils.errors import FieldMismatchError, PreconditionError


class QuadraticCase(Enum):
    """Ветви разбора уравнения A + B*F + C*F^2 = 0"""
    CANONICAL = "i"
    LINEAR = "ii"
    UNIT_C = "iii"
    PURE_SQUARE = "iv"


@dataclass(frozen=True)
class QuadraticTriple:
    """Коэффициенты уравнения A + B*F + C*F^2 = 0 и параметр delta"""

    A: Polynomial
    B: Polynomial
    C: Polynomial
    delta: int = 2

    def __post_init__(self):
        if not (self.A.spec == self.B.spec == self.C.spec):
            raise FieldMismatchError("A, B, C must live over one field")

    @property
    def spec(self) -> FieldSpec:
        return self.A.spec

    def d(self) -> int:
        """Мера max(deg A + delta - 2, deg B - 1, deg C - delta), deg 0 = -1"""
        return max(self.A.degree + self.delta - 2, self.B.degree - 1, self.C.degree - self.delta)

    def measure(self) -> int:
        """
        Мера, не растущая на шаге итерации

        При delta = 2 это d. При delta = 1 шаг даёт deg C* = deg A + 1, и убывает
        только max(deg A, deg B - 1, deg C - 1).
        """
        if self.delta == 2:
            return self.d()
        return max(self.A.degree, self.B.degree - 1, self.C.degree - 1)

    def key(self) -> Tuple[Tuple, Tuple, Tuple]:
        return self.A.raw, self.B.raw, self.C.raw

    def check_canonical(self) -> None:
        """Контракт итерации: B(0) = 1, C(0) = 0, C != 0"""
        if self.B.coefficient(0) != 1:
            raise PreconditionError(f"Iteration needs B(0)=1, got B={self.B}")
        if self.C.is_zero():
            raise PreconditionError("Iteration needs C != 0")
        if self.C.coefficient(0) != 0:
            raise PreconditionError(f"Iteration needs C(0)=0, got C={self.C}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'A': render_poly(self.A),
            'B': render_poly(self.B),
            'C': render_poly(self.C),
            'delta': self.delta,
        }

    def __str__(self) -> str:
        return f"({self.A}; {self.B}; {self.C})"


@dataclass(frozen=True)
class NextStepResult:
    """Результат одного шага преобразования тройки"""

    next: QuadraticTriple
    k: int
    A_k: FieldElement
    D: Polynomial

    @property
    def quotient(self) -> PartialQuotient:
        """Неполное частное v = -A_k, u = (D - 1)/x"""
        u = (self.D - Polynomial.one(self.D.spec)).div_by_power(1)
        return PartialQuotient(-self.A_k, self.k, u)


@dataclass(frozen=True)
class PeelStep:
    """Снятый вручную головной уровень перед итерацией (случаи iii и iv)"""

    description: str
    quotient: PartialQuotient
    transformed: QuadraticTriple

    def to_dict(self) -> Dict[str, Any]:
        return {
            'description': self.description,
            'quotient': self.quotient.to_dict(),
            'transformed': self.transformed.to_dict(),
        }


@dataclass
class PeriodicHFracResult:
    """Дробь, трасса троек и сертификат периодичности (m, t)"""

    fraction: HFraction
    triple_trace: List[QuadraticTriple] = field(default_factory=list)
    m: Optional[int] = None
    t: Optional[int] = None
    case: QuadraticCase = QuadraticCase.CANONICAL
    peel: List[PeelStep] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'case': self.case.value,
            'peel': [step.to_dict() for step in self.peel],
            'fraction': self.fraction.to_dict(),
            'm': self.m,
            't': self.t,
            'triple_trace': [t.to_dict() for t in self.triple_trace],
        }


@dataclass(frozen=True)
class PeriodBound:
    """Величины оценки периода последовательности Ганкеля"""

    r: int
    beta: FieldElement
    gamma1: FieldElement
    gamma2: FieldElement
    gamma3: FieldElement
    gamma: FieldElement
    pi: int
    bound: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'r': self.r,
            'beta': str(self.beta),
            'gamma1': str(self.gamma1),
            'gamma2': str(self.gamma2),
            'gamma3': str(self.gamma3),
            'gamma': str(self.gamma),
            'pi': self.pi,
            'bound': self.bound,
        }
