from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from hankelfrac.models.field import FieldElement, FieldSpec
from hankelfrac.models.polynomial import Polynomial, render_poly
from hankelfrac.utils.errors import InputError, InsufficientQuotientsError


class TailKind(Enum):
    """Как заканчивается разложение"""
    TERMINATED = "terminated"
    TRUNCATED = "truncated"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class Tail:
    """Хвост дроби: Terminated, TruncatedAtDepth(depth) или Periodic(m, t)"""

    kind: TailKind
    depth: Optional[int] = None
    m: Optional[int] = None
    t: Optional[int] = None

    @classmethod
    def terminated(cls) -> 'Tail':
        return cls(TailKind.TERMINATED)

    @classmethod
    def truncated(cls, depth: int) -> 'Tail':
        return cls(TailKind.TRUNCATED, depth=depth)

    @classmethod
    def periodic(cls, m: int, t: int) -> 'Tail':
        return cls(TailKind.PERIODIC, m=m, t=t)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'kind': self.kind.value}
        if self.kind == TailKind.TRUNCATED:
            data['depth'] = self.depth
        elif self.kind == TailKind.PERIODIC:
            data['m'] = self.m
            data['t'] = self.t
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Tail':
        kind = TailKind(data['kind'])
        return cls(kind, depth=data.get('depth'), m=data.get('m'), t=data.get('t'))

    def __str__(self) -> str:
        if self.kind == TailKind.PERIODIC:
            return f"periodic(m={self.m}, t={self.t})"
        if self.kind == TailKind.TRUNCATED:
            return f"truncated at depth {self.depth}"
        return "terminated"


@dataclass(frozen=True)
class PartialQuotient:
    """
    Уровень j дроби: числитель v*x^(...), показатель k и многочлен u знаменателя 1 + u*x
    непосредственно под этим числителем (deg u <= k + delta - 2)
    """

    v: FieldElement
    k: int
    u: Polynomial

    @property
    def denominator(self) -> Polynomial:
        return Polynomial.one(self.u.spec) + self.u.mul_x_power(1)

    def validate(self, delta: int) -> bool:
        if self.v.is_zero():
            raise InputError("Partial quotient constant v must be nonzero")
        if self.k < 0:
            raise InputError(f"Partial quotient exponent k must be non-negative, got {self.k}")
        if self.u.degree > self.k + delta - 2:
            raise InputError(
                f"deg u = {self.u.degree} exceeds k + delta - 2 = {self.k + delta - 2}"
            )
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {'v': str(self.v), 'k': self.k, 'u': render_poly(self.u)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], spec: FieldSpec) -> 'PartialQuotient':
        from hankelfrac.utils.poly_parser import parse_poly
        return cls(spec.element(str(data['v'])), int(data['k']), parse_poly(str(data.get('u', '0')), spec))


@dataclass(frozen=True)
class DisplayTerm:
    """Уровень в записи a*x^e/(D): a0 = v0, a_j = -v_j, e0 = k0, e_j = k_{j-1}+k_j+delta"""

    a: FieldElement
    e: int
    D: Polynomial

    def as_tuple(self) -> Tuple[str, int, str]:
        return str(self.a), self.e, render_poly(self.D)

    def __str__(self) -> str:
        monomial = Polynomial.monomial(self.D.spec, self.a, self.e)
        return f"{render_poly(monomial)}/({render_poly(self.D)})"


@dataclass
class HFraction:
    """Супер delta-дробь: список неполных частных и хвост"""

    spec: FieldSpec
    delta: int
    quotients: List[PartialQuotient] = field(default_factory=list)
    tail: Tail = field(default_factory=Tail.terminated)

    def __post_init__(self):
        if self.delta < 1:
            raise InputError(f"delta must be >= 1, got {self.delta}")
        if self.tail.kind == TailKind.PERIODIC:
            if self.tail.m is None or self.tail.t is None or self.tail.t < 1:
                raise InputError("Periodic tail needs m >= 0 and t >= 1")
            if len(self.quotients) != self.tail.m + self.tail.t:
                raise InputError(
                    f"Periodic tail (m={self.tail.m}, t={self.tail.t}) needs exactly "
                    f"{self.tail.m + self.tail.t} quotients, got {len(self.quotients)}"
                )

    @property
    def is_periodic(self) -> bool:
        return self.tail.kind == TailKind.PERIODIC

    @property
    def is_zero(self) -> bool:
        return not self.quotients and self.tail.kind == TailKind.TERMINATED

    def quotient(self, j: int) -> PartialQuotient:
        """j-е неполное частное с учётом периодического хвоста"""
        if j < len(self.quotients):
            return self.quotients[j]
        if not self.is_periodic:
            raise InsufficientQuotientsError(f"Fraction has only {len(self.quotients)} quotients, asked for #{j}")
        m, t = self.tail.m, self.tail.t
        return self.quotients[m + (j - m) % t]

    def unrolled(self, count: int) -> List[PartialQuotient]:
        """Первые count частных (для непериодической дроби не больше, чем есть)"""
        if not self.is_periodic:
            return list(self.quotients[:count])
        return [self.quotient(j) for j in range(count)]

    def ladder(self, count: int) -> List[int]:
        """s_0..s_count: s_0 = 0, s_{j+1} = s_j + k_j + 1"""
        s = [0]
        for q in self.unrolled(count):
            s.append(s[-1] + q.k + 1)
        return s

    def display_terms(self, count: Optional[int] = None) -> List[DisplayTerm]:
        """Уровни в записи с плюсами между этажами"""
        quotients = self.unrolled(len(self.quotients) if count is None else count)
        terms = []
        for j, q in enumerate(quotients):
            if j == 0:
                terms.append(DisplayTerm(q.v, q.k, q.denominator))
            else:
                e = quotients[j - 1].k + q.k + self.delta
                terms.append(DisplayTerm(-q.v, e, q.denominator))
        return terms

    def validate(self) -> bool:
        for q in self.quotients:
            q.validate(self.delta)
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'field': self.spec.name,
            'delta': self.delta,
            'quotients': [q.to_dict() for q in self.quotients],
            'tail': self.tail.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], spec: Optional[FieldSpec] = None) -> 'HFraction':
        """
        Дробь из JSON; ключ 'field' необязателен, если поле передано аргументом spec
        """
        if not isinstance(data, dict):
            raise InputError(f"Fraction JSON must be an object, got {type(data).__name__}")
        if 'field' in data:
            spec = FieldSpec.parse(str(data['field']))
        if spec is None:
            raise InputError("Fraction JSON has no 'field' and no field was given")
        try:
            quotients = [PartialQuotient.from_dict(q, spec) for q in data['quotients']]
            tail = Tail.from_dict(data.get('tail', {'kind': 'terminated'}))
            delta = int(data.get('delta', 2))
        except KeyError as e:
            raise InputError(f"Fraction JSON misses key {e}") from e
        except (TypeError, ValueError) as e:
            raise InputError(f"Malformed fraction JSON: {e}") from e
        fraction = cls(spec, delta, quotients, tail)
        fraction.validate()
        return fraction
