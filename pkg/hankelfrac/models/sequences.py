import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from hankelfrac.models.field import FieldSpec, Raw
from hankelfrac.utils.errors import InputError

_RUN = re.compile(r'^(-?[0-9/]+)(?:\^(\d+))?$')


@dataclass
class EventuallyPeriodicSeq:
    """Последовательность вида (предпериод, (период)*)"""

    spec: FieldSpec
    preperiod: List[Raw] = field(default_factory=list)
    period: List[Raw] = field(default_factory=list)
    certified: bool = False
    minimal: bool = False

    def value(self, i: int) -> Raw:
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise InputError("Sequence has no period; index beyond the preperiod")
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> List[Raw]:
        return [self.value(i) for i in range(n)]

    def formatted(self, values: Sequence[Raw]) -> List[str]:
        return [self.spec.format_raw(v) for v in values]

    def __str__(self) -> str:
        period = f"({','.join(self.formatted(self.period))})*" if self.period else ''
        parts = self.formatted(self.preperiod)
        if period:
            parts.append(period)
        return ','.join(parts)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'field': self.spec.name,
            'preperiod': self.formatted(self.preperiod),
            'period': self.formatted(self.period),
            'period_length': len(self.period),
            'certified': self.certified,
            'minimal': self.minimal,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EventuallyPeriodicSeq':
        spec = FieldSpec.parse(str(data.get('field', 'Q')))
        return cls(
            spec,
            [spec.coerce(str(v)) for v in data.get('preperiod', [])],
            [spec.coerce(str(v)) for v in data.get('period', [])],
            bool(data.get('certified', False)),
            bool(data.get('minimal', False)),
        )


def run_length_encode(values: Sequence[Any]) -> str:
    """Запись 1^5 0^2 1^1 ... (значение^длина серии)"""
    runs: List[str] = []
    i = 0
    while i < len(values):
        j = i
        while j < len(values) and values[j] == values[i]:
            j += 1
        runs.append(f"{values[i]}^{j - i}")
        i = j
    return ' '.join(runs)


def run_length_decode(text: str, spec: FieldSpec) -> List[Raw]:
    """Обратная к run_length_encode; серия без показателя имеет длину 1"""
    values: List[Raw] = []
    for chunk in text.split():
        match = _RUN.match(chunk)
        if not match:
            raise InputError(f"Malformed run '{chunk}' in run-length notation")
        count = int(match.group(2)) if match.group(2) else 1
        values.extend([spec.coerce(match.group(1))] * count)
    return values


@dataclass
class GraftingRow:
    """Строка таблицы: n, H_n/2^(n-2) mod 2 по целочисленному оракулу и H_{n-2}(G) mod 2"""

    n: int
    scaled_parity: Optional[int]
    grafted_parity: int

    @property
    def agrees(self) -> bool:
        return self.scaled_parity is not None and self.scaled_parity == self.grafted_parity


@dataclass
class GraftingReport:
    """Прививка: целочисленный ряд, снятая голова и привитый ряд над F_2"""

    name: str
    head: str
    relation: str
    triple: Any
    grafted_matches_root: bool
    grafted_hankel: EventuallyPeriodicSeq
    rows: List[GraftingRow] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.grafted_matches_root and all(row.agrees for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'head': self.head,
            'relation': self.relation,
            'triple': self.triple.to_dict(),
            'grafted_matches_root': self.grafted_matches_root,
            'grafted_hankel': str(self.grafted_hankel),
            'rows': [[row.n, row.scaled_parity, row.grafted_parity] for row in self.rows],
            'holds': self.holds,
        }
