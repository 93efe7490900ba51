from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class CommandType(Enum):
    """Подкоманды CLI"""
    EXPAND = "expand"
    HFRAC_QUADRATIC = "hfrac-quadratic"
    HANKEL = "hankel"
    ORACLE = "oracle"
    REPRODUCE_PAPER = "reproduce-paper"


class OutputFormat(Enum):
    """Форматы отчёта"""
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


@dataclass
class JobSpec:
    """Описание одного запуска"""

    command: CommandType
    field_name: Optional[str] = None   # F<p> или Q
    series: Optional[Dict[str, Any]] = None    # JSON-описание ряда
    A: Optional[str] = None
    B: Optional[str] = None
    C: Optional[str] = None
    f0: Optional[str] = None
    named: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    fraction: Optional[Dict[str, Any]] = None  # готовая дробь в JSON (для hankel)
    delta: int = 2
    depth: Optional[int] = None
    max_quotients: Optional[int] = None
    nmax: Optional[int] = None
    ring: Optional[str] = None
    offset: int = 0
    scope: List[str] = field(default_factory=list)
    output_format: OutputFormat = OutputFormat.TEXT
    out: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.command, str):
            self.command = CommandType(self.command)
        if isinstance(self.output_format, str):
            self.output_format = OutputFormat(self.output_format)

    @property
    def has_triple(self) -> bool:
        return self.A is not None or self.B is not None or self.C is not None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['command'] = self.command.value
        data['output_format'] = self.output_format.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'JobSpec':
        return cls(**data)

    def validate(self) -> bool:
        """Проверка, что полезная нагрузка соответствует команде"""
        sources = sum(x is not None for x in (self.series, self.named)) + (1 if self.has_triple else 0)

        if self.delta < 1:
            raise ValueError(f"delta must be >= 1, got {self.delta}")
        for name in ('depth', 'max_quotients', 'nmax'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.offset < 0:
            raise ValueError("offset must be non-negative")

        if self.command == CommandType.HFRAC_QUADRATIC:
            if self.has_triple == (self.named is not None):
                raise ValueError("hfrac-quadratic needs either --A/--B/--C or --named")
            if self.has_triple and self.field_name is None:
                raise ValueError("hfrac-quadratic needs --field")
        elif self.command in (CommandType.EXPAND, CommandType.ORACLE):
            if sources != 1:
                raise ValueError(f"{self.command.value} needs exactly one of --series, --named or --A/--B/--C")
        elif self.command == CommandType.HANKEL:
            if self.fraction is None and sources != 1:
                raise ValueError("hankel needs a series source or a fraction JSON")
        if self.output_format == OutputFormat.CSV and self.command not in (
            CommandType.ORACLE, CommandType.HANKEL
        ):
            raise ValueError("CSV output is available for oracle and hankel only")
        return True


@dataclass
class CheckResult:
    """Результат сверки одного эталона"""

    id: str
    passed: bool
    mismatches: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'passed': self.passed,
            'mismatches': list(self.mismatches),
            'details': self.details,
        }


@dataclass
class ReproductionReport:
    """Матрица прошло/не прошло по всем запрошенным эталонам (в порядке id)"""

    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed_ids(self) -> List[str]:
        return [result.id for result in self.results if not result.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'total': len(self.results),
            'failed': self.failed_ids,
            'results': [result.to_dict() for result in self.results],
        }
