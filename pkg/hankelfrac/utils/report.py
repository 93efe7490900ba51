"""
Отчёты: текст с K-записью дробей, JSON и CSV

Тело отчёта детерминировано: одинаковый вход даёт побайтно одинаковый вывод.
"""

import csv
import io
from typing import Any, Dict, Iterable, List, Optional, Sequence

from hankelfrac.models.hfraction import HFraction, TailKind
from hankelfrac.models.job import OutputFormat
from hankelfrac.utils.file_utils import dump_json


def format_kfraction(h: HFraction, count: Optional[int] = None) -> str:
    """
    Запись дроби уровнями a*x^e/(D), соединёнными плюсами

    Периодическая дробь: предпериод, затем период в скобках со звёздочкой.
    Оборванная дробь заканчивается многоточием.
    """
    if h.is_zero:
        return '0'
    terms = [str(term) for term in h.display_terms(count)]
    if h.tail.kind == TailKind.PERIODIC and count is None:
        m = h.tail.m
        head = ' + '.join(terms[:m])
        cycle = ' + '.join(terms[m:])
        return f"{head} + ({cycle} +)*" if head else f"({cycle} +)*"
    text = ' + '.join(terms)
    if h.tail.kind == TailKind.TRUNCATED or count is not None:
        text += ' + ...'
    return text


def _text_lines(data: Any, indent: int = 0) -> List[str]:
    pad = '  ' * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and not _is_flat_list(item):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(data)}")
    return lines


def _is_flat_list(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _scalar(value: Any) -> str:
    if isinstance(value, list):
        return '(' + ', '.join(_scalar(v) for v in value) + ')'
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    return str(value)


def render_text(title: str, data: Dict[str, Any]) -> str:
    lines = [f"== {title} =="]
    lines.extend(_text_lines(data))
    return '\n'.join(lines) + '\n'


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def render(output_format: OutputFormat, title: str, data: Dict[str, Any],
           header: Optional[Sequence[str]] = None, rows: Optional[Iterable[Sequence[Any]]] = None) -> str:
    """Единая точка вывода для всех команд"""
    if output_format == OutputFormat.JSON:
        return dump_json(data)
    if output_format == OutputFormat.CSV:
        if header is None or rows is None:
            raise ValueError(f"{title} has no tabular form")
        return render_csv(header, rows)
    return render_text(title, data)
