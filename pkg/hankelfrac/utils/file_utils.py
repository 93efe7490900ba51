"""
Файловые утилиты hankelfrac
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

logger = logging.getLogger(__name__)


def write_report(text: str, path: Union[str, Path]) -> Path:
    """
    Атомарная запись отчёта: временный файл рядом и os.replace

    Returns:
        Путь записанного файла
    """
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
        logger.info(f"Created directory: {target.parent}")

    temp_file = target.with_name(target.name + '.tmp')
    try:
        with open(temp_file, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(temp_file, target)
    except OSError:
        # Пытаемся удалить временный файл если он остался
        if temp_file.exists():
            temp_file.unlink()
        raise
    logger.debug(f"Report written to {target}")
    return target


def load_json_file(path: Union[str, Path]) -> Any:
    """Чтение JSON-файла (OSError и JSONDecodeError пробрасываются)"""
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def load_json_argument(value: Optional[str]) -> Optional[Any]:
    """Аргумент CLI: JSON-строка или @путь к JSON-файлу"""
    if value is None:
        return None
    if value.startswith('@'):
        return load_json_file(value[1:])
    return json.loads(value)


def list_json_files(directory: Union[str, Path]) -> List[Path]:
    """JSON-файлы каталога в порядке имён"""
    root = Path(directory)
    if not root.is_dir():
        return []
    return sorted(p for p in root.iterdir() if p.suffix == '.json')


def dump_json(data: Dict[str, Any]) -> str:
    """Детерминированный JSON: сортировка ключей, без временных меток"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
