"""
Настройка логирования hankelfrac
"""

import logging
import os
import sys
from typing import List, Optional

from hankelfrac.utils.structured_logger import StructuredFormatter


class StderrHandler(logging.StreamHandler):
    """StreamHandler, который берёт sys.stderr в момент записи, а не при создании"""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def setup_logging(level: Optional[str] = None) -> None:
    """
    Централизованная настройка логирования

    Логи идут в stderr (stdout занят отчётом), при HANKELFRAC_LOG_FILE=true также
    в logs/hankelfrac.log.
    """
    if level is None:
        from hankelfrac.utils.config import get_log_level
        level = get_log_level()

    handlers: List[logging.Handler] = [StderrHandler()]
    if os.getenv('HANKELFRAC_LOG_FILE', 'false').lower() == 'true':
        log_dir = "logs"
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(f"{log_dir}/hankelfrac.log", encoding='utf-8'))

    formatter = StructuredFormatter()
    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        handlers=handlers,
        force=True
    )

    # sympy шумит на DEBUG
    logging.getLogger('sympy').setLevel(logging.WARNING)
