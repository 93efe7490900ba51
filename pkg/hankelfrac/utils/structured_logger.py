"""
Структурированное логирование для hankelfrac
"""

import logging
import json
import os
import time
from datetime import datetime
from typing import Optional

import humanize


class StructuredFormatter(logging.Formatter):
    """Форматтер для структурированного логирования"""

    EXTRA_FIELDS = ('field', 'job', 'quotients', 'depth', 'period', 'elapsed_time')

    def format(self, record: logging.LogRecord) -> str:
        """Форматирование записи лога"""
        log_data = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
        }

        for name in self.EXTRA_FIELDS:
            if hasattr(record, name):
                log_data[name] = getattr(record, name)
        if record.exc_info:
            log_data['exception'] = self.formatException(record.exc_info)

        if os.getenv('STRUCTURED_LOGS', 'false').lower() == 'true':
            return json.dumps(log_data, ensure_ascii=False, default=str)

        parts = [f"[{log_data['timestamp']}]", f"[{log_data['level']}]"]
        if 'job' in log_data:
            parts.append(f"[{log_data['job']}]")
        parts.append(log_data['message'])
        text = ' '.join(parts)
        if 'exception' in log_data:
            text += '\n' + log_data['exception']
        return text


class PipelineLogger:
    """Логгер сессии длинного прогона (воспроизведение таблиц, итерации HFrac)"""

    def __init__(self, logger_name: str = 'hankelfrac.services.reproduce'):
        self.logger = logging.getLogger(logger_name)
        self._start_time: Optional[float] = None
        self._total: int = 0
        self._done: int = 0
        self._passed: int = 0
        self._failed: int = 0

    def start_session(self, title: str, total: int) -> None:
        """Начало сессии"""
        self._start_time = time.monotonic()
        self._total = total
        self._done = self._passed = self._failed = 0
        self.logger.info(
            f"🚀 {title}: {humanize.intcomma(total)} items",
            extra={'job': title}
        )

    def log_step(self, name: str, message: str, **extra) -> None:
        """Промежуточный шаг внутри элемента"""
        self.logger.debug(f"🔹 {message}", extra={'job': name, **extra})

    def log_result(self, name: str, passed: bool, elapsed: float, detail: str = '') -> None:
        """Итог одного элемента"""
        self._done += 1
        if passed:
            self._passed += 1
        else:
            self._failed += 1
        mark = '✅' if passed else '❌'
        message = f"{mark} {name} [{self._done}/{self._total}] in {elapsed:.2f}s"
        if detail:
            message += f" - {detail}"
        level = logging.INFO if passed else logging.WARNING
        self.logger.log(level, message, extra={'job': name, 'elapsed_time': elapsed})

    def finish_session(self) -> None:
        """Завершение сессии"""
        elapsed = time.monotonic() - self._start_time if self._start_time else 0.0
        self.logger.info(
            f"🏁 Finished: ✅ {humanize.intcomma(self._passed)} passed | "
            f"❌ {humanize.intcomma(self._failed)} failed | "
            f"⏱ {humanize.naturaldelta(elapsed)}",
            extra={'elapsed_time': elapsed}
        )

    @property
    def failed(self) -> int:
        return self._failed
