"""
Модуль конфигурации (тонкий слой над ConfigManager)

Сервисы импортируют геттеры отсюда, не завися от устройства менеджера.
"""

from hankelfrac.utils.config_manager import (
    get_config,
    get_config_object,
    reload_config,
    get_series_depth,
    get_max_quotients,
    get_oracle_nmax,
    get_tail_guard,
    get_max_workers,
    get_golden_dir,
    get_log_level
)

__all__ = [
    'get_config',
    'get_config_object',
    'reload_config',
    'get_series_depth',
    'get_max_quotients',
    'get_oracle_nmax',
    'get_tail_guard',
    'get_max_workers',
    'get_golden_dir',
    'get_log_level'
]
