"""
Менеджер конфигурации вычислительного движка
"""

import os
import json
import logging
from typing import Dict, Any, Optional
from dataclasses import dataclass
from pathlib import Path


logger = logging.getLogger(__name__)

# Корень репозитория (рядом лежит data/)
PROJECT_ROOT = Path(__file__).resolve().parents[2]


@dataclass
class EngineConfig:
    """Пределы глубины и параметры запуска"""

    # Глубина вычислений
    series_depth: int = 512
    max_quotients: int = 256
    oracle_nmax_field: int = 48
    oracle_nmax_integer: int = 24
    tail_guard: int = 10

    # Запуск
    max_workers: int = 4
    golden_dir: str = 'data/golden'
    log_level: str = 'INFO'

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EngineConfig':
        """Создание конфигурации из словаря с UPPERCASE ключами"""
        fields = cls.__dataclass_fields__
        config_data = {}

        config_data['series_depth'] = int(data.get('SERIES_DEPTH', fields['series_depth'].default))
        config_data['max_quotients'] = int(data.get('MAX_QUOTIENTS', fields['max_quotients'].default))
        config_data['oracle_nmax_field'] = int(data.get('ORACLE_NMAX_FIELD', fields['oracle_nmax_field'].default))
        config_data['oracle_nmax_integer'] = int(data.get('ORACLE_NMAX_INTEGER', fields['oracle_nmax_integer'].default))
        config_data['tail_guard'] = int(data.get('TAIL_GUARD', fields['tail_guard'].default))

        config_data['max_workers'] = int(data.get('MAX_WORKERS', fields['max_workers'].default))
        config_data['golden_dir'] = str(data.get('GOLDEN_DIR', fields['golden_dir'].default))
        config_data['log_level'] = str(data.get('LOG_LEVEL', fields['log_level'].default)).upper()

        return cls(**config_data)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'SERIES_DEPTH': str(self.series_depth),
            'MAX_QUOTIENTS': str(self.max_quotients),
            'ORACLE_NMAX_FIELD': str(self.oracle_nmax_field),
            'ORACLE_NMAX_INTEGER': str(self.oracle_nmax_integer),
            'TAIL_GUARD': str(self.tail_guard),
            'MAX_WORKERS': str(self.max_workers),
            'GOLDEN_DIR': self.golden_dir,
            'LOG_LEVEL': self.log_level,
        }

    def validate(self) -> None:
        """Валидация пределов"""
        limits = {
            'SERIES_DEPTH': self.series_depth,
            'MAX_QUOTIENTS': self.max_quotients,
            'ORACLE_NMAX_FIELD': self.oracle_nmax_field,
            'ORACLE_NMAX_INTEGER': self.oracle_nmax_integer,
            'MAX_WORKERS': self.max_workers,
        }
        bad = [key for key, value in limits.items() if value <= 0]
        if bad:
            raise ValueError(f"Configuration limits must be positive: {', '.join(bad)}")
        if self.tail_guard < 0:
            raise ValueError("TAIL_GUARD must be non-negative")
        if self.log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ValueError(f"Unknown LOG_LEVEL: {self.log_level}")

    def resolve_golden_dir(self) -> Path:
        path = Path(self.golden_dir)
        return path if path.is_absolute() else PROJECT_ROOT / path


class ConfigManager:
    """Менеджер конфигурации: файл > переменные окружения > значения по умолчанию"""

    # Переменная окружения -> ключ конфигурации
    ENV_KEYS = {
        'HANKELFRAC_DEPTH': 'SERIES_DEPTH',
        'HANKELFRAC_MAX_QUOTIENTS': 'MAX_QUOTIENTS',
        'HANKELFRAC_ORACLE_NMAX': 'ORACLE_NMAX_FIELD',
        'HANKELFRAC_MAX_WORKERS': 'MAX_WORKERS',
        'HANKELFRAC_LOG_LEVEL': 'LOG_LEVEL',
    }

    def __init__(self, config_file: Optional[str] = None):
        path = Path(config_file) if config_file else PROJECT_ROOT / 'data' / 'config.json'
        self.config_file = path
        self._config: Optional[EngineConfig] = None

    def _load_from_file(self) -> Dict[str, Any]:
        """Загружает конфигурацию из файла"""
        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    config = json.load(f)
                    logger.debug(f"Loaded config from file: {self.config_file}")
                    return config
            logger.debug(f"Config file does not exist: {self.config_file}")
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Error loading config from file {self.config_file}: {e}")
        return {}

    def _load_from_env(self) -> Dict[str, Any]:
        """Загружает конфигурацию из переменных окружения"""
        env_config = {}
        for env_key, key in self.ENV_KEYS.items():
            value = os.getenv(env_key)
            if value is not None:
                env_config[key] = value
        return env_config

    def get_config(self) -> EngineConfig:
        """
        Получение конфигурации (кэшируется до reload())

        Returns:
            Объект конфигурации EngineConfig
        """
        if self._config is not None:
            return self._config

        file_config = self._load_from_file()
        env_config = self._load_from_env()
        default_dict = EngineConfig().to_dict()

        # file > env > default
        merged_config = {**default_dict, **env_config}
        merged_config.update(file_config)

        config = EngineConfig.from_dict(merged_config)
        config.validate()
        self._config = config
        return config

    def reload(self) -> EngineConfig:
        self._config = None
        return self.get_config()


# Глобальный экземпляр менеджера конфигурации
_config_manager = ConfigManager()


def get_config() -> Dict[str, Any]:
    """Конфигурация в виде словаря"""
    return _config_manager.get_config().to_dict()


def get_config_object() -> EngineConfig:
    return _config_manager.get_config()


def reload_config() -> EngineConfig:
    return _config_manager.reload()


def get_series_depth() -> int:
    return _config_manager.get_config().series_depth


def get_max_quotients() -> int:
    return _config_manager.get_config().max_quotients


def get_oracle_nmax(integer: bool = False) -> int:
    config = _config_manager.get_config()
    return config.oracle_nmax_integer if integer else config.oracle_nmax_field


def get_tail_guard() -> int:
    return _config_manager.get_config().tail_guard


def get_max_workers() -> int:
    return _config_manager.get_config().max_workers


def get_golden_dir() -> Path:
    return _config_manager.get_config().resolve_golden_dir()


def get_log_level() -> str:
    return _config_manager.get_config().log_level
