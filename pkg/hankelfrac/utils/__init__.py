"""
Утилиты hankelfrac: конфигурация, логирование, ошибки, файлы
"""

from hankelfrac.utils.config import (
    get_config, get_config_object, reload_config, get_series_depth, get_max_quotients,
    get_oracle_nmax, get_tail_guard, get_max_workers, get_golden_dir, get_log_level
)
from hankelfrac.utils.errors import (
    HankelFracError, InputError, UnsupportedCaseError, InvariantViolation
)
from hankelfrac.utils.file_utils import write_report, load_json_file, load_json_argument, dump_json
from hankelfrac.utils.golden_storage import GoldenStorage
from hankelfrac.utils.logger import setup_logging
from hankelfrac.utils.structured_logger import StructuredFormatter, PipelineLogger

__all__ = [
    # Config
    'get_config',
    'get_config_object',
    'reload_config',
    'get_series_depth',
    'get_max_quotients',
    'get_oracle_nmax',
    'get_tail_guard',
    'get_max_workers',
    'get_golden_dir',
    'get_log_level',

    # Errors
    'HankelFracError',
    'InputError',
    'UnsupportedCaseError',
    'InvariantViolation',

    # Files
    'write_report',
    'load_json_file',
    'load_json_argument',
    'dump_json',
    'GoldenStorage',

    # Logging
    'setup_logging',
    'StructuredFormatter',
    'PipelineLogger'
]
