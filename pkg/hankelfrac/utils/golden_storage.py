import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from hankelfrac.utils.file_utils import list_json_files, load_json_file


class GoldenStorage:
    """Эталонные значения: один JSON-файл на воспроизводимый результат"""

    def __init__(self, golden_dir: Optional[Path] = None):
        if golden_dir is None:
            from hankelfrac.utils.config import get_golden_dir
            golden_dir = get_golden_dir()
        self.golden_dir = Path(golden_dir)
        self.logger = logging.getLogger(__name__)

    def load_all(self) -> Dict[str, Dict[str, Any]]:
        """Все эталоны, ключ - id из файла"""
        entries: Dict[str, Dict[str, Any]] = {}
        for path in list_json_files(self.golden_dir):
            try:
                data = load_json_file(path)
            except (OSError, json.JSONDecodeError) as e:
                self.logger.error(f"Error loading golden file {path}: {e}")
                raise
            golden_id = data.get('id', path.stem)
            if golden_id in entries:
                raise ValueError(f"Duplicate golden id {golden_id!r} in {path}")
            entries[golden_id] = data
        self.logger.debug(f"Loaded {len(entries)} golden entries from {self.golden_dir}")
        return entries

