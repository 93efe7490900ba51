from __future__ import annotations

import io
import json
import logging
import sys

import pytest

from hankelfrac.models.job import OutputFormat
from hankelfrac.services.expansion import expand_prefix
from hankelfrac.services.quadratic import dispatch_theorem11
from hankelfrac.services.sequences import EXAMPLE_TRIPLES
from hankelfrac.utils.config_manager import PROJECT_ROOT, ConfigManager, EngineConfig
from hankelfrac.utils.file_utils import dump_json, load_json_argument, write_report
from hankelfrac.utils.golden_storage import GoldenStorage
from hankelfrac.utils.logger import StderrHandler, setup_logging
from hankelfrac.utils.report import format_kfraction, render, render_csv
from hankelfrac.utils.structured_logger import PipelineLogger, StructuredFormatter

from conftest import F2


# Конфигурация


def test_engine_config_defaults():
    config = EngineConfig()
    config.validate()
    assert config.series_depth == 512
    assert EngineConfig.from_dict(config.to_dict()) == config


@pytest.mark.parametrize('overrides', [{'SERIES_DEPTH': '0'}, {'TAIL_GUARD': '-1'}, {'LOG_LEVEL': 'LOUD'}])
def test_engine_config_validation(overrides):
    with pytest.raises(ValueError):
        EngineConfig.from_dict(overrides).validate()


def test_config_priority(tmp_path, monkeypatch):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'MAX_QUOTIENTS': 64}), encoding='utf-8')
    monkeypatch.setenv('HANKELFRAC_MAX_QUOTIENTS', '32')
    monkeypatch.setenv('HANKELFRAC_DEPTH', '100')

    config = ConfigManager(str(path)).get_config()
    assert config.max_quotients == 64
    assert config.series_depth == 100


def test_shipped_config_leaves_env_keys_open(monkeypatch):
    shipped = json.loads((PROJECT_ROOT / 'data' / 'config.json').read_text(encoding='utf-8'))
    assert not set(shipped) & set(ConfigManager.ENV_KEYS.values())

    for env_key, value in (('HANKELFRAC_MAX_QUOTIENTS', '32'), ('HANKELFRAC_ORACLE_NMAX', '20'),
                           ('HANKELFRAC_MAX_WORKERS', '2'), ('HANKELFRAC_LOG_LEVEL', 'DEBUG')):
        monkeypatch.setenv(env_key, value)
    config = ConfigManager().get_config()
    assert (config.max_quotients, config.oracle_nmax_field, config.max_workers, config.log_level) == (
        32, 20, 2, 'DEBUG'
    )
    assert config.tail_guard == 10


def test_config_missing_or_broken_file(tmp_path):
    assert ConfigManager(str(tmp_path / 'absent.json')).get_config() == EngineConfig()
    broken = tmp_path / 'broken.json'
    broken.write_text('{', encoding='utf-8')
    assert ConfigManager(str(broken)).get_config() == EngineConfig()


def test_config_is_cached_until_reload(tmp_path, monkeypatch):
    manager = ConfigManager(str(tmp_path / 'absent.json'))
    assert manager.get_config().max_workers == 4
    monkeypatch.setenv('HANKELFRAC_MAX_WORKERS', '2')
    assert manager.get_config().max_workers == 4
    assert manager.reload().max_workers == 2


# Логирование


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord('hankelfrac.test', logging.INFO, __file__, 1, 'expanded %d', (3,), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_structured_formatter_json(monkeypatch):
    monkeypatch.setenv('STRUCTURED_LOGS', 'true')
    data = json.loads(StructuredFormatter().format(_record(field='F5', quotients=3, ignored='x')))
    assert data['message'] == 'expanded 3'
    assert data['level'] == 'INFO'
    assert data['field'] == 'F5' and data['quotients'] == 3
    assert 'ignored' not in data


def test_structured_formatter_text():
    text = StructuredFormatter().format(_record(job='hankel'))
    assert text.endswith('[INFO] [hankel] expanded 3')


def test_log_handler_follows_current_stderr(monkeypatch):
    setup_logging('INFO')
    first, second = io.StringIO(), io.StringIO()
    monkeypatch.setattr(sys, 'stderr', first)
    logging.getLogger('hankelfrac.test').info('to first')
    first.close()
    monkeypatch.setattr(sys, 'stderr', second)
    logging.getLogger('hankelfrac.test').info('to second')
    assert 'to second' in second.getvalue()
    assert any(isinstance(h, StderrHandler) for h in logging.getLogger().handlers)


def test_pipeline_logger_counts(caplog):
    pipeline = PipelineLogger('hankelfrac.test.pipeline')
    with caplog.at_level(logging.INFO, logger='hankelfrac.test.pipeline'):
        pipeline.start_session('golden check', 1200)
        pipeline.log_result('a', True, 0.5)
        pipeline.log_result('b', False, 1.0, 'm: expected 1, got 2')
        pipeline.finish_session()
    assert pipeline.failed == 1
    messages = [r.getMessage() for r in caplog.records]
    assert '1,200 items' in messages[0]
    assert any('m: expected 1, got 2' in m for m in messages)
    assert caplog.records[2].levelno == logging.WARNING


# Отчёты и файлы


def test_kfraction_periodic():
    triple, branch = EXAMPLE_TRIPLES['i.2']()
    h = dispatch_theorem11(triple.A, triple.B, triple.C, branch=branch).fraction
    text = format_kfraction(h)
    assert text.startswith('1/(1+x) + (x^2/(1) + ')
    assert text.endswith(' +)*')


def test_kfraction_truncated():
    h = expand_prefix(F2, [1, 1, 0, 1])
    assert format_kfraction(h).endswith(' + ...')


def test_render_formats():
    assert render_csv(('n', 'H_n'), [(0, '1'), (1, '-2')]) == "n,H_n\n0,1\n1,-2\n"
    assert render(OutputFormat.JSON, 't', {'b': 1, 'a': [1, 2]}) == dump_json({'a': [1, 2], 'b': 1})
    text = render(OutputFormat.TEXT, 'hankelfrac 1.0.0 oracle', {'ring': 'Z', 'hankel': ['1', '1'], 'ok': True})
    assert text == "== hankelfrac 1.0.0 oracle ==\nring: Z\nhankel: (1, 1)\nok: yes\n"
    with pytest.raises(ValueError):
        render(OutputFormat.CSV, 'expand', {})


def test_write_report(tmp_path):
    target = write_report("n,H_n\n", tmp_path / 'out' / 'report.csv')
    assert target.read_text(encoding='utf-8') == "n,H_n\n"
    assert not (tmp_path / 'out' / 'report.csv.tmp').exists()


def test_load_json_argument(tmp_path):
    path = tmp_path / 'series.json'
    path.write_text('{"field": "F2"}', encoding='utf-8')
    assert load_json_argument(f"@{path}") == {'field': 'F2'}
    assert load_json_argument('[1, 2]') == [1, 2]
    assert load_json_argument(None) is None
    with pytest.raises(ValueError):
        load_json_argument('{')


def test_golden_storage(tmp_path):
    (tmp_path / 'b.json').write_text('{"id": "x", "kind": "expansion"}', encoding='utf-8')
    (tmp_path / 'a.json').write_text('{"kind": "quadratic"}', encoding='utf-8')
    (tmp_path / 'notes.txt').write_text('skip', encoding='utf-8')
    storage = GoldenStorage(tmp_path)
    assert sorted(storage.load_all()) == ['a', 'x']
    (tmp_path / 'c.json').write_text('{"id": "x"}', encoding='utf-8')
    with pytest.raises(ValueError):
        storage.load_all()
