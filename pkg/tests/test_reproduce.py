from __future__ import annotations

import json

import pytest

from hankelfrac.services import reproduce
from hankelfrac.services.reproduce import reproduce_paper, run_check
from hankelfrac.utils.config import get_golden_dir
from hankelfrac.utils.errors import InputError
from hankelfrac.utils.golden_storage import GoldenStorage

FAST_IDS = [
    'example-2.1', 'example-2.2', 'example-2.3', 'example-i.1', 'example-i.2',
    'example-iii.1', 'example-iii.2', 'example-iv', 'prop-1.3', 'prop-1.4',
]


@pytest.fixture(scope='module')
def golden():
    return GoldenStorage().load_all()


def test_golden_directory_is_complete(golden):
    assert sorted(golden) == sorted(FAST_IDS + ['corollary-4.1'])


@pytest.mark.parametrize('golden_id', FAST_IDS)
def test_golden_entry(golden, golden_id):
    result = run_check(golden[golden_id])
    assert result.passed, result.mismatches


@pytest.mark.slow
def test_paperfolding_table(golden):
    result = run_check(golden['corollary-4.1'])
    assert result.passed, result.mismatches


def test_reproduce_scope():
    report = reproduce_paper(['example-2.1', 'example-i.2'], max_workers=2)
    assert report.passed
    assert [r.id for r in report.results] == ['example-2.1', 'example-i.2']
    assert report.to_dict()['failed'] == []


def test_unknown_golden_id():
    with pytest.raises(InputError):
        reproduce_paper(['table-99'])


def test_unknown_golden_kind():
    with pytest.raises(InputError):
        run_check({'id': 'x', 'kind': 'mystery'})


def test_tampered_golden_is_reported(tmp_path):
    entry = json.loads((get_golden_dir() / 'example-i.2.json').read_text(encoding='utf-8'))
    entry['expected']['m'] = 2
    (tmp_path / 'example-i.2.json').write_text(json.dumps(entry), encoding='utf-8')

    report = reproduce_paper(golden_dir=tmp_path)
    assert not report.passed
    assert report.failed_ids == ['example-i.2']
    assert "m: expected 2, got 1" in report.results[0].mismatches


def test_library_errors_become_mismatches():
    entry = {
        'id': 'broken', 'kind': 'quadratic',
        'input': {'named': 'stern', 'delta': 2},
        'expected': {'case': 'i'},
    }
    result = run_check(entry)
    assert not result.passed
    assert result.mismatches[0].startswith('UnknownSequenceError')


def test_paperfolding_rows_are_checked_against_oracle(golden, monkeypatch):
    rows = [row for row in golden['corollary-4.1']['rows'] if (row['a'], row['b']) in ((1, 1), (2, 0))]
    entry = {'id': 'corollary-4.1', 'kind': 'paperfolding', 'rows': rows}
    assert run_check(entry).passed

    def flipped(*args, **kwargs):
        values = original(*args, **kwargs)
        return [v + 1 for v in values[:-1]] + values[-1:]

    original = reproduce.hankel_sequence_bruteforce
    monkeypatch.setattr(reproduce, 'hankel_sequence_bruteforce', flipped)
    result = run_check(entry)
    assert not result.passed
    assert any('vs oracle' in mismatch for mismatch in result.mismatches)
