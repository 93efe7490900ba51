from __future__ import annotations

import json

import pytest

import run as cli
from hankelfrac.models.job import JobSpec
from hankelfrac.services import runner
from hankelfrac.utils.errors import InvariantViolation


def _json(capsys, argv):
    assert cli.main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_quadratic_report(capsys):
    data = _json(capsys, ['hfrac-quadratic', '--field', 'F5', '--A', '-1', '--B', '1-x^4', '--C', '-x+x^5',
                          '--format', 'json'])
    assert (data['case'], data['m'], data['t']) == ('i', 1, 7)
    assert data['hankel'] == "(1,1,1,2,0,2,4,1,4,1,4,2,0,2,1,1)*"
    assert data['hankel_period'] == 16
    assert data['bound']['bound'] == 32


def test_named_quadratic(capsys):
    data = _json(capsys, ['hfrac-quadratic', '--named', 'i.2', '--format', 'json'])
    assert data['field'] == 'F2'
    assert data['hankel_period'] == 10


def test_text_report_has_header(capsys):
    assert cli.main(['expand', '--field', 'F2', '--series', '{"source": {"kind": "rational", "num": "1", '
                                                               '"den": "1+x"}}']) == 0
    out = capsys.readouterr().out
    assert out.startswith('== hankelfrac 1.0.0 expand ==\n')
    assert 'tail: terminated' in out


def test_output_is_deterministic(capsys):
    argv = ['expand', '--named', 'stern', '--depth', '30', '--format', 'json']
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == first


def test_fraction_round_trip(capsys, tmp_path):
    path = tmp_path / 'fraction.json'
    assert cli.main(['hfrac-quadratic', '--named', 'i.1', '--format', 'json', '--out', str(path)]) == 0
    assert capsys.readouterr().out == ''
    data = _json(capsys, ['hankel', '--fraction', f"@{path}", '--nmax', '15', '--format', 'json'])
    assert data['hankel'] == ['1', '1', '1', '2', '0', '2', '4', '1', '4', '1', '4', '2', '0', '2', '1', '1']


def test_oracle_csv(capsys):
    assert cli.main(['oracle', '--named', 'stern', '--ring', 'Z', '--nmax', '3', '--format', 'csv']) == 0
    assert capsys.readouterr().out == "n,H_n\n0,1\n1,1\n2,1\n3,-2\n"


def test_oracle_reduces_rational_series(capsys):
    data = _json(capsys, ['oracle', '--named', 'distinct_partitions', '--ring', 'F2', '--nmax', '3',
                          '--format', 'json'])
    assert data['ring'] == 'F2'
    assert data['hankel'] == ['1', '1', '0', '1']


def test_list_named(capsys):
    assert cli.main(['--list-named']) == 0
    assert 'paperfolding:' in capsys.readouterr().out


@pytest.mark.parametrize('argv', [
    ['expand', '--field', 'F2', '--A', '1+', '--B', '1', '--C', 'x'],
    ['expand', '--named', 'stern', '--format', 'csv'],
    ['expand', '--named', 'no-such-sequence'],
    ['hfrac-quadratic', '--field', 'F2', '--A', '1'],
    ['oracle', '--named', 'rudin_shapiro', '--ring', 'Z'],
    ['hankel', '--fraction', '{"field": "F2", "delta": 1, "quotients": []}'],
    ['hankel', '--nmax', '5', '--fraction', '{"delta": 2, "quotients": []}'],
    ['hankel', '--field', 'F2', '--fraction', '{"delta": 2, "tail": {"kind": "terminated"}}'],
    ['reproduce-paper', '--table', 'table-99'],
    ['expand', '--bogus'],
    [],
])
def test_input_errors_exit_with_one(argv):
    assert cli.main(argv) == 1


def test_unsupported_case_exits_with_two():
    assert cli.main(['hfrac-quadratic', '--field', 'F2', '--A', 'x^2', '--B', '0', '--C', '1']) == 2


def test_invariant_violation_exits_with_three(monkeypatch):
    def broken(job):
        raise InvariantViolation("degree measure grew")

    monkeypatch.setitem(runner.COMMANDS, runner.CommandType.EXPAND, broken)
    assert cli.main(['expand', '--named', 'stern']) == 3


def test_negative_polynomial_values_are_accepted(capsys):
    data = _json(capsys, ['hfrac-quadratic', '--field', 'F2', '--A', '1', '--B', '1+x^4', '--C', '-x-x^5',
                          '--format', 'json'])
    assert data['t'] == 6


def test_reproduce_scope(capsys):
    assert cli.main(['reproduce-paper', '--scope', 'example-2.1']) == 0
    out = capsys.readouterr().out
    assert 'passed: yes' in out
    assert 'status: PASS' in out


def test_fraction_takes_field_from_flag(capsys):
    fraction = '{"delta": 2, "quotients": [{"v": "1", "k": 0, "u": "1"}], "tail": {"kind": "terminated"}}'
    data = _json(capsys, ['hankel', '--field', 'F2', '--nmax', '5', '--fraction', fraction, '--format', 'json'])
    assert data['field'] == 'F2'
    assert data['hankel'] == ['1', '1', '0', '0', '0', '0']


def test_job_defaults_are_independent():
    first = JobSpec(command='expand', field_name='F2')
    second = JobSpec(command='oracle')
    first.params['a'] = 1
    assert second.params == {}
    assert first.scope == []
    assert first.to_dict()['field_name'] == 'F2'
    assert first.to_dict()['command'] == 'expand'
