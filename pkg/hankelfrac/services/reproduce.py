"""
Сверка с эталонными значениями (команда reproduce-paper)

Каждый эталон пересчитывается с нуля и сравнивается с data/golden/<id>.json.
Независимые эталоны считаются в пуле потоков, результаты собираются в порядке id.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from hankelfrac.models.field import FieldSpec
from hankelfrac.models.hfraction import HFraction
from hankelfrac.models.job import CheckResult, ReproductionReport
from hankelfrac.models.sequences import EventuallyPeriodicSeq, run_length_decode, run_length_encode
from hankelfrac.services.expansion import eval_hfrac_raw, expand_super_delta, hankel_from_hfrac
from hankelfrac.services.oracle import hankel_sequence_bruteforce
from hankelfrac.services.periodicity import certified_hankel_period, period_bound_lemma34
from hankelfrac.services.quadratic import dispatch_theorem11, hfrac_quadratic
from hankelfrac.services.sequences import (
    example_series, named_triple, paperfolding_series, rudin_shapiro_series, rudin_shapiro_triples,
    stern_family
)
from hankelfrac.services.series import QuadraticRootSeries, SeriesHandle, series_from_spec
from hankelfrac.utils.config import get_max_workers
from hankelfrac.utils.errors import HankelFracError, InputError
from hankelfrac.utils.golden_storage import GoldenStorage
from hankelfrac.utils.structured_logger import PipelineLogger

logger = logging.getLogger(__name__)

# Глубина сверки ряда с дробью и дроби с оракулом
SERIES_CHECK_DEPTH = 60
ORACLE_CHECK_NMAX = 40
DUAL_CHECK_DEPTH = 200


class _Mismatches:
    """Накопитель расхождений «ожидалось / получено»"""

    def __init__(self):
        self.items: List[str] = []

    def compare(self, label: str, expected: Any, got: Any) -> None:
        if expected != got:
            self.items.append(f"{label}: expected {expected}, got {got}")

    def compare_prefix(self, label: str, expected: Sequence, got: Sequence) -> None:
        if len(got) < len(expected):
            self.items.append(f"{label}: expected {len(expected)} entries, got only {len(got)}")
            return
        self.compare(label, list(expected), list(got[:len(expected)]))


def _display(h: HFraction, count: int) -> List[list]:
    return [list(term.as_tuple()) for term in h.display_terms(count)]


def _expected_sequence(spec: FieldSpec, data: Dict[str, Any]) -> Dict[str, Any]:
    """Ожидаемая последовательность H: строка '1,1,(0)*' или run-length период"""
    if 'hankel' in data:
        return {'text': data['hankel']}
    expected: Dict[str, Any] = {'preperiod': [str(v) for v in data.get('preperiod', [])]}
    if 'period_rle' in data:
        expected['period'] = [spec.format_raw(v) for v in run_length_decode(data['period_rle'], spec)]
    else:
        expected['period_length'] = data['period_length']
        expected['head'] = data['head_rle']
        expected['tail'] = data['tail_rle']
    return expected


def _compare_sequence(found: _Mismatches, label: str, seq: EventuallyPeriodicSeq, data: Dict[str, Any]) -> None:
    expected = _expected_sequence(seq.spec, data)
    if 'text' in expected:
        found.compare(label, expected['text'], str(seq))
        return
    found.compare(f"{label} preperiod", expected['preperiod'], seq.formatted(seq.preperiod))
    if 'period' in expected:
        found.compare(f"{label} period", run_length_encode(expected['period']),
                      run_length_encode(seq.formatted(seq.period)))
        return
    period = seq.formatted(seq.period)
    found.compare(f"{label} period length", expected['period_length'], len(period))
    head = run_length_decode(expected['head'], seq.spec)
    tail = run_length_decode(expected['tail'], seq.spec)
    found.compare(f"{label} head", expected['head'], run_length_encode(period[:len(head)]))
    found.compare(f"{label} tail", expected['tail'], run_length_encode(period[len(period) - len(tail):]))


def _oracle_agreement(found: _Mismatches, label: str, seq: EventuallyPeriodicSeq, series: SeriesHandle,
                      n_max: int = ORACLE_CHECK_NMAX) -> None:
    brute = [v.value for v in hankel_sequence_bruteforce(series, n_max)]
    found.compare(f"{label} vs oracle", seq.formatted(brute), seq.formatted(seq.prefix(n_max + 1)))


# Проверки по видам эталонов


def check_expansion(entry: Dict[str, Any]) -> CheckResult:
    """Разложение ряда по префиксу: k, v, s, запись уровней, H_n и сверка с оракулом"""
    spec_input, expected = entry['input'], entry['expected']
    series = series_from_spec(spec_input['series'])
    h = expand_super_delta(series, spec_input.get('delta', 2), depth=spec_input.get('depth'))
    found = _Mismatches()

    count = len(h.quotients)
    found.compare_prefix('k', expected.get('k', []), [q.k for q in h.quotients])
    found.compare_prefix('v', expected.get('v', []), [str(q.v) for q in h.quotients])
    found.compare_prefix('s', expected.get('s', []), h.ladder(count))
    found.compare_prefix('display', expected.get('display', []), _display(h, count))

    hankel = expected.get('hankel', [])
    if hankel:
        n_max = len(hankel) - 1
        values = [str(v) for v in hankel_from_hfrac(h, n_max)]
        found.compare('hankel', hankel, values)
        found.compare('hankel vs oracle', hankel, [str(v) for v in hankel_sequence_bruteforce(series, n_max)])

    details = {'quotients': count, 'tail': str(h.tail)}
    return CheckResult(entry['id'], not found.items, found.items, details)


def check_quadratic(entry: Dict[str, Any]) -> CheckResult:
    """Пример с квадратным уравнением: случай, снятая голова, дробь, оценка периода, H(F)"""
    spec_input, expected = entry['input'], entry['expected']
    name = spec_input['named']
    triple, branch = named_triple(name)
    result = dispatch_theorem11(triple.A, triple.B, triple.C, spec_input.get('delta', 2), branch)
    h = result.fraction
    found = _Mismatches()

    found.compare('case', expected.get('case'), result.case.value)
    for key in ('m', 't'):
        if key in expected:
            found.compare(key, expected[key], getattr(result, key))
    if 'k' in expected:
        found.compare('k', expected['k'], [q.k for q in h.unrolled(len(expected['k']))])
    if 'display' in expected:
        found.compare('display', expected['display'], _display(h, len(expected['display'])))
    if 'transformed' in expected:
        transformed = result.peel[0].transformed.to_dict() if result.peel else None
        if transformed is not None:
            transformed.pop('delta')
        found.compare('transformed', expected['transformed'], transformed)

    series = example_series(name)
    found.compare('series', series.prefix_raw(SERIES_CHECK_DEPTH), eval_hfrac_raw(h, SERIES_CHECK_DEPTH))

    details: Dict[str, Any] = {'fraction': h.to_dict()}
    if 'bound' in expected:
        bound = period_bound_lemma34(h).to_dict()
        found.compare('bound', expected['bound'], bound)
        details['bound'] = bound
    seq = certified_hankel_period(h)
    if 'hankel' in expected:
        _compare_sequence(found, 'hankel', seq, expected)
    _oracle_agreement(found, 'hankel', seq, series)
    details['hankel'] = str(seq)
    return CheckResult(entry['id'], not found.items, found.items, details)


def check_paperfolding(entry: Dict[str, Any]) -> CheckResult:
    """Таблица H(G_{a,b}) над F_2 и сверка начала каждой строки с оракулом"""
    found = _Mismatches()
    details = {}
    for row in entry['rows']:
        a, b = row['a'], row['b']
        label = f"G({a},{b})"
        series, triple = paperfolding_series(a, b)
        root = QuadraticRootSeries(triple.A, triple.B, triple.C, 1)
        found.compare(f"{label} generator vs equation", series.prefix_raw(DUAL_CHECK_DEPTH),
                      root.prefix_raw(DUAL_CHECK_DEPTH))
        seq = certified_hankel_period(hfrac_quadratic(triple).fraction)
        _compare_sequence(found, label, seq, row)
        _oracle_agreement(found, label, seq, series)
        details[label] = len(seq.period)
    return CheckResult(entry['id'], not found.items, found.items, {'period_lengths': details})


def check_rudin_shapiro(entry: Dict[str, Any]) -> CheckResult:
    """H(f_s) mod 2 для сдвигов ряда Рудина-Шапиро"""
    found = _Mismatches()
    triples = rudin_shapiro_triples()
    details = {}
    for row in entry['rows']:
        shift = row['shift']
        label = f"f{shift}"
        triple = triples[shift]
        series = rudin_shapiro_series(shift)
        root = QuadraticRootSeries(triple.A, triple.B, triple.C, triple.spec.neg(triple.A.coefficient(0)))
        found.compare(f"{label} generator vs equation", series.prefix_raw(DUAL_CHECK_DEPTH),
                      root.prefix_raw(DUAL_CHECK_DEPTH))
        seq = certified_hankel_period(hfrac_quadratic(triple).fraction)
        _compare_sequence(found, label, seq, row)
        _oracle_agreement(found, label, seq, series)
        details[label] = str(seq)
    return CheckResult(entry['id'], not found.items, found.items, details)


def check_grafting(entry: Dict[str, Any]) -> CheckResult:
    """Прививка для рядов Штерна: H(G) mod 2 и H_n/2^(n-2) mod 2 по оракулу над Z"""
    expected = entry['expected']
    found = _Mismatches()
    odd = set(expected['odd_residues'])
    details = {}
    for report in stern_family(n_max=expected['n_max']):
        found.compare(f"{report.name} grafted hankel", expected['grafted_hankel'], str(report.grafted_hankel))
        found.compare(f"{report.name} grafted series vs root", True, report.grafted_matches_root)
        parities = [row.scaled_parity for row in report.rows]
        wanted = [1 if row.n % 4 in odd else 0 for row in report.rows]
        found.compare(f"{report.name} H_n/2^(n-2) mod 2", wanted, parities)
        details[report.name] = report.to_dict()
    return CheckResult(entry['id'], not found.items, found.items, details)


CHECKERS: Dict[str, Callable[[Dict[str, Any]], CheckResult]] = {
    'expansion': check_expansion,
    'quadratic': check_quadratic,
    'paperfolding': check_paperfolding,
    'rudin_shapiro': check_rudin_shapiro,
    'grafting': check_grafting,
}


def run_check(entry: Dict[str, Any]) -> CheckResult:
    """Одна сверка; исключения библиотеки становятся содержимым отчёта"""
    checker = CHECKERS.get(entry.get('kind'))
    if checker is None:
        raise InputError(f"Golden entry {entry.get('id')!r} has unknown kind {entry.get('kind')!r}")
    try:
        return checker(entry)
    except HankelFracError as e:
        logger.error(f"Check {entry['id']} raised {type(e).__name__}: {e}")
        return CheckResult(entry['id'], False, [f"{type(e).__name__}: {e}"])


def reproduce_paper(scope: Optional[Sequence[str]] = None, golden_dir: Optional[Path] = None,
                    max_workers: Optional[int] = None) -> ReproductionReport:
    """
    Пересчёт эталонов

    Args:
        scope: список id (по умолчанию все эталоны)
        golden_dir: каталог эталонов (по умолчанию из конфигурации)
        max_workers: размер пула (по умолчанию из конфигурации)

    Returns:
        ReproductionReport в порядке id
    """
    entries = GoldenStorage(golden_dir).load_all()
    ids = sorted(entries) if not scope else list(scope)
    unknown = [golden_id for golden_id in ids if golden_id not in entries]
    if unknown:
        raise InputError(f"Unknown golden ids: {', '.join(unknown)}; known: {', '.join(sorted(entries))}")

    session = PipelineLogger()
    session.start_session('reproduce-paper', len(ids))

    def timed(golden_id: str) -> CheckResult:
        started = time.monotonic()
        result = run_check(entries[golden_id])
        elapsed = time.monotonic() - started
        detail = '; '.join(result.mismatches[:3])
        session.log_result(golden_id, result.passed, elapsed, detail)
        return result

    workers = max_workers or get_max_workers()
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(timed, ids))

    session.finish_session()
    return ReproductionReport(results)
