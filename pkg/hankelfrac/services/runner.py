"""
Выполнение одной команды CLI: JobSpec -> (код завершения, отчёт)

Тело отчёта детерминировано: метаданные запуска (версия, команда) идут отдельной
строкой заголовка, временных меток нет.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hankelfrac import __version__
from hankelfrac.models.field import FieldElement, FieldSpec
from hankelfrac.models.hfraction import HFraction, TailKind
from hankelfrac.models.job import CommandType, JobSpec, OutputFormat
from hankelfrac.models.triple import QuadraticTriple
from hankelfrac.services.expansion import expand_super_delta, hankel_from_hfrac
from hankelfrac.services.oracle import hankel_sequence_bruteforce
from hankelfrac.services.periodicity import certified_hankel_period, period_bound_lemma34
from hankelfrac.services.quadratic import dispatch_theorem11
from hankelfrac.services.reproduce import reproduce_paper
from hankelfrac.services.sequences import named_series, named_triple
from hankelfrac.services.series import QuadraticRootSeries, ReducedSeries, SeriesHandle, series_from_spec
from hankelfrac.utils.config import get_oracle_nmax
from hankelfrac.utils.errors import InputError
from hankelfrac.utils.file_utils import write_report
from hankelfrac.utils.poly_parser import parse_poly
from hankelfrac.utils.report import format_kfraction, render

logger = logging.getLogger(__name__)


# Код завершения, когда reproduce-paper нашёл расхождения
EXIT_GOLDEN_MISMATCH = 3


def _field(job: JobSpec) -> FieldSpec:
    if job.field_name is None:
        raise InputError(f"{job.command.value} needs --field")
    return FieldSpec.parse(job.field_name)


def _triple(job: JobSpec) -> QuadraticTriple:
    spec = _field(job)
    polys = []
    for name in ('A', 'B', 'C'):
        text = getattr(job, name)
        polys.append(parse_poly(text, spec) if text is not None else None)
    if any(p is None for p in polys):
        raise InputError("Quadratic input needs all of --A, --B and --C")
    return QuadraticTriple(*polys, delta=job.delta)


def _default_branch(t: QuadraticTriple) -> Any:
    """f0 = -A(0)/B(0), единственный корень при C(0) = 0"""
    spec = t.spec
    b0 = t.B.coefficient(0)
    if t.C.coefficient(0) != 0 or b0 == 0:
        raise InputError("This equation has two or no branches at x=0: pass --f0")
    return spec.neg(spec.div(t.A.coefficient(0), b0))


def build_series(job: JobSpec) -> SeriesHandle:
    """Ряд из --series, --named или тройки --A/--B/--C с ветвью --f0"""
    if job.series is not None:
        spec = FieldSpec.parse(job.field_name) if job.field_name else None
        return series_from_spec(job.series, spec)
    if job.named is not None:
        return named_series(job.named, **job.params)
    if job.has_triple:
        t = _triple(job)
        f0 = job.f0 if job.f0 is not None else _default_branch(t)
        return QuadraticRootSeries(t.A, t.B, t.C, f0)
    raise InputError(f"{job.command.value} needs a series source")


def _header(job: JobSpec) -> str:
    return f"hankelfrac {__version__} {job.command.value}"


def _hankel_rows(values: Sequence[FieldElement]) -> List[Tuple[int, str]]:
    return [(n, str(v)) for n, v in enumerate(values)]


# Команды


def _run_expand(job: JobSpec) -> Tuple[int, str]:
    series = build_series(job)
    h = expand_super_delta(series, job.delta, max_quotients=job.max_quotients, depth=job.depth)
    count = len(h.quotients)
    data: Dict[str, Any] = {
        'field': h.spec.name,
        'delta': h.delta,
        'series': f"{series.kind} series over {series.spec}",
        'quotients': count,
        'tail': str(h.tail),
        'k': [q.k for q in h.quotients],
        'v': [str(q.v) for q in h.quotients],
        's': h.ladder(count),
        'kfraction': format_kfraction(h),
        'fraction': h.to_dict(),
    }
    logger.info(f"📐 Expanded {series.kind} series: {count} quotients, {h.tail}",
                extra={'field': h.spec.name, 'quotients': count})
    return 0, render(job.output_format, _header(job), data)


def _certified_section(h: HFraction) -> Optional[Dict[str, Any]]:
    """Оценка периода и сертифицированная H(F), если дробь их определяет"""
    if h.delta != 2 or h.tail.kind == TailKind.TRUNCATED:
        return None
    section: Dict[str, Any] = {}
    if h.is_periodic and h.spec.is_prime_field:
        section['bound'] = period_bound_lemma34(h).to_dict()
    seq = certified_hankel_period(h)
    section['hankel'] = str(seq)
    section['hankel_period'] = len(seq.period)
    section['hankel_preperiod'] = len(seq.preperiod)
    return section


def _run_hfrac_quadratic(job: JobSpec) -> Tuple[int, str]:
    if job.named is not None:
        triple, branch = named_triple(job.named, **job.params)
    else:
        triple, branch = _triple(job), None
    if job.f0 is not None:
        branch = job.f0

    result = dispatch_theorem11(triple.A, triple.B, triple.C, job.delta, branch)
    h = result.fraction
    data: Dict[str, Any] = {
        'field': h.spec.name,
        'delta': h.delta,
        'triple': triple.to_dict(),
        'case': result.case.value,
        'm': result.m,
        't': result.t,
        'k': [q.k for q in h.quotients],
        'kfraction': format_kfraction(h),
    }
    certified = _certified_section(h)
    if certified:
        data.update(certified)
    data['result'] = result.to_dict()
    logger.info(f"♻️ Quadratic case ({result.case.value}): m={result.m}, t={result.t}",
                extra={'field': h.spec.name, 'quotients': len(h.quotients)})
    return 0, render(job.output_format, _header(job), data)


def _run_hankel(job: JobSpec) -> Tuple[int, str]:
    if job.fraction is not None:
        h = HFraction.from_dict(job.fraction, FieldSpec.parse(job.field_name) if job.field_name else None)
    else:
        h = expand_super_delta(build_series(job), 2, max_quotients=job.max_quotients, depth=job.depth)
    if h.delta != 2:
        raise InputError(f"Hankel determinants need an H-fraction (delta = 2), got delta = {h.delta}")

    data: Dict[str, Any] = {'field': h.spec.name, 'tail': str(h.tail)}
    if h.tail.kind == TailKind.TRUNCATED:
        n_max = job.nmax if job.nmax is not None else h.ladder(len(h.quotients))[-1]
        values = hankel_from_hfrac(h, n_max)
    else:
        seq = certified_hankel_period(h)
        n_max = job.nmax if job.nmax is not None else get_oracle_nmax()
        values = [FieldElement(h.spec, v) for v in seq.prefix(n_max + 1)]
        data['sequence'] = str(seq)
    data['n_max'] = n_max
    data['hankel'] = [str(v) for v in values]
    return 0, render(job.output_format, _header(job), data, ('n', 'H_n'), _hankel_rows(values))


def _integral(series: SeriesHandle, n: int) -> None:
    for i, c in enumerate(series.prefix_raw(n)):
        if Fraction(c).denominator != 1:
            raise InputError(f"Ring Z needs integer coefficients, coefficient {i} is {c}")


def _run_oracle(job: JobSpec) -> Tuple[int, str]:
    series = build_series(job)
    ring = (job.ring or series.spec.name).strip()
    integer = ring.upper() == 'Z'
    n_max = job.nmax if job.nmax is not None else get_oracle_nmax(integer=integer)

    if integer or ring.upper() == 'Q':
        if series.spec.is_prime_field:
            raise InputError(f"Ring {ring} needs a series over Q, got {series.spec}")
        if integer:
            _integral(series, job.offset + max(2 * n_max - 1, 0))
    else:
        target = FieldSpec.parse(ring)
        if target != series.spec:
            if series.spec.is_prime_field:
                raise InputError(f"Cannot move a series over {series.spec} to {target}")
            series = ReducedSeries(series, target.p)

    values = hankel_sequence_bruteforce(series, n_max, job.offset)
    data = {
        'ring': 'Z' if integer else series.spec.name,
        'offset': job.offset,
        'n_max': n_max,
        'hankel': [str(v) for v in values],
    }
    return 0, render(job.output_format, _header(job), data, ('n', 'H_n'), _hankel_rows(values))


def _run_reproduce(job: JobSpec) -> Tuple[int, str]:
    report = reproduce_paper(job.scope or None)
    if job.output_format == OutputFormat.JSON:
        data = report.to_dict()
    else:
        data = {
            'passed': report.passed,
            'total': len(report.results),
            'failed': report.failed_ids,
            'results': [
                {'id': r.id, 'status': 'PASS' if r.passed else 'FAIL', 'mismatches': r.mismatches}
                for r in report.results
            ],
        }
    status = 0 if report.passed else EXIT_GOLDEN_MISMATCH
    return status, render(job.output_format, _header(job), data)


COMMANDS = {
    CommandType.EXPAND: _run_expand,
    CommandType.HFRAC_QUADRATIC: _run_hfrac_quadratic,
    CommandType.HANKEL: _run_hankel,
    CommandType.ORACLE: _run_oracle,
    CommandType.REPRODUCE_PAPER: _run_reproduce,
}


def run(job: JobSpec) -> Tuple[int, str]:
    """
    Выполнение задания

    Ошибки библиотеки (HankelFracError) пробрасываются, код завершения
    берётся из exit_code исключения.

    Returns:
        (код завершения, текст отчёта); при job.out отчёт также записан в файл
    """
    try:
        job.validate()
    except ValueError as e:
        raise InputError(str(e)) from e

    logger.debug(f"Running {job.command.value}", extra={'job': job.command.value})
    status, text = COMMANDS[job.command](job)
    if job.out:
        path = write_report(text, job.out)
        logger.info(f"💾 Report saved to {path}", extra={'job': job.command.value})
    return status, text
