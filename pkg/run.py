#!/usr/bin/env python3
"""
Точка входа CLI hankelfrac
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from hankelfrac.models.job import JobSpec
from hankelfrac.services.runner import run
from hankelfrac.services.sequences import list_named
from hankelfrac.utils.errors import HankelFracError
from hankelfrac.utils.file_utils import load_json_argument
from hankelfrac.utils.logger import setup_logging


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', dest='output_format', choices=('text', 'json', 'csv'), default='text',
                        help='report format')
    parser.add_argument('--out', help='write the report to this path instead of stdout')
    parser.add_argument('--log-level', help='override LOG_LEVEL')


def _add_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--field', help='F<p> or Q')
    parser.add_argument('--series', help='series JSON or @path/to/series.json')
    parser.add_argument('--named', help='named sequence (see --list-named)')
    parser.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                        help='parameter of the named sequence, repeatable')
    parser.add_argument('--A', dest='A', help='polynomial A of A + B*F + C*F^2 = 0')
    parser.add_argument('--B', dest='B', help='polynomial B')
    parser.add_argument('--C', dest='C', help='polynomial C')
    parser.add_argument('--f0', help='branch: F(0), or a_k when B = 0')


def _add_limits(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--depth', type=int, help='series prefix length (default SERIES_DEPTH)')
    parser.add_argument('--max-quotients', dest='max_quotients', type=int,
                        help='partial quotient limit (default MAX_QUOTIENTS)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hankelfrac',
        description='Hankel continued fractions and Hankel determinants over F_p and Q'
    )
    parser.add_argument('--list-named', action='store_true', help='list named sequences and exit')
    commands = parser.add_subparsers(dest='command')

    expand = commands.add_parser('expand', help='super delta-fraction of a series')
    _add_source(expand)
    _add_limits(expand)
    expand.add_argument('--delta', type=int, default=2)
    _add_common(expand)

    quadratic = commands.add_parser('hfrac-quadratic', help='periodic H-fraction of a quadratic equation')
    _add_source(quadratic)
    quadratic.add_argument('--delta', type=int, default=2)
    _add_common(quadratic)

    hankel = commands.add_parser('hankel', help='Hankel determinants from an H-fraction')
    _add_source(hankel)
    _add_limits(hankel)
    hankel.add_argument('--fraction', help='HFraction JSON or @path (as emitted by --format json)')
    hankel.add_argument('--nmax', type=int)
    _add_common(hankel)

    oracle = commands.add_parser('oracle', help='brute-force Hankel determinants')
    _add_source(oracle)
    oracle.add_argument('--nmax', type=int)
    oracle.add_argument('--ring', help='Z, Q or F<p> (a series over Q is reduced mod p)')
    oracle.add_argument('--offset', type=int, default=0, help='window shift k of H_n^(k)')
    _add_common(oracle)

    reproduce = commands.add_parser('reproduce-paper', help='recompute and compare golden values')
    reproduce.add_argument('--table', '--scope', dest='scope', action='append', default=[],
                           help='golden id, repeatable (default: all)')
    _add_common(reproduce)
    return parser


def _params(pairs: List[str]) -> Dict[str, Any]:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key:
            raise ValueError(f"--param expects KEY=VALUE, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def _fraction(value: Optional[str]) -> Optional[Dict[str, Any]]:
    """--fraction принимает и полный JSON-отчёт hfrac-quadratic/expand"""
    data = load_json_argument(value)
    while isinstance(data, dict) and 'quotients' not in data:
        inner = data.get('fraction') or data.get('result')
        if not isinstance(inner, dict):
            break
        data = inner
    return data


def job_from_args(args: argparse.Namespace) -> JobSpec:
    """Сборка JobSpec из разобранных аргументов"""
    def get(name: str, default: Any = None) -> Any:
        return getattr(args, name, default)

    return JobSpec(
        command=args.command,
        field_name=get('field'),
        series=load_json_argument(get('series')),
        A=get('A'),
        B=get('B'),
        C=get('C'),
        f0=get('f0'),
        named=get('named'),
        params=_params(get('param', [])),
        fraction=_fraction(get('fraction')),
        delta=get('delta', 2),
        depth=get('depth'),
        max_quotients=get('max_quotients'),
        nmax=get('nmax'),
        ring=get('ring'),
        offset=get('offset', 0),
        scope=list(get('scope', [])),
        output_format=args.output_format,
        out=get('out'),
    )


# Значения этих флагов могут начинаться с '-' ("-x+x^5")
_VALUE_FLAGS = ('--A', '--B', '--C', '--f0', '--param')


def _glue_values(argv: List[str]) -> List[str]:
    """--C -x+x^5 -> --C=-x+x^5, иначе argparse примет значение за флаг"""
    glued: List[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            glued.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            glued.append(argv[i])
            i += 1
    return glued


def main(argv: Optional[List[str]] = None) -> int:
    """Разбор аргументов, запуск и отображение исключений в коды завершения"""
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as e:
        # argparse выходит с кодом 2, а 2 зарезервирован за неподдерживаемым случаем
        return 0 if e.code in (0, None) else 1

    if args.list_named:
        for line in list_named():
            print(line)
        return 0
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1

    setup_logging(args.log_level)
    logger = logging.getLogger('hankelfrac')

    try:
        job = job_from_args(args)
        status, text = run(job)
    except HankelFracError as e:
        logger.error(f"{type(e).__name__}: {e}", exc_info=e.exit_code == 3)
        return e.exit_code
    except (ValueError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return 1
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 3

    if not job.out:
        sys.stdout.write(text)
    return status


if __name__ == '__main__':
    sys.exit(main())
