"""
Вычислительные сервисы hankelfrac
"""

from hankelfrac.services.series import SeriesHandle, series_from_spec, quadratic_residual
from hankelfrac.services.oracle import hankel_det, hankel_sequence_bruteforce
from hankelfrac.services.expansion import (
    expand_super_delta, eval_hfrac, hankel_from_hfrac, lemma22_reduce, jfrac_expand
)
from hankelfrac.services.quadratic import next_abc, hfrac_quadratic, dispatch_theorem11, super1_quadratic
from hankelfrac.services.periodicity import (
    detect_eventual_period, period_bound_lemma34, certified_hankel_period
)
from hankelfrac.services.sequences import named_series, named_triple, list_named, stern_family
from hankelfrac.services.reproduce import reproduce_paper
from hankelfrac.services.runner import run

__all__ = [
    'SeriesHandle',
    'series_from_spec',
    'quadratic_residual',
    'hankel_det',
    'hankel_sequence_bruteforce',
    'expand_super_delta',
    'eval_hfrac',
    'hankel_from_hfrac',
    'lemma22_reduce',
    'jfrac_expand',
    'next_abc',
    'hfrac_quadratic',
    'dispatch_theorem11',
    'super1_quadratic',
    'detect_eventual_period',
    'period_bound_lemma34',
    'certified_hankel_period',
    'named_series',
    'named_triple',
    'list_named',
    'stern_family',
    'reproduce_paper',
    'run'
]
