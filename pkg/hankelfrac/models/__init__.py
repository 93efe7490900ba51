"""
Модели данных hankelfrac
"""

from hankelfrac.models.field import FieldElement, FieldSpec, inv, multiplicative_order, reduce_mod_p
from hankelfrac.models.polynomial import Polynomial, render_poly
from hankelfrac.models.hfraction import DisplayTerm, HFraction, PartialQuotient, Tail, TailKind
from hankelfrac.models.sequences import (
    EventuallyPeriodicSeq, GraftingReport, GraftingRow, run_length_decode, run_length_encode
)
from hankelfrac.models.triple import (
    NextStepResult, PeelStep, PeriodBound, PeriodicHFracResult, QuadraticCase, QuadraticTriple
)
from hankelfrac.models.job import CheckResult, CommandType, JobSpec, OutputFormat, ReproductionReport

__all__ = [
    'FieldElement',
    'FieldSpec',
    'inv',
    'multiplicative_order',
    'reduce_mod_p',
    'Polynomial',
    'render_poly',
    'DisplayTerm',
    'HFraction',
    'PartialQuotient',
    'Tail',
    'TailKind',
    'EventuallyPeriodicSeq',
    'GraftingReport',
    'GraftingRow',
    'run_length_decode',
    'run_length_encode',
    'NextStepResult',
    'PeelStep',
    'PeriodBound',
    'PeriodicHFracResult',
    'QuadraticCase',
    'QuadraticTriple',
    'CommandType',
    'JobSpec',
    'OutputFormat',
    'CheckResult',
    'ReproductionReport'
]
