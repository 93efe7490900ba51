"""
hankelfrac - точная арифметика ганкелевых непрерывных дробей (супер delta-дробей)
над F_p и Q: разложение рядов, определители Ганкеля, периодичность для квадратных уравнений
"""

__version__ = '1.0.0'

from hankelfrac.services.runner import run
from hankelfrac.services.reproduce import reproduce_paper

__all__ = ['run', 'reproduce_paper']
