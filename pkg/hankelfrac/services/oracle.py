"""
Прямое вычисление определителей Ганкеля по коэффициентам ряда

F_p: гауссово исключение по модулю p. Q: целочисленный подъём окна и Bareiss (sympy DomainMatrix над ZZ).
"""

import logging
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from hankelfrac.models.field import FieldElement, FieldSpec, Raw
from hankelfrac.services.series import SeriesHandle
from hankelfrac.utils.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)


def hankel_window(coeffs: Sequence[Raw], n: int, k: int = 0) -> List[List[Raw]]:
    """Матрица (a_{k+i+j}) порядка n"""
    if len(coeffs) < k + 2 * n - 1:
        raise InputError(f"Hankel window of order {n} at offset {k} needs {k + 2 * n - 1} coefficients")
    return [[coeffs[k + i + j] for j in range(n)] for i in range(n)]


def _det_mod_p(matrix: List[List[int]], p: int) -> int:
    n = len(matrix)
    rows = [row[:] for row in matrix]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        lead = rows[col][col]
        det = det * lead % p
        lead_inv = pow(lead, p - 2, p)
        for r in range(col + 1, n):
            factor = rows[r][col] * lead_inv % p
            if factor:
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[col])]
    return det % p


def _det_rational(matrix: List[List[Fraction]]) -> Fraction:
    n = len(matrix)
    scale = 1
    for row in matrix:
        for value in row:
            scale = lcm(scale, Fraction(value).denominator)
    lifted = [[ZZ(int(Fraction(value) * scale)) for value in row] for row in matrix]
    det = DomainMatrix(lifted, (n, n), ZZ).det()
    result = Fraction(int(det), scale ** n)
    if scale == 1 and result.denominator != 1:
        raise InvariantViolation("Integer Hankel determinant came out fractional")
    return result


def hankel_det_from_coeffs(spec: FieldSpec, coeffs: Sequence[Raw], n: int, k: int = 0) -> Raw:
    """H_n^{(k)} по списку коэффициентов; H_0 = 1"""
    if n < 0:
        raise InputError(f"Hankel order must be non-negative, got {n}")
    if n == 0:
        return spec.coerce(1)
    matrix = hankel_window(coeffs, n, k)
    if spec.is_prime_field:
        return _det_mod_p(matrix, spec.p)
    return _det_rational(matrix)


def hankel_det(s: SeriesHandle, n: int, k: int = 0) -> FieldElement:
    """Определитель Ганкеля H_n^{(k)}(s)"""
    coeffs = s.prefix_raw(k + max(2 * n - 1, 0))
    return FieldElement(s.spec, hankel_det_from_coeffs(s.spec, coeffs, n, k))


def hankel_values(spec: FieldSpec, coeffs: Sequence[Raw], n_max: int, k: int = 0) -> List[Raw]:
    """H_0..H_{n_max} по готовому префиксу (сырые значения)"""
    return [hankel_det_from_coeffs(spec, coeffs, n, k) for n in range(n_max + 1)]


def hankel_sequence_bruteforce(s: SeriesHandle, n_max: int, k: int = 0,
                               coeffs: Optional[Sequence[Raw]] = None) -> List[FieldElement]:
    """
    Список H_0..H_{n_max} прямым вычислением каждой матрицы

    Args:
        s: ряд (должен знать k + 2*n_max - 1 коэффициентов)
        n_max: наибольший порядок
        k: сдвиг окна
        coeffs: уже вычисленный префикс, если он есть
    """
    if coeffs is None:
        coeffs = s.prefix_raw(k + max(2 * n_max - 1, 0))
    logger.debug(f"Brute-force Hankel determinants over {s.spec} up to n={n_max} (offset {k})")
    return [FieldElement(s.spec, v) for v in hankel_values(s.spec, coeffs, n_max, k)]
