"""
Иерархия исключений hankelfrac

Каждый класс несёт код завершения CLI:
1 - ошибка входных данных, 2 - неподдерживаемый случай, 3 - нарушение внутреннего инварианта.
"""

from typing import Optional


class HankelFracError(Exception):
    """Базовое исключение библиотеки"""

    exit_code: int = 3


class InputError(HankelFracError, ValueError):
    """Некорректные входные данные или нарушенное предусловие"""

    exit_code = 1


class FieldMismatchError(InputError):
    """Операнды принадлежат разным полям"""


class FieldDivisionByZero(InputError, ZeroDivisionError):
    """Деление на ноль в поле"""


class NonReducibleError(InputError):
    """Знаменатель делится на p (p-адический полюс)"""


class PolynomialSyntaxError(InputError):
    """Синтаксическая ошибка в записи многочлена"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotDivisibleError(InputError):
    """Многочлен не делится нацело на степень x"""


class InsufficientDataError(InputError):
    """Запрошено больше коэффициентов, чем известно источнику"""


class InvalidBranchError(InputError):
    """f0 не удовлетворяет свободному члену уравнения"""


class UnsolvableBranchError(InputError):
    """Ведущий линейный коэффициент B0 + 2*C0*f0 не обратим"""


class NoSquareRootError(InputError):
    """Квадратный корень ряда не существует"""


class PreconditionError(InputError):
    """Нарушено предусловие алгоритма"""


class InsufficientQuotientsError(InputError):
    """Неполных частных недостаточно для запрошенной глубины"""


class UnknownSequenceError(InputError):
    """Неизвестный идентификатор последовательности или примера"""


class PeriodSearchError(InputError):
    """Префикс слишком короткий для поиска периода"""


class UnsupportedCaseError(HankelFracError):
    """Уравнение не подпадает ни под один поддерживаемый случай"""

    exit_code = 2


class InvariantViolation(HankelFracError):
    """Внутренняя несогласованность: признак ошибки в реализации"""

    exit_code = 3
