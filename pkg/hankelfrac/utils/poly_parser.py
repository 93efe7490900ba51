"""
Разбор многочленов из CLI и JSON

Грамматика (пробелы игнорируются):
    poly  := [sign] term (sign term)*
    term  := coeff ['*'] [xpart] | xpart
    coeff := INT ['/' INT]
    xpart := 'x' ['^' INT]
"""

import re
from fractions import Fraction
from typing import Dict, List, Tuple

from hankelfrac.models.field import FieldSpec
from hankelfrac.models.polynomial import Polynomial
from hankelfrac.utils.errors import NonReducibleError, PolynomialSyntaxError

_TOKEN = re.compile(r'\s*(?:(\d+)|(\S))')


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    for match in _TOKEN.finditer(text):
        if match.group(1) is not None:
            tokens.append(('INT', match.group(1), match.start(1)))
        elif match.group(2) is not None:
            char = match.group(2)
            if char in '+-*/^xX':
                tokens.append((char.lower(), char, match.start(2)))
            else:
                raise PolynomialSyntaxError(f"Unexpected character '{char}'", match.start(2))
    tokens.append(('END', '', len(text)))
    return tokens


class _Parser:
    """Рекурсивный спуск по списку токенов"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> Tuple[str, str, int]:
        token = self.peek()
        if token[0] != kind:
            expected = 'integer' if kind == 'INT' else f"'{kind}'"
            found = 'end of input' if token[0] == 'END' else f"'{token[1]}'"
            raise PolynomialSyntaxError(f"Expected {expected}, found {found}", token[2])
        self.pos += 1
        return token

    def parse(self) -> Dict[int, Fraction]:
        terms: Dict[int, Fraction] = {}
        sign = 1
        kind = self.peek()[0]
        if kind in ('+', '-'):
            sign = -1 if kind == '-' else 1
            self.pos += 1
        while True:
            coeff, exponent = self.term()
            terms[exponent] = terms.get(exponent, Fraction(0)) + sign * coeff
            kind = self.peek()[0]
            if kind == 'END':
                return terms
            if kind not in ('+', '-'):
                token = self.peek()
                raise PolynomialSyntaxError(f"Expected '+' or '-', found '{token[1]}'", token[2])
            sign = -1 if kind == '-' else 1
            self.pos += 1

    def term(self) -> Tuple[Fraction, int]:
        kind = self.peek()[0]
        if kind == 'INT':
            coeff = self.coefficient()
            kind = self.peek()[0]
            if kind == '*':
                self.pos += 1
                return coeff, self.xpart()
            if kind == 'x':
                return coeff, self.xpart()
            return coeff, 0
        if kind == 'x':
            return Fraction(1), self.xpart()
        token = self.peek()
        found = 'end of input' if kind == 'END' else f"'{token[1]}'"
        raise PolynomialSyntaxError(f"Expected a term, found {found}", token[2])

    def coefficient(self) -> Fraction:
        numerator = int(self.take('INT')[1])
        if self.peek()[0] == '/':
            self.pos += 1
            token = self.take('INT')
            denominator = int(token[1])
            if denominator == 0:
                raise PolynomialSyntaxError("Zero denominator", token[2])
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def xpart(self) -> int:
        self.take('x')
        if self.peek()[0] == '^':
            self.pos += 1
            return int(self.take('INT')[1])
        return 1


def parse_poly(text: str, spec: FieldSpec) -> Polynomial:
    """Разбор текстовой записи в канонический многочлен над полем spec"""
    if text is None or not str(text).strip():
        raise PolynomialSyntaxError("Empty polynomial", 0)
    terms = _Parser(str(text)).parse()
    degree = max(terms)
    values = [Fraction(0)] * (degree + 1)
    for exponent, coeff in terms.items():
        values[exponent] = coeff
    try:
        return Polynomial(spec, tuple(values))
    except NonReducibleError as e:
        raise NonReducibleError(f"Polynomial '{text}' is not defined over {spec}: {e}") from e
