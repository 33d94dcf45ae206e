"""
精确有理数的解析、格式化以及 p-进赋值
"""
import math
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

from sympy import Rational, multiplicity

from ..errors import CatoError

Number = Union[int, Fraction]


def parse_fraction(text: str) -> Fraction:
    """解析 "p/q" 或整数字符串"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise CatoError(f"Not an exact rational: {text!r}") from e


def parse_vector(text: str) -> Tuple[Fraction, ...]:
    """解析逗号分隔的有理数向量, 例如 "0,1/2" """
    if not text.strip():
        raise CatoError("Empty vector")
    return tuple(parse_fraction(part) for part in text.split(','))


def parse_int_vector(text: str) -> Tuple[int, ...]:
    """解析逗号分隔的整数向量 (根的单根坐标)"""
    values = parse_vector(text)
    if any(v.denominator != 1 for v in values):
        raise CatoError(f"Expected integer coordinates: {text!r}")
    return tuple(int(v) for v in values)


def format_fraction(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(values: Iterable[Number]) -> List[str]:
    return [format_fraction(v) for v in values]


def to_sympy(value: Number) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    """sympy 有理数 -> Fraction"""
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def vp(value: Number, p: int) -> Union[int, float]:
    """
    有理数的 p-进赋值
    Args:
        value: 有理数
        p: 素数
    Returns:
        v_p(value), 零的赋值为 math.inf
    """
    value = Fraction(value)
    if value == 0:
        return math.inf
    return multiplicity(p, abs(value.numerator)) - multiplicity(p, value.denominator)
