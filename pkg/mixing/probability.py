""" Probabilities of mixing steps, in one of two arithmetic modes.

    In exact mode every probability is a `Fraction`. In numeric mode probabilities are
    `mpmath.mpf` values, and all arithmetic on them happens inside `numeric_context()`,
    which raises the working precision to PRECISION_BITS. Exact probabilities are promoted
    to numeric ones on request, never silently.
"""

from __future__ import annotations
from enum import IntEnum, auto
from fractions import Fraction
from typing import Any, Iterable, Union
import re

import mpmath

# bits of mantissa for numeric mode
PRECISION_BITS = 160

DEFAULT_TOLERANCE = 1e-9

# significant digits of decimals written to documents
DECIMAL_DIGITS = 45

Probability = Union[Fraction, mpmath.mpf]

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class MixingError(Exception):
    pass


class ModeMismatch(MixingError):
    pass


class InvalidProbability(MixingError):
    pass


class ArithmeticMode(IntEnum):
    exact = auto()
    numeric = auto()


def numeric_context():
    return mpmath.workprec(PRECISION_BITS)


def _check_range(p: Probability, text: Any) -> Probability:
    if p < 0 or p > 1:
        raise InvalidProbability(f"Probability {text!r} is outside [0, 1]")
    return p


def parse_probability(text: Any) -> Probability:
    """ Parses "a/b" or an integer into an exact `Fraction`, a decimal string into an
        extended precision `mpf`. Python floats are refused, their binary rounding would
        make an exact verification meaningless.
    """
    if isinstance(text, Fraction):
        return _check_range(text, text)
    if isinstance(text, mpmath.mpf):
        return _check_range(text, text)
    if isinstance(text, bool):
        raise InvalidProbability(f"Probability must be a number, got {text!r}")
    if isinstance(text, int):
        return _check_range(Fraction(text), text)
    if isinstance(text, float):
        raise InvalidProbability(f"Probability {text!r} is a binary float; write it as \"a/b\" or a decimal string")
    if not isinstance(text, str):
        raise InvalidProbability(f"Cannot parse probability {text!r}")
    match = _RATIONAL.match(text)
    if match:
        num, den = int(match.group(1)), int(match.group(2) or 1)
        if den == 0:
            raise InvalidProbability(f"Probability {text!r} has a zero denominator")
        return _check_range(Fraction(num, den), text)
    with numeric_context():
        try:
            value = mpmath.mpf(text.strip())
        except (ValueError, TypeError):
            raise InvalidProbability(f"Cannot parse probability {text!r}")
    if not mpmath.isfinite(value):
        raise InvalidProbability(f"Probability {text!r} is not finite")
    return _check_range(value, text)


def format_probability(p: Probability) -> str:
    if isinstance(p, Fraction):
        if p.denominator == 1:
            return str(p.numerator)
        return f"{p.numerator}/{p.denominator}"
    with numeric_context():
        return mpmath.nstr(p, DECIMAL_DIGITS, strip_zeros=True, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def is_exact(p: Probability) -> bool:
    return isinstance(p, Fraction)


def mode_of(probabilities: Iterable[Probability]) -> ArithmeticMode:
    """ exact when every probability is rational """
    return ArithmeticMode.exact if all(is_exact(p) for p in probabilities) else ArithmeticMode.numeric


def to_mode(p: Probability, mode: ArithmeticMode) -> Probability:
    """ Converts `p` into the arithmetic of `mode`. Only exact -> numeric is allowed. """
    if mode == ArithmeticMode.exact:
        if not isinstance(p, Fraction):
            raise ModeMismatch(f"Probability {format_probability(p)} is a decimal, but exact mode was requested")
        return p
    if isinstance(p, Fraction):
        with numeric_context():
            return mpmath.mpf(p.numerator) / p.denominator
    return p


def one(mode: ArithmeticMode) -> Probability:
    return Fraction(1) if mode == ArithmeticMode.exact else mpmath.mpf(1)


def zero(mode: ArithmeticMode) -> Probability:
    return Fraction(0) if mode == ArithmeticMode.exact else mpmath.mpf(0)
