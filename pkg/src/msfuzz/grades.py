"""Exact membership grades.

Grades are plain ``fractions.Fraction`` values restricted to [0, 1].
Decimal literals are converted exactly (``0.7`` becomes ``7/10``), so grade
comparisons throughout the package are exact equalities.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GradeOutOfRange

Grade = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def ensure_grade(value: Fraction) -> Fraction:
    """Validate that a rational lies in the unit interval."""
    if not (ZERO <= value <= ONE):
        raise GradeOutOfRange(f"grade {value} outside [0, 1]")
    return value


def parse_grade(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or an exact decimal such as ``0.7``."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise GradeOutOfRange(f"cannot parse grade {text!r}: {exc}") from None
    return ensure_grade(value)


def format_grade(value: Fraction) -> str:
    """Canonical text form: lowest-terms ``p/q``, or a bare integer."""
    return str(value)
