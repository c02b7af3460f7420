"""Text form of exact rationals: always "p/q" with q > 0 and gcd(|p|, q) = 1."""
from __future__ import annotations

import re
from fractions import Fraction

_Q = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def fmt_q(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def pretty_q(x: Fraction | int) -> str:
    """Like fmt_q but integers print without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else fmt_q(x)


def parse_q(text: str) -> Fraction:
    m = _Q.match(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))
