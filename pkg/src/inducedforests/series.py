"""Exact truncated power series with rational coefficients.

Coefficients are held as integer numerators over one shared denominator, so
products are integer convolutions. Nonnegative operands use Kronecker
substitution (one big-integer product), which keeps the powers needed for
``n`` in the hundreds to well under a second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["SeriesCoefficients"]


def _pack(coeffs: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _unpack(value: int, width: int, count: int) -> list[int]:
    raw = value.to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def _convolve(a: Sequence[int], b: Sequence[int], max_degree: int | None) -> list[int]:
    if not a or not b:
        return []
    out_len = len(a) + len(b) - 1
    if max_degree is not None:
        out_len = min(out_len, max_degree + 1)
        a = a[:out_len]
        b = b[:out_len]
    if min(a) < 0 or min(b) < 0:
        out = [0] * out_len
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[:out_len - i]):
                    out[i + j] += x * y
        return out
    bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bits + 7) // 8
    prod = _pack(a, width) * _pack(b, width)
    total = len(a) + len(b) - 1
    return _unpack(prod, width, total)[:out_len]


@dataclass(frozen=True)
class SeriesCoefficients:
    """``sum_i numerators[i] / denominator * x**i``, truncated."""

    numerators: tuple
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")

    @classmethod
    def from_fractions(cls, coeffs: Iterable) -> "SeriesCoefficients":
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        return cls(tuple(int(c * den) for c in fr), den)

    @classmethod
    def monomial(cls, power: int, coefficient=1) -> "SeriesCoefficients":
        c = Fraction(coefficient)
        return cls((0,) * power + (c.numerator,), c.denominator)

    @property
    def max_degree(self) -> int:
        return len(self.numerators) - 1

    def __getitem__(self, power: int) -> Fraction:
        """The ``[x^power]`` coefficient (zero beyond the stored support)."""
        if power < 0 or power >= len(self.numerators):
            return Fraction(0)
        return Fraction(self.numerators[power], self.denominator)

    coefficient = __getitem__

    def coefficients(self) -> list[Fraction]:
        return [self[i] for i in range(len(self.numerators))]

    def truncate(self, max_degree: int) -> "SeriesCoefficients":
        return SeriesCoefficients(self.numerators[:max_degree + 1], self.denominator)

    def reduced(self) -> "SeriesCoefficients":
        g = math.gcd(self.denominator, *self.numerators)
        if g <= 1:
            return self
        return SeriesCoefficients(tuple(c // g for c in self.numerators), self.denominator // g)

    def multiply(self, other: "SeriesCoefficients", max_degree: int | None = None) -> "SeriesCoefficients":
        nums = _convolve(self.numerators, other.numerators, max_degree)
        return SeriesCoefficients(tuple(nums), self.denominator * other.denominator)

    __mul__ = multiply

    def shift(self, power: int) -> "SeriesCoefficients":
        """Multiply by ``x**power``."""
        return SeriesCoefficients((0,) * power + self.numerators, self.denominator)

    def power(self, exponent: int, max_degree: int) -> "SeriesCoefficients":
        """``self**exponent`` truncated after ``x**max_degree``; squares are truncated too."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        result = SeriesCoefficients((1,), 1)
        base = self.truncate(max_degree)
        while exponent:
            if exponent & 1:
                result = result.multiply(base, max_degree)
            exponent >>= 1
            if exponent:
                base = base.multiply(base, max_degree)
        return result
