"""Exact integer polynomials and rational helpers.

Means are always ``fractions.Fraction`` values; nothing in a decision path
goes through floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class UndefinedMeanError(ZeroDivisionError):
    """Raised when a mean is requested over an empty family of subtrees."""


class IntPolynomial:
    """Dense polynomial with arbitrary-precision integer coefficients.

    ``coeffs[k]`` is the coefficient of ``x**k``. Trailing zeros are trimmed,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * k + [coeff])

    @classmethod
    def geometric(cls, k: int) -> IntPolynomial:
        """1 + x + ... + x**k."""
        return cls([1] * (k + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_add(self, other)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_sub(self, other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_mul(self, other)

    def __pow__(self, e: int) -> IntPolynomial:
        return poly_pow(self, e)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "x" if k == 1 else f"x^{k}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"

    def dominated_by(self, other: IntPolynomial) -> bool:
        """True if every coefficient is <= the matching one in ``other``."""
        return all(c <= other[k] for k, c in enumerate(self.coeffs))


def poly_add(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if len(a) < len(b):
        a, b = b, a
    res = list(a.coeffs)
    for k, c in enumerate(b.coeffs):
        res[k] += c
    return IntPolynomial(res)


def poly_sub(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    res = list(a.coeffs) + [0] * max(0, len(b) - len(a))
    for k, c in enumerate(b.coeffs):
        res[k] -= c
    return IntPolynomial(res)


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if not a.coeffs or not b.coeffs:
        return IntPolynomial()
    res = [0] * (len(a) + len(b) - 1)
    bc = b.coeffs
    for i, ca in enumerate(a.coeffs):
        if ca:
            for j, cb in enumerate(bc):
                res[i + j] += ca * cb
    return IntPolynomial(res)


def poly_pow(a: IntPolynomial, e: int) -> IntPolynomial:
    if e < 0:
        raise ValueError("negative exponent")
    result = IntPolynomial([1])
    base = a
    while e:
        if e & 1:
            result = poly_mul(result, base)
        e >>= 1
        if e:
            base = poly_mul(base, base)
    return result


def eval_at_one(p: IntPolynomial | Sequence[int]) -> int:
    return sum(p)


def deriv_at_one(p: IntPolynomial | Sequence[int]) -> int:
    return sum(k * c for k, c in enumerate(p))


def log_deriv_at_one(p: IntPolynomial | Sequence[int]) -> Fraction:
    """p'(1) / p(1), the mean order when ``p`` is a subtree generating function."""
    total = eval_at_one(p)
    if total == 0:
        raise UndefinedMeanError("logarithmic derivative undefined: p(1) = 0")
    return Fraction(deriv_at_one(p), total)


def rational_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison by cross-multiplication: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def to_decimal(a: Fraction, digits: int = 6) -> str:
    """Render ``a`` with ``digits`` places after the point, rounded half-even."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scaled = round(Fraction(a) * 10**digits)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def rational_to_str(a: Fraction) -> str:
    """Serialise as ``num/den`` (the denominator is always written)."""
    a = Fraction(a)
    return f"{a.numerator}/{a.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)
