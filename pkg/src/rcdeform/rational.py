"""Exact scalar arithmetic.

Every coefficient in this package is an arbitrary-precision rational.
``fractions.Fraction`` already enforces the canonical form we need
(gcd-reduced, positive denominator, 0/1 for zero), so it is used directly
as the coefficient domain.
"""

from fractions import Fraction
from math import comb, factorial

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def rat(p, q=1):
    return Fraction(p, q)


def parse_rational(text):
    """Parse 'p' or 'p/q' into a Rational."""
    return Fraction(text.strip())


def format_rational(r):
    """Canonical text form: 'p' when the denominator is 1, else 'p/q'."""
    if r.denominator == 1:
        return str(r.numerator)
    return "%d/%d" % (r.numerator, r.denominator)


def binomial(n, k):
    """C(n, k) for integer n >= 0."""
    if k < 0 or k > n:
        return ZERO
    return Fraction(comb(n, k))


def gen_binomial(alpha, j):
    """Generalized binomial C(alpha, j) = alpha(alpha-1)...(alpha-j+1)/j!

    for rational alpha and integer j >= 0.
    """
    alpha = Fraction(alpha)
    num = ONE
    for i in range(j):
        num *= alpha - i
    return num / factorial(j)


def rising(a, k):
    """Rising factorial a(a+1)...(a+k-1) of a rational a."""
    a = Fraction(a)
    out = ONE
    for i in range(k):
        out *= a + i
    return out
