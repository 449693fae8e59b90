"""Polynomials and rational functions in the grading generator Y.

These never enter algebra elements themselves: products of the Hopf
algebras stay polynomial.  Rational functions of Y only appear as formal
right factors (ratios of inverse-Gamma normalizations) inside the
generating-function verifiers.
"""

from fractions import Fraction

from .rational import ONE, ZERO


class YPolynomial:
    """Sparse polynomial in Y over the rationals, dict exponent -> coeff."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[e] = c

    @classmethod
    def constant(cls, c):
        return cls({0: Fraction(c)})

    @classmethod
    def y(cls):
        return cls({1: ONE})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, YPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, YPolynomial):
            other = YPolynomial.constant(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return YPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return YPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, YPolynomial):
            other = YPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, YPolynomial):
            c = Fraction(other)
            return YPolynomial({e: v * c for e, v in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return YPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = YPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def leading_coeff(self):
        return self.coeffs[self.degree()] if self.coeffs else ZERO

    def shift(self, c):
        """Substitute Y -> Y + c."""
        c = Fraction(c)
        y_plus_c = YPolynomial({1: ONE, 0: c})
        out = YPolynomial()
        for e, v in sorted(self.coeffs.items()):
            out = out + (y_plus_c ** e) * v
        return out

    def evaluate(self, value):
        value = Fraction(value)
        total = ZERO
        for e, c in self.coeffs.items():
            total += c * value**e
        return total

    def divmod(self, other):
        """Euclidean division; other must be nonzero."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self
        quo = YPolynomial()
        d = other.degree()
        lc = other.leading_coeff()
        while rem and rem.degree() >= d:
            e = rem.degree() - d
            c = rem.leading_coeff() / lc
            t = YPolynomial({e: c})
            quo = quo + t
            rem = rem - t * other
        return quo, rem

    def monic(self):
        if not self:
            return self
        lc = self.leading_coeff()
        return YPolynomial({e: c / lc for e, c in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("%s*Y" % c)
            else:
                parts.append("%s*Y^%d" % (c, e))
        return " + ".join(parts)


def ypoly_gcd(a, b):
    while b:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


class YRationalFunction:
    """Quotient of two YPolynomials, gcd-reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, YPolynomial):
            num = YPolynomial.constant(num)
        if den is None:
            den = YPolynomial.constant(1)
        elif not isinstance(den, YPolynomial):
            den = YPolynomial.constant(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = ypoly_gcd(num, den)
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        else:
            den = YPolynomial.constant(1)
        lc = den.leading_coeff()
        num = num * (ONE / lc)
        den = den * (ONE / lc)
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, YRationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, YRationalFunction):
            other = YRationalFunction(other)
        return YRationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return YRationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, YRationalFunction):
            other = YRationalFunction(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, YRationalFunction):
            other = YRationalFunction(other)
        return YRationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return YRationalFunction(self.den, self.num)

    def shift(self, c):
        """Substitute Y -> Y + c.

        This is the move behind the commutation rules
        r(Y) * X = X * r(Y+1) and r(Y) * delta_1 = delta_1 * r(Y+1).
        """
        return YRationalFunction(self.num.shift(c), self.den.shift(c))

    def __repr__(self):
        if self.den == YPolynomial.constant(1):
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


def pochhammer(shift, k):
    """(2Y + shift)_k = (2Y+shift)(2Y+shift+1)...(2Y+shift+k-1)."""
    base = YPolynomial({1: Fraction(2), 0: Fraction(shift)})
    out = YPolynomial.constant(1)
    for i in range(k):
        out = out * (base + i)
    return out


def gamma_ratio(a, b):
    """The formal ratio Gamma(2Y+a)^(-1) / Gamma(2Y+b)^(-1).

    Equals (2Y+a)_(b-a) when b >= a, and its reciprocal otherwise.
    Used to bring generating-function coefficients with different
    inverse-Gamma right factors onto a common base.
    """
    if b >= a:
        return YRationalFunction(pochhammer(a, b - a))
    return YRationalFunction(YPolynomial.constant(1), pochhammer(b, a - b))
