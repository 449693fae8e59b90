"""The codimension-one transverse Hopf algebra H1 and its quotient Hs.

H1 is the universal enveloping algebra on generators X, Y and delta_n
(n >= 1) with relations

    [Y, X] = X,   [Y, delta_n] = n delta_n,   [X, delta_n] = delta_{n+1},

and all delta's commuting.  Elements are kept in normal order: delta
monomial first, then the X power, then the Y power.  Hs is the quotient
by the ideal generated by delta_2 - (1/2) delta_1^2; there the delta part
collapses to a power of delta_1 and [X, delta_1^k] = (k/2) delta_1^(k+1).

Coefficients are exact rationals throughout.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple

from .rational import ONE, ZERO
from .ypoly import YPolynomial, pochhammer


class H1Monomial(NamedTuple):
    deltas: tuple  # ((n, exp), ...) sorted by n, exp > 0
    x: int
    y: int

    def sort_key(self):
        # graded: delta-degree with delta_n weighted n, then x, then y,
        # ties broken lexicographically on the delta multi-index
        return (_delta_weight(self.deltas), self.x, self.y, self.deltas)

    def __str__(self):
        parts = []
        for n, e in self.deltas:
            parts.append("d%d" % n if e == 1 else "d%d^%d" % (n, e))
        if self.x:
            parts.append("X" if self.x == 1 else "X^%d" % self.x)
        if self.y:
            parts.append("Y" if self.y == 1 else "Y^%d" % self.y)
        return "*".join(parts) if parts else "1"


class HsMonomial(NamedTuple):
    d1: int
    x: int
    y: int

    def sort_key(self):
        return (self.d1, self.x, self.y)

    def __str__(self):
        parts = []
        if self.d1:
            parts.append("d1" if self.d1 == 1 else "d1^%d" % self.d1)
        if self.x:
            parts.append("X" if self.x == 1 else "X^%d" % self.x)
        if self.y:
            parts.append("Y" if self.y == 1 else "Y^%d" % self.y)
        return "*".join(parts) if parts else "1"


H1_UNIT = H1Monomial((), 0, 0)
HS_UNIT = HsMonomial(0, 0, 0)


def _delta_weight(deltas):
    return sum(n * e for n, e in deltas)


def _merge_deltas(d1, d2):
    out = dict(d1)
    for n, e in d2:
        out[n] = out.get(n, 0) + e
    return tuple(sorted(out.items()))


def _d_once(deltas):
    """One application of the derivation delta_n -> delta_{n+1}."""
    out = {}
    base = dict(deltas)
    for n, e in deltas:
        nxt = dict(base)
        nxt[n] = e - 1
        if not nxt[n]:
            del nxt[n]
        nxt[n + 1] = nxt.get(n + 1, 0) + 1
        key = tuple(sorted(nxt.items()))
        out[key] = out.get(key, 0) + e
    return out


@lru_cache(maxsize=None)
def _derivation_power(deltas, j):
    if j == 0:
        return ((deltas, 1),)
    out = {}
    for dts, c in _derivation_power(deltas, j - 1):
        for nd, c2 in _d_once(dts).items():
            out[nd] = out.get(nd, 0) + c * c2
    return tuple(out.items())


@lru_cache(maxsize=None)
def _h1_mono_mul(m1, m2):
    """Normal-ordered product of two H1 monomials; integer coefficients."""
    out = {}
    shift = _delta_weight(m2.deltas) + m2.x  # Y picks this up crossing m2's head
    for j in range(m1.x + 1):
        cx = comb(m1.x, j)
        for dts, cd in _derivation_power(m2.deltas, j):
            merged = _merge_deltas(m1.deltas, dts)
            xtot = m1.x - j + m2.x
            for i in range(m1.y + 1):
                c = cx * cd * comb(m1.y, i) * shift ** (m1.y - i)
                if c:
                    mono = H1Monomial(merged, xtot, i + m2.y)
                    out[mono] = out.get(mono, 0) + c
    return tuple((m, c) for m, c in out.items() if c)


@lru_cache(maxsize=None)
def _hs_mono_mul(m1, m2):
    """Normal-ordered product of two Hs monomials."""
    out = {}
    shift = m2.d1 + m2.x
    for j in range(m1.x + 1):
        cj = Fraction(comb(m1.x, j))
        for i in range(j):  # [X, d1^a] = (a/2) d1^(a+1), iterated
            cj *= Fraction(m2.d1 + i, 2)
        if not cj:
            continue
        for i in range(m1.y + 1):
            c = cj * comb(m1.y, i) * shift ** (m1.y - i)
            if c:
                mono = HsMonomial(m1.d1 + m2.d1 + j, m1.x - j + m2.x, i + m2.y)
                out[mono] = out.get(mono, ZERO) + c
    return tuple((m, c) for m, c in out.items() if c)


class _Element:
    """Shared linear-combination machinery; terms is monomial -> Rational."""

    __slots__ = ("terms",)
    UNIT = None
    MONO_MUL = None

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({cls.UNIT: ONE})

    @classmethod
    def monomial(cls, mono, coeff=ONE):
        return cls({mono: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return type(self)._raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)._raw({m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return type(self)._raw({})
        return type(self)._raw({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, type(self)):
            out = {}
            mono_mul = type(self).MONO_MUL
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    c12 = c1 * c2
                    for m, c in mono_mul(m1, m2):
                        s = out.get(m, ZERO) + c12 * c
                        if s:
                            out[m] = s
                        else:
                            del out[m]
            return type(self)._raw(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        out = type(self).one()
        for _ in range(n):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms):
        el = cls.__new__(cls)
        el.terms = terms
        return el

    def times_ypoly(self, poly: YPolynomial):
        """Right multiplication by a polynomial in Y (Y sits rightmost)."""
        out = {}
        for m, c in self.terms.items():
            for e, pc in poly.coeffs.items():
                mono = m._replace(y=m.y + e)
                s = out.get(mono, ZERO) + c * pc
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return type(self)._raw(out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            "%s*%s" % (c, m) for m, c in self.sorted_terms()
        )


class H1Element(_Element):
    UNIT = H1_UNIT
    MONO_MUL = staticmethod(_h1_mono_mul)


class HsElement(_Element):
    UNIT = HS_UNIT
    MONO_MUL = staticmethod(_hs_mono_mul)


def h1_gen_x():
    return H1Element.monomial(H1Monomial((), 1, 0))


def h1_gen_y():
    return H1Element.monomial(H1Monomial((), 0, 1))


def h1_gen_delta(n):
    return H1Element.monomial(H1Monomial(((n, 1),), 0, 0))


def hs_gen_x():
    return HsElement.monomial(HsMonomial(0, 1, 0))


def hs_gen_y():
    return HsElement.monomial(HsMonomial(0, 0, 1))


def hs_gen_d1():
    return HsElement.monomial(HsMonomial(1, 0, 0))


def hs_antipode_x():
    """S(X) = -X + delta_1 Y in Hs."""
    return HsElement({HsMonomial(0, 1, 0): -ONE, HsMonomial(1, 0, 1): ONE})


def h1_multiply(a: H1Element, b: H1Element) -> H1Element:
    return a * b


def hs_multiply(a: HsElement, b: HsElement) -> HsElement:
    return a * b


def h1_counit(h: H1Element) -> Fraction:
    return h.terms.get(H1_UNIT, ZERO)


class Tensor2:
    """Plain tensor square (over the scalars) of an element class."""

    __slots__ = ("terms",)
    LEG = None

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def one(cls):
        u = cls.LEG.UNIT
        return cls({(u, u): ONE})

    @classmethod
    def of(cls, left, right):
        out = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                out[(m1, m2)] = c1 * c2
        return cls(out)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return self._raw(out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self._raw({})
        return self._raw({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        mono_mul = type(self).LEG.MONO_MUL
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for ma, ca in mono_mul(a1, a2):
                    for mb, cb in mono_mul(b1, b2):
                        key = (ma, mb)
                        s = out.get(key, ZERO) + c12 * ca * cb
                        if s:
                            out[key] = s
                        else:
                            del out[key]
        return self._raw(out)

    def __pow__(self, n):
        out = type(self).one()
        for _ in range(n):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms):
        el = cls.__new__(cls)
        el.terms = terms
        return el

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (t[0][0].sort_key(), t[0][1].sort_key()),
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            "%s*(%s (x) %s)" % (c, a, b) for (a, b), c in self.sorted_terms()
        )


class H1Tensor2(Tensor2):
    LEG = H1Element


class HsTensor2(Tensor2):
    LEG = HsElement


def _h1t(pairs):
    return H1Tensor2({k: Fraction(v) for k, v in pairs})


_DX = None
_DY = None
_DD1 = None


def _init_gen_coproducts():
    global _DX, _DY, _DD1
    one = H1_UNIT
    x = H1Monomial((), 1, 0)
    y = H1Monomial((), 0, 1)
    d1 = H1Monomial(((1, 1),), 0, 0)
    _DX = _h1t([((x, one), 1), ((one, x), 1), ((d1, y), 1)])
    _DY = _h1t([((y, one), 1), ((one, y), 1)])
    _DD1 = _h1t([((d1, one), 1), ((one, d1), 1)])


_init_gen_coproducts()


@lru_cache(maxsize=None)
def _delta_coproduct(n) -> H1Tensor2:
    """Coproduct of delta_n, via delta_{n+1} = [X, delta_n]."""
    if n == 1:
        return _DD1
    prev = _delta_coproduct(n - 1)
    return _DX * prev - prev * _DX


_COPRODUCT_CACHE = {}


def h1_coproduct_monomial(mono: H1Monomial) -> H1Tensor2:
    cached = _COPRODUCT_CACHE.get(mono)
    if cached is not None:
        return cached
    out = H1Tensor2.one()
    for n, e in mono.deltas:
        out = out * _delta_coproduct(n) ** e
    out = out * _DX ** mono.x * _DY ** mono.y
    _COPRODUCT_CACHE[mono] = out
    return out


def h1_coproduct(h: H1Element) -> H1Tensor2:
    out = H1Tensor2()
    for m, c in h.terms.items():
        out = out + h1_coproduct_monomial(m).scale(c)
    return out


@lru_cache(maxsize=None)
def _delta_antipode(n) -> H1Element:
    """S(delta_n); S reverses brackets, so S(delta_{n+1}) = [S(delta_n), S(X)]."""
    if n == 1:
        return H1Element({H1Monomial(((1, 1),), 0, 0): -ONE})
    prev = _delta_antipode(n - 1)
    sx = _h1_antipode_x()
    return prev * sx - sx * prev


def _h1_antipode_x() -> H1Element:
    return H1Element({H1Monomial((), 1, 0): -ONE, H1Monomial(((1, 1),), 0, 1): ONE})


_ANTIPODE_CACHE = {}


def h1_antipode_monomial(mono: H1Monomial) -> H1Element:
    cached = _ANTIPODE_CACHE.get(mono)
    if cached is not None:
        return cached
    # S(D X^k Y^m) = S(Y)^m S(X)^k S(D); the deltas commute among themselves
    out = H1Element({H1Monomial((), 0, mono.y): (-ONE) ** mono.y})
    out = out * _h1_antipode_x() ** mono.x
    for n, e in mono.deltas:
        out = out * _delta_antipode(n) ** e
    _ANTIPODE_CACHE[mono] = out
    return out


def h1_antipode(h: H1Element) -> H1Element:
    out = H1Element()
    for m, c in h.terms.items():
        out = out + h1_antipode_monomial(m).scale(c)
    return out


@lru_cache(maxsize=None)
def _hs_delta_factor(n) -> Fraction:
    """delta_n maps to c_n * delta_1^n in Hs; c_1 = 1, c_{n+1} = (n/2) c_n."""
    if n == 1:
        return ONE
    return Fraction(n - 1, 2) * _hs_delta_factor(n - 1)


def project_to_hs(h: H1Element) -> HsElement:
    out = {}
    for m, c in h.terms.items():
        factor = c
        for n, e in m.deltas:
            factor *= _hs_delta_factor(n) ** e
        mono = HsMonomial(_delta_weight(m.deltas), m.x, m.y)
        s = out.get(mono, ZERO) + factor
        if s:
            out[mono] = s
        else:
            del out[mono]
    return HsElement._raw(out)


def hs_counit(h: HsElement) -> Fraction:
    return h.terms.get(HS_UNIT, ZERO)


def antipode_power_closed(n: int) -> HsElement:
    """Closed normal-ordered form of S(X^n) in Hs:

    sum over k of (-1)^(n-k) C(n,k) delta_1^k / 2^k * X^(n-k) * (2Y+n-k)_k.
    """
    out = HsElement()
    for k in range(n + 1):
        sign = ONE if (n - k) % 2 == 0 else -ONE
        c = sign * comb(n, k) * Fraction(1, 2**k)
        poly = pochhammer(n - k, k)
        part = HsElement.monomial(HsMonomial(k, n - k, 0), c).times_ypoly(poly)
        out = out + part
    return out


def rc_zero_omega(n: int) -> HsTensor2:
    """The universal bracket of order n with the jet variables set to zero:

    sum over k of S(X)^k/k! (2Y+k)_{n-k}  (x)  X^(n-k)/(n-k)! (2Y+n-k)_k.
    """
    out = HsTensor2()
    sx = hs_antipode_x()
    x = hs_gen_x()
    for k in range(n + 1):
        left = (sx**k).scale(Fraction(1, factorial(k)))
        left = left.times_ypoly(pochhammer(k, n - k))
        right = (x ** (n - k)).scale(Fraction(1, factorial(n - k)))
        right = right.times_ypoly(pochhammer(n - k, k))
        out = out + HsTensor2.of(left, right)
    return out
