"""The extended algebra Hts over the jet algebra P, and tensor products over P.

Elements are written in the canonical basis  alpha(P) beta(Q) d1^a X^k Y^m,
where alpha and beta are the source and target embeddings of P (left and
right coefficient slots).  The quotient relation eliminating delta_2 is
applied eagerly:

    delta_2  ->  1/2 d1^2 + alpha(Z0) - beta(Z0),

so no delta_n with n >= 2 ever appears in stored data.  Multiplication is
by generator commutation:

    X alpha(P) = alpha(P) X + alpha(X(P))
    X beta(Q)  = beta(Q) X + beta(X(Q)) + beta(Y(Q)) d1
    Y alpha(P) = alpha(P) Y + alpha(Y(P)),   similarly for beta
    [X, d1^a]  = (a/2) d1^(a+1) + a (alpha(Z0) - beta(Z0)) d1^(a-1)

with d1 commuting with every alpha and beta image.

Tensor products over P use the contracted normal form: a beta factor on
any leg but the last is the same as an alpha factor on the next leg, so
canonical chains are beta-free except in the final slot.  Since Hts is a
free right P-module on the beta-free monomials, this contracted form is a
true normal form and exact-zero tests on it are meaningful.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .hopf_core import (
    H1Element,
    H1Monomial,
    HsElement,
    HsMonomial,
    _Element,
    h1_antipode_monomial,
    h1_coproduct_monomial,
)
from .jets import P_UNIT, PElement, p_mono_mul, p_mono_str, p_mono_weight
from .rational import HALF, ONE, ZERO


class HtsMonomial(NamedTuple):
    alpha: tuple  # PMonomial
    beta: tuple  # PMonomial
    d1: int
    x: int
    y: int

    def sort_key(self):
        return (
            (p_mono_weight(self.alpha), self.alpha),
            (p_mono_weight(self.beta), self.beta),
            self.d1,
            self.x,
            self.y,
        )

    def weight(self):
        """Y-grading: eigenvalue of ad(Y)."""
        return (
            p_mono_weight(self.alpha)
            + p_mono_weight(self.beta)
            + self.d1
            + self.x
        )

    def __str__(self):
        parts = []
        if self.alpha != P_UNIT:
            parts.append("a[%s]" % p_mono_str(self.alpha))
        if self.beta != P_UNIT:
            parts.append("b[%s]" % p_mono_str(self.beta))
        core = HsMonomial(self.d1, self.x, self.y)
        if (self.d1, self.x, self.y) != (0, 0, 0):
            parts.append(str(core))
        return "*".join(parts) if parts else "1"


HTS_UNIT = HtsMonomial(P_UNIT, P_UNIT, 0, 0, 0)

_Z0 = ((0, 1),)


def _single_x_left(mono):
    """X * mono as a list of (monomial, coeff)."""
    alpha, beta, a, k, y = mono
    out = [
        (HtsMonomial(alpha, beta, a, k + 1, y), ONE),
    ]
    if a:
        out.append((HtsMonomial(alpha, beta, a + 1, k, y), Fraction(a, 2)))
        out.append((HtsMonomial(p_mono_mul(alpha, _Z0), beta, a - 1, k, y), Fraction(a)))
        out.append((HtsMonomial(alpha, p_mono_mul(beta, _Z0), a - 1, k, y), Fraction(-a)))
    wq = p_mono_weight(beta)
    if wq:
        out.append((HtsMonomial(alpha, beta, a + 1, k, y), Fraction(wq)))
    # beta(X(Q)) and alpha(X(P)): the shift derivation on each jet factor
    for base, which in ((beta, "b"), (alpha, "a")):
        for idx, (j, e) in enumerate(base):
            nxt = dict(base)
            nxt[j] = e - 1
            if not nxt[j]:
                del nxt[j]
            nxt[j + 1] = nxt.get(j + 1, 0) + 1
            moved = tuple(sorted(nxt.items()))
            if which == "b":
                out.append((HtsMonomial(alpha, moved, a, k, y), Fraction(e)))
            else:
                out.append((HtsMonomial(moved, beta, a, k, y), Fraction(e)))
    return out


@lru_cache(maxsize=None)
def _hts_mono_mul(m1, m2):
    """Normal-ordered product of two Hts monomials."""
    # left-multiply m2 by the parts of m1, rightmost first
    terms = {m2: ONE}
    if m1.y:
        out = {}
        for m, c in terms.items():
            w = m.weight()
            for i in range(m1.y + 1):
                cc = c * comb(m1.y, i) * w ** (m1.y - i)
                if cc:
                    mono = m._replace(y=m.y + i)
                    out[mono] = out.get(mono, ZERO) + cc
        terms = out
    for _ in range(m1.x):
        out = {}
        for m, c in terms.items():
            for mono, cc in _single_x_left(m):
                s = out.get(mono, ZERO) + c * cc
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        terms = out
    if m1.d1 or m1.beta != P_UNIT or m1.alpha != P_UNIT:
        out = {}
        for m, c in terms.items():
            mono = HtsMonomial(
                p_mono_mul(m1.alpha, m.alpha),
                p_mono_mul(m1.beta, m.beta),
                m.d1 + m1.d1,
                m.x,
                m.y,
            )
            out[mono] = out.get(mono, ZERO) + c
        terms = out
    return tuple((m, c) for m, c in terms.items() if c)


class HtsElement(_Element):
    UNIT = HTS_UNIT
    MONO_MUL = staticmethod(_hts_mono_mul)

    def is_beta_free(self):
        return all(m.beta == P_UNIT for m in self.terms)

    def commutator(self, other):
        return self * other - other * self


def hts_gen_x():
    return HtsElement.monomial(HtsMonomial(P_UNIT, P_UNIT, 0, 1, 0))


def hts_gen_y():
    return HtsElement.monomial(HtsMonomial(P_UNIT, P_UNIT, 0, 0, 1))


def hts_gen_d1():
    return HtsElement.monomial(HtsMonomial(P_UNIT, P_UNIT, 1, 0, 0))


def hts_alpha(p):
    """alpha(P) for a PElement or PMonomial."""
    if isinstance(p, PElement):
        return HtsElement(
            {HtsMonomial(m, P_UNIT, 0, 0, 0): c for m, c in p.terms.items()}
        )
    return HtsElement.monomial(HtsMonomial(p, P_UNIT, 0, 0, 0))


def hts_beta(q):
    """beta(Q) for a PElement or PMonomial."""
    if isinstance(q, PElement):
        return HtsElement(
            {HtsMonomial(P_UNIT, m, 0, 0, 0): c for m, c in q.terms.items()}
        )
    return HtsElement.monomial(HtsMonomial(P_UNIT, q, 0, 0, 0))


def hts_antipode_x():
    """S(X) = -X + d1 Y."""
    return HtsElement(
        {
            HtsMonomial(P_UNIT, P_UNIT, 0, 1, 0): -ONE,
            HtsMonomial(P_UNIT, P_UNIT, 1, 0, 1): ONE,
        }
    )


def delta2_image():
    """Image of delta_2 under the quotient rewrite."""
    return HtsElement(
        {
            HtsMonomial(P_UNIT, P_UNIT, 2, 0, 0): HALF,
            HtsMonomial(_Z0, P_UNIT, 0, 0, 0): ONE,
            HtsMonomial(P_UNIT, _Z0, 0, 0, 0): -ONE,
        }
    )


@lru_cache(maxsize=None)
def _delta_image(n) -> HtsElement:
    if n == 1:
        return hts_gen_d1()
    if n == 2:
        return delta2_image()
    return hts_gen_x().commutator(_delta_image(n - 1))


@lru_cache(maxsize=None)
def _from_h1_monomial(mono: H1Monomial) -> HtsElement:
    out = HtsElement.monomial(
        HtsMonomial(P_UNIT, P_UNIT, 0, mono.x, mono.y)
    )
    d1_exp = 0
    for n, e in mono.deltas:
        if n == 1:
            d1_exp = e
            continue
        out = _delta_image(n) ** e * out
    if d1_exp:
        out = HtsElement.monomial(
            HtsMonomial(P_UNIT, P_UNIT, d1_exp, 0, 0)
        ) * out
    return out


def from_h1(h: H1Element) -> HtsElement:
    """Quotient map: rewrite every delta_n (n >= 2) and re-normal-order."""
    out = HtsElement()
    for m, c in h.terms.items():
        out = out + _from_h1_monomial(m).scale(c)
    return out


def embed_hs(h: HsElement) -> HtsElement:
    return HtsElement(
        {
            HtsMonomial(P_UNIT, P_UNIT, m.d1, m.x, m.y): c
            for m, c in h.terms.items()
        }
    )


def hts_counit(h: HtsElement) -> PElement:
    """epsilon(alpha(P) beta(Q) h) = P Q epsilon(h)."""
    out = PElement()
    for m, c in h.terms.items():
        if m.d1 == 0 and m.x == 0 and m.y == 0:
            out = out + PElement.monomial(p_mono_mul(m.alpha, m.beta), c)
    return out


def hts_antipode(h: HtsElement) -> HtsElement:
    """S(alpha(P) beta(Q) h) = S(h) alpha(Q) beta(P)."""
    out = HtsElement()
    for m, c in h.terms.items():
        core = h1_antipode_monomial(H1Monomial(((1, m.d1),) if m.d1 else (), m.x, m.y))
        val = from_h1(core)
        tail = HtsElement.monomial(HtsMonomial(m.beta, m.alpha, 0, 0, 0))
        out = out + (val * tail).scale(c)
    return out


class TensorElement:
    """Rank-r tensor over P in contracted chain form.

    terms maps r-tuples of HtsMonomial to Rational; every leg except the
    last is beta-free (beta factors are contracted into the next leg's
    alpha slot).  Optionally carries a formal-deformation order t_order.
    """

    __slots__ = ("rank", "terms", "t_order")

    def __init__(self, rank, terms=None, t_order=None):
        self.rank = rank
        self.t_order = t_order
        self.terms = {}
        if terms:
            for chain, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                chain = _canonical_chain(chain)
                s = self.terms.get(chain, ZERO) + c
                if s:
                    self.terms[chain] = s
                else:
                    del self.terms[chain]

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def one(cls, rank):
        return cls(rank, {(HTS_UNIT,) * rank: ONE})

    @classmethod
    def _raw(cls, rank, terms, t_order=None):
        el = cls.__new__(cls)
        el.rank = rank
        el.terms = terms
        el.t_order = t_order
        return el

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __add__(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return TensorElement._raw(self.rank, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TensorElement._raw(self.rank, {})
        return TensorElement._raw(
            self.rank, {m: c * v for m, v in self.terms.items()}, self.t_order
        )

    def with_t_order(self, n):
        return TensorElement._raw(self.rank, dict(self.terms), n)

    def leg_element(self, chain, i):
        return HtsElement.monomial(chain[i])

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: tuple(m.sort_key() for m in t[0]),
        )

    def term_count(self):
        return len(self.terms)

    def first_leg_beta_free(self):
        return all(chain[0].beta == P_UNIT for chain in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            "%s*(%s)" % (c, " (x) ".join(str(m) for m in chain))
            for chain, c in self.sorted_terms()
        )


def _canonical_chain(chain):
    """Push beta factors rightward: beta on leg i = alpha on leg i+1."""
    r = len(chain)
    legs = list(chain)
    for i in range(r - 1):
        m = legs[i]
        if m.beta != P_UNIT:
            legs[i] = m._replace(beta=P_UNIT)
            nxt = legs[i + 1]
            legs[i + 1] = nxt._replace(alpha=p_mono_mul(m.beta, nxt.alpha))
    return tuple(legs)


def canonicalize_tensor(legs) -> TensorElement:
    """Contracted chain form of a pure tensor of HtsElements."""
    rank = len(legs)
    out = {(): ONE}
    for leg in legs:
        nxt = {}
        for chain, c in out.items():
            for m, cm in leg.terms.items():
                key = chain + (m,)
                s = nxt.get(key, ZERO) + c * cm
                if s:
                    nxt[key] = s
                else:
                    del nxt[key]
        out = nxt
    return TensorElement(rank, out)


def tensor_right_multiply(t: TensorElement, factors) -> TensorElement:
    """Right multiplication of a chain tensor by a tuple of representatives.

    factors is a list of r HtsElements (β-free away from the last leg for
    canonical representatives); the product is computed legwise and the
    result re-contracted.
    """
    if len(factors) != t.rank:
        raise ValueError("need one factor per leg")
    factor_terms = [list(f.terms.items()) for f in factors]
    out = {}
    for chain, c in t.terms.items():
        partial = [((), c)]
        for i in range(t.rank):
            mi = chain[i]
            nxt = []
            for fm, fc in factor_terms[i]:
                if fm == HTS_UNIT:
                    prods = ((mi, ONE),)
                else:
                    prods = _hts_mono_mul(mi, fm)
                for pref, pc in partial:
                    for mono, mc in prods:
                        nxt.append((pref + (mono,), pc * fc * mc))
            partial = nxt
        for key, v in partial:
            key = _canonical_chain(key)
            s = out.get(key, ZERO) + v
            if s:
                out[key] = s
            else:
                del out[key]
    return TensorElement._raw(t.rank, out)


_H1_CORE_COPRODUCT_CACHE = {}


def _core_coproduct(d1, x, y):
    """Coproduct of d1^a X^k Y^m as a list of ((Hts mono, Hts mono), coeff).

    Computed in H1 (where the coproduct is an ordinary algebra map into
    the plain tensor square) and pushed through the quotient rewrite leg
    by leg.
    """
    key = (d1, x, y)
    cached = _H1_CORE_COPRODUCT_CACHE.get(key)
    if cached is not None:
        return cached
    h1mono = H1Monomial(((1, d1),) if d1 else (), x, y)
    pairs = []
    for (u, v), c in h1_coproduct_monomial(h1mono).terms.items():
        left = _from_h1_monomial(u)
        right = _from_h1_monomial(v)
        for ml, cl in left.terms.items():
            for mr, cr in right.terms.items():
                pairs.append(((ml, mr), c * cl * cr))
    _H1_CORE_COPRODUCT_CACHE[key] = pairs
    return pairs


def hts_coproduct(h: HtsElement) -> TensorElement:
    """Delta(alpha(P) beta(Q) h) = sum alpha(P) h_(1)  (x)  beta(Q) h_(2)."""
    out = {}
    for m, c in h.terms.items():
        for (u, v), cc in _core_coproduct(m.d1, m.x, m.y):
            left = u._replace(alpha=p_mono_mul(m.alpha, u.alpha))
            right = v._replace(beta=p_mono_mul(m.beta, v.beta))
            chain = _canonical_chain((left, right))
            s = out.get(chain, ZERO) + c * cc
            if s:
                out[chain] = s
            else:
                del out[chain]
    return TensorElement._raw(2, out)


def apply_coproduct_leg(t: TensorElement, i: int) -> TensorElement:
    """Apply the coproduct to leg i (1-indexed), giving a rank r+1 tensor."""
    if not 1 <= i <= t.rank:
        raise IndexError("leg index out of range")
    i -= 1
    out = {}
    for chain, c in t.terms.items():
        m = chain[i]
        for (u, v), cc in _core_coproduct(m.d1, m.x, m.y):
            left = u._replace(alpha=p_mono_mul(m.alpha, u.alpha))
            right = v._replace(beta=p_mono_mul(m.beta, v.beta))
            key = _canonical_chain(chain[:i] + (left, right) + chain[i + 1 :])
            s = out.get(key, ZERO) + c * cc
            if s:
                out[key] = s
            else:
                del out[key]
    return TensorElement._raw(t.rank + 1, out)


def apply_counit_leg(t: TensorElement, i: int) -> TensorElement:
    """Contract leg i (1-indexed) with the counit, giving rank r-1.

    The PElement produced by the counit is folded into the alpha slot of
    the next leg, or (for the last leg) the beta slot of the previous one.
    """
    if not 1 <= i <= t.rank:
        raise IndexError("leg index out of range")
    if t.rank < 2:
        raise ValueError("cannot contract below rank 1")
    i -= 1
    out = {}
    for chain, c in t.terms.items():
        m = chain[i]
        if m.d1 or m.x or m.y:
            continue
        pq = p_mono_mul(m.alpha, m.beta)
        legs = list(chain[:i] + chain[i + 1 :])
        if i < len(legs):
            legs[i] = legs[i]._replace(alpha=p_mono_mul(pq, legs[i].alpha))
        else:
            legs[-1] = legs[-1]._replace(beta=p_mono_mul(pq, legs[-1].beta))
        key = _canonical_chain(tuple(legs))
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return TensorElement._raw(t.rank - 1, out)
