"""The jet algebra P: free commutative algebra on Z_0, Z_1, Z_2, ...

Z_j stands for the j-th X-derivative of the quadratic differential, so
X acts as the shift derivation Z_j -> Z_{j+1} and Y acts diagonally with
weight j+2 on Z_j.  All delta's act as zero.
"""

from fractions import Fraction

from .rational import ONE, ZERO

P_UNIT = ()  # PMonomial: tuple of (jet index, exponent), sorted, exponents > 0


def p_monomial(*pairs):
    out = {}
    for j, e in pairs:
        if e:
            out[j] = out.get(j, 0) + e
    return tuple(sorted(out.items()))


def p_mono_mul(m1, m2):
    out = dict(m1)
    for j, e in m2:
        out[j] = out.get(j, 0) + e
    return tuple(sorted(out.items()))


def p_mono_weight(mono):
    """Y-eigenvalue: Z_j has weight j+2."""
    return sum((j + 2) * e for j, e in mono)


def p_mono_str(mono):
    if not mono:
        return "1"
    return "*".join("Z%d" % j if e == 1 else "Z%d^%d" % (j, e) for j, e in mono)


class PElement:
    """Sparse polynomial in the jet variables, PMonomial -> Rational."""

    __slots__ = ("terms",)

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
        return cls({P_UNIT: ONE})

    @classmethod
    def z(cls, j, exp=1):
        return cls({p_monomial((j, exp)): ONE})

    @classmethod
    def monomial(cls, mono, coeff=ONE):
        return cls({mono: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PElement):
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
        return PElement._raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PElement._raw({m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return PElement._raw({})
        return PElement._raw({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PElement):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = p_mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return PElement._raw(out)

    def __rmul__(self, other):
        return self.scale(other)

    @classmethod
    def _raw(cls, terms):
        el = cls.__new__(cls)
        el.terms = terms
        return el

    def x_act(self):
        """The derivation Z_j -> Z_{j+1}."""
        out = PElement()
        for m, c in self.terms.items():
            base = dict(m)
            for j, e in m:
                nxt = dict(base)
                nxt[j] = e - 1
                if not nxt[j]:
                    del nxt[j]
                nxt[j + 1] = nxt.get(j + 1, 0) + 1
                out = out + PElement.monomial(tuple(sorted(nxt.items())), c * e)
        return out

    def y_act(self):
        """Diagonal action: monomial of weight w picks up factor w."""
        return PElement(
            {m: c * p_mono_weight(m) for m, c in self.terms.items()}
        )

    def homogeneous_part(self, weight):
        return PElement._raw(
            {m: c for m, c in self.terms.items() if p_mono_weight(m) == weight}
        )

    def evaluate(self, assign):
        """Map through the algebra morphism Z_j -> assign(j).

        assign(j) may return any value living in a commutative ring with
        rational scalar multiplication (a Rational, a q-series, ...).
        Used with assign = 0 for the zero-jet specialization and with
        modular-form assignments for the concrete representation.
        """
        total = None
        for m, c in self.terms.items():
            val = c
            for j, e in m:
                base = assign(j)
                for _ in range(e):
                    val = base * val
            total = val if total is None else total + val
        return total if total is not None else ZERO

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda t: (p_mono_weight(t[0]), t[0])
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*%s" % (c, p_mono_str(m)) for m, c in self.sorted_terms())


def act_on_p(word, p: PElement) -> PElement:
    """Apply a word in the generators to an element of P.

    word is an iterable of tokens 'X', 'Y' or 'd<k>' (e.g. 'd1'),
    applied right-to-left as operator composition; every delta kills P.
    """
    tokens = list(word)
    out = p
    for tok in reversed(tokens):
        if tok == "X":
            out = out.x_act()
        elif tok == "Y":
            out = out.y_act()
        elif isinstance(tok, str) and tok.startswith("d"):
            return PElement.zero()
        else:
            raise ValueError("unknown generator token %r" % (tok,))
    return out
