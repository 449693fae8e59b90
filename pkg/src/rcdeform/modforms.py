"""Truncated q-expansions of modular forms and the concrete representation.

Level-1 Eisenstein series are built in; arbitrary graded expansions can be
supplied by the caller (weight + coefficient list, exact rationals).  The
weight-raising operator is the Serre-type derivative

    X(f) = q df/dq - (weight/12) E2 f,

Y multiplies a weight-l form by l/2, every delta acts by zero, and the jet
variable Z_k is represented by X^k applied to the weight-4 element E4/72
(conjugated versions X_s = X + s Y, with s any weight-2 expansion, are
supported throughout).
"""

from fractions import Fraction
from functools import lru_cache

from .extended import TensorElement
from .jets import PElement
from .rational import ONE, ZERO, format_rational, parse_rational


class QSeries:
    """Coefficients of q^0 .. q^(prec-1), exact rationals."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec=None):
        coeffs = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = len(coeffs)
        if len(coeffs) < prec:
            coeffs += [ZERO] * (prec - len(coeffs))
        self.coeffs = tuple(coeffs[:prec])
        self.prec = prec

    @classmethod
    def zero(cls, prec):
        return cls([], prec)

    @classmethod
    def constant(cls, c, prec):
        return cls([Fraction(c)], prec)

    def __getitem__(self, n):
        return self.coeffs[n]

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def matches(self, other):
        """Equality through the common precision."""
        p = min(self.prec, other.prec)
        return self.coeffs[:p] == other.coeffs[:p]

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.prec)
        p = min(self.prec, other.prec)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(p)], p)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            c = Fraction(other)
            return QSeries([c * v for v in self.coeffs], self.prec)
        p = min(self.prec, other.prec)
        out = [ZERO] * p
        for i, a in enumerate(self.coeffs[:p]):
            if not a:
                continue
            for j in range(p - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out, p)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        c = Fraction(scalar)
        return QSeries([v / c for v in self.coeffs], self.prec)

    def q_derivative(self):
        """q d/dq."""
        return QSeries([n * c for n, c in enumerate(self.coeffs)], self.prec)

    def truncate(self, prec):
        return QSeries(list(self.coeffs[:prec]), min(prec, self.prec))

    def __repr__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c:
                parts.append("%s*q^%d" % (c, n) if n else str(c))
        body = " + ".join(parts) if parts else "0"
        return "%s + O(q^%d)" % (body, self.prec)


class GradedForm:
    """A q-expansion together with its weight (Y-eigenvalue weight/2)."""

    __slots__ = ("series", "weight")

    def __init__(self, series, weight):
        self.series = series
        self.weight = weight

    @property
    def prec(self):
        return self.series.prec

    def y_eigenvalue(self):
        return Fraction(self.weight, 2)

    def is_zero(self):
        return self.series.is_zero()

    def __eq__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        return self.weight == other.weight and self.series == other.series

    def __add__(self, other):
        if self.is_zero():
            return GradedForm(self.series + other.series, other.weight)
        if other.is_zero():
            return GradedForm(self.series + other.series, self.weight)
        if self.weight != other.weight:
            raise ValueError(
                "cannot add forms of weights %s and %s" % (self.weight, other.weight)
            )
        return GradedForm(self.series + other.series, self.weight)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, GradedForm):
            return GradedForm(self.series * other.series, self.weight + other.weight)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        return GradedForm(self.series * Fraction(c), self.weight)

    def __repr__(self):
        return "weight %s: %r" % (self.weight, self.series)


def sigma_divisor(k, n):
    """Divisor power sum sigma_k(n)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d**k
    return total


_EISENSTEIN_FACTOR = {2: -24, 4: 240, 6: -504}


@lru_cache(maxsize=None)
def _eisenstein_coeffs(k, prec):
    factor = _EISENSTEIN_FACTOR[k]
    return tuple(
        [ONE] + [Fraction(factor * sigma_divisor(k - 1, n)) for n in range(1, prec)]
    )


def eisenstein(k, prec) -> GradedForm:
    """Normalized level-1 Eisenstein series E2, E4 or E6."""
    if k not in _EISENSTEIN_FACTOR:
        raise ValueError("unsupported Eisenstein weight %r" % (k,))
    if prec < 1:
        raise ValueError("prec must be at least 1")
    return GradedForm(QSeries(list(_eisenstein_coeffs(k, prec)), prec), k)


def delta_form(prec) -> GradedForm:
    """The discriminant cusp form (E4^3 - E6^2)/1728, weight 12."""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    series = (e4.series * e4.series * e4.series - e6.series * e6.series) / 1728
    return GradedForm(series, 12)


def builtin_form(name, prec) -> GradedForm:
    table = {"E2": 2, "E4": 4, "E6": 6}
    if name in table:
        return eisenstein(table[name], prec)
    if name in ("Delta", "delta"):
        return delta_form(prec)
    raise KeyError("unknown built-in form %r" % (name,))


def serre_x(f: GradedForm, sigma=None) -> GradedForm:
    """X(f) = q df/dq - (weight/12) E2 f, plus sigma * (weight/2) f if given."""
    e2 = eisenstein(2, f.prec).series
    series = f.series.q_derivative() - e2 * f.series * Fraction(f.weight, 12)
    if sigma is not None:
        series = series + sigma.truncate(f.prec) * f.series * Fraction(f.weight, 2)
    return GradedForm(series, f.weight + 2)


def omega(prec) -> GradedForm:
    """The quadratic differential of the standard action: E4/72."""
    e4 = eisenstein(4, prec)
    return GradedForm(e4.series / 72, 4)


def g2star(prec) -> QSeries:
    """The quasimodular solution of X(m) + m^2/2 + omega = 0, i.e. E2/6."""
    return eisenstein(2, prec).series / 6


def classical_bracket(f: GradedForm, g: GradedForm, n: int) -> GradedForm:
    """The n-th Rankin-Cohen bracket of graded q-expansions:

    sum over r+s=n of (-1)^r C(n+k-1, s) C(n+l-1, r) f^(r) g^(s),

    with f^(r) the r-fold q d/dq derivative; result weight k + l + 2n.
    """
    from math import comb

    k, l = f.weight, g.weight
    prec = min(f.prec, g.prec)
    df = [f.series.truncate(prec)]
    dg = [g.series.truncate(prec)]
    for _ in range(n):
        df.append(df[-1].q_derivative())
        dg.append(dg[-1].q_derivative())
    out = QSeries.zero(prec)
    for r in range(n + 1):
        s = n - r
        c = Fraction((-1) ** r * comb(n + k - 1, s) * comb(n + l - 1, r))
        out = out + df[r] * dg[s] * c
    return GradedForm(out, k + l + 2 * n)


class Representation:
    """The concrete action at a fixed precision and conjugation parameter.

    sigma (optional) is a weight-2 q-expansion; it conjugates X to
    X_s = X + s Y and shifts the quadratic differential to
    omega_s = omega + X(s) + s^2/2, and the jet variables go to
    Z_k -> X_s^k(omega_s).  Positive d1 powers act by zero.
    """

    def __init__(self, prec, sigma=None):
        self.prec = prec
        self.sigma = sigma.truncate(prec) if sigma is not None else None
        om = omega(prec)
        if self.sigma is not None:
            s2 = GradedForm(self.sigma, 2)
            om = om + serre_x(s2, self.sigma) + GradedForm(
                self.sigma * self.sigma / 2, 4
            )
        self._omega = om
        self._jets = [om]

    def x(self, f: GradedForm) -> GradedForm:
        return serre_x(f, self.sigma)

    def x_power(self, f: GradedForm, k: int) -> GradedForm:
        for _ in range(k):
            f = self.x(f)
        return f

    def jet(self, j) -> GradedForm:
        while len(self._jets) <= j:
            self._jets.append(self.x(self._jets[-1]))
        return self._jets[j]

    def rho_mono(self, mono) -> GradedForm:
        out = GradedForm(QSeries.constant(1, self.prec), 0)
        for j, e in mono:
            for _ in range(e):
                out = out * self.jet(j)
        return out

    def rho(self, p: PElement) -> QSeries:
        """The algebra map on P; lands in plain q-expansions."""
        total = QSeries.zero(self.prec)
        for m, c in p.terms.items():
            total = total + self.rho_mono(m).series * c
        return total

    def apply_tensor2(self, t: TensorElement, f: GradedForm, g: GradedForm) -> GradedForm:
        """Each chain term acts as rho(alpha1) m1(f) rho(alpha2) m2(g) rho(beta2)."""
        prec = min(self.prec, f.prec, g.prec)
        f = GradedForm(f.series.truncate(prec), f.weight)
        g = GradedForm(g.series.truncate(prec), g.weight)
        max_x1 = max((m1.x for (m1, _) in t.terms), default=0)
        max_x2 = max((m2.x for (_, m2) in t.terms), default=0)
        fx = [f]
        for _ in range(max_x1):
            fx.append(self.x(fx[-1]))
        gx = [g]
        for _ in range(max_x2):
            gx.append(self.x(gx[-1]))
        yf = f.y_eigenvalue()
        yg = g.y_eigenvalue()
        out = GradedForm(QSeries.zero(prec), 0)
        for (m1, m2), c in t.terms.items():
            if m1.d1 or m2.d1:
                continue  # delta_1 acts by zero at the identity element
            val = fx[m1.x] * (yf**m1.y * c)
            val = val * gx[m2.x] * (yg**m2.y)
            for mono in (m1.alpha, m2.alpha, m2.beta):
                if mono:
                    val = val * self.rho_mono(mono)
            out = out + val
        return out


def rho_eval(p: PElement, sigma=None, prec=20) -> QSeries:
    return Representation(prec, sigma).rho(p)


def evaluate_bidiff(t: TensorElement, f: GradedForm, g: GradedForm, sigma=None) -> GradedForm:
    prec = min(f.prec, g.prec)
    return Representation(prec, sigma).apply_tensor2(t, f, g)


class FormsAction:
    """star_product hooks backed by the concrete representation."""

    def __init__(self, prec, sigma=None):
        self.rep = Representation(prec, sigma)

    def evaluate(self, t2, a, b):
        return self.rep.apply_tensor2(t2, a, b)

    def y_eigenvalue(self, a):
        return a.y_eigenvalue()


def crosscheck_rc(n, f, g, sigma=None):
    """Compare the universal bracket evaluation with the classical bracket.

    Returns (verdict, constant): verdict 'equal' with constant 1, or
    'proportional' with the global ratio lhs = constant * rhs, or
    'mismatch' with constant None.
    """
    from .rc_engine import compute_RC

    lhs = evaluate_bidiff(compute_RC(n), f, g, sigma=sigma)
    rhs = classical_bracket(f, g, n)
    if lhs.series.matches(rhs.series):
        return "equal", ONE
    ratio = None
    for a, b in zip(lhs.series.coeffs, rhs.series.coeffs):
        if b == 0:
            if a != 0:
                return "mismatch", None
            continue
        r = a / b
        if ratio is None:
            ratio = r
        elif r != ratio:
            return "mismatch", None
    if ratio is None:
        return "equal", ONE  # both identically zero
    return "proportional", ratio


def write_form(form: GradedForm) -> str:
    lines = ["weight %d prec %d" % (form.weight, form.prec)]
    for n, c in enumerate(form.series.coeffs):
        if c:
            lines.append("%d %s" % (n, format_rational(c)))
    return "\n".join(lines) + "\n"


def read_form(text: str) -> GradedForm:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty form file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "weight" or head[2] != "prec":
        raise ValueError("first line must be 'weight <l> prec <p>'")
    weight = int(head[1])
    prec = int(head[3])
    if prec < 1:
        raise ValueError("prec must be at least 1")
    coeffs = [ZERO] * prec
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError("malformed coefficient line %r" % ln)
        n = int(parts[0])
        if not 0 <= n < prec:
            raise ValueError("coefficient index %d out of range" % n)
        coeffs[n] = parse_rational(parts[1])
    return GradedForm(QSeries(coeffs, prec), weight)
