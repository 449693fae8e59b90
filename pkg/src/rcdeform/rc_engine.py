"""Universal Rankin-Cohen elements and their identity checks.

The order-n bracket element lives in the rank-2 tensor over P and is
assembled from two families defined by the same two-term recursion

    C_{n+1} = Z C_n - n Theta (Y - (n-1)/2) C_{n-1},   C_0 = 1, C_1 = Z,

run once with (X, alpha(Z0)) and once with (S(X), beta(Z0)).  The checks
in this module are computational: exact expansion up to a requested
order, with an exactly-zero residual as the pass condition.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .extended import (
    HtsElement,
    TensorElement,
    apply_coproduct_leg,
    apply_counit_leg,
    canonicalize_tensor,
    hts_alpha,
    hts_antipode_x,
    hts_beta,
    hts_gen_d1,
    hts_gen_x,
    hts_gen_y,
    tensor_right_multiply,
)
from .hopf_core import HsMonomial, HsTensor2
from .jets import PElement, P_UNIT
from .rational import HALF, ONE, ZERO, gen_binomial
from .ypoly import YRationalFunction, gamma_ratio, pochhammer


class GradingError(ValueError):
    """A recursion or identity was invoked outside its grading hypotheses."""


class SingularDenominator(ZeroDivisionError):
    """A twisting coefficient was evaluated where a denominator binomial vanishes."""


def _check_grading(Z: HtsElement, Theta: HtsElement):
    y = hts_gen_y()
    if y.commutator(Z) != Z:
        raise GradingError("[Y, Z] = Z fails for the supplied Z")
    if y.commutator(Theta) != Theta.scale(2):
        raise GradingError("[Y, Theta] = 2 Theta fails for the supplied Theta")


_C_CACHE = {}
_DISK_CACHE = None


def attach_disk_cache(cache):
    """Persist and reload A/B/RC elements through a DiskCache (or None)."""
    global _DISK_CACHE
    _DISK_CACHE = cache
    if cache is None:
        return
    n = 0
    while True:
        el = cache.get("RC", n)
        if el is None:
            break
        _RC_CACHE.setdefault(n, el.with_t_order(n))
        n += 1
    for family, Z, Theta in (
        ("A", hts_antipode_x(), hts_beta(PElement.z(0))),
        ("B", hts_gen_x(), hts_alpha(PElement.z(0))),
    ):
        seq = [HtsElement.one(), Z]
        m = 2
        while True:
            el = cache.get(family, m)
            if el is None:
                break
            seq.append(el)
            m += 1
        existing = _C_CACHE.get((Z, Theta))
        if existing is None or len(existing) < len(seq):
            _C_CACHE[(Z, Theta)] = seq


def _persist(family, n, obj):
    if _DISK_CACHE is not None:
        _DISK_CACHE.put(family, n, obj)


def compute_C(n: int, Z: HtsElement, Theta: HtsElement) -> HtsElement:
    """n-th element of the generic recursion; validates the gradings."""
    _check_grading(Z, Theta)
    return _compute_c_unchecked(n, Z, Theta)


def _compute_c_unchecked(n, Z, Theta):
    key = (Z, Theta)
    seq = _C_CACHE.get(key)
    if seq is None:
        seq = [HtsElement.one(), Z]
        _C_CACHE[key] = seq
    y = hts_gen_y()
    while len(seq) <= n:
        m = len(seq) - 1  # building C_{m+1}
        step = y + HtsElement.one().scale(Fraction(-(m - 1), 2))
        seq.append(Z * seq[m] - (Theta * step * seq[m - 1]).scale(m))
    return seq[n]


def compute_B(n: int) -> HtsElement:
    """B-family: the recursion with Z = X and Theta = alpha(Z0)."""
    out = _compute_c_unchecked(n, hts_gen_x(), hts_alpha(PElement.z(0)))
    if n >= 2:
        _persist("B", n, out)
    return out


def compute_A(n: int) -> HtsElement:
    """A-family: the recursion with Z = S(X) and Theta = beta(Z0)."""
    out = _compute_c_unchecked(n, hts_antipode_x(), hts_beta(PElement.z(0)))
    if n >= 2:
        _persist("A", n, out)
    return out


_RC_CACHE = {}


def compute_RC(n: int) -> TensorElement:
    """The order-n universal bracket element, in contracted chain form:

    sum over k of  A_k/k! (2Y+k)_{n-k}  (x)  B_{n-k}/(n-k)! (2Y+n-k)_k.
    """
    cached = _RC_CACHE.get(n)
    if cached is not None:
        return cached
    out = TensorElement.zero(2)
    for k in range(n + 1):
        left = compute_A(k).scale(Fraction(1, factorial(k)))
        left = left.times_ypoly(pochhammer(k, n - k))
        right = compute_B(n - k).scale(Fraction(1, factorial(n - k)))
        right = right.times_ypoly(pochhammer(n - k, k))
        out = out + canonicalize_tensor([left, right])
    out = out.with_t_order(n)
    _RC_CACHE[n] = out
    return out


def seed_rc_cache(n: int, element: TensorElement):
    """Install a deserialized bracket element (e.g. from the disk cache)."""
    _RC_CACHE[n] = element.with_t_order(n)


def specialize_zero_omega(t: TensorElement) -> HsTensor2:
    """Evaluate all jet variables at zero, landing in the plain Hs tensor square."""
    if t.rank != 2:
        raise ValueError("expected a rank-2 tensor")
    out = {}
    for (m1, m2), c in t.terms.items():
        if m1.alpha != P_UNIT or m1.beta != P_UNIT:
            continue
        if m2.alpha != P_UNIT or m2.beta != P_UNIT:
            continue
        key = (HsMonomial(m1.d1, m1.x, m1.y), HsMonomial(m2.d1, m2.x, m2.y))
        out[key] = c
    return HsTensor2(out)


@dataclass
class RCBracketSet:
    """The twisting element through a maximal order: F = sum t^n RC_n."""

    max_order: int
    elements: list

    def __getitem__(self, n):
        return self.elements[n]


def build_twist(N: int) -> RCBracketSet:
    return RCBracketSet(N, [compute_RC(n) for n in range(N + 1)])


@dataclass
class OrderResult:
    order: int
    passed: bool
    term_count: int
    residual_terms: int
    seconds: float
    detail: str = ""


@dataclass
class CheckReport:
    name: str
    orders: list = field(default_factory=list)

    @property
    def passed(self):
        return all(o.passed for o in self.orders)

    def add(self, result: OrderResult):
        self.orders.append(result)

    def lines(self):
        out = []
        for o in self.orders:
            status = "PASS" if o.passed else "FAIL"
            extra = " %s" % o.detail if o.detail else ""
            out.append(
                "%s order %d: %s (terms=%d residual=%d %.2fs)%s"
                % (self.name, o.order, status, o.term_count, o.residual_terms, o.seconds, extra)
            )
        return out


def _right_multiply_by_tensor2(t3, s2, side):
    """t3 * (s2 (x) 1) for side='left', t3 * (1 (x) s2) for side='right'.

    s2 enters through its canonical chain representative, one pure tensor
    at a time (only the right action of representatives is ever used).
    """
    one = HtsElement.one()
    out = TensorElement.zero(3)
    for (m1, m2), c in s2.terms.items():
        f1 = HtsElement.monomial(m1)
        f2 = HtsElement.monomial(m2)
        if side == "left":
            factors = [f1, f2, one]
        else:
            factors = [one, f1, f2]
        out = out + tensor_right_multiply(t3, factors).scale(c)
    return out


def twist_residual(n: int) -> TensorElement:
    """t^n coefficient of (Delta x Id)(F)(F x 1) - (Id x Delta)(F)(1 x F)."""
    lhs = TensorElement.zero(3)
    rhs = TensorElement.zero(3)
    for i in range(n + 1):
        j = n - i
        rci = compute_RC(i)
        rcj = compute_RC(j)
        lhs = lhs + _right_multiply_by_tensor2(apply_coproduct_leg(rci, 1), rcj, "left")
        rhs = rhs + _right_multiply_by_tensor2(apply_coproduct_leg(rci, 2), rcj, "right")
    return lhs - rhs


def verify_twist_identity(N: int) -> CheckReport:
    report = CheckReport("twist")
    for n in range(N + 1):
        t0 = time.monotonic()
        residual = twist_residual(n)
        dt = time.monotonic() - t0
        report.add(
            OrderResult(
                order=n,
                passed=residual.is_zero(),
                term_count=compute_RC(n).term_count(),
                residual_terms=residual.term_count(),
                seconds=dt,
            )
        )
    return report


def verify_counit_identity(N: int) -> CheckReport:
    report = CheckReport("counit")
    unit1 = TensorElement.one(1)
    for n in range(N + 1):
        t0 = time.monotonic()
        rc = compute_RC(n)
        left = apply_counit_leg(rc, 1)
        right = apply_counit_leg(rc, 2)
        expected = unit1 if n == 0 else TensorElement.zero(1)
        ok = (left - expected).is_zero() and (right - expected).is_zero()
        dt = time.monotonic() - t0
        report.add(
            OrderResult(
                order=n,
                passed=ok,
                term_count=rc.term_count(),
                residual_terms=(left - expected).term_count()
                + (right - expected).term_count(),
                seconds=dt,
            )
        )
    return report


class GeneratingSeries:
    """Coefficients of Phi(Z, Theta)(s): entry n is C_n/n! with the formal
    inverse-Gamma right factor Gamma(2Y+n)^(-1) recorded by its index."""

    def __init__(self, Z: HtsElement, Theta: HtsElement, order: int):
        _check_grading(Z, Theta)
        self.Z = Z
        self.Theta = Theta
        self.order = order
        self.coefficients = [
            _compute_c_unchecked(n, Z, Theta).scale(Fraction(1, factorial(n)))
            for n in range(order + 1)
        ]

    def coefficient_on_base(self, n: int, base: int):
        """Entry n rebased to Gamma(2Y+base)^(-1).

        Returns (element, ratio) with ratio = Gamma(2Y+n)^(-1)/Gamma(2Y+base)^(-1)
        as a rational function of Y; polynomial whenever base >= n.
        """
        return self.coefficients[n], gamma_ratio(n, base)


def _times_gamma_ratio(element: HtsElement, ratio: YRationalFunction) -> HtsElement:
    if ratio.den.degree() != 0:
        raise ValueError("rebasing produced a genuine denominator; pick a larger base")
    return element.times_ypoly(ratio.num)


def verify_phi_ode(Z: HtsElement, Theta: HtsElement, N: int) -> CheckReport:
    """Order-by-order check of

    s Phi'' - 2 (Y-1) Phi' + Z Phi - (s/2) Theta Phi = 0,

    together with the initial conditions C_0 = 1, C_1 = Z.
    """
    series = GeneratingSeries(Z, Theta, N + 1)
    report = CheckReport("ode")
    y = hts_gen_y()
    one = HtsElement.one()
    t0 = time.monotonic()
    ic_ok = series.coefficients[0] == one and series.coefficients[1] == Z
    report.add(
        OrderResult(
            order=0,
            passed=ic_ok,
            term_count=len(series.coefficients[1].terms),
            residual_terms=0 if ic_ok else 1,
            seconds=time.monotonic() - t0,
            detail="initial conditions",
        )
    )
    for n in range(N + 1):
        t0 = time.monotonic()
        base = n + 1
        # s Phi'' - 2(Y-1) Phi' at s^n: ((n+2) - 2Y) C_{n+1}/n!, base n+1
        cnp1, ratio1 = series.coefficient_on_base(n + 1, base)
        head = (one.scale(n + 2) - y.scale(2)) * cnp1.scale(n + 1)
        residual = _times_gamma_ratio(head, ratio1)
        # Z Phi at s^n
        cn, ratio2 = series.coefficient_on_base(n, base)
        residual = residual + _times_gamma_ratio(Z * cn, ratio2)
        # -(s/2) Theta Phi at s^n
        if n >= 1:
            cnm1, ratio3 = series.coefficient_on_base(n - 1, base)
            residual = residual - _times_gamma_ratio(Theta * cnm1, ratio3).scale(HALF)
        dt = time.monotonic() - t0
        report.add(
            OrderResult(
                order=n,
                passed=residual.is_zero(),
                term_count=len(series.coefficients[n].terms),
                residual_terms=len(residual.terms),
                seconds=dt,
            )
        )
    return report


def verify_perturbation_series(
    Z: HtsElement, Theta: HtsElement, mu: HtsElement, N: int
) -> CheckReport:
    """Order-by-order check of

    Phi(Z + mu Y, Theta + [Z, mu] + mu^2/2)(s) = e^(s mu / 2) Phi(Z, Theta)(s)

    for any mu with [Theta, mu] = 0, [Y, mu] = mu, [[Z, mu], mu] = 0.
    """
    y = hts_gen_y()
    if (Theta * mu - mu * Theta):
        raise GradingError("[Theta, mu] = 0 fails")
    if y.commutator(mu) != mu:
        raise GradingError("[Y, mu] = mu fails")
    zmu = Z.commutator(mu)
    if (zmu * mu - mu * zmu):
        raise GradingError("[[Z, mu], mu] = 0 fails")

    z2 = Z + mu * y
    theta2 = Theta + zmu + (mu * mu).scale(HALF)
    plain = GeneratingSeries(Z, Theta, N)
    moved = GeneratingSeries(z2, theta2, N)

    report = CheckReport("pert")
    for n in range(N + 1):
        t0 = time.monotonic()
        base = n
        lhs, ratio = moved.coefficient_on_base(n, base)
        residual = _times_gamma_ratio(lhs, ratio)
        for k in range(n + 1):
            cm, rat = plain.coefficient_on_base(n - k, base)
            factor = (mu**k).scale(Fraction(1, 2**k * factorial(k)))
            residual = residual - _times_gamma_ratio(factor * cm, rat)
        dt = time.monotonic() - t0
        report.add(
            OrderResult(
                order=n,
                passed=residual.is_zero(),
                term_count=len(moved.coefficients[n].terms),
                residual_terms=len(residual.terms),
                seconds=dt,
            )
        )
    return report


def verify_perturbation_identity(N: int) -> CheckReport:
    """The inner-perturbation instance mu = d1, Z = X, Theta = alpha(Z0)."""
    return verify_perturbation_series(
        hts_gen_x(), hts_alpha(PElement.z(0)), hts_gen_d1(), N
    )


def twist_coefficient(n: int, kappa, x, y) -> Fraction:
    """The order-n twisting coefficient t_n^kappa(x, y):

    (-1/4)^n  sum over 0 <= 2j <= n of  C(n, 2j) *
        C(-1/2, j) C(kappa - 3/2, j) C(1/2 - kappa, j)
      / (C(-x-1/2, j) C(-y-1/2, j) C(n+x+y-3/2, j)).
    """
    kappa = Fraction(kappa)
    x = Fraction(x)
    y = Fraction(y)
    total = ZERO
    for j in range(0, n // 2 + 1):
        dens = (
            gen_binomial(-x - HALF, j),
            gen_binomial(-y - HALF, j),
            gen_binomial(n + x + y - Fraction(3, 2), j),
        )
        if any(d == 0 for d in dens):
            raise SingularDenominator(
                "denominator binomial vanishes at j=%d for n=%d, x=%s, y=%s"
                % (j, n, x, y)
            )
        num = (
            gen_binomial(Fraction(-1, 2), j)
            * gen_binomial(kappa - Fraction(3, 2), j)
            * gen_binomial(HALF - kappa, j)
        )
        total += comb(n, 2 * j) * num / (dens[0] * dens[1] * dens[2])
    return Fraction(-1, 4) ** n * total


def star_product(a, b, N: int, kappa=None, hooks=None):
    """Deformation series of a and b through order N.

    hooks supplies the module-algebra action: hooks.evaluate(t2, a, b)
    applies a rank-2 tensor as a bilinear operator, and (when kappa is
    given) hooks.y_eigenvalue(el) returns the Y-eigenvalue of a
    homogeneous element or None.  Returns the list of order-n terms.
    """
    if hooks is None:
        raise ValueError("star_product needs an action (hooks)")
    if kappa is not None:
        ya = hooks.y_eigenvalue(a)
        yb = hooks.y_eigenvalue(b)
        if ya is None or yb is None:
            raise ValueError("kappa-twisted product needs homogeneous arguments")
    out = []
    for n in range(N + 1):
        term = hooks.evaluate(compute_RC(n), a, b)
        if kappa is not None:
            term = term * twist_coefficient(n, kappa, ya, yb)
        out.append(term)
    return out
