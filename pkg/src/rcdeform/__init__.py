"""rcdeform: exact universal Rankin-Cohen brackets and their verification."""

from .rational import Rational, format_rational, parse_rational
from .hopf_core import (
    H1Element,
    H1Monomial,
    HsElement,
    HsMonomial,
    antipode_power_closed,
    h1_antipode,
    h1_coproduct,
    h1_counit,
    h1_gen_delta,
    h1_gen_x,
    h1_gen_y,
    h1_multiply,
    hs_multiply,
    project_to_hs,
    rc_zero_omega,
)
