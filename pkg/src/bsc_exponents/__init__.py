"""Error-exponent bounds for the binary symmetric channel."""

__version__ = "0.1.0"

from .bounds import (
    BoundCurve,
    WArgs,
    bound_curve,
    e_low,
    e_up,
    proposition1_bound,
    sphere_packing_exponent,
    w_func,
)
from .combinatorics import BinaryCode, CodeSpectrum, lemma2_check, spectrum, z_count
from .errors import ConvergenceError, DomainError, QuadratureError
from .rates import (
    CriticalRates,
    GlobalConstants,
    LpBoundPoint,
    critical_rates,
    global_constants,
    omega_lp,
    parametric_sweep,
    r1,
    r2,
    r_crit,
    r_min,
)
from .scalar import (
    AlphaTauPair,
    ChannelParam,
    RatePoint,
    c_func,
    delta_gv,
    g_func,
    h2,
    h2_inv,
    kl_div,
    omega1,
    t1,
    t2,
    t_radius,
    u_func,
)
from .spectrum import ClosedFormAux, SpectrumArgs, l_func, mu, mu_closed, mu_domega, mu_half, mu_integral
