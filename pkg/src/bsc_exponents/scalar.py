"""Elementary functions of the binary symmetric channel.

All public values are in bits (``log2``).  Inputs that overshoot a domain
boundary by less than :data:`CLAMP_EPS` are pulled back onto it, since the
solvers in the other modules routinely probe the boundaries; anything further
out raises :class:`~bsc_exponents.errors.DomainError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._numerics import bisect
from .errors import DomainError

LN2 = math.log(2.0)
CLAMP_EPS = 1e-12


def clamp(x: float, lo: float, hi: float, name: str = "x") -> float:
    if lo <= x <= hi:
        return x
    if lo - CLAMP_EPS <= x < lo:
        return lo
    if hi < x <= hi + CLAMP_EPS:
        return hi
    raise DomainError(f"{name}={x!r} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class ChannelParam:
    """Crossover probability of a BSC, ``0 < p < 1/2``."""

    p: float

    def __post_init__(self):
        if not 0.0 < self.p < 0.5:
            raise DomainError(f"crossover probability p={self.p!r} not in (0, 1/2)")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def sqrt_pq(self) -> float:
        return math.sqrt(self.p * self.q)

    @property
    def capacity(self) -> float:
        return 1.0 - h2(self.p)


def as_channel(ch) -> ChannelParam:
    return ch if isinstance(ch, ChannelParam) else ChannelParam(float(ch))


@dataclass(frozen=True)
class RatePoint:
    """A rate together with its Gilbert-Varshamov radius."""

    R: float
    delta_gv: float

    @classmethod
    def from_rate(cls, R: float) -> "RatePoint":
        return cls(R, delta_gv(R))


@dataclass(frozen=True)
class AlphaTauPair:
    """Weight ``alpha`` and radius ``tau`` with ``0 <= tau <= alpha <= 1/2``."""

    alpha: float
    tau: float

    def __post_init__(self):
        if not 0.0 <= self.tau <= self.alpha <= 0.5:
            raise DomainError(f"need 0 <= tau <= alpha <= 1/2, got ({self.alpha}, {self.tau})")

    @property
    def rate(self) -> float:
        return 1.0 - h2(self.alpha) + h2(self.tau)

    @classmethod
    def from_rate(cls, R: float, alpha: float) -> "AlphaTauPair":
        return cls(alpha, tau_of(R, alpha))


def xlog2x(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log2(x)


def h2(x: float) -> float:
    """Binary entropy in bits, extended continuously by 0 at both endpoints."""
    x = clamp(x, 0.0, 1.0, "x")
    return -xlog2x(x) - xlog2x(1.0 - x)


def h2_inv(y: float) -> float:
    """The unique ``x`` in ``[0, 1/2]`` with ``h2(x) == y``.

    Bisection runs until the bracket stops shrinking in floating point, which
    keeps full relative accuracy for tiny ``x`` as well.
    """
    y = clamp(y, 0.0, 1.0, "y")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 0.5
    return bisect(lambda x: h2(x) - y, 0.0, 0.5, xtol=0.0, max_iter=200, name="h2_inv")


def kl_div(x: float, y: float) -> float:
    """Binary Kullback-Leibler divergence ``D(x || y)`` in bits."""
    x = clamp(x, 0.0, 1.0, "x")
    if not 0.0 < y < 1.0:
        raise DomainError(f"y={y!r} must lie in (0, 1)")
    out = 0.0
    if x > 0.0:
        out += x * math.log2(x / y)
    if x < 1.0:
        out += (1.0 - x) * math.log2((1.0 - x) / (1.0 - y))
    return max(out, 0.0)


def g_func(alpha: float, tau: float) -> float:
    """``G(alpha, tau) = 2[alpha(1-alpha) - tau(1-tau)] / (1 + 2 sqrt(tau(1-tau)))``."""
    alpha = clamp(alpha, 0.0, 0.5, "alpha")
    tau = clamp(tau, 0.0, 0.5, "tau")
    if tau > alpha + CLAMP_EPS:
        raise DomainError(f"tau={tau!r} exceeds alpha={alpha!r}")
    tau = min(tau, alpha)
    s = math.sqrt(tau * (1.0 - tau))
    # alpha(1-alpha) - tau(1-tau) = (alpha-tau)(1-alpha-tau), exact to rounding even when tau ~ alpha
    return 2.0 * (alpha - tau) * (1.0 - alpha - tau) / (1.0 + 2.0 * s)


def g_func_alt(alpha: float, tau: float) -> float:
    """Second algebraic form: ``1/2 - s - (1-2alpha)^2 / (2(1+2s))``."""
    s = math.sqrt(tau * (1.0 - tau))
    return 0.5 - s - (1.0 - 2.0 * alpha) ** 2 / (2.0 * (1.0 + 2.0 * s))


def delta_gv(R: float) -> float:
    """Gilbert-Varshamov radius: ``h2(delta) = 1 - R`` with ``delta <= 1/2``."""
    R = clamp(R, 0.0, 1.0, "R")
    return h2_inv(1.0 - R)


def tau_of(R: float, alpha: float) -> float:
    """Radius ``tau <= alpha`` tied to ``(R, alpha)`` by ``h2(tau) = h2(alpha) - 1 + R``."""
    return h2_inv(clamp(h2(alpha) - 1.0 + R, 0.0, 1.0, "h2(alpha)-1+R"))


def t1(omega: float) -> float:
    omega = clamp(omega, 0.0, 0.5, "omega")
    return (1.0 - math.sqrt(1.0 - 2.0 * omega)) / 2.0


def t2(omega: float, ch) -> float:
    """Elias radius ``omega/2 + (1 - omega) p``."""
    ch = as_channel(ch)
    omega = clamp(omega, 0.0, 1.0, "omega")
    return omega / 2.0 + (1.0 - omega) * ch.p


def omega1(ch) -> float:
    """Distance at which ``t1`` and ``t2`` cross: ``2 sqrt(pq) / (1 + 2 sqrt(pq))``."""
    x = 2.0 * as_channel(ch).sqrt_pq
    return x / (1.0 + x)


def p_from_omega1(w: float) -> float:
    """Inverse of :func:`omega1` on ``(0, 1/2)``."""
    w = clamp(w, 0.0, 0.5, "omega1")
    return (1.0 - w - math.sqrt(1.0 - 2.0 * w)) / (2.0 * (1.0 - w))


def t_radius(omega: float, ch) -> float:
    """``min(t1(omega), t2(omega, p))``."""
    return min(t1(omega), t2(omega, ch))


def _check_u_domain(t: float, omega: float) -> tuple[float, float]:
    if not 0.0 <= omega < 1.0:
        if omega < 0.0 and omega >= -CLAMP_EPS:
            omega = 0.0
        else:
            raise DomainError(f"omega={omega!r} not in [0, 1)")
    t = clamp(t, omega / 2.0, 1.0 - omega / 2.0, "t")
    return t, omega


def u_func(t: float, omega: float) -> float:
    """Exponent of the number of points at distance ``tn`` from both words of an ``omega``-pair."""
    t, omega = _check_u_domain(t, omega)
    x = (2.0 * t - omega) / (2.0 * (1.0 - omega))
    return omega + (1.0 - omega) * h2(min(x, 1.0))


def u_partials(t: float, omega: float) -> tuple[float, float]:
    """Closed-form ``(du/dt, du/domega)`` at an interior point."""
    t, omega = _check_u_domain(t, omega)
    lo = 2.0 * t - omega
    hi = 2.0 - 2.0 * t - omega
    du_dt = math.log2(hi / lo)
    du_domega = -0.5 * math.log2((1.0 - omega) ** 2 / (lo * hi))
    return du_dt, du_domega


def u_second_partials(t: float, omega: float) -> tuple[float, float]:
    """``(d2u/dt2, d2u/domega2)``; both are non-positive."""
    t, omega = _check_u_domain(t, omega)
    lo = 2.0 * t - omega
    hi = 2.0 - 2.0 * t - omega
    d2t = -4.0 * (1.0 - omega) / (lo * hi * LN2)
    d2w = -((1.0 - 2.0 * t) ** 2) / ((1.0 - omega) * lo * hi * LN2)
    return d2t, d2w


def c_func(omega: float, t: float, ch) -> float:
    """Exponent of the probability that the output lands at distance ``tn`` from both words of an ``omega``-pair."""
    ch = as_channel(ch)
    return t * math.log2(ch.q / ch.p) - math.log2(ch.q) - u_func(t, omega)


def c_partials(omega: float, t: float, ch) -> tuple[float, float]:
    """Closed-form ``(dc/dt, dc/domega)``."""
    ch = as_channel(ch)
    t, omega = _check_u_domain(t, omega)
    lo = 2.0 * t - omega
    hi = 2.0 - 2.0 * t - omega
    dc_dt = math.log2(ch.q * lo / (ch.p * hi))
    dc_domega = 0.5 * math.log2((1.0 - omega) ** 2 / (lo * hi))
    return dc_dt, dc_domega


def c_min(omega: float, ch) -> float:
    """``min_t c(omega, t, p) = (omega / 2) log2(1 / (4pq))``, attained at ``t2(omega, p)``."""
    ch = as_channel(ch)
    return 0.5 * omega * math.log2(1.0 / (4.0 * ch.p * ch.q))
