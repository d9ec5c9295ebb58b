"""Critical rates and the linear-programming distance bound.

``omega_lp`` minimises ``G(alpha, tau)`` along ``h2(alpha) - h2(tau) = 1 - R``.
Below ``R0`` the minimum sits at ``alpha = 1/2``; above it the optimum is the
unique interior zero of ``dG/dalpha`` and is found by bisection.  The rates
``R_crit``, ``R1``, ``R_min`` are closed forms in ``p``; ``R2`` is obtained by
inverting ``omega_lp``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._numerics import bisect, grid_then_golden_min
from .errors import DomainError
from .scalar import (
    as_channel,
    clamp,
    delta_gv,
    g_func,
    h2,
    h2_inv,
    omega1,
    p_from_omega1,
    t1,
    tau_of,
)

ROOT_XTOL = 1e-12
# the stationary tau(alpha) never exceeds 0.14 alpha, while dG/dalpha flattens
# to 0 as tau -> alpha (to leading order when alpha -> 1/2), so the upper end
# of the bracket sits at alpha/2 where the sign is unambiguous
SWEEP_EPS = 1e-12
SWEEP_UPPER_FRACTION = 0.5


@dataclass(frozen=True)
class LpBoundPoint:
    R: float
    omega_R: float
    alpha_R: float
    tau_R: float


@dataclass(frozen=True)
class GlobalConstants:
    tau0: float
    r0: float
    p0: float
    p1: float


@dataclass(frozen=True)
class CriticalRates:
    p: float
    capacity: float
    r_crit: float
    r1: float
    r2: float
    r_min: float


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    tau: float
    R: float
    omega: float
    p: float


def eq_r0_residual(tau: float) -> float:
    """Left-hand side of the equation defining ``tau0`` (natural logarithm)."""
    s = math.sqrt(tau * (1.0 - tau))
    return (1.0 - 2.0 * tau) * (1.0 + 1.0 / (2.0 * s)) - math.log((1.0 - tau) / tau)


def dg_dalpha(alpha: float, tau: float) -> float:
    """Total derivative of ``G`` in ``alpha`` along a fixed-rate curve.

    ``tau`` moves with ``alpha`` so that ``h2(alpha) - h2(tau)`` stays put;
    the ratio of the two entropy slopes is taken in natural logarithms.
    """
    A = 1.0 - 2.0 * alpha
    s = math.sqrt(tau * (1.0 - tau))
    x = 1.0 + 2.0 * s
    return 2.0 * A / x - (1.0 - 2.0 * tau) / (2.0 * s) * (1.0 - A * A / (x * x)) * math.log(
        (1.0 - alpha) / alpha
    ) / math.log((1.0 - tau) / tau)


def _dg_dalpha_scaled(alpha: float, tau: float) -> float:
    """``dG/dalpha / (1 - 2 alpha)``, finite and sign-preserving at ``alpha = 1/2``."""
    if tau <= 0.0:
        return -math.inf
    A = 1.0 - 2.0 * alpha
    s = math.sqrt(tau * (1.0 - tau))
    x = 1.0 + 2.0 * s
    # ln((1-alpha)/alpha) = 2 atanh(A)
    ratio = 2.0 if abs(A) < 1e-8 else 2.0 * math.atanh(A) / A
    return 2.0 / x - (1.0 - 2.0 * tau) / (2.0 * s) * (1.0 - A * A / (x * x)) * ratio / math.log(
        (1.0 - tau) / tau
    )


@lru_cache(maxsize=1)
def tau0() -> float:
    return bisect(eq_r0_residual, 1e-6, 0.2, xtol=0.0, name="tau0")


@lru_cache(maxsize=1)
def global_constants() -> GlobalConstants:
    """``tau0``, ``R0 = h2(tau0)``, ``p0`` (where ``R2 = R1`` starts) and ``p1`` (``R1 = R_crit``)."""
    t0 = tau0()
    p0 = p_from_omega1(g_func(0.5, t0))
    p1 = bisect(lambda p: r1(p) - r_crit(p), 0.001, 0.05, xtol=0.0, name="p1")
    return GlobalConstants(tau0=t0, r0=h2(t0), p0=p0, p1=p1)


def omega_lp(R: float) -> LpBoundPoint:
    """Linear-programming bound ``omega_R`` with its optimal ``(alpha_R, tau_R)``."""
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"R={R!r} not in [0, 1]")
    if R <= global_constants().r0:
        tau = h2_inv(R)
        return LpBoundPoint(R, 0.5 - math.sqrt(tau * (1.0 - tau)), 0.5, tau)
    if R >= 1.0:
        return LpBoundPoint(R, 0.0, 0.0, 0.0)
    lo = delta_gv(R)
    alpha = bisect(
        lambda a: _dg_dalpha_scaled(a, tau_of(R, a)),
        lo, 0.5, xtol=ROOT_XTOL, name=f"omega_lp(R={R})",
    )
    tau = tau_of(R, alpha)
    return LpBoundPoint(R, g_func(alpha, tau), alpha, tau)


def tau_on_g_level(alpha: float, omega: float) -> float:
    """The ``tau`` with ``G(alpha, tau) = omega``; requires ``2 alpha (1 - alpha) >= omega``."""
    A = 1.0 - 2.0 * alpha
    d = (1.0 - omega) ** 2 - A * A
    if d < 0.0:
        raise DomainError(f"G(alpha={alpha}, .) never reaches omega={omega}")
    two_s = max(math.sqrt(d) - omega, 0.0)
    x = two_s * two_s
    # (1 - sqrt(1 - x)) / 2 without cancellation
    return x / (2.0 * (1.0 + math.sqrt(max(1.0 - x, 0.0))))


def capacity(ch) -> float:
    return as_channel(ch).capacity


def r_crit(ch) -> float:
    ch = as_channel(ch)
    sp, sq = math.sqrt(ch.p), math.sqrt(ch.q)
    return 1.0 - h2(sp / (sp + sq))


def tau1(ch) -> float:
    ch = as_channel(ch)
    x = 4.0 * ch.p * ch.q
    return (1.0 - x ** 0.25) ** 2 / (2.0 * (1.0 + math.sqrt(x)))


def r1(ch) -> float:
    return h2(tau1(ch))


def r_min(ch) -> float:
    return 1.0 - h2(omega1(ch))


def r2(ch) -> float:
    """Smallest rate at which ``G(alpha, tau) = omega1(p)`` is attainable: root of ``omega_R = omega1(p)``."""
    w1 = omega1(ch)
    return bisect(lambda R: omega_lp(R).omega_R - w1, 0.0, 1.0, xtol=1e-14, name="r2")


def r2_max_form(ch) -> float:
    """``1 - max{h2(alpha) - h2(tau) : G(alpha, tau) = omega1(p)}``, maximised over ``alpha``."""
    w1 = omega1(ch)
    lo = t1(w1)

    def neg_gap(alpha: float) -> float:
        return -(h2(alpha) - h2(tau_on_g_level(alpha, w1)))

    _, val = grid_then_golden_min(neg_gap, lo, 0.5, n_grid=200, xtol=1e-12)
    return 1.0 + val


def critical_rates(ch) -> CriticalRates:
    ch = as_channel(ch)
    return CriticalRates(
        p=ch.p,
        capacity=ch.capacity,
        r_crit=r_crit(ch),
        r1=r1(ch),
        r2=r2(ch),
        r_min=r_min(ch),
    )


def stationary_tau(alpha: float) -> float:
    """Root ``tau < alpha`` of ``dG/dalpha = 0`` with ``alpha`` and ``tau`` treated as free."""
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha={alpha!r} not in (0, 1/2)")
    hi = alpha * SWEEP_UPPER_FRACTION
    return bisect(
        lambda t: _dg_dalpha_scaled(alpha, t),
        SWEEP_EPS, hi, xtol=0.0, name=f"stationary_tau(alpha={alpha})",
    )


def parametric_sweep(alpha: float) -> SweepPoint:
    """Map ``alpha`` to ``(tau(alpha), R(alpha), omega(alpha), p(alpha))``.

    ``R(alpha)`` is the rate whose LP optimum sits at this ``alpha`` and
    ``p(alpha)`` is the crossover probability with ``R2(p) = R(alpha)``.
    """
    alpha = clamp(alpha, 0.0, 0.5, "alpha")
    tau = stationary_tau(alpha)
    g = g_func(alpha, tau)
    return SweepPoint(alpha, tau, 1.0 - h2(alpha) + h2(tau), g, p_from_omega1(g))
