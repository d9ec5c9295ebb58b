"""Upper and lower envelopes of the BSC reliability function.

``e_low`` is the classical lower bound (expurgated branch, random-coding
straight line, sphere packing).  ``e_up`` is the new upper bound; it coincides
with ``e_low`` on ``[R2(p), C(p)]`` and lies strictly above it for
``0 < R < R2(p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from ._numerics import golden_max, grid_then_golden_min
from ._parallel import ordered_map
from .errors import DomainError
from .rates import critical_rates, global_constants, omega_lp, parametric_sweep
from .scalar import (
    CLAMP_EPS,
    ChannelParam,
    as_channel,
    c_func,
    clamp,
    delta_gv,
    g_func,
    h2,
    h2_inv,
    kl_div,
    t_radius,
    tau_of,
)
from .spectrum import SpectrumArgs, l_func, mu_closed

REGION_BELOW_R2 = "below_R2"
REGION_STRAIGHT = "straight_line"
REGION_SPHERE = "sphere_packing"


@dataclass(frozen=True)
class WArgs:
    omega: float
    alpha: float
    R: float
    p: float


@dataclass(frozen=True)
class CurveRow:
    R: float
    e_low: float
    e_up: float
    region: str


@dataclass
class BoundCurve:
    p: float
    rows: list[CurveRow]
    seams: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Prop1Result:
    value: float
    alpha: float
    delta: float
    g: float


@lru_cache(maxsize=512)
def seams(p: float) -> dict[str, float]:
    """Rates at which the envelopes change formula, computed once per ``p``."""
    cr = critical_rates(p)
    gc = global_constants()
    return {
        "C": cr.capacity,
        "R_crit": cr.r_crit,
        "R1": cr.r1,
        "R2": cr.r2,
        "R_min": cr.r_min,
        "R0": gc.r0,
        "p0": gc.p0,
    }


def _log_inv_4pq(ch: ChannelParam) -> float:
    return math.log2(1.0 / (4.0 * ch.p * ch.q))


def _straight_line(R: float, ch: ChannelParam) -> float:
    return 1.0 - math.log2(1.0 + 2.0 * ch.sqrt_pq) - R


def _check_rate(R: float, ch: ChannelParam) -> float:
    return clamp(R, 0.0, ch.capacity, "R")


def sphere_packing_exponent(R: float, ch) -> float:
    """``E_sp(R, p) = D(delta_GV(R) || p)``."""
    ch = as_channel(ch)
    R = _check_rate(R, ch)
    if R == 0.0:
        return 0.5 * _log_inv_4pq(ch)
    return kl_div(delta_gv(R), ch.p)


def e_low(R: float, ch) -> float:
    ch = as_channel(ch)
    R = _check_rate(R, ch)
    s = seams(ch.p)
    if R >= s["R_crit"]:
        return sphere_packing_exponent(R, ch)
    if R >= s["R_min"]:
        return _straight_line(R, ch)
    return -delta_gv(R) * math.log2(2.0 * ch.sqrt_pq)


def region_of(R: float, ch) -> str:
    s = seams(as_channel(ch).p)
    if R >= s["R_crit"]:
        return REGION_SPHERE
    if R >= s["R2"]:
        return REGION_STRAIGHT
    return REGION_BELOW_R2


def _half_alpha_bound(R: float, ch: ChannelParam) -> float:
    tau = h2_inv(R)
    w = 0.5 - math.sqrt(tau * (1.0 - tau))
    return 0.5 * w * _log_inv_4pq(ch) - h2(tau) - h2(w) + 1.0


def _min_over_alpha_bound(R: float, ch: ChannelParam) -> float:
    k = 0.5 * _log_inv_4pq(ch)

    def objective(alpha: float) -> float:
        g = g_func(alpha, tau_of(R, alpha))
        return g * k - l_func(g)

    _, val = grid_then_golden_min(objective, delta_gv(R), 0.5, n_grid=200, xtol=1e-10)
    return 1.0 - R + val


def e_up_relaxed(R: float, ch) -> float:
    """The looser form of the bound evaluated at ``omega_R`` instead of minimising over ``alpha``."""
    ch = as_channel(ch)
    w = omega_lp(R).omega_R
    return 1.0 - R + 0.5 * w * _log_inv_4pq(ch) - l_func(w)


def e_up(R: float, ch) -> float:
    """Upper envelope, dispatched over the four rate regions."""
    ch = as_channel(ch)
    R = _check_rate(R, ch)
    s = seams(ch.p)
    if R >= s["R_crit"]:
        return sphere_packing_exponent(R, ch)
    if R >= s["R2"]:
        return _straight_line(R, ch)
    if ch.p < s["p0"] and R >= s["R0"]:
        return _min_over_alpha_bound(R, ch)
    return _half_alpha_bound(R, ch)


def w_func(args: WArgs) -> float:
    """``W = (omega/2) log2(1/(4pq)) - mu(R, alpha, omega)``."""
    ch = ChannelParam(args.p)
    sa = SpectrumArgs.from_rate(args.R, args.alpha, args.omega)
    m = 0.0 if sa.omega == 0.0 else mu_closed(sa)
    return 0.5 * sa.omega * _log_inv_4pq(ch) - m


def w_domega_at_g(alpha: float, tau: float, ch) -> float:
    """Closed-form slope of ``W`` in ``omega`` at ``omega = G(alpha, tau)``."""
    ch = as_channel(ch)
    g = g_func(alpha, tau)
    return math.log2(g / (2.0 * ch.sqrt_pq * (1.0 - g)))


def straight_line_identity_residual(alpha: float) -> float:
    """Residual of ``mu(R, alpha, w1) = (w1/2) log2(1/(4pq)) + R + log2(1 + 2 sqrt(pq)) - 1``.

    ``(alpha, tau, R, p)`` come from the sweep, so ``G(alpha, tau) = w1 = omega1(p)``.
    """
    sp = parametric_sweep(alpha)
    ch = ChannelParam(sp.p)
    m = mu_closed(SpectrumArgs.from_alpha_tau(sp.alpha, sp.tau, sp.omega))
    rhs = 0.5 * sp.omega * _log_inv_4pq(ch) + sp.R + math.log2(1.0 + 2.0 * ch.sqrt_pq) - 1.0
    return m - rhs


def proposition1_inner(R: float, alpha: float, ch, n_grid: int = 32):
    """Inner maximisation over ``delta`` for fixed ``alpha``; returns ``(delta, value, G)``."""
    ch = as_channel(ch)
    tau = tau_of(R, alpha)
    g = g_func(alpha, tau)
    base = -math.log2(ch.q)

    def objective(delta: float) -> float:
        if delta <= 0.0:
            return base
        sa = SpectrumArgs(R, alpha, min(delta, g), tau)
        t = t_radius(sa.omega, ch)
        return c_func(sa.omega, t, ch) - mu_closed(sa)

    if g <= 0.0:
        return 0.0, base, g
    # coarse scan guards against the kink where t switches from t1 to t2
    step = g / n_grid
    xs = [i * step for i in range(n_grid + 1)]
    vals = [objective(x) for x in xs]
    k = max(range(len(xs)), key=vals.__getitem__)
    lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, n_grid)]
    d, v = golden_max(objective, lo, hi, xtol=1e-10)
    if vals[k] > v:
        d, v = xs[k], vals[k]
    return d, v, g


def proposition1_details(R: float, ch) -> Prop1Result:
    """Min over ``alpha`` of the max over ``delta <= G(alpha, tau)`` of the additive pair bound."""
    ch = as_channel(ch)
    if not 0.0 <= R < ch.capacity:
        raise DomainError(f"R={R!r} not in [0, C(p))")
    alpha, val = grid_then_golden_min(
        lambda a: proposition1_inner(R, a, ch)[1], delta_gv(R), 0.5, n_grid=200, xtol=1e-9
    )
    d, v, g = proposition1_inner(R, alpha, ch)
    return Prop1Result(value=val, alpha=alpha, delta=d, g=g)


def proposition1_bound(R: float, ch) -> float:
    return proposition1_details(R, ch).value


def _row(task) -> CurveRow:
    R, p = task
    ch = ChannelParam(p)
    return CurveRow(R, e_low(R, ch), e_up(R, ch), region_of(R, ch))


def bound_curve(ch, n_points: int = 512) -> BoundCurve:
    """Sample both envelopes on a uniform grid over ``[0, C(p)]`` plus every seam rate."""
    ch = as_channel(ch)
    if n_points < 2:
        raise DomainError("n_points must be at least 2")
    s = seams(ch.p)
    C = s["C"]
    grid = {C * i / (n_points - 1) for i in range(n_points)}
    grid.add(C)
    inserted = {"R_min": s["R_min"], "R2": s["R2"], "R_crit": s["R_crit"]}
    if ch.p < s["p0"]:
        inserted["R0"] = s["R0"]
    grid.update(inserted.values())
    rates = sorted(grid)
    # drop grid nodes that collide with an inserted seam
    keep = []
    seam_values = set(inserted.values())
    for r in rates:
        if keep and r - keep[-1] < CLAMP_EPS:
            if r in seam_values:
                keep[-1] = r
            continue
        keep.append(r)
    rows = ordered_map(_row, [(r, ch.p) for r in keep])
    return BoundCurve(p=ch.p, rows=rows, seams={**inserted, "C": C})
