"""Spectrum exponent ``mu(R, alpha, omega)``.

Three independent evaluations are provided:

* :func:`mu_integral` -- adaptive quadrature of the defining integral,
* :func:`mu_closed` -- the non-integral representation built on the Euler
  substitution variable ``v``,
* :func:`mu_half` -- the closed form specialised to ``alpha = 1/2``.

They are kept deliberately separate so that each can serve as an oracle for
the others.  :func:`l_func` and the two identity residuals round out the
module.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from ._numerics import adaptive_simpson
from .errors import DomainError
from .scalar import CLAMP_EPS, LN2, clamp, g_func, h2, t1, tau_of

LOG2E = 1.0 / LN2
EPS = sys.float_info.epsilon
OMEGA_TINY = 1e-290


@dataclass(frozen=True)
class SpectrumArgs:
    """Argument bundle ``(R, alpha, omega)`` with the induced radius ``tau``.

    Build it with :meth:`from_rate` or :meth:`from_alpha_tau`; both validate
    ``delta_GV(R) <= alpha <= 1/2`` and ``0 <= omega <= G(alpha, tau)``.
    """

    R: float
    alpha: float
    omega: float
    tau: float

    @property
    def g(self) -> float:
        return g_func(self.alpha, self.tau)

    @classmethod
    def from_rate(cls, R: float, alpha: float, omega: float) -> "SpectrumArgs":
        alpha = clamp(alpha, 0.0, 0.5, "alpha")
        slack = h2(alpha) - 1.0 + R
        if slack < -CLAMP_EPS:
            raise DomainError(f"alpha={alpha!r} below delta_GV(R) for R={R!r}")
        return cls._checked(R, alpha, omega, tau_of(R, alpha))

    @classmethod
    def from_alpha_tau(cls, alpha: float, tau: float, omega: float) -> "SpectrumArgs":
        alpha = clamp(alpha, 0.0, 0.5, "alpha")
        tau = clamp(tau, 0.0, alpha, "tau")
        return cls._checked(1.0 - h2(alpha) + h2(tau), alpha, omega, tau)

    @classmethod
    def _checked(cls, R, alpha, omega, tau):
        g = g_func(alpha, tau)
        if omega < -CLAMP_EPS or omega > g + CLAMP_EPS:
            raise DomainError(f"omega={omega!r} outside [0, G(alpha, tau)={g!r}]")
        return cls(R, alpha, min(max(omega, 0.0), g), tau)


@dataclass(frozen=True)
class ClosedFormAux:
    """Auxiliary quantities of the closed form: ``A = 1-2alpha``, ``B = 1-2tau``,
    ``a1 = 2[alpha(1-alpha) - tau(1-tau)]`` and the substitution variable ``v``."""

    A: float
    B: float
    a1: float
    v: float


def _a1(alpha: float, tau: float) -> float:
    # 2[a(1-a) - t(1-t)] factored to avoid cancellation when alpha ~ tau
    return 2.0 * (alpha - tau) * (1.0 - alpha - tau)


def _sqrt_disc(a1: float, tau: float, omega: float) -> float:
    # B^2 w^2 - 2 a1 w + a1^2 = (a1 - (1+2s) w)(a1 - (1-2s) w); first factor vanishes at w = G
    s = math.sqrt(tau * (1.0 - tau))
    first = a1 - (1.0 + 2.0 * s) * omega
    # omega = G computed in floating point leaves a few ulps here; a residue that
    # small would otherwise be amplified to sqrt(eps) in the square root
    if first <= 8.0 * EPS * a1:
        return 0.0
    return math.sqrt(first * (a1 - (1.0 - 2.0 * s) * omega))


def closed_form_aux(args: SpectrumArgs) -> ClosedFormAux:
    if args.omega <= 0.0:
        raise DomainError("v is undefined at omega = 0")
    a1 = _a1(args.alpha, args.tau)
    S = _sqrt_disc(a1, args.tau, args.omega)
    return ClosedFormAux(1.0 - 2.0 * args.alpha, 1.0 - 2.0 * args.tau, a1, (S + a1) / args.omega)


def _tail_entropy(alpha: float, omega: float) -> float:
    """``(1 - omega) h2((alpha - omega/2) / (1 - omega))``."""
    if omega >= 1.0:
        return 0.0
    return (1.0 - omega) * h2(min((alpha - omega / 2.0) / (1.0 - omega), 1.0))


def mu_integral(args: SpectrumArgs, tol: float = 1e-13, full_output: bool = False):
    """``mu`` by adaptive Simpson quadrature of the defining integral.

    The integration variable is ``y = omega/2 - w**2``; at ``omega = G`` the
    square root in the integrand vanishes like ``sqrt(omega/2 - y)`` and this
    substitution makes it smooth.  With ``full_output`` the pair
    ``(value, error_estimate)`` is returned.
    """
    alpha, tau, omega = args.alpha, args.tau, args.omega
    if omega == 0.0:
        return (0.0, 0.0) if full_output else 0.0
    p0 = alpha * (1.0 - alpha) - tau * (1.0 - tau)
    half = omega / 2.0

    def integrand(w: float) -> float:
        y = half - w * w
        P = p0 - y * (1.0 - 2.0 * y)
        Q = (alpha - y) * (1.0 - alpha - y)
        d = P * P - 4.0 * Q * y * y
        if d < 0.0:
            if d < -1e-12:
                raise DomainError(f"negative discriminant {d!r} at y={y!r}")
            d = 0.0
        return 2.0 * w * math.log2((P + math.sqrt(d)) / Q)

    integral, err = adaptive_simpson(integrand, 0.0, math.sqrt(half), tol=tol / 2.0)
    value = h2(alpha) - 2.0 * integral - _tail_entropy(alpha, omega)
    return (value, 2.0 * err) if full_output else value


def mu_closed(args: SpectrumArgs) -> float:
    """``mu`` from its non-integral representation.

    The terms of ``T(A, B, omega)`` that involve ``v - 1``, ``v - B`` and
    ``v**2 - B**2`` are regrouped through exact identities so that nothing
    cancels catastrophically for small ``tau`` and the ``tau = 0``,
    ``omega = G`` corner stays finite.
    """
    alpha, tau, omega = args.alpha, args.tau, args.omega
    if omega <= 0.0:
        raise DomainError("mu_closed needs omega > 0 (the limit value at 0 is 0)")
    if omega < OMEGA_TINY:
        # 1/omega would overflow; |mu| = O(omega log(1/omega)) is far below resolution anyway
        return 0.0
    A = 1.0 - 2.0 * alpha
    B = 1.0 - 2.0 * tau
    a1 = _a1(alpha, tau)
    S = _sqrt_disc(a1, tau, omega)
    v = (S + a1) / omega
    # v^2 - B^2 = 2 a1 (a1 - omega + S) / omega^2, divided by v + B before it can overflow
    v_minus_b = (2.0 * a1 / omega) * ((a1 - omega + S) / (omega * (v + B)))
    v_minus_a = v_minus_b + 2.0 * (alpha - tau)

    # omega*log(v-1) + (1-omega)*log(v-B) - B*log(v-B), regrouped
    T = omega * math.log2(omega * (v + B) / (2.0 * a1))
    if tau > 0.0:
        T += 2.0 * tau * math.log2(v_minus_b)
    T -= (1.0 - omega) * (math.log2(v_minus_a) + math.log2(v + A))
    T += (1.0 - omega + B) * math.log2(v + B)
    if A != 0.0:
        T -= A * math.log2((v + A) / v_minus_a)
    # (v-1)(B^2-A^2)/(v^2-B^2) is the substitution z(v) itself, i.e. omega
    T -= omega * LOG2E

    return (
        _tail_entropy(alpha, omega)
        - h2(alpha)
        + 2.0 * h2(omega)
        + omega * math.log2(2.0 * omega / math.e)
        - T
    )


def mu_half(R: float, omega: float) -> float:
    """``mu(R, 1/2, omega)`` in closed form, valid for ``0 < omega <= G(1/2, h2^{-1}(R))``.

    ``-log tau + log[1 - omega - (1-2tau) g]`` is evaluated as a single
    logarithm, which stays finite as ``tau -> 0``.
    """
    tau = tau_of(R, 0.5)
    if omega <= 0.0:
        raise DomainError("mu_half needs omega > 0")
    B = 1.0 - 2.0 * tau
    disc = B * B - 4.0 * omega * (1.0 - omega)
    if disc < 0.0:
        if disc < -1e-12:
            raise DomainError(f"omega={omega!r} beyond G(1/2, tau); discriminant {disc!r}")
        disc = 0.0
    D = math.sqrt(disc)
    g = (B + D) / 2.0
    X = 1.0 - 2.0 * omega + 4.0 * tau * (1.0 - tau)
    if X + B * D == 0.0:
        # tau = 0, omega = 1/2: every term's singularity cancels, limit is 0
        return 0.0
    log_ratio = math.log2(8.0 * (1.0 - omega) ** 2 * (1.0 - tau) / (X + B * D))
    return (
        -2.0 * (1.0 - omega) * math.log2(1.0 - omega)
        - 2.0 * (1.0 - tau) * math.log2(1.0 - tau)
        + B * math.log2((1.0 - 2.0 * omega + D) / 2.0)
        + log_ratio
        - 2.0 * omega * math.log2(g)
        - 2.0
    )


def mu(args: SpectrumArgs, method: str = "closed") -> float:
    if method == "quad":
        return mu_integral(args)
    if args.omega == 0.0:
        return 0.0
    if method == "closed":
        return mu_closed(args)
    if method == "half":
        if abs(args.alpha - 0.5) > CLAMP_EPS:
            raise DomainError("method 'half' requires alpha = 1/2")
        return mu_half(args.R, args.omega)
    raise ValueError(f"unknown method {method!r}")


def l_func(omega: float) -> float:
    """``L(omega) = 2 h2(t1) - omega - (1-omega) h2((2 t1 - omega) / (2 (1-omega)))``."""
    omega = clamp(omega, 0.0, 0.5, "omega")
    t = t1(omega)
    return 2.0 * h2(t) - omega - _tail_entropy(t, omega)


def mu_domega_forms(args: SpectrumArgs) -> tuple[float, float]:
    """Both displayed expressions of the partial derivative in ``omega``."""
    alpha, tau, w = args.alpha, args.tau, args.omega
    if w >= 2.0 * alpha:
        raise DomainError("mu_domega undefined at omega = 2 alpha")
    y = w / 2.0
    P = alpha * (1.0 - alpha) - tau * (1.0 - tau) - y * (1.0 - 2.0 * y)
    Q = (alpha - y) * (1.0 - alpha - y)
    root = math.sqrt(max(P * P - Q * w * w, 0.0))
    first = 0.5 * math.log2((1.0 - w) ** 2 / ((alpha - y) * (1.0 - alpha - y))) - math.log2(
        (P + root) / Q
    )
    a1 = _a1(alpha, tau)
    S = _sqrt_disc(a1, tau, w)
    second = math.log2(
        (1.0 - w) * math.sqrt((2.0 * alpha - w) * (2.0 - 2.0 * alpha - w)) / (a1 - w * (1.0 - w) + S)
    )
    return first, second


def mu_domega(args: SpectrumArgs) -> float:
    return mu_domega_forms(args)[1]


def lemma4_residual(alpha: float, tau: float) -> float:
    """``mu(R, alpha, G) - (L(G) + R - 1)`` with ``R = 1 - h2(alpha) + h2(tau)``."""
    args = SpectrumArgs.from_alpha_tau(alpha, tau, g_func(alpha, tau))
    return mu_closed(args) - (l_func(args.omega) + args.R - 1.0)


def half_identity_residual(tau: float) -> float:
    """``mu(h2(tau), 1/2, G(1/2, tau)) - (h2(tau) + h2(G(1/2, tau)) - 1)``."""
    g = g_func(0.5, tau)
    return mu_half(h2(tau), g) - (h2(tau) + h2(g) - 1.0)
