import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsc_exponents.errors import DomainError
from bsc_exponents.scalar import delta_gv, g_func, h2, tau_of
from bsc_exponents.spectrum import (
    SpectrumArgs,
    closed_form_aux,
    half_identity_residual,
    l_func,
    lemma4_residual,
    mu,
    mu_closed,
    mu_domega,
    mu_domega_forms,
    mu_half,
    mu_integral,
)
from bsc_exponents.suites import lemma4_grid, random_spectrum_args

unit = st.floats(min_value=0.0, max_value=1.0)


def make_args(R, u, v):
    alpha = delta_gv(R) + u * (0.5 - delta_gv(R))
    tau = tau_of(R, alpha)
    return SpectrumArgs(R, alpha, v * g_func(alpha, tau), tau)


class TestArgs:
    def test_from_rate(self):
        a = SpectrumArgs.from_rate(0.4, 0.45, 0.1)
        assert h2(a.alpha) - h2(a.tau) == pytest.approx(1 - 0.4, abs=1e-12)

    def test_alpha_below_gv(self):
        with pytest.raises(DomainError):
            SpectrumArgs.from_rate(0.4, 0.05, 0.01)

    def test_omega_above_g(self):
        with pytest.raises(DomainError):
            SpectrumArgs.from_rate(0.4, 0.45, 0.4)

    def test_from_alpha_tau(self):
        a = SpectrumArgs.from_alpha_tau(0.3, 0.1, 0.15)
        assert a.R == pytest.approx(1 - h2(0.3) + h2(0.1), abs=1e-15)
        assert a.g == pytest.approx(0.15, abs=1e-15)


class TestClosedFormAux:
    def test_invariants_on_grid(self):
        for alpha, tau in lemma4_grid(20):
            if tau == alpha:
                continue
            for frac in (0.1, 0.5, 1.0):
                a = SpectrumArgs.from_alpha_tau(alpha, tau, frac * g_func(alpha, tau))
                if a.omega == 0.0:
                    continue
                aux = closed_form_aux(a)
                assert aux.B > aux.A >= 0.0
                assert abs(2 * aux.a1 - (aux.B**2 - aux.A**2)) <= 1e-13

    def test_boundary_identities(self):
        for alpha, tau in lemma4_grid(20):
            g = g_func(alpha, tau)
            if g == 0.0:
                continue
            aux = closed_form_aux(SpectrumArgs.from_alpha_tau(alpha, tau, g))
            s = math.sqrt(tau * (1 - tau))
            assert aux.v == pytest.approx(aux.a1 / g, abs=1e-10)
            assert aux.v == pytest.approx(1 + 2 * s, abs=1e-10)
            assert abs(aux.v - aux.B - 2 * math.sqrt(tau * aux.v)) <= 1e-10

    def test_undefined_at_zero(self):
        with pytest.raises(DomainError):
            closed_form_aux(SpectrumArgs.from_rate(0.4, 0.45, 0.0))


class TestMuIntegral:
    def test_zero_omega(self):
        assert mu_integral(SpectrumArgs.from_rate(0.4, 0.45, 0.0)) == 0.0

    def test_half_boundary_identity(self):
        for tau in (0.02, 0.1, 0.3):
            g = g_func(0.5, tau)
            a = SpectrumArgs.from_rate(h2(tau), 0.5, g)
            assert mu_integral(a) == pytest.approx(h2(tau) + h2(g) - 1, abs=1e-10)

    def test_reference_point(self):
        a = SpectrumArgs.from_rate(0.4, 0.45, 0.1)
        assert abs(mu_integral(a) - mu_closed(a)) <= 1e-8

    def test_error_estimate(self):
        value, err = mu_integral(SpectrumArgs.from_rate(0.4, 0.45, 0.1), full_output=True)
        assert err <= 1e-10
        assert math.isfinite(value)


class TestMuClosed:
    def test_zero_omega_rejected(self):
        with pytest.raises(DomainError):
            mu_closed(SpectrumArgs.from_rate(0.4, 0.45, 0.0))

    def test_lemma4_grid(self):
        worst = max(abs(lemma4_residual(a, t)) for a, t in lemma4_grid(40))
        assert worst <= 1e-9

    def test_tau_zero_corner(self):
        # alpha = delta_GV(R) puts tau at 0; the value at omega = G stays finite
        R = 0.3
        a = SpectrumArgs.from_rate(R, delta_gv(R), 0.0)
        a = SpectrumArgs.from_rate(R, a.alpha, a.g)
        assert mu_closed(a) == pytest.approx(l_func(a.omega) + R - 1, abs=1e-9)

    def test_agrees_with_half(self):
        rng = random.Random(3)
        for _ in range(200):
            a = random_spectrum_args(rng, alpha=0.5)
            assert abs(mu_closed(a) - mu_half(a.R, a.omega)) <= 1e-10

    @settings(max_examples=300, deadline=None)
    @given(st.floats(0.01, 0.95), unit, unit)
    def test_matches_quadrature(self, R, u, v):
        a = make_args(R, u, v)
        ref = mu_integral(a)
        got = 0.0 if a.omega == 0.0 else mu_closed(a)
        assert abs(ref - got) <= 1e-8


class TestMuHalf:
    def test_boundary_identity(self):
        worst = max(abs(half_identity_residual(k / 100)) for k in range(1, 50))
        assert worst <= 1e-10

    def test_small_omega(self):
        assert abs(mu_half(0.3, 1e-8)) <= 1e-6

    def test_beyond_g(self):
        with pytest.raises(DomainError):
            mu_half(0.3, 0.49)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 0.999), unit)
    def test_matches_quadrature(self, R, v):
        tau = tau_of(R, 0.5)
        a = SpectrumArgs(R, 0.5, v * g_func(0.5, tau), tau)
        if a.omega == 0.0:
            return
        assert abs(mu_integral(a) - mu_half(R, a.omega)) <= 1e-8


class TestDispatch:
    def test_methods(self):
        a = SpectrumArgs.from_rate(0.2, 0.5, 0.2)
        vals = [mu(a, m) for m in ("quad", "closed", "half")]
        assert max(vals) - min(vals) <= 1e-12

    def test_half_needs_half(self):
        with pytest.raises(DomainError):
            mu(SpectrumArgs.from_rate(0.4, 0.45, 0.1), "half")

    def test_unknown(self):
        with pytest.raises(ValueError):
            mu(SpectrumArgs.from_rate(0.4, 0.45, 0.1), "simpson")

    def test_zero(self):
        assert mu(SpectrumArgs.from_rate(0.4, 0.45, 0.0), "closed") == 0.0


class TestL:
    def test_ends(self):
        assert l_func(0.0) == 0.0
        assert l_func(0.5) == pytest.approx(1.0, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            l_func(0.6)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.01, 0.5), unit)
    def test_lemma4_by_quadrature(self, alpha, frac):
        tau = frac * alpha * 0.99
        a = SpectrumArgs.from_alpha_tau(alpha, tau, g_func(alpha, tau))
        assert l_func(a.omega) == pytest.approx(mu_integral(a) - a.R + 1, abs=1e-9)


class TestDerivative:
    def test_finite_differences(self):
        rng = random.Random(11)
        h = 1e-5
        checked = 0
        while checked < 100:
            R = rng.uniform(0.02, 0.9)
            alpha = rng.uniform(delta_gv(R), 0.5)
            tau = tau_of(R, alpha)
            g = g_func(alpha, tau)
            w = rng.uniform(0.05, 0.9) * g
            if w - h <= 0.0:
                continue
            f = lambda x: mu_integral(SpectrumArgs(R, alpha, x, tau))
            fd = (f(w + h) - f(w - h)) / (2 * h)
            assert mu_domega(SpectrumArgs(R, alpha, w, tau)) == pytest.approx(fd, abs=1e-6)
            checked += 1

    def test_two_forms_agree(self):
        rng = random.Random(12)
        for _ in range(200):
            a = random_spectrum_args(rng)
            if a.omega == 0.0:
                continue
            first, second = mu_domega_forms(a)
            assert first == pytest.approx(second, abs=1e-10)

    def _second_differences(self, seed, f_of):
        rng = random.Random(seed)
        h = 1e-3
        out = []
        while len(out) < 50:
            R = rng.uniform(0.05, 0.9)
            alpha = rng.uniform(delta_gv(R), 0.5)
            tau = tau_of(R, alpha)
            g = g_func(alpha, tau)
            w = rng.uniform(0.1, 0.85) * g
            if w - h <= 0.0 or w + h >= g:
                continue
            f = f_of(R, alpha, tau)
            out.append(f(w + h) - 2 * f(w) + f(w - h))
        return out

    def test_convex_in_omega(self):
        d2 = self._second_differences(13, lambda R, a, t: lambda x: mu_closed(SpectrumArgs(R, a, x, t)))
        assert all(d > 0 for d in d2)

    @pytest.mark.xfail(strict=True, reason="mu is convex in omega; only W = linear - mu is concave")
    def test_concave_in_omega_as_sometimes_stated(self):
        d2 = self._second_differences(13, lambda R, a, t: lambda x: mu_closed(SpectrumArgs(R, a, x, t)))
        assert all(d < 0 for d in d2)

    def test_half_form(self):
        a = SpectrumArgs.from_rate(0.3, 0.5, 0.1)
        aux = closed_form_aux(a)
        w = a.omega
        disc = (aux.a1 - w) ** 2 - 4 * a.tau * (1 - a.tau) * w * w
        expected = math.log2((1 - w) ** 2 / (aux.a1 - w * (1 - w) + math.sqrt(disc)))
        assert mu_domega(a) == pytest.approx(expected, abs=1e-12)

    def test_undefined_at_two_alpha(self):
        a = SpectrumArgs(0.99, 0.001, 0.002, 0.0)
        with pytest.raises(DomainError):
            mu_domega(a)


# mpmath, 30 digits, independent quadrature of the defining integral at R = 0.3, omega = 0.1
MU_R03_W01 = {0.21: 0.038514267766602546, 0.25: 0.037206479298763310, 0.35: 0.036720701878315458, 0.5: 0.036845068566077623}


class TestMonotoneInAlpha:
    def test_reference_values(self):
        for alpha, ref in MU_R03_W01.items():
            assert mu_closed(SpectrumArgs.from_rate(0.3, alpha, 0.1)) == pytest.approx(ref, abs=1e-14)

    def test_increasing_near_half(self):
        lo = 0.36
        vals = [mu_closed(SpectrumArgs.from_rate(0.3, lo + (0.5 - lo) * k / 40, 0.1)) for k in range(41)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.xfail(strict=True, reason="mu dips in alpha above delta_GV(R); see reference values")
    @pytest.mark.parametrize("R, omega", [(0.5, 0.05), (0.3, 0.1)])
    def test_increasing_on_whole_range(self, R, omega):
        lo = delta_gv(R)
        alphas = [lo + (0.5 - lo) * (0.05 + 0.9 * k / 60) for k in range(61)]
        vals = [mu_closed(SpectrumArgs.from_rate(R, a, omega)) for a in alphas]
        assert all(b > a for a, b in zip(vals, vals[1:]))
