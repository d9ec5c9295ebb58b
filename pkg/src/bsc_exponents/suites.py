"""Verification suites shared by the CLI and the test-suite.

Each suite returns a :class:`VerifyReport`; a report fails iff some part's
worst residual exceeds that part's tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bounds import straight_line_identity_residual
from .combinatorics import lemma2_suite
from .rates import eq_r0_residual, global_constants
from .scalar import delta_gv, h2, tau_of
from .spectrum import SpectrumArgs, half_identity_residual, lemma4_residual, mu_closed, mu_half, mu_integral

# four-to-eight digit values as quoted in the literature, with the accuracy they support
REFERENCE_CONSTANTS = {
    "tau0": (0.054507, 1e-5),
    "R0": (0.30524, 1e-5),
    "p0": (0.036587, 1e-5),
    "p1": (0.0078176, 1e-6),
}

SUITES = ("identities", "constants", "lemma2", "oracle")


@dataclass
class SuitePart:
    name: str
    cases: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass
class VerifyReport:
    suite: str
    parts: list[SuitePart]
    seeds: tuple[int, ...] = ()
    values: dict[str, float] = field(default_factory=dict)

    @property
    def cases(self) -> int:
        return sum(p.cases for p in self.parts)

    @property
    def max_residual(self) -> float:
        return max(p.max_residual for p in self.parts)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "max_residual": self.max_residual,
            "passed": self.passed,
            "seeds": list(self.seeds),
            "parts": [
                {"name": p.name, "cases": p.cases, "max_residual": p.max_residual,
                 "tolerance": p.tolerance, "passed": p.passed}
                for p in self.parts
            ],
            "values": dict(self.values),
        }


def _part(name, residuals, tol) -> SuitePart:
    residuals = [abs(r) for r in residuals]
    return SuitePart(name, len(residuals), max(residuals), tol)


def lemma4_grid(n: int = 40):
    """``n x n`` admissible ``(alpha, tau)`` grid with ``0 <= tau < alpha <= 1/2``."""
    for i in range(n):
        alpha = 0.5 * (i + 1) / n
        for j in range(n):
            yield alpha, alpha * j / n


def sweep_alphas(n: int = 40):
    return [0.5 * (k + 0.5) / n for k in range(n)]


def identities_suite(tol: float | None = None) -> VerifyReport:
    half = [half_identity_residual(k / 100) for k in range(1, 50)]
    lemma4 = [lemma4_residual(a, t) for a, t in lemma4_grid()]
    line = [straight_line_identity_residual(a) for a in sweep_alphas()]
    return VerifyReport("identities", [
        _part("half_identity", half, tol or 1e-9),
        _part("lemma4", lemma4, tol or 1e-9),
        _part("straight_line_identity", line, tol or 1e-8),
    ])


def constants_suite(tol: float | None = None) -> VerifyReport:
    gc = global_constants()
    got = {"tau0": gc.tau0, "R0": gc.r0, "p0": gc.p0, "p1": gc.p1}
    parts = [_part("tau0_equation", [eq_r0_residual(gc.tau0)], tol or 1e-12)]
    for name, (ref, t) in REFERENCE_CONSTANTS.items():
        parts.append(_part(name, [got[name] - ref], tol or t))
    return VerifyReport("constants", parts, values=got)


def lemma2_verify(seed: int = 42, n_cases: int = 10_000) -> VerifyReport:
    s = lemma2_suite(n_cases=n_cases, seed=seed)
    parts = [
        SuitePart("johnson_conclusion", s.premise_cases, float(s.violations), 0.0),
        SuitePart("plotkin_step", s.cases, float(s.plotkin_violations), 0.0),
    ]
    return VerifyReport("lemma2", parts, seeds=s.seeds, values={"max_aM_over_omega": s.max_ratio})


def random_spectrum_args(rng: random.Random, alpha: float | None = None) -> SpectrumArgs:
    """Uniformly drawn admissible point; with ``alpha`` given the rate is drawn so that ``alpha`` is admissible."""
    if alpha is None:
        R = rng.uniform(0.01, 0.95)
        alpha = rng.uniform(delta_gv(R), 0.5)
    else:
        R = rng.uniform(0.01, 1.0 - h2(alpha) + h2(alpha * 0.999))
    top = SpectrumArgs.from_rate(R, alpha, 0.0).g
    return SpectrumArgs(R, alpha, rng.uniform(0.0, top) or top, tau_of(R, alpha))


def oracle_suite(seed: int = 42, n_points: int = 1000, tol: float | None = None) -> VerifyReport:
    rng = random.Random(seed)
    general = []
    for _ in range(n_points):
        a = random_spectrum_args(rng)
        general.append(mu_integral(a) - mu_closed(a))
    half = []
    for _ in range(n_points):
        a = random_spectrum_args(rng, alpha=0.5)
        half.append(mu_integral(a) - mu_half(a.R, a.omega))
    return VerifyReport("oracle", [
        _part("quad_vs_closed", general, tol or 1e-8),
        _part("quad_vs_half", half, tol or 1e-8),
    ], seeds=(seed,))


def run_suite(name: str, seed: int = 42, tol: float | None = None) -> VerifyReport:
    if name == "identities":
        return identities_suite(tol)
    if name == "constants":
        return constants_suite(tol)
    if name == "lemma2":
        return lemma2_verify(seed)
    if name == "oracle":
        return oracle_suite(seed, tol=tol)
    raise ValueError(f"unknown suite {name!r}")

