"""Exact combinatorics on small binary codes.

Codewords are packed into Python ints (bit ``k`` is coordinate ``k``) so that a
Hamming distance is ``(x ^ y).bit_count()``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ._parallel import ordered_map
from .errors import DomainError


@dataclass(frozen=True)
class BinaryCode:
    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.words)) != len(self.words):
            raise DomainError("codewords must be distinct")
        if any(w < 0 or w >> self.n for w in self.words):
            raise DomainError(f"codeword does not fit in {self.n} bits")

    @property
    def M(self) -> int:
        return len(self.words)

    @property
    def weight(self) -> int | None:
        """Common Hamming weight of all words, or ``None`` if it varies."""
        ws = {w.bit_count() for w in self.words}
        return ws.pop() if len(ws) == 1 else None

    @classmethod
    def from_strings(cls, words: list[str]) -> "BinaryCode":
        n = len(words[0])
        return cls(n, tuple(int(w[::-1], 2) for w in words))


@dataclass(frozen=True)
class CodeSpectrum:
    """Distance distribution; ``B[i]`` is the mean number of codewords at distance ``i``."""

    B: tuple[Fraction, ...]
    M: int

    def pair_counts(self) -> tuple[int, ...]:
        """Ordered-pair counts ``M * B_i``."""
        return tuple(int(b * self.M) for b in self.B)


def spectrum(code: BinaryCode) -> CodeSpectrum:
    counts = [0] * (code.n + 1)
    words = code.words
    counts[0] = len(words)
    for i, x in enumerate(words):
        for y in words[i + 1:]:
            counts[(x ^ y).bit_count()] += 2
    M = code.M
    return CodeSpectrum(tuple(Fraction(c, M) for c in counts), M)


def linear_code(generator_rows: list[str]) -> BinaryCode:
    """All ``2**k`` codewords spanned by the given generator rows."""
    base = BinaryCode.from_strings(generator_rows)
    words = set()
    for mask in range(1 << len(base.words)):
        w = 0
        for k, row in enumerate(base.words):
            if mask >> k & 1:
                w ^= row
        words.add(w)
    return BinaryCode(base.n, tuple(sorted(words)))


def hamming_7_4() -> BinaryCode:
    return linear_code(["1000110", "0100101", "0010011", "0001111"])


def _integral(x, what: str) -> int:
    k = round(x)
    if abs(x - k) > 1e-9:
        raise DomainError(f"{what}={x!r} is not an integer")
    return int(k)


def z_count_int(n: int, m: int, d: int) -> int:
    """Points at distance ``m`` from both words of a pair at distance ``d`` in ``F^n``."""
    if d % 2:
        raise DomainError("pair distance must be even")
    if not 0 <= d <= n or m < d // 2:
        raise DomainError(f"need 0 <= d <= n and m >= d/2, got n={n}, m={m}, d={d}")
    if m - d // 2 > n - d:
        return 0
    return math.comb(n - d, m - d // 2) * math.comb(d, d // 2)


def z_count(n: int, t: float, omega: float) -> int:
    """``|Z(t, omega)|`` for block length ``n``; ``tn`` and ``omega n / 2`` must be integers."""
    m = _integral(t * n, "t*n")
    d = _integral(omega * n, "omega*n")
    return z_count_int(n, m, d)


def z_count_enumerate(n: int, m: int, d: int) -> int:
    """Brute-force count over all ``2**n`` points for the pair ``0`` and ``1^d 0^(n-d)``."""
    x2 = (1 << d) - 1
    return sum(1 for y in range(1 << n) if y.bit_count() == m and (y ^ x2).bit_count() == m)


@dataclass(frozen=True)
class Lemma2Verdict:
    n: int
    M: int
    weight: int
    omega: float
    delta: float
    a: float
    premise_sum: bool
    premise_radius: bool
    conclusion: bool
    plotkin: bool
    seed: int | None = None

    @property
    def premise(self) -> bool:
        return self.premise_sum and self.premise_radius

    @property
    def holds(self) -> bool:
        return (not self.premise or self.conclusion) and self.plotkin


def lemma2_check(code: BinaryCode, omega: float, delta: float, a: float, seed: int | None = None) -> Lemma2Verdict:
    """Evaluate the Johnson-type bound on one constant-weight code.

    The premise is ``sum_{0<i<omega n} B_i <= delta M`` together with
    ``t <= (1 - sqrt(1 - 2(1-delta)omega + 2a)) / 2``; the conclusion is
    ``M <= omega / a``.  The Plotkin-type step ``d_av <= 2t(1-t)n`` is checked
    in exact integer arithmetic.
    """
    w = code.weight
    if w is None:
        raise DomainError("lemma2_check requires a constant-weight code")
    n, M = code.n, code.M
    if 2 * w > n:
        raise DomainError("weight must satisfy t <= 1/2")
    if a <= 0.0:
        raise DomainError("a must be positive")
    spec = spectrum(code)
    low = sum(b for i, b in enumerate(spec.B) if 0 < i < omega * n)
    premise_sum = low <= Fraction(delta) * M
    disc = 1.0 - 2.0 * (1.0 - delta) * omega + 2.0 * a
    premise_radius = disc >= 0.0 and w / n <= (1.0 - math.sqrt(disc)) / 2.0
    conclusion = M <= omega / a
    # n * sum_{i,j} d_ij <= 2 w (n - w) M^2
    total = sum(i * c for i, c in enumerate(spec.pair_counts()))
    plotkin = n * total <= 2 * w * (n - w) * M * M
    return Lemma2Verdict(n, M, w, omega, delta, a, premise_sum, premise_radius, conclusion, plotkin, seed)


def random_constant_weight_code(n: int, w: int, M: int, rng: random.Random) -> BinaryCode:
    """``M`` distinct weight-``w`` words of length ``n``, drawn uniformly without replacement."""
    if M > math.comb(n, w):
        raise DomainError("not enough words of that weight")
    words: set[int] = set()
    while len(words) < M:
        words.add(sum(1 << k for k in rng.sample(range(n), w)))
    return BinaryCode(n, tuple(sorted(words)))


@dataclass
class Lemma2Summary:
    cases: int = 0
    premise_cases: int = 0
    violations: int = 0
    plotkin_violations: int = 0
    seeds: tuple[int, ...] = ()
    max_ratio: float = 0.0  # largest a*M/omega seen among premise cases

    def merge(self, other: "Lemma2Summary") -> "Lemma2Summary":
        return Lemma2Summary(
            self.cases + other.cases,
            self.premise_cases + other.premise_cases,
            self.violations + other.violations,
            self.plotkin_violations + other.plotkin_violations,
            tuple(sorted(self.seeds + other.seeds)),
            max(self.max_ratio, other.max_ratio),
        )


def _sample_case(rng: random.Random, seed: int) -> Lemma2Verdict | None:
    n = rng.randint(8, 24)
    w = rng.randint(1, max(1, n // 3))
    M = rng.randint(1, min(8, math.comb(n, w)))
    code = random_constant_weight_code(n, w, M, rng)
    t = w / n
    floor = 2.0 * t * (1.0 - t)
    if floor >= 0.5:
        return None
    omega = rng.uniform(floor, 0.5)
    spec = spectrum(code)
    delta_min = float(sum(b for i, b in enumerate(spec.B) if 0 < i < omega * n)) / M
    delta_max = 1.0 - floor / omega
    if delta_min >= delta_max:
        return None
    delta = rng.uniform(delta_min, delta_max)
    a_max = (1.0 - delta) * omega - floor
    if a_max <= 0.0:
        return None
    a = rng.uniform(0.0, a_max) or a_max
    return lemma2_check(code, omega, delta, a, seed=seed)


def lemma2_shard(seed: int, n_cases: int) -> Lemma2Summary:
    """Draw random codes until ``n_cases`` premise-satisfying cases have been checked."""
    rng = random.Random(seed)
    out = Lemma2Summary(seeds=(seed,))
    attempts = 0
    while out.premise_cases < n_cases:
        attempts += 1
        if attempts > 200 * n_cases + 1000:
            break
        v = _sample_case(rng, seed)
        if v is None:
            continue
        out.cases += 1
        out.plotkin_violations += not v.plotkin
        if v.premise:
            out.premise_cases += 1
            out.violations += not v.conclusion
            out.max_ratio = max(out.max_ratio, v.a * v.M / v.omega)
    return out


def _shard_task(task):
    return lemma2_shard(*task)


def lemma2_suite(n_cases: int = 10_000, seed: int = 42, shards: int = 4) -> Lemma2Summary:
    """Randomised check of the lemma, split into deterministic shards seeded ``seed, seed+1, ...``."""
    per = [n_cases // shards + (1 if k < n_cases % shards else 0) for k in range(shards)]
    parts = ordered_map(_shard_task, [(seed + k, c) for k, c in enumerate(per)])
    total = Lemma2Summary()
    for part in parts:
        total = total.merge(part)
    return total

