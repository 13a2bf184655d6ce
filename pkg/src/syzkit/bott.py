"""Bott's theorem for homogeneous bundles E(λ) on P^{n-1} = GL_n / P.

A weight is an integer vector (λ_1, ..., λ_n); E(d, 0, ..., 0) = O(d).
With δ = (n, n-1, ..., 1) every cohomology group vanishes when δ + λ has
a repeated entry.  Otherwise only H^{i0} survives, where i0 counts the
pairs i < j with (δ+λ)_i < (δ+λ)_j, and it is the irreducible
representation with highest weight sort(δ+λ) - δ.  Pairings are taken with
the standard dot product, a positive multiple of the Killing form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod


class Verdict(str, Enum):
    ALL_VANISH = "AllVanish"
    SINGLE = "Single"


@dataclass(frozen=True)
class BottResult:
    verdict: Verdict
    i0: int | None = None
    dominant: tuple[int, ...] | None = None
    dim: int | None = None

    def as_dict(self) -> dict:
        if self.verdict is Verdict.ALL_VANISH:
            return {"verdict": self.verdict.value}
        return {"verdict": self.verdict.value, "i0": self.i0, "dominant": list(self.dominant), "dim": self.dim}

    def __str__(self) -> str:
        if self.verdict is Verdict.ALL_VANISH:
            return "AllVanish"
        return f"Single(i0={self.i0}, dim={self.dim})"


def delta(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def weyl_dimension(mu) -> int:
    """Weyl dimension of the GL_n representation with dominant weight mu."""
    mu = tuple(int(x) for x in mu)
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise ValueError("weight is not dominant")
    n = len(mu)
    value = prod(
        (Fraction(mu[i] - mu[j] + j - i, j - i) for i in range(n) for j in range(i + 1, n)),
        start=Fraction(1),
    )
    assert value.denominator == 1
    return int(value)


def bott_cohomology(weight) -> BottResult:
    lam = tuple(int(x) for x in weight)
    n = len(lam)
    if n < 2:
        raise ValueError("weights on P^{n-1} need n >= 2 coordinates")
    shifted = tuple(a + b for a, b in zip(lam, delta(n)))
    if len(set(shifted)) < n:
        return BottResult(Verdict.ALL_VANISH)
    i0 = sum(1 for i in range(n) for j in range(i + 1, n) if shifted[i] < shifted[j])
    dominant = tuple(a - b for a, b in zip(sorted(shifted, reverse=True), delta(n)))
    return BottResult(Verdict.SINGLE, i0, dominant, weyl_dimension(dominant))


def en_term_weight(k: int, j: int) -> tuple[int, ...]:
    """Weight (-j-2, 0, ..., 0, -j) on P^{k+1} of the j-th Eagon-Northcott term."""
    if k < 2:
        raise ValueError("need k >= 2")
    if not 0 <= j <= k - 1:
        raise ValueError(f"j must lie in [0, {k - 1}]")
    return (-j - 2,) + (0,) * k + (-j,)


def corollary_table(k: int) -> list[tuple[int, BottResult]]:
    return [(j, bott_cohomology(en_term_weight(k, j))) for j in range(k)]


def corollary_holds(k: int) -> bool:
    """All terms vanish for j <= k-2, and the last one only has H^k."""
    table = corollary_table(k)
    head = all(res.verdict is Verdict.ALL_VANISH for _, res in table[:-1])
    last = table[-1][1]
    return head and last.verdict is Verdict.SINGLE and last.i0 == k


def serre_dual_weight(weight) -> tuple[int, ...]:
    """Weight of E(λ)^* ⊗ O(-n), the Serre dual partner on P^{n-1}."""
    lam = tuple(int(x) for x in weight)
    n = len(lam)
    return (-lam[0] - n,) + tuple(-x for x in reversed(lam[1:]))
