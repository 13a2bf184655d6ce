"""Dimensions of Schur functors and closed-form counts for Grassmannian sections.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, factorial, prod


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts if int(x) != 0)
        if any(x < 0 for x in parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j) for j in range(self.parts[0])))

    def cells(self):
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def hook_lengths(lam) -> list[int]:
    lam = _as_partition(lam)
    conj = lam.conjugate().parts
    return [lam.parts[i] - j + conj[j] - i - 1 for i, j in lam.cells()]


def schur_dim(lam, n: int) -> int:
    """dim S_λ(C^n) by the hook content formula; 0 if λ has more than n rows."""
    lam = _as_partition(lam)
    if lam.length > n:
        return 0
    num = prod(n + j - i for i, j in lam.cells())
    den = prod(hook_lengths(lam))
    q, rem = divmod(num, den)
    if rem:  # pragma: no cover - the formula always yields an integer
        raise ArithmeticError("hook content quotient is not an integer")
    return q


def grass_hook(p: int) -> Partition:
    """Young diagram of the p-th strand term of Gr(n, 2): one row p+1, then p+3 rows of 1."""
    return Partition((p + 1,) + (1,) * (p + 3))


def grass_strand_dims(n: int) -> tuple[int, ...]:
    if n < 4:
        raise ValueError("need n >= 4")
    return tuple(schur_dim(grass_hook(p), n) for p in range(n - 3))


def deg_dual_grassmannian(k: int) -> int:
    """deg Gr(k+2, 2) = (2k)! / (k! (k+1)!)."""
    return factorial(2 * k) // (factorial(k) * factorial(k + 1))


def brill_noether_degree(g: int, r: int, d: int) -> int:
    """g! Π_{i=0}^{r} i! / (g - d + r + i)!, the class count of W^r_d."""
    num = factorial(g) * prod(factorial(i) for i in range(r + 1))
    den = prod(factorial(g - d + r + i) for i in range(r + 1))
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("Brill-Noether count is not an integer for these parameters")
    return q


def scrollar_lines(k: int) -> int:
    q, rem = divmod(comb(2 * k, k), k + 1)
    assert rem == 0
    return q


@dataclass(frozen=True)
class CountTable:
    k: int
    dimV_viaBetti: int
    dimV_viaBinomial: int
    dimV_complement: int
    degDualGrass: int
    degW1: int
    scrollarLines: int

    @property
    def dimV(self) -> int:
        return self.dimV_viaBinomial

    def as_dict(self) -> dict:
        out = asdict(self)
        out["dimV"] = self.dimV
        return out


def count_table(k: int) -> CountTable:
    if k < 2:
        raise ValueError("need k >= 2")
    g = 2 * k
    betti = (k - 1) * comb(2 * k - 2, k) - k * comb(2 * k - 2, k + 1)
    table = CountTable(
        k=k,
        dimV_viaBetti=betti,
        dimV_viaBinomial=comb(2 * k - 1, k - 2),
        dimV_complement=comb(2 * k - 1, k + 1),
        degDualGrass=deg_dual_grassmannian(k),
        degW1=brill_noether_degree(g, 1, k + 1),
        scrollarLines=scrollar_lines(k),
    )
    if not (table.dimV_viaBetti == table.dimV_viaBinomial == table.dimV_complement):
        raise AssertionError(f"dimension identities fail at k = {k}")  # pragma: no cover
    if not (table.degDualGrass == table.degW1 == table.scrollarLines):
        raise AssertionError(f"degree identities fail at k = {k}")  # pragma: no cover
    return table


def expected_strand_dim(g: int, p: int) -> int:
    """dim V_p of a general canonical curve of genus g, assuming β_{p,p+2} = 0.

    (p+1) C(g-2, p+2) - (g-p-2) C(g-2, g-p-1), clipped at zero.
    """
    if g < 4 or not 0 <= p <= g - 3:
        raise ValueError("need g >= 4 and 0 <= p <= g - 3")
    return max(0, (p + 1) * comb(g - 2, p + 2) - (g - p - 2) * comb(g - 2, g - p - 1))
