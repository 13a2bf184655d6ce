"""Plücker geometry of Gr(n, 2) and the Mukai linear sections built from it.

Plücker coordinates ``u_ij`` (i < j, 0-indexed, ordered lexicographically)
are the entries above the diagonal of the generic skew matrix; the
Grassmannian of 2-planes is cut out by its 4x4 Pfaffians.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from . import exactla as la
from .errors import DegenerateSection
from .exterior import push, wedge_basis, wedge_index
from .gensyz import gensyz_equations, generic_syzygy_full, pfaffian_terms, quadric_row
from .polyring import (
    GradedSubspace,
    HilbertReport,
    QuadricIdeal,
    add_quadrics,
    hilbert_probe,
    ideal_degree_piece,
    restrict_to_subspace,
    substitution_matrix,
)
from .rep import deg_dual_grassmannian
from .syzygy import Syzygy


def pluecker_names(n: int) -> tuple[str, ...]:
    sep = "" if n <= 9 else "_"
    return tuple(f"u{i + 1}{sep}{j + 1}" for i, j in wedge_basis(n, 2))


@dataclass(frozen=True)
class SkewPlueckerMatrix:
    """The n x n skew matrix whose (i, j) entry is the coordinate u_ij."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")

    @property
    def n_coords(self) -> int:
        return comb(self.n, 2)

    def index(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("diagonal entries are zero")
        return wedge_index(self.n, 2)[(min(i, j), max(i, j))]

    def table(self) -> tuple[tuple[int, ...], ...]:
        """Variable index of every entry above the diagonal (-1 elsewhere)."""
        return tuple(
            tuple(self.index(i, j) if i < j else -1 for j in range(self.n)) for i in range(self.n)
        )

    def evaluate(self, point, p: int) -> np.ndarray:
        point = np.asarray(point, dtype=np.int64) % p
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for k, (i, j) in enumerate(wedge_basis(self.n, 2)):
            m[i, j] = point[k]
            m[j, i] = -point[k]
        return m % p


def pfaffian4(n: int, rows, p: int = la.DEFAULT_PRIME) -> np.ndarray:
    """u_ab u_cd - u_ac u_bd + u_ad u_bc for the sorted indices a < b < c < d."""
    rows = tuple(int(i) for i in rows)
    if len(rows) != 4 or len(set(rows)) != 4:
        raise ValueError("need four distinct indices")
    if min(rows) < 0 or max(rows) >= n:
        raise ValueError(f"indices must lie in [0, {n})")
    m = SkewPlueckerMatrix(n).table()
    return quadric_row(pfaffian_terms(m, rows), comb(n, 2), p)


def pfaffian_rows(n: int, p: int = la.DEFAULT_PRIME) -> np.ndarray:
    """All C(n, 4) Pfaffians in the lexicographic order of their index sets."""
    return np.array([pfaffian4(n, b, p) for b in wedge_basis(n, 4)], dtype=np.int64).reshape(
        comb(n, 4), -1
    )


def pluecker_ideal(n: int, p: int = la.DEFAULT_PRIME) -> QuadricIdeal:
    if n < 4:
        raise ValueError("need n >= 4")
    ideal = QuadricIdeal.from_rows(pfaffian_rows(n, p), comb(n, 2), p, pluecker_names(n))
    if ideal.n_quadrics != comb(n, 4):  # pragma: no cover - structural
        raise AssertionError("Pfaffians are dependent")
    return ideal


def wedge2(v, w, p: int) -> np.ndarray:
    """Plücker coordinates of v ∧ w."""
    v = np.asarray(v, dtype=np.int64) % p
    w = np.asarray(w, dtype=np.int64) % p
    n = v.shape[0]
    return np.array([v[i] * w[j] - v[j] * w[i] for i, j in wedge_basis(n, 2)], dtype=np.int64) % p


def random_pluecker_point(n: int, rng: np.random.Generator, p: int) -> np.ndarray:
    while True:
        x = wedge2(rng.integers(0, p, n), rng.integers(0, p, n), p)
        if x.any():
            return x


def _hodge_free_contraction_rank(omega: np.ndarray, n: int, p: int) -> int:
    """Rank of U* → Λ^3 U, f ↦ ι_f ω, for ω in Λ^4 U."""
    idx3 = wedge_index(n, 3)
    m = np.zeros((n, comb(n, 3)), dtype=np.int64)
    for c, a in zip(omega, wedge_basis(n, 4)):
        if c == 0:
            continue
        for pos, i in enumerate(a):
            m[i, idx3[a[:pos] + a[pos + 1:]]] += (-1) ** pos * c
    return la.rank(m % p, p)


def pfaffian_preimage(q, n: int, p: int = la.DEFAULT_PRIME) -> np.ndarray:
    """ω in Λ^4 U with Σ ω_B Pf_B = q; raises ValueError outside the span."""
    rows = pfaffian_rows(n, p)
    try:
        return la.solve(rows.T, np.asarray(q, dtype=np.int64) % p, p)
    except la.NoSolution:
        raise ValueError("quadric is not in the span of the Pfaffians") from None


def is_generalized_pfaffian(q, n: int, p: int = la.DEFAULT_PRIME) -> bool:
    """Is q a 4x4 Pfaffian of B^t M B for some invertible B?

    Equivalently its preimage ω in Λ^4 U is decomposable, which for a
    nonzero 4-vector means the contraction map U* → Λ^3 U has rank 4.
    """
    omega = pfaffian_preimage(q, n, p)
    if not omega.any():
        return False
    return _hodge_free_contraction_rank(omega, n, p) == 4


def minimal_syzygy(n: int, u, ideal: QuadricIdeal | None = None, p: int = la.DEFAULT_PRIME) -> Syzygy:
    """The (n-4)-th syzygy of Gr(n, 2) attached to a nonzero u in U.

    It is the pushforward of the generic syzygy of Gensyz_{n-4} on an
    (n-1)-dimensional L under l_i ↦ u ∧ g_{i+1}, a_jk ↦ g_{j+1} ∧ g_{k+1},
    where (u, g_1, ..., g_{n-1}) is a basis of U.  Its linear forms are u ∧ U.
    """
    if ideal is None:
        ideal = pluecker_ideal(n, p)
    p = ideal.p
    u = np.asarray(u, dtype=np.int64) % p
    if u.shape != (n,):
        raise ValueError(f"u must have {n} coordinates")
    if not u.any():
        raise ValueError("u must be nonzero")
    i0 = int(np.flatnonzero(u)[0])
    frame = [u] + [np.eye(n, dtype=np.int64)[j] for j in range(n) if j != i0]
    model = gensyz_equations(n - 4, n - 1, p)
    rows = [wedge2(frame[0], frame[i + 1], p) for i in range(n - 1)]
    rows += [wedge2(frame[j + 1], frame[k + 1], p) for j, k in model.a_subsets]
    pi = np.array(rows, dtype=np.int64)
    full = push(generic_syzygy_full(model), pi, n - 4, 2, p)
    return Syzygy.from_full(ideal, n - 4, full)


def decomposable_forms(u, n: int, p: int) -> np.ndarray:
    """Rows u ∧ e_j spanning u ∧ U."""
    return np.array([wedge2(u, np.eye(n, dtype=np.int64)[j], p) for j in range(n)])


class SectionKind(str, Enum):
    K3 = "K3"
    CURVE = "curve"


EXPECTED_CUBICS = {(3, SectionKind.CURVE): 31, (3, SectionKind.K3): 37,
                   (4, SectionKind.CURVE): 85, (4, SectionKind.K3): 100}
EXPECTED_QUADRICS = {3: 6, 4: 15}


@dataclass(frozen=True, eq=False)
class MukaiSection:
    k: int
    kind: SectionKind
    ambient: QuadricIdeal
    substitution: np.ndarray  # composite linear map from the Plücker space
    extra_quadrics: GradedSubspace | None
    result: QuadricIdeal
    seed: int
    attempt: int
    steps: tuple[np.ndarray, ...]  # the individual substitutions, in order

    @property
    def genus(self) -> int:
        return 2 * self.k

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind.value,
            "genus": self.genus,
            "seed": self.seed,
            "attempt": self.attempt,
            "n_vars": self.result.n_vars,
            "n_quadrics": self.result.n_quadrics,
            "extra_quadric": self.extra_quadrics is not None,
            "substitution": self.substitution.tolist(),
            "steps": [s.tolist() for s in self.steps],
        }


def _parse_kind(kind) -> SectionKind:
    try:
        return SectionKind(kind if not isinstance(kind, str) else {"k3": "K3"}.get(kind.lower(), kind.lower()))
    except ValueError:
        raise ValueError(f"unknown section kind {kind!r}; use 'K3' or 'curve'") from None


def _one_section(k: int, kind: SectionKind, rng: np.random.Generator, p: int):
    n = k + 2
    ambient = pluecker_ideal(n, p)
    big = comb(n, 2)
    g = 2 * k
    m1 = la.random_full_rank(rng, big, g + 1, p)
    s = restrict_to_subspace(ambient, m1, expect_independent=True)
    extra = None
    if k == 3:
        q = rng.integers(0, p, (1, comb(g + 2, 2)))
        extra = GradedSubspace.span(q, g + 1, 2, p)
        s = add_quadrics(s, q)
    steps = [m1]
    result = s
    if kind is SectionKind.CURVE:
        m2 = la.random_full_rank(rng, g + 1, g, p)
        result = restrict_to_subspace(s, m2, expect_independent=True)
        steps.append(m2)
    if result.n_quadrics != EXPECTED_QUADRICS[k]:
        raise DegenerateSection(f"expected {EXPECTED_QUADRICS[k]} quadrics, got {result.n_quadrics}")
    cubics = ideal_degree_piece(result, 3).dim
    if cubics != EXPECTED_CUBICS[(k, kind)]:
        raise DegenerateSection(f"expected (I)_3 of dimension {EXPECTED_CUBICS[(k, kind)]}, got {cubics}")
    composite = steps[0]
    for st in steps[1:]:
        composite = la.matmul(composite, st, p)
    return ambient, composite, extra, result, tuple(steps)


def mukai_section(k: int, kind="curve", seed: int = 0, p: int = la.DEFAULT_PRIME,
                  max_attempts: int = 8) -> MukaiSection:
    """Genus 2k canonical curve or K3 surface inside Gr(k+2, 2), k in {3, 4}.

    k = 4 uses pure linear sections; k = 3 adds one random quadric because
    a P^6 section of Gr(5, 2) is a threefold.  Randomness comes from
    ``default_rng([seed, attempt])`` and degenerate draws are retried.
    """
    if k not in (3, 4):
        raise ValueError("Mukai sections are implemented for k = 3 and k = 4")
    kind = _parse_kind(kind)
    last = None
    for attempt in range(max_attempts):
        rng = np.random.default_rng([seed, attempt])
        try:
            ambient, composite, extra, result, steps = _one_section(k, kind, rng, p)
        except DegenerateSection as exc:
            last = exc
            continue
        return MukaiSection(k, kind, ambient, composite, extra, result, seed, attempt, steps)
    raise DegenerateSection(
        f"degenerate over F_{p} after {max_attempts} attempts ({last}); increase p"
    )


@dataclass(frozen=True)
class DualDegreeReport:
    k: int
    kind: SectionKind
    perp_dim: int
    expected: int | None
    hilbert: HilbertReport
    seed: int

    @property
    def conclusive(self) -> bool:
        return self.hilbert.empty or self.hilbert.stabilized

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind.value,
            "seed": self.seed,
            "perp_projective_dim": self.perp_dim - 1,
            "expected": self.expected,
            "conclusive": self.conclusive,
            "hilbert": self.hilbert.as_dict(),
        }


def orthogonal_space(substitution, p: int) -> np.ndarray:
    """Basis (rows) of the linear forms vanishing on the column span of ``substitution``."""
    _, ker = la.rank_kernel(np.asarray(substitution, dtype=np.int64).T % p, p)
    return ker


def dual_orthogonal_degree(k: int, kind="curve", seed: int = 0, d_max: int = 6,
                           p: int = la.DEFAULT_PRIME, section: MukaiSection | None = None) -> DualDegreeReport:
    """Hilbert function of the dual Grassmannian restricted to P^⊥.

    For the curve the intersection is finite of degree deg G* (the number
    of scrollar lines); for the K3 surface it is empty.
    """
    if section is None:
        section = mukai_section(k, kind, seed, p)
    n = section.k + 2
    perp = orthogonal_space(section.substitution, p)
    dual = pluecker_ideal(n, p)
    rows = la.matmul(dual.basis, substitution_matrix(perp.T, 2, p), p)
    restricted = QuadricIdeal.from_rows(rows, perp.shape[0], p)
    expected = deg_dual_grassmannian(section.k) if section.kind is SectionKind.CURVE else 0
    return DualDegreeReport(section.k, section.kind, perp.shape[0], expected,
                            hilbert_probe(restricted, d_max), section.seed)

