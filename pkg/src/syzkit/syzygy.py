"""Linear strands of quadric ideals and the geometry of individual syzygies.

V_p is the kernel of Λ^p V ⊗ I_2 → Λ^{p-1} V ⊗ S_3.  An element is kept as
a ``C(n, p) x dim I_2`` array of coordinates over the reduced basis of
I_2; the "full" form multiplies those coordinates out into S_2.

The strand is computed recursively rather than from the big Koszul
matrix.  Since d = Σ x_i ι_i and the contractions anticommute, s lies in
V_p (p >= 2) exactly when every ι_i s lies in V_{p-1}; conversely a family
(t_i) in V_{p-1} comes from some s iff ι_j t_i + ι_i t_j = 0 and ι_i t_i = 0.
Those conditions live in V_{p-2}, so each step is a small linear system in
V_{p-1} coordinates.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

import numpy as np

from . import exactla as la
from .errors import BudgetExceeded, InvalidSyzygy
from .exterior import (
    contract,
    koszul_apply,
    koszul_matrix,
    push,
    wedge_basis,
    wedge_index,
)
from .polyring import (
    GradedSubspace,
    HilbertReport,
    QuadricIdeal,
    graded_dim,
    hilbert_probe_rows,
    ideal_degree_piece,
    monomial_supports,
    multiply,
    multiply_by_variable,
    restrict_to_subspace,
)

DEFAULT_BUDGET = 10**7


def ideal_multiplication(ideal: QuadricIdeal) -> list[np.ndarray]:
    """x_i: I_2 → I_3 in the reduced bases (``dim I_2 x dim I_3`` each)."""
    i3 = ideal_degree_piece(ideal, 3)
    return [
        i3.coordinates(multiply_by_variable(ideal.basis, i, ideal.n_vars, 2) % ideal.p)
        for i in range(ideal.n_vars)
    ]


def koszul_ideal_matrix(ideal: QuadricIdeal, p: int) -> np.ndarray:
    """Koszul matrix Λ^p V ⊗ I_2 → Λ^{p-1} V ⊗ I_3 for column vectors."""
    return koszul_matrix(ideal.n_vars, p, ideal_multiplication(ideal), ideal.p)


@dataclass(frozen=True, eq=False)
class StrandSpace:
    """Reduced basis of V_p, rows flattened wedge-major."""

    p: int
    basis: np.ndarray
    pivots: tuple[int, ...]
    mod: int

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coordinates(self, flat) -> np.ndarray:
        return la.coordinates(self.basis, list(self.pivots), flat, self.mod)


@dataclass(frozen=True, eq=False)
class LinearStrand:
    ideal: QuadricIdeal
    spaces: tuple[StrandSpace, ...]
    complete: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    @property
    def n_vars(self) -> int:
        return self.ideal.n_vars

    def space(self, p: int) -> StrandSpace:
        if p >= len(self.spaces):
            if self.complete:
                return _zero_space(self.ideal, p)
            raise IndexError(f"strand was only computed up to p = {len(self.spaces) - 1}")
        return self.spaces[p]

    def element(self, p: int, coords) -> "Syzygy":
        """The syzygy with the given coordinates in the basis of V_p."""
        sp = self.space(p)
        flat = la.matmul(np.atleast_2d(np.asarray(coords, dtype=np.int64)), sp.basis, self.ideal.p)[0]
        return Syzygy(self.ideal, p, flat.reshape(comb(self.n_vars, p), -1))

    def basis_syzygies(self, p: int) -> list["Syzygy"]:
        sp = self.space(p)
        shape = (comb(self.n_vars, p), self.ideal.n_quadrics)
        return [Syzygy(self.ideal, p, row.reshape(shape), checked=True) for row in sp.basis]

    def coordinates(self, s: "Syzygy") -> np.ndarray:
        """Coordinates of ``s`` in the basis of V_p."""
        return self.space(s.p).coordinates(s.coeffs.ravel())


def _zero_space(ideal: QuadricIdeal, p: int) -> StrandSpace:
    width = comb(ideal.n_vars, p) * ideal.n_quadrics
    return StrandSpace(p, np.zeros((0, width), dtype=np.int64), (), ideal.p)


def _space(p: int, rows: np.ndarray, mod: int) -> StrandSpace:
    basis, piv = la.rref(rows, mod)
    basis.flags.writeable = False
    return StrandSpace(p, basis, tuple(piv), mod)


def _first_syzygies(ideal: QuadricIdeal) -> StrandSpace:
    n, mod = ideal.n_vars, ideal.p
    rows = np.concatenate([multiply_by_variable(ideal.basis, i, n, 2) for i in range(n)])
    _, ker = la.rank_kernel(rows.T, mod)
    return _space(1, ker, mod) if ker.shape[0] else _zero_space(ideal, 1)


def _next_space(ideal: QuadricIdeal, prev: StrandSpace, prev2: StrandSpace, p: int) -> StrandSpace:
    n, nq, mod = ideal.n_vars, ideal.n_quadrics, ideal.p
    k1, k2 = prev.dim, prev2.dim
    if k1 == 0:
        return _zero_space(ideal, p)
    b = prev.basis.reshape(k1, comb(n, p - 1), nq)
    piv2 = list(prev2.pivots)
    # J[j] = coordinates of ι_j(basis of V_{p-1}) in V_{p-2}
    jmaps = []
    for j in range(n):
        c = np.stack([contract(row, j, n, p - 1, mod).ravel() for row in b])
        jmaps.append(c[:, piv2])
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    eq = np.zeros((n * k1, len(pairs) * k2), dtype=np.int64)
    for e, (i, j) in enumerate(pairs):
        cols = slice(e * k2, (e + 1) * k2)
        eq[i * k1:(i + 1) * k1, cols] += jmaps[j]
        if i != j:
            eq[j * k1:(j + 1) * k1, cols] += jmaps[i]
    _, sol = la.rank_kernel(eq.T % mod, mod)
    if sol.shape[0] == 0:
        return _zero_space(ideal, p)
    t = la.matmul(sol.reshape(-1, k1), prev.basis, mod).reshape(sol.shape[0], n, comb(n, p - 1), nq)
    lower = wedge_index(n, p - 1)
    heads = [a[0] for a in wedge_basis(n, p)]
    tails = [lower[a[1:]] for a in wedge_basis(n, p)]
    s = t[:, heads, tails, :]
    return _space(p, s.reshape(sol.shape[0], -1), mod)


def linear_strand(ideal: QuadricIdeal, p_max: int) -> LinearStrand:
    """V_0, ..., V_{p_max}, stopping after the first zero space."""
    if ideal.n_quadrics == 0:
        raise ValueError("the ideal has no quadrics")
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    mod = ideal.p
    spaces = [_space(0, np.eye(ideal.n_quadrics, dtype=np.int64), mod)]
    complete = False
    for p in range(1, p_max + 1):
        if p == 1:
            sp = _first_syzygies(ideal)
        else:
            sp = _next_space(ideal, spaces[p - 1], spaces[p - 2], p)
        spaces.append(sp)
        if sp.dim == 0:
            complete = True
            break
    return LinearStrand(ideal, tuple(spaces), complete)


def strand_space_direct(ideal: QuadricIdeal, p: int) -> StrandSpace:
    """V_p as the kernel of the full Koszul matrix (slow; used as a cross-check)."""
    if p == 0:
        return _space(0, np.eye(ideal.n_quadrics, dtype=np.int64), ideal.p)
    _, ker = la.rank_kernel(koszul_ideal_matrix(ideal, p), ideal.p)
    return _space(p, ker, ideal.p) if ker.shape[0] else _zero_space(ideal, p)


@dataclass(frozen=True, eq=False)
class Syzygy:
    """An element of V_p: ``coeffs[A]`` are the I_2 coordinates of Q_A in s = Σ e_A ⊗ Q_A."""

    ideal: QuadricIdeal
    p: int
    coeffs: np.ndarray
    checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.ideal.p
        shape = (comb(self.ideal.n_vars, self.p), self.ideal.n_quadrics)
        if c.size != shape[0] * shape[1]:
            raise InvalidSyzygy(f"expected {shape[0] * shape[1]} coefficients, got {c.size}")
        c = c.reshape(shape)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        if not self.checked and self.p >= 1:
            if koszul_apply(self.full(), self.ideal.n_vars, self.p, 2, self.ideal.p).any():
                raise InvalidSyzygy("element is not in the kernel of the Koszul differential")
        object.__setattr__(self, "checked", True)

    @classmethod
    def from_full(cls, ideal: QuadricIdeal, p: int, full) -> "Syzygy":
        """Build from Λ^p V ⊗ S_2 coefficients; every quadric must lie in I_2."""
        try:
            coords = ideal.quadrics.coordinates(np.asarray(full, dtype=np.int64))
        except la.NoSolution:
            raise InvalidSyzygy("a quadric of the element is not in the ideal") from None
        return cls(ideal, p, coords)

    def full(self) -> np.ndarray:
        """Coefficients over Λ^p V ⊗ S_2 (rows: wedges, columns: monomials)."""
        return la.matmul(self.coeffs, self.ideal.basis, self.ideal.p)

    def flat(self) -> np.ndarray:
        return self.coeffs.ravel().copy()

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def decomposition(self) -> list[tuple[tuple[int, ...], np.ndarray]]:
        """Nonzero terms (wedge indices, quadric row) of s = Σ e_A ⊗ Q_A."""
        full = self.full()
        basis = wedge_basis(self.ideal.n_vars, self.p)
        return [(basis[i], full[i]) for i in np.flatnonzero(full.any(axis=1))]


@dataclass(frozen=True, eq=False)
class LinearFormSpace:
    """Span of linear forms in reduced echelon form (rows are coefficient vectors)."""

    basis: np.ndarray
    pivots: tuple[int, ...]
    p: int

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, v) -> bool:
        return la.in_span(self.basis, list(self.pivots), v, self.p)

    def equals(self, other) -> bool:
        other_basis, _ = la.rref(np.atleast_2d(np.asarray(other, dtype=np.int64)), self.p)
        return other_basis.shape == self.basis.shape and np.array_equal(other_basis, self.basis)


def contraction_matrix(full, n: int, p: int, mod: int) -> np.ndarray:
    """Rows ι_i s, flattened; its column space is L_s."""
    full = np.asarray(full, dtype=np.int64)
    return np.stack([contract(full, i, n, p, mod).ravel() for i in range(n)])


def hessian(q, n: int, mod: int) -> np.ndarray:
    h = np.zeros((n, n), dtype=np.int64)
    for c, (i, j) in zip(np.asarray(q, dtype=np.int64) % mod, monomial_supports(n, 2)):
        if i == j:
            h[i, i] = 2 * c
        else:
            h[i, j] = h[j, i] = c
    return h % mod


def rank_of_full(full, n: int, p: int, mod: int) -> tuple[int, LinearFormSpace]:
    if p == 0:
        m = hessian(np.asarray(full).reshape(-1), n, mod)
    else:
        m = contraction_matrix(full, n, p, mod)
    basis, piv = la.rref(m.T, mod)
    return len(piv), LinearFormSpace(basis, tuple(piv), mod)


def syzygy_rank(s: Syzygy) -> tuple[int, LinearFormSpace]:
    """rank s = dim L_s.  For p = 0 this is the rank of the quadric (convention)."""
    return rank_of_full(s.full(), s.ideal.n_vars, s.p, s.ideal.p)


def syzygy_scheme_ideal(s: Syzygy) -> GradedSubspace:
    """Span of the quadrics Q_A in the decomposition of ``s``."""
    if s.is_zero():
        raise InvalidSyzygy("the zero syzygy has no syzygy scheme")
    return GradedSubspace.span(s.full(), s.ideal.n_vars, 2, s.ideal.p)


def push_syzygy(s: Syzygy, substitution, target: QuadricIdeal) -> Syzygy:
    """Restriction of ``s`` along ``x = M y``, as a syzygy of ``target``."""
    image = push(s.full(), substitution, s.p, 2, s.ideal.p)
    return Syzygy.from_full(target, s.p, image)


class Restriction(NamedTuple):
    map_matrix: np.ndarray
    injective: bool
    restricted: LinearStrand


def restrict_syzygies(strand: LinearStrand, substitution, p: int) -> Restriction:
    """The map α_p: V_p(X) → V_p(X ∩ P^m) in bases; row i is the image of basis vector i."""
    mod = strand.ideal.p
    m = np.asarray(substitution, dtype=np.int64) % mod
    target = restrict_to_subspace(strand.ideal, m)
    restricted = linear_strand(target, p)
    src = strand.space(p)
    tgt = restricted.space(p)
    rows = []
    for s in strand.basis_syzygies(p):
        try:
            image = push_syzygy(s, m, target)
            rows.append(tgt.coordinates(image.coeffs.ravel()))
        except (InvalidSyzygy, la.NoSolution) as exc:  # pragma: no cover - would be a bug
            raise AssertionError(f"restricted syzygy left the strand: {exc}") from exc
    mat = np.array(rows, dtype=np.int64).reshape(src.dim, tgt.dim)
    return Restriction(mat, la.rank(mat, mod) == src.dim, restricted)


class RankDrop(NamedTuple):
    old_rank: int
    new_rank: int
    hyperplane_in_Ls: bool


def hyperplane_form(substitution, mod: int) -> np.ndarray:
    """The linear form cutting out the image of a codimension one substitution."""
    m = np.asarray(substitution, dtype=np.int64) % mod
    if m.shape[1] != m.shape[0] - 1:
        raise ValueError("substitution must have codimension one")
    _, ker = la.rank_kernel(m.T, mod)
    if ker.shape[0] != 1:
        raise ValueError("substitution is not of full column rank")
    return ker[0]


def rank_drop_check(s: Syzygy, substitution) -> RankDrop:
    mod = s.ideal.p
    old, forms = syzygy_rank(s)
    l = hyperplane_form(substitution, mod)
    image = push(s.full(), substitution, s.p, 2, mod)
    new, _ = rank_of_full(image, s.ideal.n_vars - 1, s.p, mod)
    return RankDrop(old, new, forms.contains(l))


def psi_matrix(strand: LinearStrand, p: int) -> np.ndarray:
    """ψ as an ``n x dim V_{p-1} x dim V_p`` array of linear-form coefficients.

    Entry ``[i, c]`` is the linear form on V_p giving the c-th V_{p-1}
    coordinate of ι_i s.
    """
    if p < 1:
        raise ValueError("ψ needs p >= 1")
    n, mod = strand.n_vars, strand.ideal.p
    top = strand.space(p)
    low = strand.space(p - 1)
    nq = strand.ideal.n_quadrics
    out = np.zeros((n, low.dim, top.dim), dtype=np.int64)
    for k, row in enumerate(top.basis):
        s = row.reshape(comb(n, p), nq)
        for i in range(n):
            out[i, :, k] = contract(s, i, n, p, mod).ravel()[list(low.pivots)]
    return out


def _minors(psi: np.ndarray, t: int, mod: int) -> np.ndarray:
    """All t x t minors of a matrix of linear forms, as degree t rows."""
    nr, nc, nv = psi.shape
    level = psi.reshape(nr, nc, nv)  # 1 x 1 minors
    for size in range(2, t + 1):
        ra = wedge_basis(nr, size)
        cb = wedge_basis(nc, size)
        rlow = wedge_index(nr, size - 1)
        clow = wedge_index(nc, size - 1)
        prev = level.reshape(comb(nr, size - 1), comb(nc, size - 1), -1)
        first = np.repeat([a[0] for a in ra], len(cb))
        rest = np.repeat([rlow[a[1:]] for a in ra], len(cb))
        acc = np.zeros((len(ra) * len(cb), graded_dim(nv, size)), dtype=np.int64)
        for k in range(size):
            bk = np.tile([b[k] for b in cb], len(ra))
            brest = np.tile([clow[b[:k] + b[k + 1:]] for b in cb], len(ra))
            term = multiply(psi[first, bk], prev[rest, brest], nv, 1, size - 1, mod)
            acc = acc + term if k % 2 == 0 else acc - term
        level = (acc % mod).reshape(len(ra), len(cb), -1)
    return level.reshape(-1, graded_dim(nv, t))


def current_budget() -> int:
    raw = os.environ.get("SYZYGY_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"SYZYGY_BUDGET must be a number, got {raw!r}") from None


@dataclass(frozen=True)
class RankLocusReport:
    p: int
    r: int
    n_minors: int
    matrix_shape: tuple[int, int]
    n_variables: int
    generic_rank: int
    hilbert: HilbertReport

    def linear_fit(self):
        return self.hilbert.linear_fit()

    def as_dict(self) -> dict:
        fit = self.linear_fit()
        return {
            "p": self.p,
            "r": self.r,
            "minor_size": self.r + 1,
            "n_minors": self.n_minors,
            "matrix_shape": list(self.matrix_shape),
            "n_variables": self.n_variables,
            "generic_rank": self.generic_rank,
            "hilbert": self.hilbert.as_dict(),
            "linear_fit": None if fit is None else {"slope": fit[0], "intercept": fit[1]},
        }


def rank_locus_probe(strand: LinearStrand, p: int, r: int, d_max: int,
                     budget: int | None = None, rng: np.random.Generator | None = None) -> RankLocusReport:
    """Hilbert function of the ideal of (r+1)-minors of ψ on P(V_p^*)."""
    mod = strand.ideal.p
    psi = psi_matrix(strand, p)
    nr, nc, nv = psi.shape
    if nv == 0:
        raise ValueError(f"V_{p} is zero")
    t = r + 1
    if t > min(nr, nc):
        raise ValueError(f"no minors of size {t} in a {nr} x {nc} matrix")
    count = comb(nr, t) * comb(nc, t)
    budget = current_budget() if budget is None else budget
    cost = count * graded_dim(nv, d_max)
    if cost > budget:
        raise BudgetExceeded(
            f"{count} minors times dim S_{d_max} = {cost} exceeds the budget {budget}",
            {"n_minors": count, "graded_dim": graded_dim(nv, d_max), "budget": budget},
        )
    rng = rng if rng is not None else np.random.default_rng(0)
    y = rng.integers(0, mod, nv)
    generic = la.rank(la.matmul(psi.reshape(nr * nc, nv), y[:, None], mod).reshape(nr, nc), mod)
    if t > generic:
        raise ValueError(f"r = {r} is not below the generic rank {generic} of ψ")
    minors = _minors(psi, t, mod)
    minors = minors[minors.any(axis=1)]
    hil = hilbert_probe_rows(minors, nv, t, d_max, mod)
    return RankLocusReport(p, r, count, (nr, nc), nv, generic, hil)
