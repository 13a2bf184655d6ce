"""Graded pieces of F_p[x_0, ..., x_{n-1}].

A homogeneous polynomial of degree ``d`` is a coefficient row over the
monomials of degree ``d`` listed in graded lexicographic order, which is
the order ``itertools.combinations_with_replacement`` produces on variable
indices (``x0^2, x0*x1, x0*x2, x1^2, ...``).

Linear substitutions follow one convention everywhere: an ``n x m``
matrix ``M`` rewrites the old variables as ``x_i = sum_j M[i, j] y_j``.
Coefficient rows transform on the right, ``f(My) = f_row @ substitution_matrix(M, d)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from . import exactla as la
from .errors import DegenerateSection


def graded_dim(n_vars: int, d: int) -> int:
    """dim S_d = C(d + n - 1, d); zero for negative degrees."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        return 0
    return comb(d + n_vars - 1, d)


@lru_cache(maxsize=None)
def monomial_supports(n_vars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Monomials of degree ``d`` as sorted tuples of variable indices."""
    return tuple(combinations_with_replacement(range(n_vars), d))


@lru_cache(maxsize=None)
def monomial_index(n_vars: int, d: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomial_supports(n_vars, d))}


def monomials(n_vars: int, d: int) -> list[tuple[int, ...]]:
    """Monomials of degree ``d`` as exponent vectors, in basis order."""
    out = []
    for m in monomial_supports(n_vars, d):
        e = [0] * n_vars
        for i in m:
            e[i] += 1
        out.append(tuple(e))
    return out


def exponents_to_index(exps) -> tuple[int, int]:
    """(degree, position) of the monomial with the given exponent vector."""
    support = []
    for i, e in enumerate(exps):
        if e < 0:
            raise ValueError("negative exponent")
        support.extend([i] * int(e))
    n = len(exps)
    return len(support), monomial_index(n, len(support))[tuple(support)]


@lru_cache(maxsize=None)
def shift_table(n_vars: int, d: int) -> np.ndarray:
    """``T[i, j]`` = position of ``x_i * m_j`` among degree ``d+1`` monomials."""
    idx = monomial_index(n_vars, d + 1)
    mons = monomial_supports(n_vars, d)
    t = np.empty((n_vars, len(mons)), dtype=np.int64)
    for i in range(n_vars):
        for j, m in enumerate(mons):
            t[i, j] = idx[tuple(sorted(m + (i,)))]
    t.flags.writeable = False
    return t


@lru_cache(maxsize=None)
def product_table(n_vars: int, a: int, b: int) -> np.ndarray:
    """``T[i, j]`` = position of ``m_i * m_j`` (degrees a and b) in degree a+b."""
    idx = monomial_index(n_vars, a + b)
    ma = monomial_supports(n_vars, a)
    mb = monomial_supports(n_vars, b)
    t = np.empty((len(ma), len(mb)), dtype=np.int64)
    for i, x in enumerate(ma):
        for j, y in enumerate(mb):
            t[i, j] = idx[tuple(sorted(x + y))]
    t.flags.writeable = False
    return t


def multiply_by_variable(rows, i: int, n_vars: int, d: int) -> np.ndarray:
    """Rows of degree ``d`` multiplied by ``x_i``."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    out = np.zeros((rows.shape[0], graded_dim(n_vars, d + 1)), dtype=np.int64)
    out[:, shift_table(n_vars, d)[i]] = rows
    return out


def multiply(f, g, n_vars: int, a: int, b: int, p: int) -> np.ndarray:
    """Row-wise products of degree ``a`` rows ``f`` with degree ``b`` rows ``g``.

    ``f`` and ``g`` must have the same number of rows (or be single rows).
    """
    f = np.atleast_2d(np.asarray(f, dtype=np.int64)) % p
    g = np.atleast_2d(np.asarray(g, dtype=np.int64)) % p
    k = max(f.shape[0], g.shape[0])
    f = np.broadcast_to(f, (k, f.shape[1]))
    g = np.broadcast_to(g, (k, g.shape[1]))
    table = product_table(n_vars, a, b).ravel()
    size = graded_dim(n_vars, a + b)
    terms = (f[:, :, None] * g[:, None, :] % p).reshape(k, -1)
    # float64 accumulation is exact: each term is below 2**26 and no output
    # monomial receives more than 2**26 of them at desk scale
    flat = (np.arange(k)[:, None] * size + table[None, :]).ravel()
    acc = np.bincount(flat, weights=terms.ravel().astype(np.float64), minlength=k * size)
    return (acc.astype(np.int64) % p).reshape(k, size)


def evaluate(rows, d: int, point, p: int) -> np.ndarray:
    """Values of degree ``d`` polynomials at a point of F_p^n."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % p
    point = np.asarray(point, dtype=np.int64) % p
    n = point.shape[0]
    vals = np.ones(graded_dim(n, d), dtype=np.int64)
    for j, m in enumerate(monomial_supports(n, d)):
        v = 1
        for i in m:
            v = v * int(point[i]) % p
        vals[j] = v
    return la.matmul(rows, vals[:, None], p)[:, 0]


def substitution_matrix(m, d: int, p: int) -> np.ndarray:
    """Matrix of ``f(x) -> f(My)`` from S_d(n) to S_d(m), acting on rows."""
    m = np.asarray(m, dtype=np.int64) % p
    n, k = m.shape
    if d == 0:
        return np.ones((1, 1), dtype=np.int64)
    cur = m.copy()  # degree one rows: x_i -> row i
    for e in range(1, d):
        mons = monomial_supports(n, e + 1)
        prev = monomial_index(n, e)
        left = cur[[prev[mono[:-1]] for mono in mons]]
        right = m[[mono[-1] for mono in mons]]
        cur = multiply(left, right, k, e, 1, p)
    return cur


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    """A subspace of S_d held as a reduced echelon basis."""

    n_vars: int
    degree: int
    p: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, rows, n_vars: int, degree: int, p: int) -> "GradedSubspace":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, graded_dim(n_vars, degree))
        r, piv = la.rref(rows, p)
        r.flags.writeable = False
        return cls(n_vars, degree, p, r, tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def ambient_dim(self) -> int:
        return graded_dim(self.n_vars, self.degree)

    def coordinates(self, v) -> np.ndarray:
        return la.coordinates(self.basis, list(self.pivots), v, self.p)

    def contains(self, v) -> bool:
        return la.in_span(self.basis, list(self.pivots), v, self.p)

    def raised(self) -> "GradedSubspace":
        """The span of ``x_i * f`` for all variables and basis elements."""
        n, d = self.n_vars, self.degree
        table = shift_table(n, d)
        rows = np.zeros((n * self.dim, graded_dim(n, d + 1)), dtype=np.int64)
        for i in range(n):
            rows[i * self.dim:(i + 1) * self.dim][:, table[i]] = self.basis
        return GradedSubspace.span(rows, n, d + 1, self.p)


def default_names(n_vars: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n_vars))


@dataclass(frozen=True, eq=False)
class QuadricIdeal:
    """An ideal generated by the quadrics spanning ``quadrics``.

    ``substitution`` records the matrix used when the ideal was obtained by
    restricting another one, so that syzygies can be pushed along it.
    """

    quadrics: GradedSubspace
    variables: tuple[str, ...] = ()
    substitution: np.ndarray | None = field(default=None, compare=False, repr=False)
    _pieces: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.quadrics.degree != 2:
            raise ValueError("generators must be quadrics")
        if not self.variables:
            object.__setattr__(self, "variables", default_names(self.n_vars))
        if len(self.variables) != self.n_vars:
            raise ValueError("variable names do not match the number of variables")

    @classmethod
    def from_rows(cls, rows, n_vars: int, p: int, variables=(), substitution=None) -> "QuadricIdeal":
        return cls(GradedSubspace.span(rows, n_vars, 2, p), tuple(variables), substitution)

    @property
    def n_vars(self) -> int:
        return self.quadrics.n_vars

    @property
    def p(self) -> int:
        return self.quadrics.p

    @property
    def field(self) -> la.PrimeField:
        return la.PrimeField(self.p)

    @property
    def basis(self) -> np.ndarray:
        return self.quadrics.basis

    @property
    def n_quadrics(self) -> int:
        return self.quadrics.dim

    def degree_piece(self, d: int) -> GradedSubspace:
        return ideal_degree_piece(self, d)


def ideal_degree_piece(ideal: QuadricIdeal, d: int) -> GradedSubspace:
    """(I)_d = S_{d-2} * (I)_2, computed by repeated multiplication by variables."""
    if d < 2:
        raise ValueError("quadric ideals start in degree 2")
    cache = ideal._pieces
    if 2 not in cache:
        cache[2] = ideal.quadrics
    top = max(e for e in cache if e <= d)
    piece = cache[top]
    for e in range(top, d):
        piece = piece.raised()
        cache[e + 1] = piece
    return piece


def restrict_to_subspace(ideal: QuadricIdeal, substitution, expect_independent: bool = False) -> QuadricIdeal:
    """Substitute ``x = M y`` into the generators.

    ``M`` must have full column rank.  With ``expect_independent`` a drop
    in the number of independent quadrics raises :class:`DegenerateSection`.
    """
    p = ideal.p
    m = np.asarray(substitution, dtype=np.int64) % p
    if m.ndim != 2 or m.shape[0] != ideal.n_vars:
        raise ValueError(f"substitution must have {ideal.n_vars} rows")
    if la.rank(m, p) != m.shape[1]:
        raise ValueError("substitution is not of full column rank")
    rows = la.matmul(ideal.basis, substitution_matrix(m, 2, p), p)
    out = QuadricIdeal.from_rows(rows, m.shape[1], p, substitution=m)
    if expect_independent and out.n_quadrics != ideal.n_quadrics:
        raise DegenerateSection(
            f"restricted quadrics are dependent ({out.n_quadrics} < {ideal.n_quadrics})"
        )
    return out


def add_quadrics(ideal: QuadricIdeal, rows) -> QuadricIdeal:
    stacked = np.concatenate([ideal.basis, np.atleast_2d(np.asarray(rows, dtype=np.int64))])
    return QuadricIdeal.from_rows(stacked, ideal.n_vars, ideal.p, ideal.variables, ideal.substitution)


@dataclass(frozen=True)
class HilbertReport:
    """Quotient dimensions dim (S/I)_d for d = 0..d_max and their reading."""

    values: tuple[int, ...]
    generator_degree: int
    empty_from: int | None
    stable_value: int | None
    stable_degrees: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return self.empty_from is not None

    @property
    def stabilized(self) -> bool:
        return self.stable_value is not None

    def linear_fit(self, start: int | None = None) -> tuple[int, int] | None:
        """Integer ``(a, b)`` with ``value(d) = a*d + b`` on three consecutive degrees.

        Uses the last three probed degrees unless ``start`` is given.
        """
        vals = self.values
        if start is None:
            start = len(vals) - 3
        if start < 0 or start + 3 > len(vals):
            return None
        v0, v1, v2 = vals[start:start + 3]
        a = v1 - v0
        if v2 - v1 != a:
            return None
        return a, v0 - a * start

    def as_dict(self) -> dict:
        return {
            "values": list(self.values),
            "generator_degree": self.generator_degree,
            "empty": self.empty,
            "empty_from": self.empty_from,
            "stabilized": self.stabilized,
            "stable_value": self.stable_value,
            "stable_degrees": list(self.stable_degrees),
        }


def hilbert_probe_rows(rows, n_vars: int, degree: int, d_max: int, p: int) -> HilbertReport:
    """Hilbert function of S/I for an ideal generated by forms of one degree."""
    values = [graded_dim(n_vars, d) for d in range(min(degree, d_max + 1))]
    piece = GradedSubspace.span(rows, n_vars, degree, p) if degree <= d_max else None
    d = degree
    while d <= d_max:
        q = graded_dim(n_vars, d) - piece.dim
        values.append(q)
        if q == 0:
            values.extend([0] * (d_max - d))
            break
        d += 1
        if d <= d_max:
            piece = piece.raised()
    empty_from = next((d for d, v in enumerate(values) if v == 0), None)
    stable_value = None
    stable_degrees: tuple[int, ...] = ()
    if empty_from is None and len(values) >= 2 and values[-1] == values[-2]:
        stable_value = values[-1]
        stable_degrees = (len(values) - 2, len(values) - 1)
    return HilbertReport(tuple(values), degree, empty_from, stable_value, stable_degrees)


def hilbert_probe(ideal: QuadricIdeal, d_max: int) -> HilbertReport:
    if d_max < 2:
        raise ValueError("d_max must be at least 2")
    return hilbert_probe_rows(ideal.basis, ideal.n_vars, 2, d_max, ideal.p)
