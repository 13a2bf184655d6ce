"""Generic syzygy schemes and the lifting of a syzygy to its universal model.

For a p-th syzygy of rank r the model lives in P(L ⊕ Λ^{r-p-1} L) with
coordinates ``l_0..l_{r-1}`` followed by ``a_J`` for the (r-p-1)-subsets J
of range(r) in lexicographic order.  Its quadrics are indexed by the
(r-p)-subsets B:

    Q_B = Σ_j (-1)^j l_{B_j} a_{B minus B_j}

and the generic syzygy is s_gen = Σ_{|A| = p} ε(A, A^c) e_A ⊗ Q_{A^c},
where the wedge runs over the l coordinates.

``lift_projection`` realizes a given syzygy s as a pullback of s_gen.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from . import exactla as la
from .errors import InvalidSyzygy
from .exterior import push, shuffle_sign, wedge_basis, wedge_index
from .polyring import (
    GradedSubspace,
    QuadricIdeal,
    evaluate,
    graded_dim,
    monomial_index,
    multiply,
    substitution_matrix,
)
from .syzygy import LinearFormSpace, LinearStrand, Syzygy, syzygy_rank, syzygy_scheme_ideal


class Regime(str, Enum):
    REDUCIBLE = "reducible"
    SCROLLAR = "scrollar"
    GRASSMANNIAN = "grassmannian"
    GENERAL = "general"


def regime_of(p: int, r: int) -> Regime:
    return {p + 1: Regime.REDUCIBLE, p + 2: Regime.SCROLLAR, p + 3: Regime.GRASSMANNIAN}.get(r, Regime.GENERAL)


class PointClass(str, Enum):
    ON_LINEAR_PART = "on_linear_part"
    ON_GRASSMANNIAN_PART = "on_grassmannian_part"
    ON_SEGRE_PART = "on_segre_part"
    ON_HYPERPLANE_PART = "on_hyperplane_part"
    BOTH = "both"
    OUTSIDE = "outside"


def quadric_row(terms, n_vars: int, p: int) -> np.ndarray:
    """Quadric from ``[(coefficient, i, j), ...]`` meaning coefficient * x_i * x_j."""
    idx = monomial_index(n_vars, 2)
    row = np.zeros(graded_dim(n_vars, 2), dtype=np.int64)
    for c, i, j in terms:
        row[idx[(min(i, j), max(i, j))]] += c
    return row % p


def pfaffian_terms(m, rows) -> list[tuple[int, int, int]]:
    """Pfaffian of the 4x4 principal block ``rows`` of a skew matrix of variables.

    ``m[i][j]`` (i < j) is a variable index; the result is in the format of
    :func:`quadric_row`.
    """
    a, b, c, d = sorted(rows)
    return [(1, m[a][b], m[c][d]), (-1, m[a][c], m[b][d]), (1, m[a][d], m[b][c])]


@dataclass(frozen=True, eq=False)
class GensyzModel:
    p: int
    r: int
    variables: tuple[str, ...]
    equations: QuadricIdeal
    equation_rows: np.ndarray  # Q_B in the order of the (r-p)-subsets B
    regime: Regime
    witness: tuple | None

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def a_subsets(self) -> tuple[tuple[int, ...], ...]:
        return wedge_basis(self.r, self.r - self.p - 1)

    def a_var(self, subset) -> int:
        return self.r + wedge_index(self.r, self.r - self.p - 1)[tuple(subset)]

    def witness_equations(self) -> np.ndarray:
        """Minors (scrollar) or first-row Pfaffians (Grassmannian) of the witness."""
        mod = self.equations.p
        if self.regime is Regime.SCROLLAR:
            top, bottom = self.witness
            k = len(top)
            return np.array([
                quadric_row([(1, top[i], bottom[j]), (-1, top[j], bottom[i])], self.n_vars, mod)
                for i in range(k) for j in range(i + 1, k)
            ])
        if self.regime is Regime.GRASSMANNIAN:
            size = len(self.witness)
            return np.array([
                quadric_row(pfaffian_terms(self.witness, (0,) + rest), self.n_vars, mod)
                for rest in wedge_basis(size, 3) if 0 not in rest
            ])
        raise ValueError(f"no structural witness in the {self.regime.value} regime")

    def all_pfaffians(self) -> np.ndarray:
        """Every 4x4 Pfaffian of the witness skew matrix (Grassmannian regime)."""
        if self.regime is not Regime.GRASSMANNIAN:
            raise ValueError("only the Grassmannian regime has a skew witness")
        size = len(self.witness)
        mod = self.equations.p
        return np.array([
            quadric_row(pfaffian_terms(self.witness, rows), self.n_vars, mod)
            for rows in wedge_basis(size, 4)
        ])

    def skew_matrix_at(self, point) -> np.ndarray:
        size = len(self.witness)
        point = np.asarray(point, dtype=np.int64) % self.equations.p
        m = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            for j in range(i + 1, size):
                m[i, j] = point[self.witness[i][j]]
                m[j, i] = -point[self.witness[i][j]]
        return m % self.equations.p


def gensyz_equations(p: int, r: int, prime: int = la.DEFAULT_PRIME) -> GensyzModel:
    if p < 0 or r < p + 1:
        raise ValueError("need p >= 0 and r >= p + 1")
    subsets = wedge_basis(r, r - p - 1)
    names = tuple(f"l{i}" for i in range(r)) + tuple(
        "a" + ("_".join(str(j) for j in J) if J else "") for J in subsets
    )
    n = len(names)
    a_index = wedge_index(r, r - p - 1)
    rows = []
    for b in wedge_basis(r, r - p):
        terms = [((-1) ** j, b[j], r + a_index[b[:j] + b[j + 1:]]) for j in range(len(b))]
        rows.append(quadric_row(terms, n, prime))
    rows = np.array(rows, dtype=np.int64)
    ideal = QuadricIdeal.from_rows(rows, n, prime, names)
    if ideal.n_quadrics != comb(r, r - p):  # pragma: no cover - structural
        raise AssertionError("model quadrics are not independent")
    regime = regime_of(p, r)
    witness = None
    if regime is Regime.SCROLLAR:
        witness = (tuple(range(r)), tuple(r + a_index[(i,)] for i in range(r)))
    elif regime is Regime.GRASSMANNIAN:
        size = r + 1
        m = [[-1] * size for _ in range(size)]
        for i in range(r):
            m[0][i + 1] = i
            for j in range(i + 1, r):
                m[i + 1][j + 1] = r + a_index[(i, j)]
        witness = tuple(tuple(row) for row in m)
    return GensyzModel(p, r, names, ideal, rows, regime, witness)


def generic_syzygy_full(model: GensyzModel) -> np.ndarray:
    """s_gen over Λ^p ⊗ S_2 of the model's ambient space."""
    n, p, r = model.n_vars, model.p, model.r
    mod = model.equations.p
    out = np.zeros((comb(n, p), graded_dim(n, 2)), dtype=np.int64)
    widx = wedge_index(n, p)
    bidx = wedge_index(r, r - p)
    for a in wedge_basis(r, p):
        comp = tuple(i for i in range(r) if i not in a)
        out[widx[a]] = shuffle_sign(a, comp) * model.equation_rows[bidx[comp]]
    return out % mod


def make_generic_syzygy(model: GensyzModel) -> Syzygy:
    return Syzygy.from_full(model.equations, model.p, generic_syzygy_full(model))


def equation_matrix_in_a(model: GensyzModel, l) -> np.ndarray:
    """With l fixed the equations are linear in a: rows B, columns J."""
    mod = model.equations.p
    l = np.asarray(l, dtype=np.int64) % mod
    r, p = model.r, model.p
    a_index = wedge_index(r, r - p - 1)
    bs = wedge_basis(r, r - p)
    m = np.zeros((len(bs), len(a_index)), dtype=np.int64)
    for e, b in enumerate(bs):
        for j in range(len(b)):
            m[e, a_index[b[:j] + b[j + 1:]]] += (-1) ** j * l[b[j]]
    return m % mod


def random_solution_point(model: GensyzModel, rng: np.random.Generator, l_zero: bool = False) -> np.ndarray:
    """A random nonzero F_p-point of the model."""
    mod = model.equations.p
    r = model.r
    na = model.n_vars - r
    while True:
        l = np.zeros(r, dtype=np.int64) if l_zero else rng.integers(0, mod, r)
        _, ker = la.rank_kernel(equation_matrix_in_a(model, l), mod)
        a = la.matmul(rng.integers(0, mod, (1, ker.shape[0])), ker, mod)[0] if ker.shape[0] else np.zeros(na, dtype=np.int64)
        x = np.concatenate([l, a])
        if x.any():
            return x


def classify_point(model: GensyzModel, point) -> PointClass:
    mod = model.equations.p
    x = np.asarray(point, dtype=np.int64) % mod
    if x.shape != (model.n_vars,):
        raise ValueError(f"point must have {model.n_vars} coordinates")
    if evaluate(model.equations.basis, 2, x, mod).any():
        return PointClass.OUTSIDE
    l = x[:model.r]
    if model.regime is Regime.REDUCIBLE:
        if not l.any():
            return PointClass.ON_LINEAR_PART
        return PointClass.ON_HYPERPLANE_PART if not x[model.r:].any() else PointClass.OUTSIDE
    if model.regime is Regime.SCROLLAR:
        top, bottom = model.witness
        two_rows = np.stack([x[list(top)], x[list(bottom)]])
        return PointClass.ON_SEGRE_PART if la.rank(two_rows, mod) <= 1 else PointClass.OUTSIDE
    if model.regime is Regime.GRASSMANNIAN:
        on_grass = la.rank(model.skew_matrix_at(x), mod) <= 2
        if not l.any():
            return PointClass.BOTH if on_grass else PointClass.ON_LINEAR_PART
        return PointClass.ON_GRASSMANNIAN_PART if on_grass else PointClass.OUTSIDE
    raise ValueError("points are only classified for r <= p + 3")


@dataclass(frozen=True, eq=False)
class ProjectionMap:
    """π*: rows are the model coordinates, columns the coordinates of V.

    As a substitution, model coordinate i becomes the linear form ``matrix[i]``.
    """

    matrix: np.ndarray
    model: GensyzModel
    forms: LinearFormSpace
    lift: np.ndarray  # t in Λ^{p+1} L ⊗ V, rows indexed by (p+1)-subsets of range(r)
    gauge_dim: int
    pulled_back: np.ndarray  # model equations pulled back to V

    @property
    def rank(self) -> int:
        return len(self.forms.pivots)

    def pull_back(self, rows) -> np.ndarray:
        mod = self.model.equations.p
        return la.matmul(np.atleast_2d(rows), substitution_matrix(self.matrix, 2, mod), mod)

    def pulled_back_syzygy(self) -> np.ndarray:
        mod = self.model.equations.p
        return push(generic_syzygy_full(self.model), self.matrix, self.model.p, 2, mod)


def lift_projection(strand: LinearStrand | None, s: Syzygy, verify: bool = True) -> ProjectionMap:
    """Find π* with π*(s_gen) = s.

    s sits in Λ^p L_s ⊗ S_2 V and is a Koszul boundary there: s = d t for
    some t in Λ^{p+1} L_s ⊗ V, unique up to d(Λ^{p+2} L_s).  Then
    a_J ↦ (-1)^p ε(J^c, J) t_{J^c} and l_i ↦ (i-th basis form of L_s).
    """
    ideal = s.ideal
    mod, n, p = ideal.p, ideal.n_vars, s.p
    if strand is not None and strand.ideal is not ideal:
        raise ValueError("the syzygy does not belong to this strand")
    if s.is_zero():
        raise InvalidSyzygy("cannot lift the zero syzygy")
    r, forms = syzygy_rank(s)
    lrows = forms.basis
    piv = list(forms.pivots)
    full = s.full()
    widx = wedge_index(n, p)
    low = wedge_basis(r, p)
    high = wedge_basis(r, p + 1)
    target = np.stack([full[widx[tuple(piv[i] for i in a)]] for a in low])
    # adapted basis of V: complement coordinates first, L_s last
    rest = [j for j in range(n) if j not in set(piv)]
    g = np.concatenate([np.eye(n, dtype=np.int64)[rest], lrows]) % mod
    n2 = graded_dim(n, 2)
    prods = multiply(np.repeat(lrows, n, axis=0), np.tile(g, (r, 1)), n, 1, 1, mod).reshape(r, n, n2)
    lidx = wedge_index(r, p)
    d = np.zeros((len(low) * n2, len(high) * n), dtype=np.int64)
    for bcol, b in enumerate(high):
        for j in range(p + 1):
            row = lidx[b[:j] + b[j + 1:]]
            for k in range(n):
                col = k * len(high) + bcol
                d[row * n2:(row + 1) * n2, col] += (-1) ** j * prods[b[j], k]
    d %= mod
    try:
        x = la.solve(d, target.ravel(), mod)
    except la.NoSolution:
        raise InvalidSyzygy("the syzygy is not a Koszul boundary over its linear forms") from None
    rk, _ = la.rank_kernel(d, mod)
    gauge = d.shape[1] - rk
    if gauge != comb(r, p + 2):  # pragma: no cover - exactness of the Koszul complex
        raise AssertionError(f"unexpected lifting ambiguity {gauge} != {comb(r, p + 2)}")
    t = la.matmul(x.reshape(n, len(high)).T, g, mod)
    model = gensyz_equations(p, r, mod)
    hidx = wedge_index(r, p + 1)
    alpha = []
    for jset in model.a_subsets:
        comp = tuple(i for i in range(r) if i not in jset)
        alpha.append(((-1) ** p * shuffle_sign(comp, jset)) * t[hidx[comp]])
    pi = np.concatenate([lrows, np.array(alpha, dtype=np.int64).reshape(-1, n)]) % mod
    pulled = la.matmul(model.equation_rows, substitution_matrix(pi, 2, mod), mod)
    pmap = ProjectionMap(pi, model, forms, t, gauge, pulled)
    if verify:
        if not np.array_equal(pmap.pulled_back_syzygy(), full):
            raise AssertionError("π*(s_gen) differs from s")  # pragma: no cover
        if not all(ideal.quadrics.contains(q) for q in pulled):
            raise AssertionError("pulled back equations leave the ideal")  # pragma: no cover
    return pmap


def scheme_spans_model(model: GensyzModel) -> bool:
    """Do the quadrics of s_gen span all the model equations?"""
    span = syzygy_scheme_ideal(make_generic_syzygy(model))
    return span.dim == model.equations.n_quadrics and all(
        span.contains(q) for q in model.equations.basis
    )


def pulled_back_span(pmap: ProjectionMap, ideal: QuadricIdeal) -> GradedSubspace:
    return GradedSubspace.span(pmap.pulled_back, ideal.n_vars, 2, ideal.p)
