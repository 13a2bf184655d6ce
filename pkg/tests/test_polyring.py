import numpy as np
import pytest
import sympy

from oracles import grassmannian_hilbert, poly_to_row, sympy_quadratic_forms
from syzkit import exactla as la
from syzkit.errors import DegenerateSection
from syzkit.polyring import (
    GradedSubspace,
    QuadricIdeal,
    add_quadrics,
    evaluate,
    exponents_to_index,
    graded_dim,
    hilbert_probe,
    hilbert_probe_rows,
    monomials,
    multiply,
    restrict_to_subspace,
    substitution_matrix,
)

P = 101


@pytest.mark.parametrize("n,d,expected", [(3, 2, 6), (8, 2, 36), (5, 4, 70), (4, 0, 1), (1, 7, 1)])
def test_graded_dim(n, d, expected):
    assert graded_dim(n, d) == expected
    assert len(monomials(n, d)) == expected


def test_exponent_index_round_trip():
    for n, d in [(3, 2), (4, 3), (6, 2)]:
        for j, exps in enumerate(monomials(n, d)):
            assert exponents_to_index(exps) == (d, j)


def test_multiply_matches_sympy(rng):
    n, names = 4, ["a", "b", "c", "d"]
    for a, b in [(1, 1), (1, 2), (2, 2), (0, 3)]:
        f = rng.integers(0, P, graded_dim(n, a))
        g = rng.integers(0, P, graded_dim(n, b))
        ours = multiply(f, g, n, a, b, P).reshape(-1)
        xs, (pf,) = sympy_quadratic_forms([f], names, a, P)
        _, (pg,) = sympy_quadratic_forms([g], names, b, P)
        assert ours.tolist() == poly_to_row(pf * pg, xs, a + b, P)


def test_substitution_matches_sympy(rng):
    n, m = 4, 3
    mat = rng.integers(0, P, (n, m))
    q = rng.integers(0, P, graded_dim(n, 2))
    ours = la.matmul(q[None, :], substitution_matrix(mat, 2, P), P)[0]
    xs, (pq,) = sympy_quadratic_forms([q], ["x0", "x1", "x2", "x3"], 2, P)
    ys = sympy.symbols("y0 y1 y2")
    subs = {xs[i]: sum(int(mat[i, j]) * ys[j] for j in range(m)) for i in range(n)}
    expr = sympy.Poly(pq.as_expr().subs(subs, simultaneous=True), *ys, modulus=P)
    assert ours.tolist() == poly_to_row(expr, ys, 2, P)


def test_substitution_is_functorial(rng):
    a = rng.integers(0, P, (5, 4))
    b = rng.integers(0, P, (4, 3))
    lhs = substitution_matrix(la.matmul(a, b, P), 3, P)
    rhs = la.matmul(substitution_matrix(a, 3, P), substitution_matrix(b, 3, P), P)
    assert np.array_equal(lhs, rhs)


def test_evaluate_agrees_with_substitution(rng):
    q = rng.integers(0, P, (3, graded_dim(5, 2)))
    x = rng.integers(0, P, 5)
    via_sub = la.matmul(q, substitution_matrix(x[:, None], 2, P), P)[:, 0]
    assert np.array_equal(evaluate(q, 2, x, P), via_sub)


def _ideal(rows, n):
    return QuadricIdeal.from_rows(np.atleast_2d(rows), n, P)


def test_single_monomial_cubic_piece():
    ideal = _ideal([0, 1, 0], 2)  # x0*x1
    piece = ideal.degree_piece(3)
    assert piece.dim == 2
    # x0^2 x1 and x0 x1^2 in the order x0^3, x0^2x1, x0x1^2, x1^3
    assert piece.basis.tolist() == [[0, 1, 0, 0], [0, 0, 1, 0]]


def test_pluecker_cubic_piece(gr5, gr6):
    assert gr5.degree_piece(3).dim == graded_dim(10, 3) - grassmannian_hilbert(5, 3) == 45
    assert gr6.degree_piece(3).dim == graded_dim(15, 3) - grassmannian_hilbert(6, 3)


def test_curve_cubic_piece(k4_curve):
    assert k4_curve.result.degree_piece(3).dim == 85


def test_ideal_property(gr5):
    for d in (2, 3):
        piece = gr5.degree_piece(d)
        nxt = gr5.degree_piece(d + 1)
        for i in range(gr5.n_vars):
            for q in piece.basis[:4]:
                xq = multiply(np.eye(10, dtype=np.int64)[i], q, 10, 1, d, P).reshape(-1)
                assert nxt.contains(xq)


def test_restrict_simple():
    ideal = _ideal([0, 1, 0], 2)
    out = restrict_to_subspace(ideal, np.array([[1], [1]]))
    assert out.basis.tolist() == [[1]]


def test_restrict_random_sections(gr5, gr6, rng):
    m = la.random_full_rank(rng, 10, 7, P)
    assert restrict_to_subspace(gr5, m, expect_independent=True).n_quadrics == 5
    m = la.random_full_rank(rng, 15, 8, P)
    out = restrict_to_subspace(gr6, m, expect_independent=True)
    assert (out.n_vars, out.n_quadrics) == (8, 15)


def test_restrict_rejects_degenerate():
    ideal = _ideal([[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]], 3)  # x0x1, x0x2
    m = np.array([[0], [1], [1]])
    with pytest.raises(DegenerateSection):
        restrict_to_subspace(ideal, m, expect_independent=True)
    with pytest.raises(ValueError):
        restrict_to_subspace(ideal, np.array([[1, 1], [1, 1], [0, 0]]))


def test_add_quadrics(gr5):
    q = np.zeros(55, dtype=np.int64)
    q[0] = 1
    assert add_quadrics(gr5, q[None, :]).n_quadrics == 6


def test_hilbert_probe_all_quadrics():
    ideal = QuadricIdeal.from_rows(np.eye(6, dtype=np.int64), 3, P)
    rep = hilbert_probe(ideal, 5)
    assert rep.values == (1, 3, 0, 0, 0, 0)
    assert rep.empty and rep.empty_from == 2


def test_hilbert_probe_points():
    # three coordinate points of P^2: x0x1, x0x2, x1x2
    rows = np.zeros((3, 6), dtype=np.int64)
    rows[0, 1] = rows[1, 2] = rows[2, 4] = 1
    rep = hilbert_probe(QuadricIdeal.from_rows(rows, 3, P), 6)
    assert rep.values == (1, 3, 3, 3, 3, 3, 3)
    assert rep.stabilized and rep.stable_value == 3
    assert rep.linear_fit() == (0, 3)


def test_hilbert_probe_double_line():
    rows = np.zeros((1, 6), dtype=np.int64)
    rows[0, 0] = 1
    rep = hilbert_probe(QuadricIdeal.from_rows(rows, 3, P), 6)
    # S/(x0^2) has Hilbert function 2d + 1
    assert rep.values[1:] == tuple(2 * d + 1 for d in range(1, 7))
    assert rep.linear_fit() == (2, 1)


def test_hilbert_probe_rows_higher_degree():
    # the cubic x0^3 in P^1: values 1, 2, 3, 3, ...
    rows = np.array([[1, 0, 0, 0]])
    assert hilbert_probe_rows(rows, 2, 3, 5, P).values == (1, 2, 3, 3, 3, 3)


def test_dual_pfaffians_on_random_space(k3_curve, k4_curve):
    from syzkit.grass import dual_orthogonal_degree

    assert dual_orthogonal_degree(3, section=k3_curve).hilbert.stable_value == 5
    assert dual_orthogonal_degree(4, section=k4_curve).hilbert.stable_value == 14


def test_graded_subspace_raise_matches_products(rng):
    rows = rng.integers(0, P, (2, 10))
    sub = GradedSubspace.span(rows, 4, 2, P)
    up = sub.raised()
    prods = [multiply(np.eye(4, dtype=np.int64)[i], r, 4, 1, 2, P).reshape(-1) for i in range(4) for r in rows]
    assert up.dim == la.rank(np.array(prods), P)
