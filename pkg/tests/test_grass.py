from math import comb

import numpy as np
import pytest

from syzkit import exactla as la
from syzkit import grass
from syzkit import io as sio
from syzkit.errors import DegenerateSection
from syzkit.exterior import shuffle_sign, wedge_basis
from syzkit.polyring import evaluate, multiply
from syzkit.syzygy import linear_strand, syzygy_rank, syzygy_scheme_ideal

P = 101


def test_klein_quadric():
    q = grass.pfaffian4(4, (0, 1, 2, 3), P)
    assert sio.format_poly(q, grass.pluecker_names(4), 2, P) == "u12*u34 - u13*u24 + u14*u23"


def test_pfaffian_index_order_is_canonical():
    assert np.array_equal(grass.pfaffian4(5, (0, 1, 2, 3), P), grass.pfaffian4(5, (0, 1, 3, 2), P))
    with pytest.raises(ValueError):
        grass.pfaffian4(5, (0, 1, 1, 2), P)


@pytest.mark.parametrize("n,count", [(4, 1), (5, 5), (6, 15)])
def test_pluecker_ideal_sizes(n, count):
    ideal = grass.pluecker_ideal(n, P)
    assert (ideal.n_vars, ideal.n_quadrics) == (comb(n, 2), count)


@pytest.mark.parametrize("n", [5, 6])
def test_decomposable_points_satisfy_pfaffians(n, rng):
    rows = grass.pfaffian_rows(n, P)
    for _ in range(500):
        x = grass.random_pluecker_point(n, rng, P)
        assert not evaluate(rows, 2, x, P).any()


def test_e12_is_on_grassmannian():
    x = grass.wedge2([1, 0, 0, 0, 0], [0, 1, 0, 0, 0], P)
    assert not evaluate(grass.pfaffian_rows(5, P), 2, x, P).any()


def test_random_point_is_usually_not_on_grassmannian(rng):
    hits = sum(bool(evaluate(grass.pfaffian_rows(5, P), 2, rng.integers(0, P, 10), P).any()) for _ in range(50))
    assert hits >= 45


def _pfaffian_of_transformed(n, b):
    """Pf of the 4x4 matrix B^t M_U B, expanded directly as a quadric."""
    table = grass.SkewPlueckerMatrix(n)
    nv = comb(n, 2)

    def entry(i, j):
        # (B^t M B)_{ij} = sum_{a<b} u_ab (B_ai B_bj - B_bi B_aj)
        row = np.zeros(nv, dtype=np.int64)
        for a in range(n):
            for c in range(a + 1, n):
                row[table.index(a, c)] += b[a, i] * b[c, j] - b[c, i] * b[a, j]
        return row % P

    def prod(f, g):
        return multiply(f, g, nv, 1, 1, P).reshape(-1)

    return (prod(entry(0, 1), entry(2, 3)) - prod(entry(0, 2), entry(1, 3)) + prod(entry(0, 3), entry(1, 2))) % P


def _hodge_rank(q, n):
    """Rank of the skew form *ω for n = 6, where ω in Λ^4 is the Pfaffian preimage of q."""
    coeffs = la.solve(grass.pfaffian_rows(n, P).T, q, P)
    eta = np.zeros((n, n), dtype=np.int64)
    for c, j in zip(coeffs, wedge_basis(n, 4)):
        a, b = [i for i in range(n) if i not in j]
        sign = shuffle_sign((a, b), j)
        eta[a, b] += sign * c
        eta[b, a] -= sign * c
    return la.rank(eta % P, P)


def test_generalized_pfaffians_from_random_frames(rng):
    for n in (5, 6, 7):
        for _ in range(10):
            b = la.random_full_rank(rng, n, 4, P)
            q = _pfaffian_of_transformed(n, b)
            assert grass.is_generalized_pfaffian(q, n, P)


def test_generalized_pfaffian_examples():
    pf = {j: grass.pfaffian4(6, j, P) for j in wedge_basis(6, 4)}
    assert grass.is_generalized_pfaffian(pf[(0, 1, 2, 3)], 6, P)
    assert not grass.is_generalized_pfaffian((pf[(0, 1, 2, 3)] + pf[(0, 1, 4, 5)]) % P, 6, P)
    # (e12 + e56) ^ e34 is a product of two 2-forms but not of four vectors
    assert not grass.is_generalized_pfaffian((pf[(0, 1, 2, 3)] + pf[(2, 3, 4, 5)]) % P, 6, P)


def test_generalized_pfaffian_agrees_with_hodge_oracle(rng):
    rows = grass.pfaffian_rows(6, P)
    for trial in range(60):
        if trial % 3 == 0:
            q = _pfaffian_of_transformed(6, la.random_full_rank(rng, 6, 4, P))
        else:
            k = rng.integers(1, 4)
            picks = rng.choice(15, size=k, replace=False)
            q = la.matmul(rng.integers(1, P, (1, k)), rows[picks], P)[0]
        assert grass.is_generalized_pfaffian(q, 6, P) == (_hodge_rank(q, 6) == 2)


def test_every_nonzero_quadric_of_gr5_is_generalized(gr5, rng):
    for _ in range(10):
        q = la.matmul(rng.integers(0, P, (1, 5)), gr5.basis, P)[0]
        assert grass.is_generalized_pfaffian(q, 5, P) == bool(q.any())


def test_preimage_outside_span():
    q = np.zeros(55, dtype=np.int64)
    q[0] = 1
    with pytest.raises(ValueError):
        grass.is_generalized_pfaffian(q, 5, P)


def test_minimal_syzygy_coordinate_u(gr5):
    s = grass.minimal_syzygy(5, [1, 0, 0, 0, 0], gr5)
    r, forms = syzygy_rank(s)
    assert r == 4
    names = [sio.format_poly(row, gr5.variables, 1, P) for row in forms.basis]
    assert names == ["u12", "u13", "u14", "u15"]


def test_minimal_syzygy_transported_u(gr5):
    u = np.array([1, 1, 0, 0, 0])
    s = grass.minimal_syzygy(5, u, gr5)
    r, forms = syzygy_rank(s)
    assert r == 4
    assert forms.equals(grass.decomposable_forms(u, 5, P))


def test_minimal_syzygy_gr6_scheme(gr6):
    s = grass.minimal_syzygy(6, [1, 0, 0, 0, 0, 0], gr6)
    assert s.p == 2 and syzygy_rank(s)[0] == 5
    span = syzygy_scheme_ideal(s)
    first_row = np.array([grass.pfaffian4(6, j, P) for j in wedge_basis(6, 4) if 0 in j])
    assert span.dim == 10
    assert la.rank(np.vstack([span.basis, first_row]), P) == 10


@pytest.mark.parametrize("n", [5, 6])
def test_minimal_syzygies_trace_a_veronese(n, rng):
    """s_u is homogeneous of degree p in u: a line of u's spans p+1 syzygies, all u span S^p U."""
    ideal = grass.pluecker_ideal(n, P)
    p = n - 4
    strand = linear_strand(ideal, p)
    a, b = rng.integers(0, P, (2, n))
    line = [strand.coordinates(grass.minimal_syzygy(n, (a + t * b) % P, ideal)) for t in range(p + 4)]
    assert la.rank(np.array(line), P) == p + 1
    cloud = [strand.coordinates(grass.minimal_syzygy(n, rng.integers(0, P, n), ideal)) for _ in range(30)]
    assert la.rank(np.array(cloud), P) == comb(n + p - 1, p) == strand.space(p).dim


def test_minimal_syzygy_rejects_zero(gr5):
    with pytest.raises(ValueError):
        grass.minimal_syzygy(5, [0] * 5, gr5)


@pytest.mark.parametrize("k,kind,nv,nq,dims", [
    (3, "curve", 6, 6, (6, 5, 0)),
    (3, "K3", 7, 6, (6, 5, 0)),
    (4, "curve", 8, 15, (15, 35, 21, 0)),
])
def test_mukai_sections(k, kind, nv, nq, dims):
    sec = grass.mukai_section(k, kind, seed=0, p=P)
    assert (sec.result.n_vars, sec.result.n_quadrics) == (nv, nq)
    assert linear_strand(sec.result, len(dims)).dims == dims
    assert sec.as_dict()["extra_quadric"] == (k == 3)


def test_mukai_replay_is_exact():
    a = grass.mukai_section(3, "curve", seed=7, p=P)
    b = grass.mukai_section(3, "curve", seed=7, p=P)
    assert np.array_equal(a.substitution, b.substitution)
    assert np.array_equal(a.result.basis, b.result.basis)
    c = grass.mukai_section(3, "curve", seed=8, p=P)
    assert not np.array_equal(a.substitution, c.substitution)


def test_mukai_exhaustion():
    with pytest.raises(DegenerateSection, match="increase p"):
        grass.mukai_section(3, "curve", seed=0, p=P, max_attempts=0)
    with pytest.raises(ValueError):
        grass.mukai_section(5, "curve")
    with pytest.raises(ValueError):
        grass.mukai_section(4, "surface")


def test_dual_degree_k3_is_empty(k4_k3):
    assert grass.dual_orthogonal_degree(4, section=k4_k3).hilbert.empty
    report = grass.dual_orthogonal_degree(3, "K3", seed=0)
    assert report.conclusive and report.hilbert.empty
    assert report.as_dict()["perp_projective_dim"] == 2
