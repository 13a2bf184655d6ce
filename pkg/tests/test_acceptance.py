"""Acceptance suite: twelve end-to-end criteria, each with a wall-clock limit.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import hashlib
import io
import subprocess
import sys
import time
from math import comb
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import naive_rank  # noqa: E402
from syzkit import bott, grass, rep  # noqa: E402
from syzkit import exactla as la  # noqa: E402
from syzkit.cli import render, run  # noqa: E402
from syzkit.exterior import koszul_apply  # noqa: E402
from syzkit.gensyz import (  # noqa: E402
    PointClass,
    classify_point,
    gensyz_equations,
    lift_projection,
    make_generic_syzygy,
    random_solution_point,
    scheme_spans_model,
)
from syzkit.polyring import evaluate, graded_dim, restrict_to_subspace  # noqa: E402
from syzkit.syzygy import (  # noqa: E402
    linear_strand,
    push_syzygy,
    rank_drop_check,
    rank_locus_probe,
    restrict_syzygies,
    syzygy_rank,
    syzygy_scheme_ideal,
)

P = 101
RESULTS: dict[str, tuple[bool, float, float, str]] = {}


def grassmannian_strands():
    for n, pmax in ((5, 3), (6, 4)):
        dims = linear_strand(grass.pluecker_ideal(n, P), pmax).dims
        assert dims == rep.grass_strand_dims(n) + (0,), (n, dims)
    assert rep.grass_strand_dims(5) == (5, 5) and rep.grass_strand_dims(6) == (15, 35, 21)


def genus8_pipeline():
    sec = grass.mukai_section(4, "curve", seed=0, p=P)
    assert linear_strand(sec.result, 4).dims == (15, 35, 21, 0)
    ambient = linear_strand(sec.ambient, 2)
    alpha = restrict_syzygies(ambient, sec.substitution, 2)
    assert alpha.map_matrix.shape == (21, 21) and alpha.injective


def genus6_pipeline():
    curve = grass.mukai_section(3, "curve", seed=0, p=P)
    assert linear_strand(curve.result, 3).dims == (6, 5, 0)
    k3 = grass.mukai_section(3, "K3", seed=0, p=P)
    assert linear_strand(k3.result, 2).dims[:2] == (6, 5)


def scrollar_degrees():
    for k, expected in ((3, 5), (4, 14)):
        report = grass.dual_orthogonal_degree(k, "curve", seed=0, d_max=6, p=P)
        assert report.hilbert.stabilized and report.hilbert.stable_value == expected
        assert expected == rep.deg_dual_grassmannian(k)
        report = grass.dual_orthogonal_degree(k, "K3", seed=0, d_max=6, p=P)
        assert report.hilbert.empty


def scrollar_rank_locus():
    curve = grass.mukai_section(3, "curve", seed=0, p=P)
    strand = linear_strand(curve.result, 1)
    report = rank_locus_probe(strand, 1, 3, 10)
    fit = report.linear_fit()
    assert fit is not None and fit[0] == 5, report.hilbert.values


def minimal_rank_syzygies():
    rng = np.random.default_rng(6)
    for n in (5, 6):
        ideal = grass.pluecker_ideal(n, P)
        done = 0
        while done < 50:
            u = rng.integers(0, P, n)
            if not u.any():
                continue
            s = grass.minimal_syzygy(n, u, ideal)
            r, forms = syzygy_rank(s)
            assert r == n - 1 == s.p + 3
            assert forms.equals(grass.decomposable_forms(u, n, P))
            done += 1


def generic_syzygy_schemes():
    rng = np.random.default_rng(7)
    for p, r in ((1, 2), (1, 3), (1, 4), (2, 4), (2, 5)):
        model = gensyz_equations(p, r, P)
        assert model.equations.n_quadrics == comb(r, r - p)
        s = make_generic_syzygy(model)
        assert not koszul_apply(s.full(), model.n_vars, p, 2, P).any()
        assert scheme_spans_model(model)
        assert syzygy_scheme_ideal(s).dim == model.equations.n_quadrics
        for i in range(500):
            x = random_solution_point(model, rng, l_zero=(i % 5 == 0))
            assert not evaluate(model.equations.basis, 2, x, P).any()
            assert classify_point(model, x) is not PointClass.OUTSIDE
            y = rng.integers(0, P, model.n_vars)
            on = not evaluate(model.equations.basis, 2, y, P).any()
            assert (classify_point(model, y) is not PointClass.OUTSIDE) == on


def _hyperplane(form):
    _, ker = la.rank_kernel(np.atleast_2d(form), P)
    return ker.T


def rank_drop_law():
    rng = np.random.default_rng(8)
    pool = []
    for n in (5, 6):
        ideal = grass.pluecker_ideal(n, P)
        strand = linear_strand(ideal, n - 4)
        pool += [grass.minimal_syzygy(n, rng.integers(1, P, n), ideal) for _ in range(3)]
        pool += [strand.element(1, rng.integers(0, P, strand.space(1).dim)) for _ in range(3)]
    curve = grass.mukai_section(3, "curve", seed=0, p=P)
    cs = linear_strand(curve.result, 1)
    pool += [cs.element(1, rng.integers(0, P, cs.space(1).dim)) for _ in range(3)]
    inside = 0
    for trial in range(100):
        s = pool[trial % len(pool)]
        _, forms = syzygy_rank(s)
        if trial % 2 == 0:
            l = la.matmul(rng.integers(0, P, (1, forms.dim)), forms.basis, P)[0]
        else:
            l = rng.integers(0, P, s.ideal.n_vars)
        if not l.any():
            l[0] = 1
        old, new, contained = rank_drop_check(s, _hyperplane(l))
        assert new == old - int(contained), (trial, old, new, contained)
        inside += contained
    assert inside >= 50


def mukai_reconstruction():
    rng = np.random.default_rng(9)
    sec = grass.mukai_section(4, "K3", seed=0, p=P)
    g = la.random_invertible(rng, sec.result.n_vars, P)
    scrambled = restrict_to_subspace(sec.result, g)
    composite = la.matmul(sec.substitution, g, P)
    u = rng.integers(1, P, 6)
    s = push_syzygy(grass.minimal_syzygy(6, u, sec.ambient), composite, scrambled)
    assert syzygy_rank(s)[0] == 5
    pmap = lift_projection(None, s)
    pulled = pmap.pull_back(pmap.model.all_pfaffians())
    assert pulled.shape[0] == 15
    stacked = np.vstack([scrambled.basis, pulled])
    assert la.rank(stacked, P) == scrambled.n_quadrics
    assert np.array_equal(pmap.pulled_back_syzygy(), s.full())
    assert pulled.any()


def count_identities():
    for k in range(2, 17):
        t = rep.count_table(k)
        assert t.dimV_viaBetti == t.dimV_viaBinomial == t.dimV_complement == comb(2 * k - 1, k - 2)
        assert t.degDualGrass == t.degW1 == t.scrollarLines == comb(2 * k, k) // (k + 1)
        assert rep.expected_strand_dim(2 * k, k - 2) == t.dimV
    assert [rep.expected_strand_dim(8, q) for q in range(4)] == [15, 35, 21, 0]
    assert [rep.expected_strand_dim(6, q) for q in range(3)] == [6, 5, 0]


def bott_corollary():
    for k in range(2, 9):
        table = bott.corollary_table(k)
        for j, res in table[:-1]:
            assert res.verdict is bott.Verdict.ALL_VANISH, (k, j)
        last = table[-1][1]
        assert last.verdict is bott.Verdict.SINGLE and last.i0 == k


def infrastructure():
    rng = np.random.default_rng(12)
    used = {10: 3, 15: 4, 7: 2, 6: 3, 8: 3, 9: 2}
    for n, pmax in used.items():
        for p in range(2, pmax + 1):
            s = rng.integers(0, P, (comb(n, p), graded_dim(n, 2)))
            once = koszul_apply(s, n, p, 2, P)
            assert not koszul_apply(once, n, p - 1, 3, P).any()
    for i in range(500):
        rows, cols = (int(x) for x in rng.integers(1, 12, 2))
        m = rng.integers(0, P, (rows, cols))
        if i % 4 == 0:
            m = la.matmul(m[:, : max(1, cols // 2)], rng.integers(0, P, (max(1, cols // 2), cols)), P)
        r, ker = la.rank_kernel(m, P)
        assert r + ker.shape[0] == cols
        if ker.size:
            assert not la.matmul(m, ker.T, P).any()
        if i % 25 == 0:
            assert r == naive_rank(m.tolist(), P)
    argv = ["mukai", "--k", "3", "--seed", "3", "--track-u", "1,2,3,4,5"]
    digests = set()
    for _ in range(2):
        code, doc, _ = run(argv, io.StringIO(""))
        assert code == 0
        digests.add(hashlib.sha256(render(doc, False).encode()).hexdigest())
    proc = subprocess.run([sys.executable, "-m", "syzkit", *argv], capture_output=True, text=True, check=True)
    digests.add(hashlib.sha256(proc.stdout.encode()).hexdigest())
    assert len(digests) == 1


CRITERIA = [
    ("1 Grassmannian strands", grassmannian_strands, 10),
    ("2 genus 8 curve strand and restriction", genus8_pipeline, 60),
    ("3 genus 6 curve and K3 strands", genus6_pipeline, 30),
    ("4 scrollar degrees by Hilbert probe", scrollar_degrees, 120),
    ("5 scrollar rank locus", scrollar_rank_locus, 300),
    ("6 minimal rank syzygies", minimal_rank_syzygies, 30),
    ("7 generic syzygy schemes", generic_syzygy_schemes, 30),
    ("8 rank drop law", rank_drop_law, 30),
    ("9 Mukai reconstruction by lifting", mukai_reconstruction, 120),
    ("10 count identities", count_identities, 1),
    ("11 Bott corollary", bott_corollary, 1),
    ("12 infrastructure properties", infrastructure, 30),
]


def evaluate_criterion(name, fn, limit):
    start = time.perf_counter()
    note = ""
    try:
        fn()
        ok = True
    except AssertionError as exc:
        ok, note = False, f"assertion failed {exc}".strip()
    elapsed = time.perf_counter() - start
    if ok and elapsed >= limit:
        ok, note = False, "over time limit"
    RESULTS[name] = (ok, elapsed, limit, note)
    return ok, elapsed, note


def summary_lines():
    out = []
    for name, _, _ in CRITERIA:
        if name in RESULTS:
            ok, elapsed, limit, note = RESULTS[name]
            tail = f"  ({note})" if note else ""
            out.append(f"{'PASS' if ok else 'FAIL'}  {name:<42} {elapsed:8.2f}s / {limit}s{tail}")
    return out


@pytest.mark.parametrize("name,fn,limit", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, limit):
    ok, elapsed, note = evaluate_criterion(name, fn, limit)
    print(f"{'PASS' if ok else 'FAIL'} {name} {elapsed:.2f}s")
    assert ok, note


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        failed += not evaluate_criterion(*crit)[0]
        print(summary_lines()[-1], flush=True)
    sys.exit(1 if failed else 0)
