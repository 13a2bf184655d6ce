"""Exterior powers of V and Koszul differentials.

The basis of Λ^p V is the list of increasing index tuples in lexicographic
order.  One sign convention is used throughout the package: the Koszul
differential deletes the j-th index (counting from 0) with sign (-1)^j,

    d(e_{a_0 ... a_{p-1}} ⊗ f) = Σ_j (-1)^j e_{a_0 .. â_j .. a_{p-1}} ⊗ x_{a_j} f,

and the contraction ι_i removes i from a wedge with the sign of its
position.  With these choices ``d = Σ_i x_i ι_i`` and the ι_i anticommute.

Elements of Λ^p V ⊗ P are stored as ``C(n, p) x dim P`` arrays, one row
per wedge basis element.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import exactla as la
from .polyring import graded_dim, multiply_by_variable, shift_table, substitution_matrix


@lru_cache(maxsize=None)
def wedge_basis(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def wedge_index(n: int, p: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(wedge_basis(n, p))}


def sort_sign(seq) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` and the sorted tuple; 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, tuple(sorted(seq))
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def shuffle_sign(a, b) -> int:
    """ε(A, B): the sign with e_A ∧ e_B = ε(A, B) e_{A ∪ B}."""
    return sort_sign(tuple(a) + tuple(b))[0]


@lru_cache(maxsize=None)
def contraction_table(n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """For ι_i: Λ^p → Λ^{p-1}: ``(target, sign)`` arrays of shape (n, C(n, p)).

    ``target`` is -1 where i is not in the wedge (the contraction is zero).
    """
    tgt = -np.ones((n, comb(n, p)), dtype=np.int64)
    sgn = np.zeros((n, comb(n, p)), dtype=np.int64)
    lower = wedge_index(n, p - 1)
    for col, a in enumerate(wedge_basis(n, p)):
        for pos, i in enumerate(a):
            tgt[i, col] = lower[a[:pos] + a[pos + 1:]]
            sgn[i, col] = -1 if pos % 2 else 1
    tgt.flags.writeable = False
    sgn.flags.writeable = False
    return tgt, sgn


def contract(s, i: int, n: int, p: int, mod: int) -> np.ndarray:
    """ι_i applied to ``s`` in Λ^p V ⊗ P (shape ``C(n,p) x dim P``)."""
    s = np.asarray(s, dtype=np.int64)
    tgt, sgn = contraction_table(n, p)
    out = np.zeros((comb(n, p - 1), s.shape[1]), dtype=np.int64)
    cols = np.flatnonzero(tgt[i] >= 0)
    out[tgt[i, cols]] = s[cols] * sgn[i, cols][:, None]
    return out % mod


def contract_all(s, n: int, p: int, mod: int) -> np.ndarray:
    """Stack of ι_0 s, ..., ι_{n-1} s with shape ``(n, C(n,p-1), dim P)``."""
    return np.stack([contract(s, i, n, p, mod) for i in range(n)])


def koszul_matrix(n: int, p: int, mult, mod: int) -> np.ndarray:
    """Matrix of d: Λ^p V ⊗ P → Λ^{p-1} V ⊗ R for column vectors.

    ``mult`` holds ``n`` matrices of shape ``(dim P, dim R)``; row ``f`` of
    ``mult[i]`` is the image of the ``f``-th payload basis vector under
    multiplication by ``x_i``.  Coordinates are flattened wedge-major, so
    the result has ``C(n,p-1)*dim R`` rows and ``C(n,p)*dim P`` columns.
    """
    if not 1 <= p <= n:
        raise ValueError("need 1 <= p <= n")
    mult = [np.asarray(m, dtype=np.int64) % mod for m in mult]
    if len(mult) != n:
        raise ValueError(f"need {n} multiplication matrices")
    shapes = {m.shape for m in mult}
    if len(shapes) != 1:
        raise ValueError("multiplication matrices have inconsistent shapes")
    (pd, rd), = shapes
    out = np.zeros((comb(n, p - 1) * rd, comb(n, p) * pd), dtype=np.int64)
    lower = wedge_index(n, p - 1)
    for col, a in enumerate(wedge_basis(n, p)):
        for j, i in enumerate(a):
            row = lower[a[:j] + a[j + 1:]]
            block = mult[i].T if j % 2 == 0 else (-mult[i].T)
            out[row * rd:(row + 1) * rd, col * pd:(col + 1) * pd] = block % mod
    return out


def polynomial_mult(n: int, d: int, mod: int, payload=None) -> list[np.ndarray]:
    """Multiplication-by-x_i matrices from a subspace of S_d (rows) into S_{d+1}."""
    if payload is None:
        payload = np.eye(graded_dim(n, d), dtype=np.int64)
    payload = np.asarray(payload, dtype=np.int64)
    return [multiply_by_variable(payload, i, n, d) % mod for i in range(n)]


def koszul_apply(s, n: int, p: int, d: int, mod: int) -> np.ndarray:
    """d(s) for ``s`` in Λ^p V ⊗ S_d given as a ``C(n,p) x dim S_d`` array."""
    s = np.asarray(s, dtype=np.int64) % mod
    out = np.zeros((comb(n, p - 1), graded_dim(n, d + 1)), dtype=np.int64)
    table = shift_table(n, d)
    for i in range(n):
        t = contract(s, i, n, p, mod)
        np.add.at(out, (slice(None), table[i]), t)
    return out % mod


def compound(m, p: int, mod: int) -> np.ndarray:
    """p-th compound matrix: entry (A, B) is det m[A, B] (lexicographic bases).

    With the substitution convention ``x = M y`` this is also the matrix of
    Λ^p of the pullback, acting on rows.
    """
    m = np.asarray(m, dtype=np.int64) % mod
    rows, cols = m.shape
    if p == 0:
        return np.ones((1, 1), dtype=np.int64)
    if p > min(rows, cols):
        return np.zeros((comb(rows, p), comb(cols, p)), dtype=np.int64)
    prev = m
    for t in range(2, p + 1):
        ra = wedge_basis(rows, t)
        cb = wedge_basis(cols, t)
        rlow = wedge_index(rows, t - 1)
        clow = wedge_index(cols, t - 1)
        first = np.array([a[0] for a in ra], dtype=np.int64)
        rest = np.array([rlow[a[1:]] for a in ra], dtype=np.int64)
        cur = np.zeros((len(ra), len(cb)), dtype=np.int64)
        for k in range(t):
            bk = np.array([b[k] for b in cb], dtype=np.int64)
            brest = np.array([clow[b[:k] + b[k + 1:]] for b in cb], dtype=np.int64)
            term = m[np.ix_(first, bk)] * prev[np.ix_(rest, brest)] % mod
            cur = cur + term if k % 2 == 0 else cur - term
        prev = cur % mod
    return prev


def push(s, m, p: int, d: int, mod: int) -> np.ndarray:
    """Image of ``s`` in Λ^p ⊗ S_d under the substitution ``x = M y``."""
    wedge = compound(m, p, mod)
    sym = substitution_matrix(m, d, mod)
    s = np.asarray(s, dtype=np.int64) % mod
    return la.matmul(la.matmul(wedge.T, s, mod), sym, mod)
