"""Dense exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` integer arrays with entries in ``[0, p)``.
Elimination is blocked: pivots are searched inside column panels with
ordinary row operations, and the trailing update of each panel is one
floating point matrix product, which is exact as long as
``width * (p - 1)**2 < 2**53``.  The panel width is chosen per prime so
that bound always holds.

Echelon forms are canonical (first nonzero entry is the pivot, rows in
order of pivot column), so every output here is reproducible byte for
byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NoSolution

DEFAULT_PRIME = 101
MAX_PRIME = 2**26

_EXACT_FLOAT = 2**53


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime ``p < 2**26``."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"{self.p!r} is not a prime")
        if self.p >= MAX_PRIME:
            raise ValueError(f"prime {self.p} too large; need p < 2**26")

    def array(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def rank(self, m) -> int:
        return rank(m, self.p)

    def rref(self, m):
        return rref(m, self.p)

    def rank_kernel(self, m):
        return rank_kernel(m, self.p)

    def solve(self, m, b):
        return solve(m, b, self.p)


@lru_cache(maxsize=None)
def _panel_width(p: int) -> int:
    w = (_EXACT_FLOAT - 1) // ((p - 1) ** 2)
    return int(max(1, min(128, w)))


@lru_cache(maxsize=None)
def _exact_depth(p: int) -> int:
    return int(max(1, (_EXACT_FLOAT - 1) // ((p - 1) ** 2)))


def _mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for reduced operands, exact for any inner dimension."""
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = _exact_depth(p)
    if k <= step:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.fmod(prod, p).astype(np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, step):
        prod = a[:, s:s + step].astype(np.float64) @ b[s:s + step].astype(np.float64)
        out += np.fmod(prod, p).astype(np.int64)
        out %= p
    return out


def matmul(a, b, p: int) -> np.ndarray:
    """Product of two matrices over F_p."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    return _mulmod(a, b, p)


_BASE_WIDTH = 16


def _eliminate_columns(a: np.ndarray, r: int, c0: int, c1: int, p: int) -> tuple[list[int], list[int]]:
    """Per-pivot elimination restricted to columns ``[c0, c1)`` of rows ``r:``."""
    panel = a[r:, c0:c1]
    rows, width = panel.shape
    local: list[int] = []
    invs: list[int] = []
    k = 0
    for j in range(width):
        if k == rows:
            break
        nz = np.flatnonzero(panel[k:, j])
        if nz.size == 0:
            continue
        i = k + int(nz[0])
        if i != k:
            a[[r + k, r + i]] = a[[r + i, r + k]]
        inv = pow(int(panel[k, j]), p - 2, p)
        invs.append(inv)
        panel[k, j:] = panel[k, j:] * inv % p
        below = np.flatnonzero(panel[k + 1:, j]) + k + 1
        if below.size and j + 1 < width:
            f = panel[below, j]
            panel[below, j + 1:] = (panel[below, j + 1:] - np.outer(f, panel[k, j + 1:])) % p
        local.append(c0 + j)
        k += 1
    return local, invs


def _apply_pivots(lower: np.ndarray, invs: list[int], trail: np.ndarray, p: int) -> None:
    """Replay a factored panel's row operations on other columns, in place.

    ``lower[t, :t]`` holds the multipliers that eliminated row ``t`` and
    ``lower[k:, :k]`` those of the non-pivot rows.
    """
    k = len(invs)
    tri = np.tril(lower[:k, :k], -1)
    tri[np.arange(k), np.arange(k)] = [pow(v, p - 2, p) for v in invs]
    op = _lower_inverse(tri, p)
    top = _mulmod(op, trail[:k], p)
    if trail.shape[0] > k:
        trail[k:] = (trail[k:] - _mulmod(lower[k:, :k], top, p)) % p
    trail[:k] = top


def _factor(a: np.ndarray, r: int, c0: int, c1: int, p: int) -> tuple[list[int], list[int]]:
    """Recursive panel factorization; multipliers stay below the pivots."""
    if r >= a.shape[0]:
        return [], []
    if c1 - c0 <= _BASE_WIDTH:
        return _eliminate_columns(a, r, c0, c1, p)
    cm = (c0 + c1) // 2
    piv1, inv1 = _factor(a, r, c0, cm, p)
    if piv1:
        _apply_pivots(a[r:, piv1], inv1, a[r:, cm:c1], p)
    piv2, inv2 = _factor(a, r + len(piv1), cm, c1, p)
    return piv1 + piv2, inv1 + inv2


def _forward(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon form with unit pivots; returns (pivot rows, pivot columns).

    ``a`` is consumed (modified in place).
    """
    m, n = a.shape
    w = max(_BASE_WIDTH, 8 * _panel_width(p))
    r = 0
    pivots: list[int] = []
    c0 = 0
    while c0 < n and r < m:
        c1 = min(n, c0 + w)
        piv, invs = _factor(a, r, c0, c1, p)
        k = len(piv)
        if k:
            lower = a[r:, piv].copy()
            for t, j in enumerate(piv):
                a[r + t + 1:, j] = 0
            if c1 < n:
                _apply_pivots(lower, invs, a[r:, c1:], p)
            pivots.extend(piv)
            r += k
        c0 = c1
    return a[:r].copy(), pivots


def _lower_inverse(t: np.ndarray, p: int) -> np.ndarray:
    """Inverse of an invertible lower triangular matrix, by 2x2 blocks."""
    k = t.shape[0]
    if k <= 32:
        inv = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            row = np.zeros(k, dtype=np.int64)
            row[i] = 1
            if i:
                row[:i] = -(t[i, :i] @ inv[:i, :i]) % p
            inv[i] = row * pow(int(t[i, i]), p - 2, p) % p
        return inv
    h = k // 2
    a_inv = _lower_inverse(t[:h, :h], p)
    c_inv = _lower_inverse(t[h:, h:], p)
    out = np.zeros((k, k), dtype=np.int64)
    out[:h, :h] = a_inv
    out[h:, h:] = c_inv
    out[h:, :h] = (-_mulmod(c_inv, _mulmod(t[h:, :h], a_inv, p), p)) % p
    return out


def _unit_upper_inverse(t: np.ndarray, p: int) -> np.ndarray:
    return np.ascontiguousarray(_lower_inverse(np.ascontiguousarray(t.T), p).T)


def _backward(u: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Turn a unit-pivot row echelon form into the reduced one, in place."""
    r = len(pivots)
    w = 8 * _panel_width(p)
    piv = np.asarray(pivots, dtype=np.int64)
    end = r
    while end > 0:
        start = max(0, end - w)
        block = u[start:end]
        block[:] = _mulmod(_unit_upper_inverse(block[:, piv[start:end]], p), block, p)
        if start:
            f = u[:start, piv[start:end]].copy()
            u[:start] = (u[:start] - _mulmod(f, block, p)) % p
        end = start
    return u


def _prepare(m, p: int) -> np.ndarray:
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    a %= p
    return a


def echelon(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon basis of the row space (unit pivots, not reduced)."""
    return _forward(_prepare(m, p), p)


def rank(m, p: int) -> int:
    a = _prepare(m, p)
    if a.size == 0:
        return 0
    # elimination is cheaper along the short side
    if a.shape[0] > a.shape[1]:
        a = np.ascontiguousarray(a.T)
    return len(_forward(a, p)[1])


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of the row space: (nonzero rows, pivot columns)."""
    a = _prepare(m, p)
    if a.size == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    u, piv = _forward(a, p)
    return _backward(u, piv, p), piv


def kernel_from_rref(r: np.ndarray, pivots: list[int], n: int, p: int) -> np.ndarray:
    taken = set(pivots)
    free = [j for j in range(n) if j not in taken]
    k = np.zeros((len(free), n), dtype=np.int64)
    if free:
        k[np.arange(len(free)), free] = 1
        if pivots:
            k[:, pivots] = (-r[:, free].T) % p
    return k


def rank_kernel(m, p: int) -> tuple[int, np.ndarray]:
    """Rank and canonical (reduced echelon) basis of the right kernel of ``m``.

    The kernel basis rows ``x`` satisfy ``m @ x == 0 (mod p)``.
    """
    a = _prepare(m, p)
    n = a.shape[1]
    if a.shape[0] == 0 or n == 0:
        return 0, np.eye(n, dtype=np.int64)
    r, piv = rref(a, p)
    k = kernel_from_rref(r, piv, n, p)
    if k.shape[0]:
        k, _ = rref(k, p)
    return len(piv), k


def solve(m, b, p: int) -> np.ndarray:
    """One solution ``x`` of ``m @ x == b`` with all free variables zero.

    ``b`` may be a vector or a matrix of right hand sides; raises
    :class:`NoSolution` when any column is inconsistent.
    """
    a = _prepare(m, p)
    bb = np.asarray(b, dtype=np.int64) % p
    vector = bb.ndim == 1
    if vector:
        bb = bb[:, None]
    if bb.shape[0] != a.shape[0]:
        raise ValueError("right hand side has the wrong number of rows")
    n = a.shape[1]
    aug = np.concatenate([a, bb], axis=1)
    r, piv = rref(aug, p)
    if piv and piv[-1] >= n:
        raise NoSolution("inconsistent linear system")
    x = np.zeros((n, bb.shape[1]), dtype=np.int64)
    if piv:
        x[piv] = r[:, n:]
    return x[:, 0] if vector else x


def inverse(m, p: int) -> np.ndarray:
    a = _prepare(m, p)
    if a.shape[0] != a.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    try:
        x = solve(a, np.eye(a.shape[0], dtype=np.int64), p)
    except NoSolution:
        raise ZeroDivisionError("matrix is singular") from None
    if rank(a, p) != a.shape[0]:
        raise ZeroDivisionError("matrix is singular")
    return x


def coordinates(basis: np.ndarray, pivots: list[int], v, p: int, check: bool = True) -> np.ndarray:
    """Coordinates of the rows of ``v`` in a reduced echelon basis.

    For a reduced basis the coordinates are just the entries at the pivot
    columns.  With ``check`` the reconstruction is verified and a
    :class:`NoSolution` is raised for vectors outside the span.
    """
    v = np.asarray(v, dtype=np.int64) % p
    single = v.ndim == 1
    vv = v[None, :] if single else v
    c = vv[:, pivots] if pivots else np.zeros((vv.shape[0], 0), dtype=np.int64)
    if check:
        back = _mulmod(c, basis, p) if pivots else np.zeros_like(vv)
        if not np.array_equal(back, vv):
            raise NoSolution("vector is not in the span of the basis")
    return c[0] if single else c


def in_span(basis: np.ndarray, pivots: list[int], v, p: int) -> bool:
    try:
        coordinates(basis, pivots, v, p)
    except NoSolution:
        return False
    return True


def random_invertible(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    while True:
        g = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if rank(g, p) == n:
            return g


def random_full_rank(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    while True:
        g = rng.integers(0, p, size=(rows, cols), dtype=np.int64)
        if rank(g, p) == min(rows, cols):
            return g
