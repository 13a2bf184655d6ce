"""Reading and writing ideals and syzygies.

Two ideal formats round-trip:

JSON::

    {"p": 101, "n_vars": 3, "variables": ["x0", "x1", "x2"],
     "quadrics": [[{"exps": [1, 1, 0], "c": 3}, ...], ...]}

Text: one polynomial per line such as ``3*x0*x1 - x2^2``.  ``#`` starts a
comment; comment lines of the form ``#! p=101`` and ``#! variables: a b c``
set the prime and the variable order.  Without a variables line, names
``x<i>`` fix the number of variables by the largest index and any other
names are taken in order of first appearance.
"""

from __future__ import annotations

import hashlib
import json
import re

import numpy as np

from . import exactla as la
from .errors import ParseError
from .polyring import QuadricIdeal, exponents_to_index, graded_dim, monomials
from .syzygy import Syzygy

SYZYGY_BASIS_TAG = "wedge×quadric canonical"


def symmetric(c: int, p: int) -> int:
    c = int(c) % p
    return c - p if c > p // 2 else c


def ideal_to_dict(ideal: QuadricIdeal) -> dict:
    mons = monomials(ideal.n_vars, 2)
    quads = []
    for row in ideal.basis:
        quads.append([{"exps": list(mons[j]), "c": symmetric(row[j], ideal.p)} for j in np.flatnonzero(row)])
    return {"p": ideal.p, "n_vars": ideal.n_vars, "variables": list(ideal.variables), "quadrics": quads}


def ideal_hash(ideal: QuadricIdeal) -> str:
    blob = json.dumps(ideal_to_dict(ideal), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _require(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def _prime(value) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), "'p' must be an integer")
    try:
        la.PrimeField(value)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return value


def ideal_from_dict(doc, p: int | None = None) -> QuadricIdeal:
    _require(isinstance(doc, dict), "ideal document must be a JSON object")
    for key in ("n_vars", "quadrics"):
        _require(key in doc, f"ideal document lacks '{key}'")
    prime = _prime(doc.get("p", p if p is not None else la.DEFAULT_PRIME))
    n = doc["n_vars"]
    _require(isinstance(n, int) and n >= 1, "'n_vars' must be a positive integer")
    names = doc.get("variables") or [f"x{i}" for i in range(n)]
    _require(isinstance(names, list) and len(names) == n and all(isinstance(v, str) for v in names),
             "'variables' must list n_vars names")
    _require(len(set(names)) == n, "variable names must be distinct")
    quads = doc["quadrics"]
    _require(isinstance(quads, list), "'quadrics' must be a list")
    rows = np.zeros((len(quads), graded_dim(n, 2)), dtype=np.int64)
    for r, q in enumerate(quads):
        _require(isinstance(q, list), f"quadric {r} must be a list of terms")
        for term in q:
            _require(isinstance(term, dict) and "exps" in term and "c" in term,
                     f"quadric {r}: each term needs 'exps' and 'c'")
            exps, c = term["exps"], term["c"]
            _require(isinstance(exps, list) and len(exps) == n
                     and all(isinstance(e, int) and e >= 0 for e in exps),
                     f"quadric {r}: 'exps' must be {n} non-negative integers")
            _require(isinstance(c, int) and not isinstance(c, bool), f"quadric {r}: 'c' must be an integer")
            deg, idx = exponents_to_index(exps)
            _require(deg == 2, f"quadric {r}: term of degree {deg}")
            rows[r, idx] = (rows[r, idx] + c) % prime
    return QuadricIdeal.from_rows(rows, n, prime, tuple(names))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))")


def _tokens(line: str, lineno: int):
    pos = 0
    out = []
    line = line.rstrip()
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m or m.end() == pos:
            raise ParseError(f"line {lineno}: unexpected character {line[pos:].strip()[:1]!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
    return out


def _parse_poly(tokens, lineno: int) -> list[tuple[int, dict[str, int]]]:
    """Terms of a polynomial as (coefficient, {name: exponent})."""
    terms = []
    i = 0
    expect_term = True
    sign = 1
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            expect_term = True
            sign = sign * (-1 if val == "-" else 1)
            i += 1
            continue
        if not expect_term:
            raise ParseError(f"line {lineno}: missing operator before {val!r}")
        coeff = 1
        powers: dict[str, int] = {}
        while True:
            kind, val = tokens[i]
            if kind == "num":
                coeff *= int(val)
                i += 1
            elif kind == "name":
                i += 1
                e = 1
                if i < len(tokens) and tokens[i] == ("op", "^"):
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num":
                        raise ParseError(f"line {lineno}: '^' must be followed by an integer")
                    e = int(tokens[i + 1][1])
                    i += 2
                powers[val] = powers.get(val, 0) + e
            else:
                raise ParseError(f"line {lineno}: unexpected {val!r}")
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
                if i >= len(tokens):
                    raise ParseError(f"line {lineno}: dangling '*'")
                continue
            if i < len(tokens) and tokens[i][0] in ("num", "name"):
                continue  # juxtaposition, as in 3x0
            break
        terms.append((sign * coeff, powers))
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"line {lineno}: incomplete polynomial")
    return terms


def ideal_from_text(text: str, p: int | None = None) -> QuadricIdeal:
    prime = p
    names: list[str] | None = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#!"):
            body = stripped[2:].strip()
            if body.startswith("p="):
                try:
                    prime = int(body[2:].strip())
                except ValueError:
                    raise ParseError(f"line {lineno}: bad prime directive") from None
            elif body.startswith("variables:"):
                names = [v for v in re.split(r"[,\s]+", body[len("variables:"):].strip()) if v]
            continue
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        polys.append((lineno, _parse_poly(_tokens(line, lineno), lineno)))
    prime = _prime(prime if prime is not None else la.DEFAULT_PRIME)
    if names is None:
        seen: list[str] = []
        for _, terms in polys:
            for _, powers in terms:
                for v in powers:
                    if v not in seen:
                        seen.append(v)
        if seen and all(re.fullmatch(r"x\d+", v) for v in seen):
            names = [f"x{i}" for i in range(max(int(v[1:]) for v in seen) + 1)]
        else:
            names = seen
    if not names:
        raise ParseError("no variables found")
    if len(set(names)) != len(names):
        raise ParseError("variable names must be distinct")
    index = {v: i for i, v in enumerate(names)}
    n = len(names)
    rows = np.zeros((len(polys), graded_dim(n, 2)), dtype=np.int64)
    for r, (lineno, terms) in enumerate(polys):
        for c, powers in terms:
            exps = [0] * n
            for v, e in powers.items():
                if v not in index:
                    raise ParseError(f"line {lineno}: unknown variable {v!r}")
                exps[index[v]] += e
            deg, idx = exponents_to_index(exps)
            if deg != 2:
                raise ParseError(f"line {lineno}: term of degree {deg}; only quadrics are accepted")
            rows[r, idx] = (rows[r, idx] + c) % prime
    return QuadricIdeal.from_rows(rows, n, prime, tuple(names))


def format_poly(row, names, d: int, p: int) -> str:
    n = len(names)
    parts = []
    for j in np.flatnonzero(np.asarray(row) % p):
        c = symmetric(row[j], p)
        exps = monomials(n, d)[j]
        factors = []
        for v, e in zip(names, exps):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def ideal_to_text(ideal: QuadricIdeal) -> str:
    lines = [f"#! p={ideal.p}", "#! variables: " + " ".join(ideal.variables)]
    lines += [format_poly(row, ideal.variables, 2, ideal.p) for row in ideal.basis]
    return "\n".join(lines) + "\n"


def parse_ideal(text: str, p: int | None = None) -> QuadricIdeal:
    """Parse either format; a JSON report carrying an ``ideal`` entry is also accepted."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if isinstance(doc, dict) and "quadrics" not in doc:
            inner = doc.get("ideal")
            if inner is None and isinstance(doc.get("results"), dict):
                inner = doc["results"].get("ideal")
            if inner is None:
                raise ParseError("JSON document carries no ideal")
            doc = inner
        return ideal_from_dict(doc, p)
    return ideal_from_text(text, p)


def syzygy_to_dict(s: Syzygy) -> dict:
    return {
        "p": s.p,
        "prime": s.ideal.p,
        "coeffs": [int(c) for c in s.flat()],
        "basis": SYZYGY_BASIS_TAG,
        "ideal_hash": ideal_hash(s.ideal),
    }


def syzygy_from_dict(doc, ideal: QuadricIdeal) -> Syzygy:
    _require(isinstance(doc, dict), "syzygy document must be a JSON object")
    if "syzygy" in doc and "coeffs" not in doc:
        doc = doc["syzygy"]
    elif isinstance(doc.get("results"), dict) and "syzygy" in doc["results"]:
        doc = doc["results"]["syzygy"]
    for key in ("p", "coeffs"):
        _require(key in doc, f"syzygy document lacks '{key}'")
    _require(doc.get("basis", SYZYGY_BASIS_TAG) == SYZYGY_BASIS_TAG, "unknown syzygy basis tag")
    h = doc.get("ideal_hash")
    if h is not None and h != ideal_hash(ideal):
        raise ParseError("syzygy refers to a different ideal (hash mismatch)")
    hom = doc["p"]
    _require(isinstance(hom, int) and hom >= 0, "'p' must be a non-negative integer")
    coeffs = doc["coeffs"]
    _require(isinstance(coeffs, list) and all(isinstance(c, int) for c in coeffs), "'coeffs' must be integers")
    return Syzygy(ideal, hom, np.array(coeffs, dtype=np.int64))
