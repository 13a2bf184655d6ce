"""Command-line front end.

Every subcommand prints one JSON report (or aligned text with ``--text``)::

    {"command": ..., "inputs": {...}, "results": {...},
     "timings": null, "artifact_version": ...}

Timings are collected only with ``--timings`` so that default output is
byte-for-byte reproducible.  Failures print ``{"error": {...}}`` and exit
with 2 (bad input), 3 (missing file), 4 (degenerate section) or
5 (budget refusal).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

import numpy as np

from . import __version__
from . import bott, gensyz, grass, rep
from . import exactla as la
from . import io as sio
from .errors import BudgetExceeded, SyzkitError
from .polyring import QuadricIdeal, restrict_to_subspace
from .syzygy import (
    current_budget,
    linear_strand,
    push_syzygy,
    rank_locus_probe,
    restrict_syzygies,
    syzygy_rank,
    syzygy_scheme_ideal,
)


class UsageError(SyzkitError):
    exit_code = 2
    kind = "usage_error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = round((time.perf_counter() - start) * 1000.0, 3)

    def report(self):
        return self.stages if self.enabled else None


# ---------------------------------------------------------------- inputs

def _read_source(path: str, stdin) -> str:
    if path == "-":
        return (stdin or sys.stdin).read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


class _Sources:
    """Reads each path at most once, so ``--ideal - --syzygy -`` share stdin."""

    def __init__(self, stdin):
        self.stdin = stdin
        self.cache: dict[str, str] = {}

    def text(self, path: str) -> str:
        if path not in self.cache:
            self.cache[path] = _read_source(path, self.stdin)
        return self.cache[path]


def _load_ideal(args, src: _Sources) -> QuadricIdeal:
    return sio.parse_ideal(src.text(args.ideal), args.p)


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise sio.ParseError(f"{what} must be comma separated integers, got {text!r}") from None


def _load_syzygy(args, ideal: QuadricIdeal, src: _Sources):
    chosen = [x is not None for x in (args.syzygy, args.element, args.coords)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --syzygy, --element P:I or --coords P:c0,c1,...")
    if args.syzygy is not None:
        try:
            doc = json.loads(src.text(args.syzygy))
        except json.JSONDecodeError as exc:
            raise sio.ParseError(f"invalid syzygy JSON: {exc}") from None
        return sio.syzygy_from_dict(doc, ideal)
    spec = args.element if args.element is not None else args.coords
    head, sep, tail = spec.partition(":")
    if not sep:
        raise sio.ParseError(f"expected P:..., got {spec!r}")
    hom = _int_list(head, "homological index")
    if len(hom) != 1 or hom[0] < 0:
        raise sio.ParseError("homological index must be one non-negative integer")
    strand = linear_strand(ideal, hom[0])
    dim = strand.space(hom[0]).dim
    if args.element is not None:
        idx = _int_list(tail, "element index")
        if len(idx) != 1 or not 0 <= idx[0] < dim:
            raise sio.ParseError(f"element index must lie in [0, {dim})")
        coords = np.zeros(dim, dtype=np.int64)
        coords[idx[0]] = 1
    else:
        coords = np.array(_int_list(tail, "coordinates"), dtype=np.int64)
        if coords.shape != (dim,):
            raise sio.ParseError(f"V_{hom[0]} has dimension {dim}, got {coords.size} coordinates")
    return strand.element(hom[0], coords)


def _ideal_source(args, ideal: QuadricIdeal) -> dict:
    return {"ideal": args.ideal, "ideal_hash": sio.ideal_hash(ideal)}


def _write_ideal(path: str | None, ideal: QuadricIdeal):
    if path is None:
        return
    if path.endswith(".json"):
        body = json.dumps(sio.ideal_to_dict(ideal), sort_keys=True) + "\n"
    else:
        body = sio.ideal_to_text(ideal)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)


def _forms(space, names) -> list[str]:
    return [sio.format_poly(row, names, 1, space.p) for row in space.basis]


def _matrix_text(m) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in np.atleast_2d(m))


# -------------------------------------------------------------- commands

def cmd_strand(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
    with clock.stage("strand"):
        strand = linear_strand(ideal, args.pmax)
    return _ideal_source(args, ideal) | {"pmax": args.pmax}, {
        "n_vars": ideal.n_vars,
        "n_quadrics": ideal.n_quadrics,
        "dims": list(strand.dims),
        "complete": strand.complete,
    }


def cmd_rank(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
        s = _load_syzygy(args, ideal, src)
    with clock.stage("rank"):
        r, forms = syzygy_rank(s)
    return _ideal_source(args, ideal) | _syz_inputs(args), {
        "p": s.p,
        "rank": r,
        "minimal_possible": s.p + 1 if not s.is_zero() else 0,
        "forms": _forms(forms, ideal.variables),
        "forms_matrix": forms.basis.tolist(),
        "regime": gensyz.regime_of(s.p, r).value if r >= s.p + 1 else None,
    }


def cmd_scheme(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
        s = _load_syzygy(args, ideal, src)
    with clock.stage("scheme"):
        span = syzygy_scheme_ideal(s)
    return _ideal_source(args, ideal) | _syz_inputs(args), {
        "p": s.p,
        "dim": span.dim,
        "quadrics": [sio.format_poly(q, ideal.variables, 2, ideal.p) for q in span.basis],
        "ideal": sio.ideal_to_dict(QuadricIdeal(span, ideal.variables)),
    }


def _syz_inputs(args) -> dict:
    return {"syzygy": args.syzygy, "element": args.element, "coords": args.coords}


def cmd_restrict(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
    n = ideal.n_vars
    if args.substitution is not None:
        try:
            m = np.array(json.loads(src.text(args.substitution)), dtype=np.int64)
        except (json.JSONDecodeError, ValueError, TypeError):
            raise sio.ParseError("substitution must be a JSON list of integer rows") from None
        if m.ndim != 2 or m.shape[0] != n or m.shape[1] >= n:
            raise sio.ParseError(f"substitution must be {n} x m with m < {n}")
    else:
        if not 1 <= args.codim < n:
            raise UsageError(f"--codim must lie in [1, {n - 1}]")
        m = la.random_full_rank(np.random.default_rng(args.seed), n, n - args.codim, ideal.p)
    with clock.stage("strand"):
        strand = linear_strand(ideal, args.pmax)
    maps = []
    restricted = None
    with clock.stage("restrict"):
        restricted = restrict_to_subspace(ideal, m)
        for hom in range(1, min(args.pmax, len(strand.spaces) - 1) + 1):
            res = restrict_syzygies(strand, m, hom)
            maps.append({"p": hom, "shape": list(res.map_matrix.shape), "injective": res.injective})
        target_dims = list(linear_strand(restricted, args.pmax).dims)
    _write_ideal(args.out, restricted)
    return _ideal_source(args, ideal) | {"pmax": args.pmax, "codim": n - m.shape[1],
                                         "substitution": args.substitution}, {
        "substitution": m.tolist(),
        "source_dims": list(strand.dims),
        "target_dims": target_dims,
        "maps": maps,
        "ideal": sio.ideal_to_dict(restricted),
    }


def cmd_ranklocus(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
    with clock.stage("strand"):
        strand = linear_strand(ideal, args.hom)
    budget = args.budget if args.budget is not None else current_budget()
    with clock.stage("probe"):
        report = rank_locus_probe(strand, args.hom, args.r, args.dmax, budget,
                                  np.random.default_rng(args.seed))
    return _ideal_source(args, ideal) | {"hom": args.hom, "r": args.r, "dmax": args.dmax, "budget": budget}, \
        report.as_dict()


def cmd_gensyz(args, src, clock):
    with clock.stage("model"):
        model = gensyz.gensyz_equations(args.hom, args.r, args.p)
        s_gen = gensyz.make_generic_syzygy(model)
        spans = gensyz.scheme_spans_model(model)
    results = {
        "regime": model.regime.value,
        "variables": list(model.variables),
        "n_equations": model.equations.n_quadrics,
        "equations": [sio.format_poly(q, model.variables, 2, args.p) for q in model.equation_rows],
        "generic_syzygy_is_cycle": s_gen.checked,
        "scheme_spans_equations": spans,
        "ideal": sio.ideal_to_dict(model.equations),
    }
    if args.points:
        rng = np.random.default_rng(args.seed)
        counts: dict[str, int] = {}
        with clock.stage("classify"):
            for i in range(args.points):
                x = gensyz.random_solution_point(model, rng, l_zero=(i % 4 == 0))
                try:
                    c = gensyz.classify_point(model, x).value
                except ValueError:
                    c = "unclassified"
                counts[c] = counts.get(c, 0) + 1
        results["point_classes"] = dict(sorted(counts.items()))
    return {"hom": args.hom, "r": args.r, "points": args.points}, results


def cmd_lift(args, src, clock):
    with clock.stage("parse"):
        ideal = _load_ideal(args, src)
        s = _load_syzygy(args, ideal, src)
    with clock.stage("lift"):
        pmap = gensyz.lift_projection(None, s)
    pulled_nonzero = int(np.count_nonzero(pmap.pulled_back.any(axis=1)))
    return _ideal_source(args, ideal) | _syz_inputs(args), {
        "p": s.p,
        "rank": pmap.forms.dim,
        "regime": pmap.model.regime.value,
        "model_variables": list(pmap.model.variables),
        "projection": pmap.matrix.tolist(),
        "projection_text": _matrix_text(pmap.matrix),
        "projection_rank": la.rank(pmap.matrix, ideal.p),
        "gauge_dim": pmap.gauge_dim,
        "pulled_back_equations": [sio.format_poly(q, ideal.variables, 2, ideal.p) for q in pmap.pulled_back],
        "pulled_back_nonzero": pulled_nonzero,
        "pulled_back_in_ideal": all(ideal.quadrics.contains(q) for q in pmap.pulled_back),
        "reproduces_syzygy": bool(np.array_equal(pmap.pulled_back_syzygy(), s.full())),
    }


def cmd_grass(args, src, clock):
    with clock.stage("ideal"):
        ideal = grass.pluecker_ideal(args.n, args.p)
    results = {
        "n": args.n,
        "n_vars": ideal.n_vars,
        "n_quadrics": ideal.n_quadrics,
        "expected_strand": list(rep.grass_strand_dims(args.n)) if args.n >= 4 else None,
        "ideal": sio.ideal_to_dict(ideal),
    }
    if args.minimal_u is not None:
        u = _int_list(args.minimal_u, "--minimal-u")
        with clock.stage("minimal_syzygy"):
            s = grass.minimal_syzygy(args.n, u, ideal)
            r, forms = syzygy_rank(s)
        results["syzygy"] = sio.syzygy_to_dict(s)
        results["syzygy_rank"] = r
        results["syzygy_forms"] = _forms(forms, ideal.variables)
    _write_ideal(args.out, ideal)
    return {"n": args.n, "minimal_u": args.minimal_u}, results


def cmd_mukai(args, src, clock):
    with clock.stage("section"):
        sec = grass.mukai_section(args.k, args.kind, args.seed, args.p, args.attempts)
    results = sec.as_dict() | {"ideal": sio.ideal_to_dict(sec.result)}
    if args.track_u is not None:
        u = _int_list(args.track_u, "--track-u")
        with clock.stage("track"):
            s = push_syzygy(grass.minimal_syzygy(args.k + 2, u, sec.ambient), sec.substitution, sec.result)
            r, _ = syzygy_rank(s)
        results["syzygy"] = sio.syzygy_to_dict(s)
        results["syzygy_rank"] = r
    if args.pmax is not None:
        with clock.stage("strand"):
            results["dims"] = list(linear_strand(sec.result, args.pmax).dims)
    _write_ideal(args.out, sec.result)
    return {"k": args.k, "kind": sec.kind.value, "attempts": args.attempts,
            "track_u": args.track_u, "pmax": args.pmax}, results


def cmd_dualdeg(args, src, clock):
    with clock.stage("probe"):
        report = grass.dual_orthogonal_degree(args.k, args.kind, args.seed, args.dmax, args.p)
    return {"k": args.k, "kind": report.kind.value, "dmax": args.dmax}, report.as_dict()


def cmd_counts(args, src, clock):
    table = rep.count_table(args.k)
    g = 2 * args.k
    strand = [rep.expected_strand_dim(g, q) for q in range(g - 2)]
    return {"k": args.k}, table.as_dict() | {"genus": g, "expected_curve_strand": strand}


def cmd_bott(args, src, clock):
    if args.corollary:
        if args.k is None:
            raise UsageError("--corollary needs --k")
        table = bott.corollary_table(args.k)
        return {"corollary": True, "k": args.k}, {
            "k": args.k,
            "holds": bott.corollary_holds(args.k),
            "table": [{"j": j, "weight": list(bott.en_term_weight(args.k, j)), **res.as_dict(),
                       "summary": str(res)} for j, res in table],
        }
    if args.weight is None:
        raise UsageError("give --weight or --corollary --k K")
    weight = _int_list(args.weight, "--weight")
    res = bott.bott_cohomology(weight)
    return {"weight": weight}, res.as_dict() | {"summary": str(res)}


# ---------------------------------------------------------------- parser

_HELP = {
    "strand": ("dimensions of the linear strand V_p = ker(Λ^p V ⊗ I_2 → Λ^{p-1} V ⊗ I_3)",
               "V_p is computed recursively: a p-th syzygy is determined by its contractions,\n"
               "which are (p-1)-th syzygies satisfying a symmetry relation."),
    "rank": ("rank of a syzygy and its space of linear forms L_s",
             "L_s is spanned by the contractions of s by elements of V^*.  A nonzero p-th\n"
             "syzygy has dim L_s >= p+1; ranks p+1, p+2 and p+3 are reported with their regime."),
    "scheme": ("quadrics of the syzygy scheme of one syzygy",
               "Syz(s) is cut out by the quadrics appearing in all contractions of s\n"
               "down to degree zero."),
    "restrict": ("restriction of the strand to a linear section",
                 "Syzygies pull back along x = M y; for sections cut by quadrics the restriction\n"
                 "maps V_p(X) → V_p(X ∩ P) are injective in low homological degree."),
    "ranklocus": ("Hilbert function of the determinantal locus of low-rank syzygies",
                  "ψ is the matrix of linear forms on P(V_p^*) given by contraction into V_{p-1};\n"
                  "its (r+1)-minors cut out the syzygies of rank <= r.  SYZYGY_BUDGET caps the work."),
    "gensyz": ("equations of the generic syzygy scheme Gensyz_p(L) with dim L = r",
               "Quadrics Q_B = Σ (-1)^j l_{B_j} a_{B∖B_j} in P(L ⊕ Λ^{r-p-1} L).  For r = p+1 the\n"
               "scheme is reducible, for r = p+2 it is a Segre cone and for r = p+3 it contains\n"
               "a cone over a Grassmannian of 2-planes."),
    "lift": ("realize a syzygy as the pullback of the generic syzygy",
             "s is a Koszul boundary d t with t in Λ^{p+1} L_s ⊗ V, and t defines the linear map\n"
             "π* with π*(s_gen) = s.  The pulled back model equations lie in the ideal."),
    "grass": ("Plücker ideal of Gr(n, 2), optionally with a minimal syzygy",
              "The ideal is generated by the 4x4 Pfaffians of the generic skew matrix.  Each\n"
              "nonzero u in U gives an (n-4)-th syzygy of rank n-1 with L = u ∧ U."),
    "mukai": ("genus 2k canonical curve or K3 surface as a section of Gr(k+2, 2)",
              "k = 4: linear sections of Gr(6, 2).  k = 3: linear section of Gr(5, 2) plus a quadric.\n"
              "Sections are drawn from --seed and checked for genericity."),
    "dualdeg": ("Hilbert function of the dual Grassmannian restricted to the orthogonal space",
                "For the curve the intersection is finite of degree C(2k, k)/(k+1), the number of\n"
                "scrolls; for the K3 surface it is empty."),
    "counts": ("closed-form counts for genus 2k sections",
               "dim V_{k-2} from Betti numbers and binomials; degree of the dual Grassmannian,\n"
               "Brill-Noether count of g^1_{k+1} and the Catalan number."),
    "bott": ("cohomology of homogeneous bundles on projective space",
             "Bott's algorithm: either everything vanishes or a single H^{i0} survives.  With\n"
             "--corollary evaluates the Eagon-Northcott terms that govern the vanishing argument."),
}


def _global_options() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--p", type=int, default=la.DEFAULT_PRIME, help="prime field F_p (default 101)")
    g.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    g.add_argument("--text", action="store_true", help="aligned text instead of JSON")
    g.add_argument("--timings", action="store_true", help="include per-stage milliseconds")
    return g


def _add_ideal(sp):
    sp.add_argument("--ideal", default="-", help="ideal file (JSON, text or a report); '-' reads stdin")


def _add_syzygy(sp):
    sp.add_argument("--syzygy", help="syzygy JSON file or a report carrying one")
    sp.add_argument("--element", help="P:I, the I-th basis element of V_P")
    sp.add_argument("--coords", help="P:c0,c1,..., coordinates in the basis of V_P")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syzkit", description="Linear strands and syzygy schemes of quadric ideals over F_p.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _global_options()

    def add(name):
        short, long = _HELP[name]
        return sub.add_parser(name, parents=[common], help=short, description=short + ".\n\n" + long,
                              formatter_class=argparse.RawDescriptionHelpFormatter)

    sp = add("strand")
    _add_ideal(sp)
    sp.add_argument("--pmax", type=int, default=3)
    for name in ("rank", "scheme", "lift"):
        sp = add(name)
        _add_ideal(sp)
        _add_syzygy(sp)
    sp = add("restrict")
    _add_ideal(sp)
    sp.add_argument("--codim", type=int, default=1, help="codimension of a random section")
    sp.add_argument("--substitution", help="JSON n x m matrix M for x = M y")
    sp.add_argument("--pmax", type=int, default=2)
    sp.add_argument("--out", help="write the restricted ideal here (.json or text)")
    sp = add("ranklocus")
    _add_ideal(sp)
    sp.add_argument("--hom", type=int, required=True, help="homological index p")
    sp.add_argument("--r", type=int, required=True, help="rank bound r; minors of size r+1")
    sp.add_argument("--dmax", type=int, default=8)
    sp.add_argument("--budget", type=int, help="override SYZYGY_BUDGET")
    sp = add("gensyz")
    sp.add_argument("--hom", type=int, required=True, help="homological index p")
    sp.add_argument("--r", type=int, required=True, help="dim L")
    sp.add_argument("--points", type=int, default=0, help="classify this many random points")
    sp = add("grass")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--minimal-u", help="comma separated u in U; adds the minimal syzygy")
    sp.add_argument("--out", help="write the ideal here (.json or text)")
    for name in ("mukai", "dualdeg"):
        sp = add(name)
        sp.add_argument("--k", type=int, required=True, choices=(3, 4))
        sp.add_argument("--kind", default="curve", help="curve or K3")
    sp = sub.choices["mukai"]
    sp.add_argument("--attempts", type=int, default=8, help="reseeding attempts")
    sp.add_argument("--track-u", help="push the minimal syzygy of u into the section")
    sp.add_argument("--pmax", type=int, help="also compute the strand up to this p")
    sp.add_argument("--out", help="write the section ideal here (.json or text)")
    sub.choices["dualdeg"].add_argument("--dmax", type=int, default=6)
    sp = add("counts")
    sp.add_argument("--k", type=int, required=True)
    sp = add("bott")
    sp.add_argument("--weight", help="comma separated weight, e.g. -4,0,0,0,-2")
    sp.add_argument("--corollary", action="store_true")
    sp.add_argument("--k", type=int)
    return parser


_COMMANDS = {
    "strand": cmd_strand, "rank": cmd_rank, "scheme": cmd_scheme, "restrict": cmd_restrict,
    "ranklocus": cmd_ranklocus, "gensyz": cmd_gensyz, "lift": cmd_lift, "grass": cmd_grass,
    "mukai": cmd_mukai, "dualdeg": cmd_dualdeg, "counts": cmd_counts, "bott": cmd_bott,
}


# ---------------------------------------------------------------- output

def _to_text(value, indent: int = 0) -> list[str]:
    pad = " " * indent
    if isinstance(value, dict):
        width = max((len(str(k)) for k in value), default=0)
        lines = []
        for k, v in value.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list))):
                lines.append(f"{pad}{k}:")
                lines += _to_text(v, indent + 2)
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines += [pad + "  " + ln for ln in v.splitlines()]
            else:
                lines.append(f"{pad}{str(k).ljust(width)} : {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines += _to_text(item, indent + 2)
            else:
                lines.append(pad + _scalar(item))
        return lines
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v) if v else "(none)"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(doc: dict, text: bool) -> str:
    if text:
        return "\n".join(_to_text(doc)) + "\n"
    return json.dumps(doc, sort_keys=False, ensure_ascii=False) + "\n"


def _error_doc(kind: str, message: str, code: int, details: dict | None = None) -> dict:
    err = {"kind": kind, "message": message, "exit_code": code}
    if details:
        err["details"] = details
    return {"error": err}


_LIST_OPTIONS = ("--weight", "--minimal-u", "--track-u", "--coords")


def _glue_negative_lists(argv) -> list[str]:
    """Let ``--weight -4,0,0`` through: argparse would read -4,0,0 as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _LIST_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            elif nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == ","):
                out.append(f"{a}={nxt}")
            else:
                out += [a, nxt]
        else:
            out.append(a)
    return out


def run(argv, stdin=None) -> tuple[int, dict, bool]:
    """Parse ``argv`` and execute; returns (exit code, document, text flag)."""
    argv = _glue_negative_lists(list(argv))
    text = "--text" in argv
    try:
        args = build_parser().parse_args(argv)
        la.PrimeField(args.p)
        clock = _Clock(args.timings)
        inputs, results = _COMMANDS[args.command](args, _Sources(stdin), clock)
        doc = {
            "command": args.command,
            "inputs": {"p": args.p, "seed": args.seed} | inputs,
            "results": results,
            "timings": clock.report(),
            "artifact_version": __version__,
        }
        return 0, doc, text
    except BudgetExceeded as exc:
        return exc.exit_code, _error_doc(exc.kind, str(exc), exc.exit_code, exc.sizes), text
    except SyzkitError as exc:
        code = 2 if isinstance(exc, ValueError) else exc.exit_code
        return code, _error_doc(exc.kind, str(exc), code), text
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        return 3, _error_doc("file_error", str(exc), 3), text
    except ValueError as exc:
        return 2, _error_doc("invalid_argument", str(exc), 2), text


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    code, doc, text = run(argv)
    out = render(doc, text)
    sys.stdout.write(out)
    if code:
        sys.stderr.write(f"syzkit: {doc['error']['message']}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
