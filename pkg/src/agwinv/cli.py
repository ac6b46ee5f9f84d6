"""Command-line front end.

Every subcommand writes JSON lines. Records are self-describing (the field
modulus and primitive element ride along in ``field``) and byte-identical
across runs. Exit status: 0 when every check passed, 1 on an oracle mismatch
or a failed hypothesis, 2 on bad usage or unparsable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

import numpy as np

from . import additive, branch, diagram, mult
from .errors import AgwError, EvenCharacteristic, OracleTooLarge, ParseError, UsageError
from .field import FieldCtx, get_field, parse_field_spec
from .linearized import Tower, format_linearized, linearized_inverse, parse_linearized
from .oracle import as_pointmap, is_permutation, oracle_inverse_poly
from .pointmap import PointMap
from .poly import Poly, format_poly, lagrange_interpolate, parse_poly

log = logging.getLogger("agwinv")

FORMS = ("index", "general-mult", "hybrid", "additive", "g0", "translator", "linearized", "branch")

# option name -> kind, per form; "poly" literals parse over the field, "elem" are elements
FORM_PARAMS = {
    "index": {"r": "int", "s": "int", "h": "poly"},
    "general-mult": {"f1": "poly", "h": "poly", "lam": "poly", "lam_bar": "poly"},
    "hybrid": {"h": "poly", "lam": "poly", "k": "poly"},
    "additive": {"f1": "poly", "h": "poly", "lam": "poly", "lam_bar": "poly"},
    "g0": {"g": "poly", "g0": "poly", "lam": "poly", "lam_bar": "poly"},
    "translator": {"gamma": "elem", "b": "elem", "lam": "poly", "G": "poly"},
    "linearized": {"L": "lin", "L1": "lin", "a": "elem", "delta": "elem", "h": "poly"},
}
OPTIONAL = {("linearized", "delta")}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    field_spec: str
    ctx: FieldCtx
    params: dict = field(default_factory=dict)
    output: str | None = None
    emit: str = "jsonl"
    verbose: int = 0


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="agwinv", description="Compositional inverses of AGW permutation polynomials.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    ap.add_argument("-o", "--output", help="write records here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_field(p):
        p.add_argument("--q", required=True, help='field: "9", "3^2" or "3^2/[1,0,1]"')
        return p

    with_field(sub.add_parser("field-info", help="modulus, primitive element and size"))

    p = with_field(sub.add_parser("check-pp", help="permutation test by value table"))
    p.add_argument("--f", required=True)

    p = with_field(sub.add_parser("invert", help="closed-form inverse checked against the oracle"))
    p.add_argument("--form", required=True, choices=FORMS)
    p.add_argument("--recipe", choices=("b", "ab", "both"), default="both")
    for name in ("r", "s", "r1", "r2"):
        p.add_argument(f"--{name}", type=int)
    for name in ("h", "f1", "lam", "lam-bar", "k", "g", "g0", "gamma", "b", "G", "L", "L1", "a", "delta", "a1", "a2"):
        p.add_argument(f"--{name}")
    p.add_argument("--base-degree", type=int, default=1, help="k with base field F_(p^k) (linearized)")
    p.add_argument("--eval", action="append", default=[], help="report f^-1 at this element")

    p = with_field(sub.add_parser("verify-diagram", help="check lam_bar o f == h o lam"))
    p.add_argument("--f", required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--lam-bar", required=True)
    p.add_argument("--h", help="bottom map; induced from the others when omitted")
    p.add_argument("--domain", choices=("full", "nonzero"), default="full")

    p = sub.add_parser("enumerate-two-branch", help="census of two-branch permutations")
    p.add_argument("--q", required=True)
    p.add_argument("--emit", choices=("jsonl", "tsv"), default="jsonl")
    return ap


def _parse_value(ctx, kind, text, name):
    if kind == "int":
        return int(text)
    if kind == "elem":
        return ctx.parse_elem(text)
    if kind == "lin":
        return text  # needs the tower; parsed in run()
    try:
        return parse_poly(ctx, text)
    except ParseError as e:
        err = ParseError(f"--{name.replace('_', '-')}: {e}")
        err.text, err.position = e.text, e.position
        raise err from None


def parse_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    try:
        ctx = parse_field_spec(ns.q)
    except ParseError as e:
        raise UsageError(f"--q {ns.q!r}: {e}") from None
    params: dict = {}
    emit = getattr(ns, "emit", "jsonl")
    if ns.command == "check-pp":
        params["f"] = _parse_value(ctx, "poly", ns.f, "f")
    elif ns.command == "verify-diagram":
        for name in ("f", "lam", "lam_bar", "h"):
            raw = getattr(ns, name)
            if raw is not None:
                params[name] = _parse_value(ctx, "poly", raw, name)
        params["domain"] = ns.domain
    elif ns.command == "invert":
        form = ns.form
        params["form"] = form
        params["recipe"] = ns.recipe
        params["base_degree"] = ns.base_degree
        params["eval"] = [ctx.parse_elem(t) for t in ns.eval]
        if form == "branch":
            spec = (
                {"a1": "elem", "r1": "int", "a2": "elem", "r2": "int"}
                if ns.a1 is not None
                else {"r": "int", "s": "int", "h": "poly"}
            )
        else:
            spec = FORM_PARAMS[form]
        for name, kind in spec.items():
            raw = getattr(ns, name)
            if raw is None:
                if (form, name) in OPTIONAL:
                    params[name] = 0
                    continue
                raise UsageError(f"--form {form} needs --{name.replace('_', '-')}")
            params[name] = _parse_value(ctx, kind, str(raw), name)
    return RunConfig(ns.command, ns.q, ctx, params, ns.output, emit, ns.verbose)


# -- records ---------------------------------------------------------------------


def _dump(rec) -> str:
    return json.dumps(rec, separators=(",", ":"))


_NOT_ECHOED = {"form", "recipe", "eval", "base_degree"}


def _echo_params(cfg: RunConfig) -> dict:
    ctx = cfg.ctx
    out = {}
    for k, v in cfg.params.items():
        if k in _NOT_ECHOED:
            continue
        if isinstance(v, Poly):
            out[k] = format_poly(v)
        elif k in ("gamma", "b", "a", "delta", "a1", "a2"):
            out[k] = ctx.to_json(v)
        else:
            out[k] = v
    if cfg.params.get("form") == "linearized":
        out["base_degree"] = cfg.params["base_degree"]
    if cfg.params.get("form") == "index":
        out["recipe"] = cfg.params["recipe"]
    return out


def _inverse_record(cfg: RunConfig, f_table, inverses: dict[str, Poly], hyp: dict, extra=None) -> dict:
    ctx = cfg.ctx
    f_poly = lagrange_interpolate(ctx, f_table)
    oracle = oracle_inverse_poly(ctx, f_poly)
    matches = {k: v == oracle for k, v in inverses.items()}
    primary = next(iter(inverses.values()))
    rec = {
        "command": "invert",
        "form": cfg.params["form"],
        "field": ctx.describe(),
        "q": ctx.q,
        **_echo_params(cfg),
        "f": format_poly(f_poly),
        "pp": True,
        "hypotheses": hyp,
        "inverse": format_poly(primary),
        "inverse_coeffs": [ctx.to_json(c) for c in primary.coeffs],
    }
    if len(inverses) > 1:
        rec["inverses"] = {k: format_poly(v) for k, v in inverses.items()}
    rec["oracle"] = format_poly(oracle)
    rec["oracle_match"] = all(matches.values())
    if cfg.params.get("eval"):
        rec["evaluations"] = [
            {"x": ctx.to_json(x), "f_inv": ctx.to_json(primary(x))} for x in cfg.params["eval"]
        ]
    if extra:
        rec.update(extra)
    return rec


def _invert(cfg: RunConfig) -> dict:
    ctx = cfg.ctx
    P = cfg.params
    form = P["form"]
    if form == "index":
        f = mult.IndexForm.build(ctx, P["r"], P["s"], P["h"])
        hyp = {"gcd(r, s) == 1": np.gcd(f.r, f.s) == 1, "g permutes mu_ell": f.g.is_permutation()}
        hyp = {k: bool(v) for k, v in hyp.items()}
        if not all(hyp.values()):
            return {"__fail__": hyp}
        inv = {}
        if P["recipe"] in ("b", "both"):
            inv["b"] = mult.invert_index_b(f)
        if P["recipe"] in ("ab", "both"):
            inv["ab"] = mult.invert_index_ab(f)
        ident = all(mult.g_inverse_identity_holds(f, v) for v in inv.values())
        return _inverse_record(cfg, f.values(), inv, hyp, {"g_inverse_identity": ident})
    if form == "general-mult":
        gm = mult.GeneralMultForm(ctx, P["f1"], P["h"], P["lam"], P["lam_bar"])
        table = np.zeros(ctx.q, dtype=np.int64)
        table[1:] = gm.fmap(ctx.nonzero())
        return _inverse_record(cfg, table, {"general": mult.invert_mult_general(gm)}, {"f1 permutes F_q^*": True})
    if form == "hybrid":
        hyp = mult.hybrid_hypotheses(ctx, P["h"], P["lam"], P["k"])
        hyp = {k: bool(v) for k, v in hyp.items()}
        inv = mult.invert_hybrid_xh(ctx, P["h"], P["lam"], P["k"])
        xs = ctx.elements()
        table = ctx.mul(xs, P["h"](P["lam"](xs)))
        return _inverse_record(cfg, table, {"hybrid": inv}, hyp)
    if form == "additive":
        sq = additive.additive_square(ctx, P["f1"], P["h"], P["lam"], P["lam_bar"])
        inv = additive.invert_add_general(ctx, P["f1"], P["h"], sq)
        hyp = {"square commutes": diagram.verify_square(sq), "f1 permutes F_q": is_permutation(ctx, P["f1"])}
        return _inverse_record(cfg, sq.f(ctx.elements()), {"additive": inv}, hyp)
    if form == "g0":
        g0 = additive.G0Form(ctx, P["g"], P["g0"], P["lam"], P["lam_bar"])
        hyp = g0.hypotheses()
        return _inverse_record(cfg, g0.values(), {"g0": additive.invert_g0_form(g0)}, hyp)
    if form == "translator":
        tf = additive.TranslatorForm(ctx, P["gamma"], P["b"], P["lam"], P["G"])
        hyp = {"translator law": additive.check_translator(tf), "g permutes S": tf.g().is_permutation()}
        return _inverse_record(cfg, tf.values(), {"translator": additive.invert_translator_form(tf)}, hyp)
    if form == "linearized":
        try:
            tower = Tower(ctx, P["base_degree"])
        except ValueError as e:
            raise UsageError(str(e)) from None
        L = parse_linearized(tower, P["L"])
        L1 = parse_linearized(tower, P["L1"])
        lf = additive.LinearizedForm(tower, L, L1, P["a"], P["delta"], P["h"])
        hyp = lf.hypotheses()
        inv = additive.invert_linearized_form(lf)
        extra = {"L1_inverse": format_linearized(linearized_inverse(tower, L1))}
        return _inverse_record(cfg, lf.values(), {"linearized": inv}, hyp, extra)
    if form == "branch":
        if "a1" in P:
            tb = branch.TwoBranchForm(ctx, P["a1"], P["r1"], P["a2"], P["r2"])
            hyp = {"two-branch criterion": branch.check_two_branch_pp(tb)}
            if not hyp["two-branch criterion"]:
                return {"__fail__": hyp}
            return _inverse_record(cfg, tb.values(), {"branch": branch.invert_two_branch(tb)}, hyp)
        f = mult.IndexForm.build(ctx, P["r"], P["s"], P["h"])
        hyp = {"index form is a PP": mult.check_index_pp(f)}
        if not hyp["index form is a PP"]:
            return {"__fail__": hyp}
        inv = branch.assemble_branch_inverse(branch.index_branch_system(f))
        ident = mult.g_inverse_identity_holds(f, inv)
        return _inverse_record(cfg, f.values(), {"branch": inv}, hyp, {"g_inverse_identity": ident})
    raise UsageError(f"unknown form {form}")


def _verify_diagram(cfg: RunConfig) -> tuple[dict, bool]:
    ctx = cfg.ctx
    P = cfg.params
    A = ctx.elements() if P["domain"] == "full" else ctx.nonzero()
    f = as_pointmap(ctx, P["f"], A)
    lam = as_pointmap(ctx, P["lam"], A)
    lam_bar = as_pointmap(ctx, P["lam_bar"], A)
    rec = {"command": "verify-diagram", "field": ctx.describe(), "domain": P["domain"]}
    if not set(f.images.tolist()) <= set(A.tolist()):
        rec.update(commutes=False, reason="f does not map the domain into itself")
        return rec, False
    if "h" in P:
        S = lam.image()
        h = PointMap(S, P["h"](S))
        sq = diagram.AgwSquare(A, S, lam_bar.image(), f, lam, lam_bar, h, strict=False)
    else:
        ind = diagram.induced_h(A, f, lam, lam_bar)
        if isinstance(ind, diagram.WellDefinednessFailure):
            rec.update(commutes=False, witness={"a": ind.a, "b": ind.b}, reason="no induced map")
            return rec, False
        sq = diagram.AgwSquare(A, lam.image(), lam_bar.image(), f, lam, lam_bar, ind)
    bad = sq.violation()
    if bad is not None:
        rec.update(
            commutes=False,
            witness={"a": ctx.to_json(bad), "lam_bar(f(a))": ctx.to_json(int(lam_bar(f(bad)))),
                     "lam(a)": ctx.to_json(int(lam(bad)))},
        )
        return rec, False
    rec["commutes"] = True
    rec["h"] = {str(k): v for k, v in sq.h.as_dict().items()}
    rec["agw_pp"] = diagram.agw_is_pp(sq)
    rec["f_bijective"] = f.is_permutation()
    if rec["agw_pp"]:
        rec["dual_square"] = diagram.dual_square_verify(sq)
    ok = rec["agw_pp"] == rec["f_bijective"] and rec.get("dual_square", True)
    return rec, bool(ok)


def _enumerate(cfg: RunConfig, out) -> bool:
    ctx = cfg.ctx
    tuples = branch.enumerate_two_branch_pps(ctx)
    header = {"command": "enumerate-two-branch", "field": ctx.describe()}
    cols = ("q", "a1", "r1", "a2", "r2", "poly", "inverse", "involution", "oracle_match")
    if cfg.emit == "jsonl":
        out.write(_dump(header) + "\n")
    else:
        out.write("# " + _dump(header) + "\n" + "\t".join(cols) + "\n")
    all_ok = True
    for a1, r1, a2, r2 in tuples:
        tb = branch.TwoBranchForm(ctx, a1, r1, a2, r2)
        f = tb.poly()
        inv = branch.invert_two_branch(tb)
        ok = inv == oracle_inverse_poly(ctx, f)
        all_ok &= ok
        rec = {
            "q": ctx.q,
            "a1": ctx.to_json(a1),
            "r1": r1,
            "a2": ctx.to_json(a2),
            "r2": r2,
            "poly": format_poly(f),
            "inverse": format_poly(inv),
            "involution": inv == f,
            "oracle_match": ok,
        }
        if cfg.emit == "jsonl":
            out.write(_dump(rec) + "\n")
        else:
            out.write("\t".join(_dump(rec[c]) if not isinstance(rec[c], str) else rec[c] for c in cols) + "\n")
    formula = branch.two_branch_formula(ctx.q)
    summary = {"count": len(tuples), "formula": formula, "match": len(tuples) == formula}
    out.write(("" if cfg.emit == "jsonl" else "# ") + _dump(summary) + "\n")
    return summary["match"] and all_ok


def _err(exc: Exception) -> str:
    rec = {"error": type(exc).__name__, "message": str(exc)}
    cond = getattr(exc, "condition", None)
    if cond is not None:
        rec["condition"] = cond
    return _dump(rec)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fh = open(cfg.output, "w") if cfg.output else None
    out = fh or stdout
    ctx = cfg.ctx
    try:
        if cfg.command == "field-info":
            rec = {"command": "field-info", "field": ctx.describe(), "modulus_poly": _modulus_str(ctx)}
            out.write(_dump(rec) + "\n")
            return 0
        if cfg.command == "check-pp":
            f = cfg.params["f"]
            rec = {"command": "check-pp", "field": ctx.describe(), "f": format_poly(f.normalize()),
                   "pp": is_permutation(ctx, f)}
            out.write(_dump(rec) + "\n")
            return 0
        if cfg.command == "invert":
            rec = _invert(cfg)
            if "__fail__" in rec:
                failed = [k for k, v in rec["__fail__"].items() if not v]
                stderr.write(_dump({"error": "HypothesisFailed", "condition": failed[0],
                                    "hypotheses": rec["__fail__"]}) + "\n")
                return 1
            out.write(_dump(rec) + "\n")
            log.info("oracle_match=%s", rec["oracle_match"])
            return 0 if rec["oracle_match"] and rec.get("g_inverse_identity", True) else 1
        if cfg.command == "verify-diagram":
            rec, ok = _verify_diagram(cfg)
            out.write(_dump(rec) + "\n")
            return 0 if ok else 1
        if cfg.command == "enumerate-two-branch":
            return 0 if _enumerate(cfg, out) else 1
        raise UsageError(f"unknown command {cfg.command}")
    except (UsageError, ParseError, OracleTooLarge, EvenCharacteristic) as e:
        stderr.write(_err(e) + "\n")
        return 2
    except AgwError as e:
        stderr.write(_err(e) + "\n")
        return 1
    finally:
        if fh:
            fh.close()


def _modulus_str(ctx: FieldCtx) -> str:
    if ctx.n == 1:
        return "t"
    return format_poly(Poly(get_field(ctx.p), list(ctx.modulus))).replace("x", "t")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except (UsageError, ParseError) as e:
        sys.stderr.write(_err(e) + "\n")
        return 2
    except SystemExit as e:  # --help
        return int(e.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * cfg.verbose, format="%(levelname)s %(message)s")
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
