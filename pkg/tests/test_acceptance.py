"""Acceptance criteria, one test each, exact equality throughout.

Each test prints a single PASS/FAIL line and records it for the terminal
summary. Run directly with ``python3 tests/test_acceptance.py``.
"""

import contextlib
import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

import conftest
from agwinv.additive import (
    additive_square,
    additive_values,
    check_translator,
    invert_add_general,
    invert_g0_form,
    invert_linearized_form,
    invert_translator_form,
)
from agwinv.branch import (
    TwoBranchForm,
    assemble_branch_inverse,
    coset_characteristic,
    count_two_branch_pps,
    enumerate_two_branch_pps,
    index_branch_system,
    invert_two_branch,
    two_branch_criterion,
    two_branch_formula,
)
from agwinv.cyclotomic import CyclotomicSys
from agwinv.diagram import AgwSquare, agw_is_pp, dual_square_verify, verify_square
from agwinv.errors import Singular
from agwinv.field import prime_power
from agwinv.linearized import linearized_inverse
from agwinv.mult import (
    GeneralMultForm,
    IndexForm,
    check_index_pp,
    g_inverse_identity_holds,
    hybrid_square,
    invert_index_ab,
    invert_index_b,
)
from agwinv.oracle import oracle_inverse_poly
from agwinv.pointmap import PointMap
from agwinv.poly import Poly, interpolate_subgroup
from catalog import (
    TOWERS,
    additive_instance,
    all_tables,
    divisors,
    field_of,
    g0_instance,
    linearized_instance,
    random_index_h,
    subfield,
    tower_of,
    translator_instance,
)

SEED = 20240611
INDEX_QS = [5, 7, 9, 11, 13, 16, 17, 25, 27, 32, 49, 64]
H_PER_PAIR = 50
CENSUS = {3: 2, 5: 8, 7: 72, 9: 128, 11: 800, 13: 288}
PRIME_POWERS_TO_64 = [q for q in range(2, 65) if prime_power(q)]


class _Outcome:
    def __init__(self):
        self.ok = True
        self.detail = ""


@contextlib.contextmanager
def criterion(n: int, title: str):
    out = _Outcome()
    t0 = time.perf_counter()
    try:
        yield out
    except BaseException as e:
        out.ok = False
        out.detail = f"{out.detail} error={type(e).__name__}: {e}".strip()
        raise
    finally:
        line = f"[{'PASS' if out.ok else 'FAIL'}] criterion {n}: {title} ({out.detail}; {time.perf_counter() - t0:.1f}s)"
        conftest.ACCEPTANCE_LINES[n] = line
        print(line)
    assert out.ok, line


def _pp(values: np.ndarray) -> bool:
    return np.unique(values).size == values.size


def test_criterion_1_index_sweep():
    rng = np.random.default_rng(SEED + 1)
    with criterion(1, "index-form b and ab recipes equal the oracle") as c:
        instances = compared = mismatches = 0
        for q in INDEX_QS:
            ctx = field_of(q)
            for s in divisors(q - 1):
                sys_ = CyclotomicSys(ctx, s)
                for r in range(1, q):
                    coprime = math.gcd(r, q - 1) == 1
                    for k in range(H_PER_PAIR):
                        form = IndexForm(sys_, r, random_index_h(rng, sys_, r, targeted=k % 2 == 0))
                        instances += 1
                        if not (coprime and check_index_pp(form)):
                            continue
                        oracle = oracle_inverse_poly(ctx, form.values())
                        compared += 1
                        if not (invert_index_b(form) == invert_index_ab(form) == oracle):
                            mismatches += 1
        c.ok = mismatches == 0 and compared > 0
        c.detail = f"instances={instances} inversions={compared} mismatches={mismatches}"


def test_criterion_2_criterion_equivalences():
    rng = np.random.default_rng(SEED + 2)
    with criterion(2, "PP criteria agree with the value-table test") as c:
        counts = {"index": 0, "two-branch": 0, "translator": 0, "linearized": 0}
        bad = {k: 0 for k in counts}
        for q in INDEX_QS:
            ctx = field_of(q)
            for s in divisors(q - 1):
                sys_ = CyclotomicSys(ctx, s)
                for r in range(1, q):
                    for targeted in (False, True):
                        form = IndexForm(sys_, r, random_index_h(rng, sys_, r, targeted))
                        counts["index"] += 1
                        bad["index"] += check_index_pp(form) != _pp(form.values())
        for q in CENSUS:
            ctx = field_of(q)
            for a1 in range(1, q):
                for r1 in range(1, q):
                    for a2 in range(1, q):
                        for r2 in range(1, q):
                            form = TwoBranchForm(ctx, a1, r1, a2, r2)
                            counts["two-branch"] += 1
                            bad["two-branch"] += two_branch_criterion(form) != _pp(form.values())
        # base field sizes 2, 2, 3, 4, 5
        for p, N, k in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 4, 2), (5, 2, 1)]:
            ctx = field_of(p**N)
            for table in all_tables(subfield(ctx, k)):
                form = translator_instance(rng, ctx, k, table)
                counts["translator"] += 1
                bad["translator"] += not check_translator(form)
                bad["translator"] += form.g().is_permutation() != _pp(form.values())
        for p, N, k in [(3, 2, 1), (2, 3, 1), (2, 4, 1)]:
            tw = tower_of(p, N, k)
            for i in range(120):
                form = linearized_instance(rng, tw, invertible=None if i % 4 else False)
                counts["linearized"] += 1
                try:
                    linearized_inverse(tw, form.L1)
                    inv_ok = True
                except Singular:
                    inv_ok = False
                bad["linearized"] += inv_ok != _pp(form.values())
        c.ok = not any(bad.values())
        c.detail = " ".join(f"{k}={counts[k]}/{bad[k]}" for k in counts) + " (checked/mismatches)"


def _twobranch_as_index(form: TwoBranchForm) -> IndexForm | None:
    """The same map as x^r2 h(x^m) when r1 == r2 (mod m); None otherwise."""
    m = form.m
    if (form.r1 - form.r2) % m:
        return None
    ctx = form.ctx
    sys_ = CyclotomicSys(ctx, m)
    mu = np.asarray(sys_.mu)
    minus_one = ctx.neg(1)
    sign = ctx.pow(minus_one, ((form.r1 - form.r2) // m) % 2)
    vals = np.array([form.a2 if z == 1 else ctx.mul(form.a1, sign) for z in mu.tolist()], dtype=np.int64)
    idx = IndexForm(sys_, form.r2, interpolate_subgroup(ctx, m, vals))
    assert (idx.values() == form.values()).all()
    return idx


def test_criterion_4_branch_assembly():
    rng = np.random.default_rng(SEED + 4)
    with criterion(4, "branch assembly equals the oracle, index identity holds") as c:
        two = idx_cases = eq_checks = bad = 0
        for q in CENSUS:
            ctx = field_of(q)
            for params in enumerate_two_branch_pps(ctx):
                form = TwoBranchForm(ctx, *params)
                inv = invert_two_branch(form)
                two += 1
                bad += inv != oracle_inverse_poly(ctx, form.values())
                as_index = _twobranch_as_index(form)
                if as_index is not None:
                    eq_checks += 1
                    bad += not g_inverse_identity_holds(as_index, inv)
        for q in (7, 11, 13):
            ctx = field_of(q)
            for s in divisors(q - 1)[:-1]:
                sys_ = CyclotomicSys(ctx, s)
                for r in range(1, q):
                    if math.gcd(r, s) != 1:
                        continue
                    for _ in range(5):
                        form = IndexForm(sys_, r, random_index_h(rng, sys_, r, True))
                        if not check_index_pp(form):
                            continue
                        inv = assemble_branch_inverse(index_branch_system(form))
                        idx_cases += 1
                        eq_checks += 1
                        bad += inv != oracle_inverse_poly(ctx, form.values())
                        bad += not g_inverse_identity_holds(form, inv)
        c.ok = bad == 0 and two > 0 and idx_cases > 0
        c.detail = f"two-branch={two} index-branches={idx_cases} identity-checks={eq_checks} failures={bad}"


def test_criterion_5_census():
    with criterion(5, "two-branch census matches the closed formula") as c:
        got = {q: count_two_branch_pps(field_of(q)) for q in CENSUS}
        formula = {q: two_branch_formula(q) for q in CENSUS}
        c.ok = got == formula == CENSUS
        c.detail = " ".join(f"q={q}:{got[q]}" for q in CENSUS)


def test_criterion_6_partition_of_unity():
    with criterion(6, "coset indicators partition unity on F_q^*") as c:
        systems = bad = 0
        for q in PRIME_POWERS_TO_64:
            ctx = field_of(q)
            units = ctx.nonzero()
            for s in divisors(q - 1):
                sys_ = CyclotomicSys(ctx, s)
                vals = np.stack([coset_characteristic(sys_, i)(units) for i in range(sys_.ell)])
                systems += 1
                total = np.zeros(units.size, dtype=np.int64)
                for row in vals:
                    total = ctx.add(total, row)
                bad += not ((total == 1).all() and np.isin(vals, [0, 1]).all())
        c.ok = bad == 0
        c.detail = f"fields={len(PRIME_POWERS_TO_64)} systems={systems} failures={bad}"


def test_criterion_7_additive_families():
    rng = np.random.default_rng(SEED + 7)
    with criterion(7, "additive, g0, translator and linearized inverses equal the oracle") as c:
        done = {k: {2: 0, "odd": 0} for k in ("additive", "g0", "translator", "linearized")}
        bad = 0

        def tally(fam, ctx):
            done[fam][2 if ctx.p == 2 else "odd"] += 1

        fields = [(4, 1), (8, 1), (16, 2), (9, 1), (25, 1), (27, 1)]
        while min(min(v.values()) for v in done.values()) < 60:
            for q, k in fields:
                ctx = field_of(q)
                f1, h, lam = additive_instance(rng, ctx, k, targeted=True)
                fv = additive_values(ctx, f1, h, lam)
                if _pp(fv):
                    sq = additive_square(ctx, f1, h, lam, lam)
                    bad += invert_add_general(ctx, f1, h, sq) != oracle_inverse_poly(ctx, fv)
                    tally("additive", ctx)
                g0 = g0_instance(rng, ctx)
                if g0.g.is_permutation():
                    bad += invert_g0_form(g0) != oracle_inverse_poly(ctx, g0.values())
                    tally("g0", ctx)
                tr = translator_instance(rng, ctx, k)
                if tr.g().is_permutation():
                    bad += invert_translator_form(tr) != oracle_inverse_poly(ctx, tr.values())
                    tally("translator", ctx)
            for tower in TOWERS + [(5, 2, 1), (3, 3, 1)]:
                tw = tower_of(*tower)
                lf = linearized_instance(rng, tw, invertible=True)
                bad += invert_linearized_form(lf) != oracle_inverse_poly(tw.ctx, lf.values())
                tally("linearized", tw.ctx)
        totals = {k: sum(v.values()) for k, v in done.items()}
        c.ok = bad == 0 and all(t >= 100 for t in totals.values())
        c.detail = " ".join(f"{k}={v[2]}+{v['odd']}" for k, v in done.items()) + f" (char2+odd) mismatches={bad}"


def test_criterion_8_cli_end_to_end():
    argv = [sys.executable, "-m", "agwinv", "invert", "--form", "index", "--q", "7",
            "--r", "1", "--s", "3", "--h", "x+3", "--eval", "4", "--eval", "1"]
    with criterion(8, "CLI F_7 run is correct and byte-identical across reruns") as c:
        runs = [subprocess.run(argv, capture_output=True, env=dict(os.environ)) for _ in range(2)]
        rec = json.loads(runs[0].stdout)
        evals = {e["x"]: e["f_inv"] for e in rec["evaluations"]}
        c.ok = (
            all(r.returncode == 0 for r in runs)
            and runs[0].stdout == runs[1].stdout
            and rec["oracle_match"] is True
            and rec["f"] == "x^4+3*x"
            and evals == {4: 1, 1: 2}
        )
        c.detail = f"exit={[r.returncode for r in runs]} inverse={rec['inverse']} f_inv(4)={evals.get(4)} f_inv(1)={evals.get(1)}"


def _catalog_squares(rng) -> list:
    """Squares from every construction in the package, built fresh."""
    out = []
    for q in (7, 11, 13, 16, 25):
        ctx = field_of(q)
        for s in divisors(q - 1)[:-1]:
            sys_ = CyclotomicSys(ctx, s)
            for r in (1, 5, 7):
                if math.gcd(r, s) == 1:
                    out.append(IndexForm(sys_, r, random_index_h(rng, sys_, r, True)).square())
    for q in (7, 13):
        ctx = field_of(q)
        lam = Poly.monomial(ctx, 1, 3 if q == 7 else 4)
        for _ in range(20):
            h = Poly(ctx, rng.integers(1, q, 2))
            fv = ctx.mul(ctx.nonzero(), h(lam(ctx.nonzero())))
            if (fv != 0).all() and _pp(fv):
                out.append(GeneralMultForm(ctx, Poly.x(ctx), h, lam, lam).square)
            if h(0):
                out.append(hybrid_square(ctx, h, lam, lam))
    for q, k in ((8, 1), (9, 1), (16, 2), (27, 1)):
        ctx = field_of(q)
        for _ in range(10):
            f1, h, lam = additive_instance(rng, ctx, k, targeted=True)
            out.append(additive_square(ctx, f1, h, lam, lam))
            out.append(g0_instance(rng, ctx).square())
            out.append(translator_instance(rng, ctx, k).square())
    for tower in TOWERS:
        tw = tower_of(*tower)
        for _ in range(10):
            out.append(linearized_instance(rng, tw, invertible=True).square())
    for q in (5, 7, 9, 11, 13):
        ctx = field_of(q)
        m = (q - 1) // 2
        xs = ctx.elements()
        sq_map = PointMap(xs, ctx.pow(xs, m) if m else np.ones(q, dtype=np.int64))
        for params in enumerate_two_branch_pps(ctx)[:40]:
            f = PointMap(xs, TwoBranchForm(ctx, *params).values())
            out.append(AgwSquare.from_maps(xs, f, sq_map, sq_map))
    return out


def _square_key(sq) -> bytes:
    parts = [sq.A, sq.f.images, sq.lam.images, sq.lam_bar.images, sq.h.domain, sq.h.images]
    return b"|".join(np.asarray(p, dtype=np.int64).tobytes() for p in parts)


def test_criterion_3_dual_squares():
    # kept last: the registry then holds every square the session built
    rng = np.random.default_rng(SEED + 3)
    with criterion(3, "dual square holds for every AGW square built") as c:
        built = _catalog_squares(rng)
        seen: set[bytes] = set()
        checked = skipped = bad = 0
        for sq in conftest.SQUARES:
            if not (verify_square(sq) and agw_is_pp(sq)):
                skipped += 1
                continue
            key = _square_key(sq)
            if key in seen:
                continue
            seen.add(key)
            checked += 1
            bad += not dual_square_verify(sq)
        c.ok = bad == 0 and checked > 0
        c.detail = (
            f"registry={len(conftest.SQUARES)} catalog={len(built)} distinct-pp={checked} "
            f"non-pp-or-noncommuting={skipped} failures={bad}"
        )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
