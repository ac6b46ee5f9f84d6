"""Ground truth by exhaustion: permutation tests and brute-force inverses.

Nothing here uses the closed-form inverse formulas, so these routines are the
reference every constructed inverse is checked against.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NotPermutation, NotSurjective, OracleTooLarge
from .field import FieldCtx
from .pointmap import PointMap
from .poly import Poly, function_table, lagrange_interpolate

DEFAULT_MAX_Q = 16384


def max_oracle_q() -> int:
    return int(os.environ.get("AGW_MAX_Q", DEFAULT_MAX_Q))


def _check_size(ctx: FieldCtx):
    cap = max_oracle_q()
    if ctx.q > cap:
        raise OracleTooLarge(f"q={ctx.q} exceeds the exhaustive-oracle cap {cap} (AGW_MAX_Q)")


def as_pointmap(ctx: FieldCtx, f, domain=None) -> PointMap:
    """Coerce a Poly / PointMap / table to a PointMap (default domain: F_q)."""
    if isinstance(f, PointMap):
        return f if domain is None else f.restrict(domain)
    dom = ctx.elements() if domain is None else np.asarray(domain, dtype=np.int64)
    if isinstance(f, Poly):
        return PointMap(dom, f(dom))
    return PointMap(dom, np.asarray(f, dtype=np.int64)[dom])


def is_permutation(ctx: FieldCtx, f) -> bool:
    """Poly: bijective on F_q. PointMap: a permutation of its own domain."""
    if isinstance(f, PointMap):
        return f.is_permutation()
    vals = function_table(ctx, f)
    return np.unique(vals).size == ctx.q


def brute_inverse(ctx: FieldCtx, f) -> PointMap:
    """Table g with g(f(x)) = x, found by inverting the value table."""
    _check_size(ctx)
    pm = as_pointmap(ctx, f)
    if not pm.is_permutation():
        raise NotPermutation("map is not a permutation of its domain")
    return PointMap(pm.images, pm.domain)


def oracle_inverse_poly(ctx: FieldCtx, f) -> Poly:
    """Interpolated brute-force inverse; the certified reference."""
    return lagrange_interpolate(ctx, brute_inverse(ctx, f))


def fiber_bijection_check(ctx: FieldCtx, f, lam: PointMap) -> tuple[bool, bool]:
    """(f injective on every fiber of lam, fiber images pairwise disjoint).

    Both hold exactly when f is a bijection of lam's domain.
    """
    fm = as_pointmap(ctx, f, lam.domain)
    injective = True
    images = []
    for fiber in lam.fibers().values():
        vals = fm(fiber)
        if np.unique(vals).size != vals.size:
            injective = False
        images.append(set(vals.tolist()))
    seen: set[int] = set()
    disjoint = True
    for img in images:
        if seen & img:
            disjoint = False
        seen |= img
    return injective, disjoint


def surjective_composition_check(ctx: FieldCtx, f, g_surj: PointMap) -> bool:
    """For g: B -> F_q surjective, whether x -> f(g(x)) is onto F_q.

    That composite is onto exactly when f permutes F_q.
    """
    if not g_surj.is_surjective_onto(ctx.elements()):
        raise NotSurjective("g does not cover the field")
    fm = as_pointmap(ctx, f)
    return np.unique(fm(g_surj.images)).size == ctx.q
