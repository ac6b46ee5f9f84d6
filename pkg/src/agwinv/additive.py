"""Inverses of additive AGW permutation polynomials.

f(x) = f1(x) + h(lam(x)) with a commuting square lam_bar o f = g o lam has
inverse f1^-1(y - h(g^-1(lam_bar(y)))). The g + g0 o lam form, the b-linear
translator form and the linearized form are specialisations, each with its
own structural hypotheses checked up front.
"""

from __future__ import annotations

import numpy as np

from .diagram import AgwSquare, verify_square
from .errors import CoefficientsNotInBaseField, HypothesisFailed, NotPP, Singular, SquareNotCommuting
from .field import FieldCtx
from .linearized import LinearizedPoly, Tower, associated_gcd_check, linearized_inverse
from .oracle import as_pointmap
from .pointmap import PointMap
from .poly import Poly, lagrange_interpolate


def _raise_first(hyp: dict[str, bool]):
    for name, ok in hyp.items():
        if not ok:
            raise HypothesisFailed(name)


# -- f1 + h o lam ---------------------------------------------------------------------


def additive_values(ctx: FieldCtx, f1, h: Poly, lam) -> np.ndarray:
    xs = ctx.elements()
    return ctx.add(as_pointmap(ctx, f1)(xs), h(as_pointmap(ctx, lam)(xs)))


def additive_square(ctx: FieldCtx, f1, h: Poly, lam, lam_bar) -> AgwSquare:
    """Square for f = f1 + h o lam with the bottom map induced from lam, lam_bar."""
    xs = ctx.elements()
    f = PointMap(xs, additive_values(ctx, f1, h, lam))
    return AgwSquare.from_maps(xs, f, as_pointmap(ctx, lam), as_pointmap(ctx, lam_bar))


def invert_add_general(ctx: FieldCtx, f1, h: Poly, square: AgwSquare) -> Poly:
    """f^-1(y) = f1^-1(y - h(g^-1(lam_bar(y))))."""
    f1m = as_pointmap(ctx, f1)
    if not f1m.is_permutation():
        raise NotPP("f1 is not a permutation")
    xs = ctx.elements()
    if not (square.f(xs) == additive_values(ctx, f1, h, square.lam)).all():
        raise HypothesisFailed("square.f == f1 + h o lam")
    if not verify_square(square):
        raise SquareNotCommuting(f"square fails at a={square.violation()}")
    if not square.f.is_permutation():
        raise NotPP("f1 + h o lam is not a permutation")
    g_inv = square.h.inverse()
    pre = ctx.sub(xs, h(g_inv(square.lam_bar(xs))))
    return lagrange_interpolate(ctx, f1m.inverse()(pre))


# -- g + g0 o lam -------------------------------------------------------------------------


class G0Form:
    """f = g + g0 o lam with lam_bar additive and lam_bar(g0(lam(x))) == 0."""

    def __init__(self, ctx: FieldCtx, g, g0: Poly, lam, lam_bar):
        self.ctx = ctx
        self.g = as_pointmap(ctx, g)
        self.g0 = g0
        self.lam = as_pointmap(ctx, lam)
        self.lam_bar = as_pointmap(ctx, lam_bar)
        self.S = self.lam.image()
        self.Sbar = self.lam_bar.image()

    def values(self) -> np.ndarray:
        xs = self.ctx.elements()
        return self.ctx.add(self.g(xs), self.g0(self.lam(xs)))

    def hypotheses(self) -> dict[str, bool]:
        ctx = self.ctx
        xs = ctx.elements()
        lb = self.lam_bar(xs)
        additive = all((self.lam_bar(ctx.add(xs, int(y))) == ctx.add(lb, int(lb[y]))).all() for y in xs)
        g_on_s = self.g(self.S)
        return {
            "|S| == |Sbar|": self.S.size == self.Sbar.size,
            "lam_bar additive": additive,
            "lam_bar(g0(lam(x))) == 0": bool((self.lam_bar(self.g0(self.lam(xs))) == 0).all()),
            "lam_bar o f == g o lam": bool((self.lam_bar(self.values()) == self.g(self.lam(xs))).all()),
            "g(S) subset Sbar": bool(np.isin(g_on_s, self.Sbar).all()),
        }

    def square(self) -> AgwSquare:
        xs = self.ctx.elements()
        h = self.g.restrict(self.S)
        return AgwSquare(xs, self.S, self.Sbar, PointMap(xs, self.values()), self.lam, self.lam_bar, h)


def invert_g0_form(form: G0Form) -> Poly:
    """f^-1(y) = g^-1(y - g0(g^-1(lam_bar(y))))."""
    _raise_first(form.hypotheses())
    ctx = form.ctx
    f_pp = np.unique(form.values()).size == ctx.q
    if f_pp != form.g.is_permutation():
        raise HypothesisFailed("f permutes F iff g permutes F")
    if not f_pp:
        raise NotPP("g + g0 o lam is not a permutation")
    xs = ctx.elements()
    g_inv = form.g.inverse()
    pre = ctx.sub(xs, form.g0(g_inv(form.lam_bar(xs))))
    return lagrange_interpolate(ctx, g_inv(pre))


# -- b-linear translators ------------------------------------------------------------------


class TranslatorForm:
    """f(x) = x + gamma G(lam(x)) where gamma is a b-linear translator of lam.

    S is lam(F_q); G must map S into S.
    """

    def __init__(self, ctx: FieldCtx, gamma: int, b: int, lam, G: Poly):
        self.ctx = ctx
        self.gamma = gamma
        self.b = b
        self.lam = as_pointmap(ctx, lam)
        self.G = G
        self.S = self.lam.image()

    def values(self) -> np.ndarray:
        ctx = self.ctx
        xs = ctx.elements()
        return ctx.add(xs, ctx.mul(self.G(self.lam(xs)), self.gamma))

    def g(self) -> PointMap:
        """x + b G(x) on S."""
        ctx = self.ctx
        return PointMap(self.S, ctx.add(self.S, ctx.mul(self.G(self.S), self.b)))

    def square(self) -> AgwSquare:
        xs = self.ctx.elements()
        return AgwSquare(xs, self.S, self.S, PointMap(xs, self.values()), self.lam, self.lam, self.g())


def check_translator(form: TranslatorForm) -> bool:
    """lam(x + u gamma) == lam(x) + u b for all x in F_q and u in S."""
    ctx = form.ctx
    xs = ctx.elements()
    lx = form.lam(xs)
    for u in form.S.tolist():
        shifted = form.lam(ctx.add(xs, ctx.mul(u, form.gamma)))
        if not (shifted == ctx.add(lx, ctx.mul(u, form.b))).all():
            return False
    return True


def invert_translator_form(form: TranslatorForm) -> Poly:
    """f^-1(y) = y - gamma G(g^-1(lam(y))) with g(x) = x + b G(x)."""
    if not check_translator(form):
        raise HypothesisFailed("gamma is a b-linear translator of lam")
    if not np.isin(form.G(form.S), form.S).all():
        raise HypothesisFailed("G maps S into S")
    ctx = form.ctx
    g = form.g()
    f_pp = np.unique(form.values()).size == ctx.q
    if f_pp != g.is_permutation():
        raise HypothesisFailed("f is a PP iff x + bG(x) permutes S")
    if not f_pp:
        raise NotPP("x + gamma G(lam(x)) is not a permutation")
    xs = ctx.elements()
    out = ctx.sub(xs, ctx.mul(form.G(g.inverse()(form.lam(xs))), form.gamma))
    return lagrange_interpolate(ctx, out)


# -- a h(L(x) + delta) + L1(x) --------------------------------------------------------------


class LinearizedForm:
    def __init__(self, tower: Tower, L: LinearizedPoly, L1: LinearizedPoly, a: int, delta: int, h: Poly):
        self.tower = tower
        self.ctx = tower.ctx
        self.L, self.L1 = L, L1
        self.a = a
        self.delta = delta
        self.h = h

    def values(self) -> np.ndarray:
        ctx = self.ctx
        xs = ctx.elements()
        inner = ctx.add(self.L(xs), self.delta)
        return ctx.add(ctx.mul(self.h(inner), self.a), self.L1(xs))

    def hypotheses(self) -> dict[str, bool]:
        tw = self.tower
        ctx = self.ctx
        in_base = all(tw.in_base(c) for c in self.L.coeffs)
        try:
            gcd_ok = associated_gcd_check(tw, self.L)
        except CoefficientsNotInBaseField:
            gcd_ok = False
        return {
            "L has coefficients in F_q": in_base,
            "L1 has coefficients in F_q": all(tw.in_base(c) for c in self.L1.coeffs),
            "gcd(l(x), x^n - 1) != 1": gcd_ok,
            "a != 0": self.a != 0,
            "L(a) == 0": self.L(self.a) == 0,
            "h(x)^q == h(x)": bool(ctx.in_subfield(self.h.values(), tw.k).all()),
        }

    def kernel_identity(self) -> bool:
        """L(a h(v)) == 0 for every v: h takes F_q values and a is in ker L."""
        hv = np.unique(self.h.values())
        return bool((self.L(self.ctx.mul(hv, self.a)) == 0).all())

    def square(self) -> AgwSquare:
        ctx = self.ctx
        xs = ctx.elements()
        lam = PointMap(xs, ctx.add(self.L(xs), self.delta))
        lam_bar = PointMap(xs, self.L(xs))
        return AgwSquare.from_maps(xs, PointMap(xs, self.values()), lam, lam_bar)


def invert_linearized_form(form: LinearizedForm) -> Poly:
    """f^-1(y) = L1^-1(y - a h(L1^-1(L(y)) + delta))."""
    _raise_first(form.hypotheses())
    ctx = form.ctx
    f_pp = np.unique(form.values()).size == ctx.q
    try:
        M = linearized_inverse(form.tower, form.L1)
    except Singular:
        M = None
    if f_pp != (M is not None):
        raise HypothesisFailed("f permutes F_{q^n} iff L1 does")
    if M is None:
        raise Singular("L1 does not permute F_{q^n}")
    ys = ctx.elements()
    inner = ctx.add(M(form.L(ys)), form.delta)
    out = M(ctx.sub(ys, ctx.mul(form.h(inner), form.a)))
    return lagrange_interpolate(ctx, out)
