"""Inverses of multiplicative and hybrid AGW permutation polynomials.

Covers f(x) = x^r h(x^s), the general product f1(x) h(lam(x)) on F_q^*, and
the hybrid x h(lam(x)). In every case the inverse is assembled from the
dual square: lam(f^-1(y)) = g^-1(lam_bar(y)) pins down the factor that the
inverse of f1 has to undo.
"""

from __future__ import annotations

import math

import numpy as np

from .cyclotomic import CyclotomicSys
from .diagram import AgwSquare
from .errors import DivisionByZero, GcdHypothesisFailed, HypothesisFailed, NotPP
from .field import FieldCtx
from .oracle import as_pointmap, brute_inverse
from .pointmap import PointMap
from .poly import Poly, interpolate_subgroup, lagrange_interpolate, with_value_at_zero


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y == g == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    return old_r, old_x, old_y


def ab_exponents(r: int, s: int) -> tuple[int, int]:
    """Integers (a, b) with a*s + b*r == 1 and 0 <= b < s."""
    g, _, y = xgcd(s, r)
    if g != 1:
        raise NotPP(f"gcd(r, s) = {g}")
    b = y % s
    a = (1 - b * r) // s
    return a, b


def b_exponent(r: int, q: int) -> int:
    """Smallest positive b with b*r == 1 (mod q-1)."""
    if math.gcd(r, q - 1) != 1:
        raise GcdHypothesisFailed(f"gcd(r, q-1) = {math.gcd(r, q - 1)}")
    return pow(r, -1, q - 1) if q > 2 else 1


class IndexForm:
    """f(x) = x^r h(x^s) with s | q-1, and its induced g(x) = x^r h(x)^s on mu_ell."""

    def __init__(self, sys: CyclotomicSys, r: int, h: Poly):
        if r < 1:
            raise ValueError("r must be positive")
        self.sys = sys
        self.ctx = sys.ctx
        self.r = r
        self.h = h
        ctx = self.ctx
        mu = np.asarray(sys.mu)
        self.g = PointMap(mu, ctx.mul(ctx.pow(mu, r), ctx.pow(h(mu), sys.s)))

    @classmethod
    def build(cls, ctx: FieldCtx, r: int, s: int, h: Poly) -> "IndexForm":
        return cls(CyclotomicSys(ctx, s), r, h)

    @property
    def s(self) -> int:
        return self.sys.s

    @property
    def f(self) -> Poly:
        return self.h.substitute_power(self.s).shift(self.r).normalize()

    def values(self) -> np.ndarray:
        """Value table of f on F_q computed straight from the definition."""
        ctx = self.ctx
        xs = ctx.elements()
        return ctx.mul(ctx.pow(xs, self.r), self.h(ctx.pow(xs, self.s)))

    def square(self) -> AgwSquare:
        """The square over F_q^* with lam = lam_bar = x^s and bottom map g."""
        ctx = self.ctx
        units = ctx.nonzero()
        fvals = self.values()[units]
        xs = PointMap(units, ctx.pow(units, self.s))
        return AgwSquare(units, self.sys.mu, self.sys.mu, PointMap(units, fvals), xs, xs, self.g)

    def __repr__(self):
        return f"IndexForm(q={self.ctx.q}, r={self.r}, s={self.s}, h={self.h})"


def check_index_pp(form: IndexForm) -> bool:
    """gcd(r, s) == 1 and g permutes mu_ell."""
    return math.gcd(form.r, form.s) == 1 and form.g.is_permutation()


def g_inverse_on_mu(form: IndexForm) -> tuple[PointMap, Poly]:
    """Inverse table of g on mu_ell and its interpolant G of degree < ell."""
    if not check_index_pp(form):
        raise NotPP(f"{form} is not a permutation polynomial")
    mu = np.asarray(form.sys.mu)
    g_inv = form.g.inverse()
    table = PointMap(mu, g_inv(mu))
    G = interpolate_subgroup(form.ctx, form.s, table.images)
    return table, G


def _assemble(form: IndexForm, b: int, factor_on_mu: np.ndarray) -> Poly:
    """x^b K(x^s) where K interpolates ``factor_on_mu`` over mu_ell; f^-1(0) = 0."""
    K = interpolate_subgroup(form.ctx, form.s, factor_on_mu)
    return with_value_at_zero(K.substitute_power(form.s).shift(b).normalize(), 0)


def invert_index_b(form: IndexForm) -> Poly:
    """f^-1(x) = x^b h(G(x^s))^-b with b r == 1 (mod q-1)."""
    ctx = form.ctx
    _, G = g_inverse_on_mu(form)
    b = b_exponent(form.r, ctx.q)
    mu = np.asarray(form.sys.mu)
    hg = form.h(G(mu))
    if (hg == 0).any():
        raise DivisionByZero("h vanishes on g^-1(mu_ell)")
    return _assemble(form, b, ctx.pow(ctx.inv(hg), b))


def index_h_prime(form: IndexForm) -> tuple[int, int, Poly]:
    """(a, b, h') with f^-1(x) = x^b h'(x^s) and h'(z) = G(z)^a h(G(z))^-b on mu_ell."""
    ctx = form.ctx
    _, G = g_inverse_on_mu(form)
    a, b = ab_exponents(form.r, form.s)
    mu = np.asarray(form.sys.mu)
    gv = G(mu)
    hg = form.h(gv)
    if (hg == 0).any():
        raise DivisionByZero("h vanishes on g^-1(mu_ell)")
    # G values lie in mu_ell, so a negative a is a power of an inverse
    ga = ctx.pow(gv if a >= 0 else ctx.inv(gv), abs(a))
    factor = ctx.mul(ga, ctx.pow(ctx.inv(hg), b))
    return a, b, interpolate_subgroup(ctx, form.s, factor)


def invert_index_ab(form: IndexForm) -> Poly:
    """f^-1(x) = G(x^s)^a x^b h(G(x^s))^-b with a s + b r == 1."""
    _, b, hp = index_h_prime(form)
    return with_value_at_zero(hp.substitute_power(form.s).shift(b).normalize(), 0)


def g_inverse_identity_holds(form: IndexForm, f_inv) -> bool:
    """Check G(y^s) == y^(s b) h'(y^s)^s on F_q^*, with h' read off f_inv.

    ``f_inv`` is any realisation of the inverse (Poly or table); h' is
    recovered as f_inv(y) / y^b and must depend on y^s only.
    """
    ctx = form.ctx
    _, G = g_inverse_on_mu(form)
    _, b = ab_exponents(form.r, form.s)
    ys = ctx.nonzero()
    inv_vals = f_inv(ys) if isinstance(f_inv, Poly) else as_pointmap(ctx, f_inv)(ys)
    ysb = ctx.pow(ys, b) if b else np.ones_like(ys)
    hp_vals = ctx.div(inv_vals, ysb)
    ys_s = ctx.pow(ys, form.s)
    # h' is a function of y^s
    seen: dict[int, int] = {}
    for z, v in zip(ys_s.tolist(), hp_vals.tolist()):
        if seen.setdefault(z, v) != v:
            return False
    lhs = G(ys_s)
    rhs = ctx.mul(ctx.pow(ysb, form.s), ctx.pow(hp_vals, form.s))
    return bool((lhs == rhs).all())


# -- general multiplicative form on F_q^* -------------------------------------------


def _unit_map(ctx, m) -> PointMap:
    units = ctx.nonzero()
    if isinstance(m, PointMap):
        return m.restrict(units)
    return PointMap(units, m(units))


class GeneralMultForm:
    """f(x) = f1(x) h(lam(x)) as a permutation of F_q^*.

    ``lam`` and ``lam_bar`` are Polys or PointMaps on F_q^*; the bottom map g
    of the square is induced from them.
    """

    def __init__(self, ctx: FieldCtx, f1, h: Poly, lam, lam_bar):
        self.ctx = ctx
        self.f1 = f1
        self.h = h
        self.lam = _unit_map(ctx, lam)
        self.lam_bar = _unit_map(ctx, lam_bar)
        units = ctx.nonzero()
        f1_units = _unit_map(ctx, f1)
        if not f1_units.is_permutation():
            raise HypothesisFailed("f1 permutes F_q^*")
        self.f1_units = f1_units
        fvals = ctx.mul(f1_units.images, h(self.lam(units)))
        if (fvals == 0).any() or np.unique(fvals).size != units.size:
            raise NotPP("f1(x) h(lam(x)) does not permute F_q^*")
        self.fmap = PointMap(units, fvals)
        self.square = AgwSquare.from_maps(units, self.fmap, self.lam, self.lam_bar)

    @property
    def g(self) -> PointMap:
        return self.square.h


def invert_mult_general(form: GeneralMultForm) -> Poly:
    """f^-1(y) = f1^-1(y / h(g^-1(lam_bar(y)))) on F_q^*; the result sends 0 to 0."""
    ctx = form.ctx
    ys = ctx.nonzero()
    g_inv = form.g.inverse()
    denom = form.h(g_inv(form.lam_bar(ys)))
    if (denom == 0).any():
        raise DivisionByZero("h(g^-1(lam_bar(y))) vanishes")
    f1_inv = form.f1_units.inverse()
    table = np.zeros(ctx.q, dtype=np.int64)
    table[ys] = f1_inv(ctx.div(ys, denom))
    return lagrange_interpolate(ctx, table)


# -- hybrid x h(lam(x)) ------------------------------------------------------------------


def _full_map(ctx, m) -> PointMap:
    return as_pointmap(ctx, m)


def hybrid_hypotheses(ctx: FieldCtx, h: Poly, lam, k: Poly, S=None) -> dict[str, bool]:
    lam_m = _full_map(ctx, lam)
    xs = ctx.elements()
    lam_vals = lam_m(xs)
    h_img = np.unique(h(lam_vals))
    S = np.union1d(h_img, [0]) if S is None else np.asarray(S, dtype=np.int64)
    out = {
        "h(0) != 0": h(0) != 0,
        "k(0) == 0": k(0) == 0,
        "0 in S": bool(np.isin(0, S)),
        "h(lam(F)) subset S": bool(np.isin(h_img, S).all()),
    }
    ok = True
    for a in S.tolist():
        if not (lam_m(ctx.mul(xs, a)) == ctx.mul(lam_vals, k(a))).all():
            ok = False
            break
    out["lam(a x) == k(a) lam(x)"] = ok
    return out


def hybrid_g(ctx: FieldCtx, h: Poly, lam, k: Poly) -> PointMap:
    """g(x) = x k(h(x)) on lam(F_q)."""
    img = np.unique(_full_map(ctx, lam).images)
    return PointMap(img, ctx.mul(img, k(h(img))))


def hybrid_square(ctx: FieldCtx, h: Poly, lam, k: Poly) -> AgwSquare:
    lam_m = _full_map(ctx, lam)
    xs = ctx.elements()
    fvals = ctx.mul(xs, h(lam_m(xs)))
    g = hybrid_g(ctx, h, lam, k)
    img = g.domain
    return AgwSquare(xs, img, img, PointMap(xs, fvals), lam_m, lam_m, g)


def invert_hybrid_xh(ctx: FieldCtx, h: Poly, lam, k: Poly, S=None) -> Poly:
    """f^-1(y) = y / h(g^-1(lam(y))) for f(x) = x h(lam(x))."""
    hyp = hybrid_hypotheses(ctx, h, lam, k, S)
    for name, ok in hyp.items():
        if not ok:
            raise HypothesisFailed(name)
    lam_m = _full_map(ctx, lam)
    xs = ctx.elements()
    f_pp = np.unique(ctx.mul(xs, h(lam_m(xs)))).size == ctx.q
    g = hybrid_g(ctx, h, lam, k)
    if f_pp != g.is_permutation():
        raise HypothesisFailed("f permutes F iff g permutes lam(F)")
    if not f_pp:
        raise NotPP("x h(lam(x)) is not a permutation")
    denom = h(g.inverse()(lam_m(xs)))
    if (denom == 0).any():
        raise DivisionByZero("h(g^-1(lam(y))) vanishes")
    return lagrange_interpolate(ctx, ctx.div(xs, denom))


def oracle_unit_inverse(ctx: FieldCtx, fmap: PointMap) -> PointMap:
    """Brute-force inverse of a permutation of F_q^*."""
    return brute_inverse(ctx, fmap)
