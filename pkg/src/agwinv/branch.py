"""Branch functions and their inverses.

A bijection f given piecewise by f_i on a partition A = A_1 u ... u A_m
inverts as sum_i chi_{B_i}(x) f_i^-1(x) with B_i = f_i(A_i). When the pieces
are cyclotomic cosets the indicators have a closed form; other pieces fall
back to interpolated indicators. The two-branch family on squares and
non-squares of an odd field gets its own criterion, inverse and census.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CyclotomicSys
from .errors import (
    BranchesNotDisjoint,
    DivisionByZero,
    EvenCharacteristic,
    IndexOutOfRange,
    NotInjectiveOnBranch,
    NotPP,
)
from .field import FieldCtx
from .mult import IndexForm, ab_exponents, check_index_pp
from .pointmap import PointMap
from .poly import Poly, lagrange_interpolate


def coset_characteristic(sys: CyclotomicSys, i: int) -> Poly:
    """ell^-1 sum_j (x / gamma^i)^(j s): 1 on C_i, 0 on the other cosets.

    The value at 0 is ell^-1, not 0; multiply by x^(q-1) to kill it.
    """
    ctx = sys.ctx
    ell, s = sys.ell, sys.s
    if not 0 <= i < ell:
        raise IndexOutOfRange(f"coset index {i} outside [0, {ell})")
    inv_ell = ctx.inv(ctx.scalar(ell))
    step = ctx.inv(ctx.pow(sys.gamma, i * s)) if i else 1
    terms = {}
    c = inv_ell
    for j in range(ell):
        terms[j * s] = c
        c = ctx.mul(c, step)
    chi = Poly.from_terms(ctx, terms)
    units = ctx.nonzero()
    want = (sys.coset_labels()[units] == i).astype(np.int64)
    if not (chi(units) == want).all():
        raise AssertionError(f"coset indicator for C_{i} is wrong")
    return chi


def indicator_poly(ctx: FieldCtx, subset) -> Poly:
    """Interpolated 0/1 indicator of an arbitrary subset of F_q."""
    table = np.zeros(ctx.q, dtype=np.int64)
    table[np.asarray(subset, dtype=np.int64)] = 1
    return lagrange_interpolate(ctx, table)


def _union_of_cosets(sys: CyclotomicSys, subset) -> list[int] | None:
    """Coset indices whose union is ``subset``, or None when it is not such a union."""
    subset = np.asarray(subset, dtype=np.int64)
    if subset.size == 0 or (subset == 0).any():
        return None
    labels = sys.coset_labels()
    idx = sorted(set(labels[subset].tolist()))
    if subset.size != len(idx) * sys.s:
        return None
    return idx


@dataclass
class Branch:
    domain: np.ndarray
    f: PointMap
    local_inverse: Poly | None = None

    @property
    def image(self) -> np.ndarray:
        return self.f(self.domain)


class BranchSystem:
    """Pieces (A_i, f_i) of a map on a subset of F_q.

    ``sys`` marks the coset case; ``routing[i]`` is then the coset that
    f sends C_i onto, or -1 when the image is not a single coset.
    """

    def __init__(self, ctx: FieldCtx, branches: list[Branch], sys: CyclotomicSys | None = None):
        self.ctx = ctx
        self.branches = branches
        self.sys = sys
        dom = np.concatenate([b.domain for b in branches]) if branches else np.zeros(0, np.int64)
        if np.unique(dom).size != dom.size:
            raise ValueError("branch domains overlap")
        self.domain = np.sort(dom)

    @classmethod
    def from_fibers(cls, ctx: FieldCtx, f, lam: PointMap) -> "BranchSystem":
        """One branch per fiber of lam, in order of first appearance."""
        fm = f if isinstance(f, PointMap) else PointMap(lam.domain, f(lam.domain))
        branches = [Branch(fib, fm.restrict(fib)) for fib in lam.fibers().values()]
        return cls(ctx, branches)

    @classmethod
    def from_cosets(cls, sys: CyclotomicSys, f, include_zero=True, local_inverses=None) -> "BranchSystem":
        """Branches C_0..C_{ell-1}, preceded by {0} when ``include_zero``."""
        ctx = sys.ctx
        fm = f if isinstance(f, PointMap) else PointMap(ctx.elements(), f(ctx.elements()))
        branches = []
        if include_zero:
            zero = np.zeros(1, dtype=np.int64)
            branches.append(Branch(zero, fm.restrict(zero)))
        for i in range(sys.ell):
            c = sys.coset(i)
            inv = local_inverses[i] if local_inverses is not None else None
            branches.append(Branch(c, fm.restrict(c), inv))
        return cls(ctx, branches, sys)

    @property
    def images(self) -> list[np.ndarray]:
        return [b.image for b in self.branches]

    @property
    def routing(self) -> list[int]:
        if self.sys is None:
            return []
        out = []
        for b in self.branches:
            if (b.domain == 0).any():
                continue
            idx = _union_of_cosets(self.sys, np.unique(b.image))
            out.append(idx[0] if idx is not None and len(idx) == 1 else -1)
        return out

    def check(self):
        seen: set[int] = set()
        for i, b in enumerate(self.branches):
            img = b.image
            if np.unique(img).size != img.size:
                raise NotInjectiveOnBranch(f"branch {i} is not injective")
            s = set(img.tolist())
            if seen & s:
                raise BranchesNotDisjoint(f"branch {i} overlaps an earlier image")
            seen |= s

    def as_pointmap(self) -> PointMap:
        dom = np.concatenate([b.domain for b in self.branches])
        return PointMap(dom, np.concatenate([b.image for b in self.branches]))

    def __repr__(self):
        return f"BranchSystem(q={self.ctx.q}, m={len(self.branches)})"


def branch_indicator(bs: BranchSystem, subset) -> Poly:
    """chi_T: closed form when T is a union of cosets, interpolated otherwise."""
    ctx = bs.ctx
    if bs.sys is not None:
        idx = _union_of_cosets(bs.sys, np.unique(subset))
        if idx is not None:
            chi = Poly.zero(ctx)
            for i in idx:
                chi = chi + coset_characteristic(bs.sys, i)
            # x^(q-1) chi vanishes at 0 and agrees with chi elsewhere
            return chi.shift(ctx.q - 1).normalize()
    return indicator_poly(ctx, subset)


def assemble_branch_inverse(bs: BranchSystem) -> Poly:
    """sum_i chi_{B_i} f_i^-1, each local inverse interpolated unless supplied."""
    bs.check()
    ctx = bs.ctx
    total = Poly.zero(ctx)
    for b in bs.branches:
        img = b.image
        if b.local_inverse is not None:
            inv = b.local_inverse
        else:
            table = np.zeros(ctx.q, dtype=np.int64)
            table[img] = b.domain
            inv = lagrange_interpolate(ctx, table)
        if inv.is_zero():
            continue
        total = total + (branch_indicator(bs, img) * inv).normalize()
    return total.normalize()


# -- index forms split along cosets --------------------------------------------------


def index_local_inverses(form: IndexForm) -> list[Poly]:
    """gamma^(a i s) h(gamma^(i s))^-b x^b on the image of C_i, with a s + b r == 1."""
    if not check_index_pp(form):
        raise NotPP(f"{form} is not a permutation polynomial")
    ctx = form.ctx
    a, b = ab_exponents(form.r, form.s)
    out = []
    for i in range(form.sys.ell):
        gi = ctx.pow(form.sys.gamma, i * form.s)
        hv = form.h(gi)
        if hv == 0:
            raise DivisionByZero(f"h vanishes at gamma^({i} s)")
        c = ctx.mul(ctx.pow(gi, a), ctx.pow(ctx.inv(hv), b))
        out.append(Poly.monomial(ctx, c, b))
    return out


def index_branch_system(form: IndexForm) -> BranchSystem:
    f = PointMap(form.ctx.elements(), form.values())
    return BranchSystem.from_cosets(form.sys, f, local_inverses=index_local_inverses(form))


# -- two branches: squares and non-squares ----------------------------------------------


class TwoBranchForm:
    """0 -> 0, a1 x^r1 on non-squares, a2 x^r2 on squares (q odd)."""

    def __init__(self, ctx: FieldCtx, a1: int, r1: int, a2: int, r2: int):
        if ctx.p == 2:
            raise EvenCharacteristic("two-branch forms need odd q")
        if a1 == 0 or a2 == 0:
            raise ValueError("a1 and a2 must be nonzero")
        for r in (r1, r2):
            if not 1 <= r <= ctx.q - 1:
                raise ValueError(f"exponent {r} outside [1, q-1]")
        self.ctx = ctx
        self.a1, self.r1, self.a2, self.r2 = a1, r1, a2, r2
        self.m = (ctx.q - 1) // 2
        self.sys = CyclotomicSys(ctx, self.m)
        if not (self.poly().values() == self.values()).all():
            raise AssertionError("closed form disagrees with the case definition")

    def values(self) -> np.ndarray:
        ctx = self.ctx
        xs = ctx.elements()
        out = np.zeros(ctx.q, dtype=np.int64)
        sq = self.sys.coset_labels() == 0
        ns = self.sys.coset_labels() == 1
        out[ns] = ctx.mul(ctx.pow(xs[ns], self.r1), self.a1)
        out[sq] = ctx.mul(ctx.pow(xs[sq], self.r2), self.a2)
        return out

    def poly(self) -> Poly:
        """(a1/2) x^r1 (1 - x^m) + (a2/2) x^r2 (1 + x^m)."""
        ctx = self.ctx
        half = ctx.inv(ctx.scalar(2))
        c1 = ctx.mul(self.a1, half)
        c2 = ctx.mul(self.a2, half)
        m = self.m
        terms: dict[int, int] = {}
        for k, c in ((self.r1, c1), (self.r1 + m, ctx.neg(c1)), (self.r2, c2), (self.r2 + m, c2)):
            terms[k] = ctx.add(terms.get(k, 0), c)
        return Poly.from_terms(ctx, terms).normalize()

    def branch_system(self, local_inverses=None) -> BranchSystem:
        f = PointMap(self.ctx.elements(), self.values())
        return BranchSystem.from_cosets(self.sys, f, local_inverses=local_inverses)

    def params(self) -> tuple[int, int, int, int]:
        return self.a1, self.r1, self.a2, self.r2

    def __repr__(self):
        return f"TwoBranchForm(q={self.ctx.q}, a1={self.a1}, r1={self.r1}, a2={self.a2}, r2={self.r2})"


def two_branch_criterion(form: TwoBranchForm) -> bool:
    """gcd(r1 r2, m) == 1 and {(-1)^r1 a1^m, a2^m} == {-1, 1}."""
    ctx = form.ctx
    m = form.m
    if math.gcd(form.r1 * form.r2, m) != 1:
        return False
    u = ctx.pow(form.a1, m)
    if form.r1 % 2:
        u = ctx.neg(u)
    return {u, ctx.pow(form.a2, m)} == {ctx.neg(1), 1}


def two_branch_parity(form: TwoBranchForm) -> bool | None:
    """Parity restatement: PP iff a1 a2 is a square (r1 odd) or a non-square (r1 even).

    None when gcd(r1 r2, m) != 1, where the restatement says nothing.
    """
    if math.gcd(form.r1 * form.r2, form.m) != 1:
        return None
    ctx = form.ctx
    is_square = ctx.pow(ctx.mul(form.a1, form.a2), form.m) == 1
    return is_square if form.r1 % 2 else not is_square


def check_two_branch_pp(form: TwoBranchForm) -> bool:
    crit = two_branch_criterion(form)
    if crit != (np.unique(form.values()).size == form.ctx.q):
        raise AssertionError(f"criterion disagrees with the value table for {form}")
    return crit


def _monomial_local_inverse(ctx: FieldCtx, coset: np.ndarray, a: int, r: int, m: int) -> Poly:
    """c x^b inverting x -> a x^r on one coset, with b r == 1 (mod m)."""
    b = pow(r, -1, m) if m > 1 else 1
    x0 = int(coset[0])
    c = ctx.div(x0, ctx.pow(ctx.mul(a, ctx.pow(x0, r)), b))
    inv = Poly.monomial(ctx, c, b)
    ys = ctx.mul(ctx.pow(coset, r), a)
    if not (inv(ys) == coset).all():
        raise AssertionError("monomial local inverse fails on its coset")
    return inv


def two_branch_local_inverses(form: TwoBranchForm) -> list[Poly]:
    ctx = form.ctx
    # coset 0 holds the squares, coset 1 the non-squares
    return [
        _monomial_local_inverse(ctx, form.sys.coset(0), form.a2, form.r2, form.m),
        _monomial_local_inverse(ctx, form.sys.coset(1), form.a1, form.r1, form.m),
    ]


def invert_two_branch(form: TwoBranchForm) -> Poly:
    if not check_two_branch_pp(form):
        raise NotPP(f"{form} is not a permutation")
    return assemble_branch_inverse(form.branch_system(two_branch_local_inverses(form)))


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def two_branch_formula(q: int) -> int:
    """(q-1)^2 phi((q-1)/2)^2 / 2."""
    return (q - 1) ** 2 * euler_phi((q - 1) // 2) ** 2 // 2


def enumerate_two_branch_pps(ctx: FieldCtx) -> list[tuple[int, int, int, int]]:
    """First (a1, r1, a2, r2) in lexicographic order for each distinct two-branch PP."""
    if ctx.p == 2:
        raise EvenCharacteristic("two-branch forms need odd q")
    q = ctx.q
    m = (q - 1) // 2
    sys = CyclotomicSys(ctx, m)
    ns, sq = sys.coset(1), sys.coset(0)
    units = ctx.nonzero()
    # branch tables for every (a, r) on each coset
    pairs = [(a, r) for a in units.tolist() for r in range(1, q)]
    ns_tab = np.array([ctx.mul(ctx.pow(ns, r), a) for a, r in pairs], dtype=np.int64)
    sq_tab = np.array([ctx.mul(ctx.pow(sq, r), a) for a, r in pairs], dtype=np.int64)
    ns_ok = np.array([np.unique(t).size == m for t in ns_tab])
    sq_ok = np.array([np.unique(t).size == m for t in sq_tab])
    found: dict[bytes, tuple[int, int, int, int]] = {}
    for i in np.nonzero(ns_ok)[0].tolist():
        img1 = np.sort(ns_tab[i])
        for j in np.nonzero(sq_ok)[0].tolist():
            if np.intersect1d(img1, sq_tab[j], assume_unique=True).size:
                continue
            key = ns_tab[i].tobytes() + sq_tab[j].tobytes()
            if key not in found:
                found[key] = (*pairs[i], *pairs[j])
    return list(found.values())


def count_two_branch_pps(ctx: FieldCtx) -> int:
    return len(enumerate_two_branch_pps(ctx))
