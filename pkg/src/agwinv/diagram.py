"""The AGW commutative square and its dual, as explicit tables.

A square is ``lam_bar o f == h o lam`` with ``f: A -> A``, ``lam: A -> S``
(onto), ``lam_bar: A -> Sbar`` (onto) and ``h: S -> Sbar``. When f is a
bijection, inverting both horizontal arrows gives the dual square
``lam o f^-1 == h^-1 o lam_bar``, which is what the closed-form inverse
constructions rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HypothesisFailed, NotBijective, NotPP, NotSurjective, SquareNotCommuting
from .pointmap import PointMap


@dataclass(frozen=True)
class WellDefinednessFailure:
    """Witness that no h exists: lam(a) == lam(b) but lam_bar(f(a)) != lam_bar(f(b))."""

    a: int
    b: int


class AgwSquare:
    """Table form of an AGW square.

    ``strict=True`` (the default) refuses a square that does not commute;
    pass ``strict=False`` to hold an arbitrary quadruple for inspection.
    """

    def __init__(self, A, S, Sbar, f: PointMap, lam: PointMap, lam_bar: PointMap, h: PointMap, strict=True):
        self.A = np.asarray(A, dtype=np.int64)
        self.S = np.asarray(S, dtype=np.int64)
        self.Sbar = np.asarray(Sbar, dtype=np.int64)
        self.f, self.lam, self.lam_bar, self.h = f, lam, lam_bar, h
        if self.S.size != self.Sbar.size:
            raise ValueError("S and Sbar differ in size")
        a_set = set(self.A.tolist())
        if set(f.domain.tolist()) != a_set or not set(f.images.tolist()) <= a_set:
            raise ValueError("f does not map A into A")
        if not lam.is_surjective_onto(self.S):
            raise NotSurjective("lambda is not onto S")
        if not lam_bar.is_surjective_onto(self.Sbar):
            raise NotSurjective("lambda_bar is not onto Sbar")
        if strict and self.violation() is not None:
            raise SquareNotCommuting(f"square fails at a={self.violation()}")

    @classmethod
    def from_maps(cls, A, f: PointMap, lam: PointMap, lam_bar: PointMap, h: PointMap | None = None, strict=True):
        """S and Sbar are taken as the images of lam and lam_bar.

        Without ``h`` the induced map is used; a well-definedness failure
        raises HypothesisFailed carrying the witness pair.
        """
        if h is None:
            h = induced_h(A, f, lam, lam_bar)
            if isinstance(h, WellDefinednessFailure):
                raise HypothesisFailed("square well-defined", f"witness pair ({h.a}, {h.b})")
        return cls(A, lam.image(), lam_bar.image(), f, lam, lam_bar, h, strict=strict)

    def violation(self):
        """First a in A with lam_bar(f(a)) != h(lam(a)), or None."""
        left = self.lam_bar(self.f(self.A))
        lam_vals = self.lam(self.A)
        known = np.isin(lam_vals, self.h.domain)
        right = np.full(self.A.shape, -1, dtype=np.int64)
        right[known] = self.h(lam_vals[known])
        bad = np.nonzero(left != right)[0]
        return int(self.A[bad[0]]) if bad.size else None

    def __repr__(self):
        return f"AgwSquare(|A|={self.A.size}, |S|={self.S.size})"


def verify_square(sq: AgwSquare) -> bool:
    return sq.violation() is None


def agw_is_pp(sq: AgwSquare) -> bool:
    """h bijective S -> Sbar and f injective on every fiber of lam."""
    if not verify_square(sq):
        raise SquareNotCommuting(f"square fails at a={sq.violation()}")
    h_ok = sq.h.is_injective() and sq.h.is_surjective_onto(sq.Sbar)
    if not h_ok:
        return False
    for fiber in sq.lam.fibers().values():
        vals = sq.f(fiber)
        if np.unique(vals).size != vals.size:
            return False
    return True


def induced_h(A, f: PointMap, lam: PointMap, lam_bar: PointMap):
    """The unique h with h(lam(a)) = lam_bar(f(a)), or a witness pair."""
    A = np.asarray(A, dtype=np.int64)
    lam_vals = lam(A)
    target = lam_bar(f(A))
    table: dict[int, tuple[int, int]] = {}
    for a, s, v in zip(A.tolist(), lam_vals.tolist(), target.tolist()):
        if s in table:
            a0, v0 = table[s]
            if v0 != v:
                return WellDefinednessFailure(a0, a)
        else:
            table[s] = (a, v)
    keys = sorted(table)
    return PointMap(keys, [table[k][1] for k in keys])


def build_bar_lambda(A, f: PointMap, lam: PointMap, h_bij: PointMap) -> PointMap:
    """lam_bar constant h(s) on each block f(lam^-1(s)); the square then commutes."""
    A = np.asarray(A, dtype=np.int64)
    if not f.is_permutation():
        raise NotBijective("f is not a bijection of A")
    if not h_bij.is_injective():
        raise NotBijective("h is not a bijection")
    fa = f(A)
    return PointMap(fa, h_bij(lam(A)))


def dual_square_verify(sq: AgwSquare) -> bool:
    """Check lam(f^-1(y)) == h^-1(lam_bar(y)) for every y in A."""
    if not agw_is_pp(sq):
        raise NotPP("square does not certify a permutation")
    f_inv = sq.f.inverse()
    h_inv = sq.h.inverse()
    ys = sq.A
    return bool((sq.lam(f_inv(ys)) == h_inv(sq.lam_bar(ys))).all())
