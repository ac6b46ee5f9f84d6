"""Linearized polynomials L(x) = sum a_i x^(q^i) on a tower F_{q^n} / F_q.

The tower lives inside one FieldCtx F_{p^N}: the base field is the subfield
F_q, q = p^k, and n = N / k. Coordinates over F_q are taken in the power
basis 1, t, ..., t^(n-1) of the modulus root t.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from .errors import CoefficientsNotInBaseField, ParseError, Singular
from .field import FieldCtx
from .poly import Poly


class Tower:
    def __init__(self, ctx: FieldCtx, k: int = 1):
        if k < 1 or ctx.n % k:
            raise ValueError(f"F_{ctx.p}^{k} is not a subfield of F_{ctx.q}")
        self.ctx = ctx
        self.k = k
        self.q = ctx.p**k
        self.n = ctx.n // k
        elems = ctx.elements()
        self.base = elems[ctx.in_subfield(elems, k)]
        self.basis = [ctx.pow(ctx.t, j) if j else 1 for j in range(self.n)]
        coords = np.empty((ctx.q, self.n), dtype=np.int64)
        seen = np.zeros(ctx.q, dtype=bool)
        for combo in itertools.product(self.base.tolist(), repeat=self.n):
            x = 0
            for c, b in zip(combo, self.basis):
                x = ctx.add(x, ctx.mul(c, b))
            coords[x] = combo
            seen[x] = True
        if not seen.all():
            raise AssertionError("power basis does not span the tower")
        self._coords = coords

    def coords(self, x) -> np.ndarray:
        return self._coords[x]

    def from_coords(self, coords) -> int:
        ctx = self.ctx
        x = 0
        for c, b in zip(coords, self.basis):
            x = ctx.add(x, ctx.mul(int(c), b))
        return x

    def in_base(self, x) -> bool:
        return bool(self.ctx.in_subfield(int(x), self.k))

    def __repr__(self):
        return f"Tower(F_{self.q}^{self.n} over F_{self.q})"


class LinearizedPoly:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > tower.n:
            raise ValueError(f"at most {tower.n} q-power coefficients on this tower")
        coeffs += [0] * (tower.n - len(coeffs))
        self.tower = tower
        self.coeffs = tuple(coeffs)

    @classmethod
    def identity(cls, tower):
        return cls(tower, [1])

    def __call__(self, x):
        ctx = self.tower.ctx
        q = self.tower.q
        if isinstance(x, np.ndarray):
            acc = np.zeros(x.shape, dtype=np.int64)
            for i, a in enumerate(self.coeffs):
                if a:
                    acc = ctx.add(acc, ctx.mul(ctx.pow(x, q**i), a))
            return acc
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a and x:
                acc = ctx.add(acc, ctx.mul(a, ctx.pow(x, q**i)))
        return acc

    def values(self) -> np.ndarray:
        return self(self.tower.ctx.elements())

    def to_poly(self) -> Poly:
        q = self.tower.q
        return Poly.from_terms(self.tower.ctx, {q**i: a for i, a in enumerate(self.coeffs) if a})

    def compose(self, inner: "LinearizedPoly") -> "LinearizedPoly":
        """``self o inner``, with x^(q^n) folded back to x."""
        ctx = self.tower.ctx
        n, q = self.tower.n, self.tower.q
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(inner.coeffs):
                if b:
                    term = ctx.mul(a, ctx.pow(b, q**i))
                    out[(i + j) % n] = ctx.add(out[(i + j) % n], term)
        return LinearizedPoly(self.tower, out)

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.tower.ctx is other.tower.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LinearizedPoly({format_linearized(self)})"


# -- matrices over the base field ------------------------------------------------


def mat_mul(ctx: FieldCtx, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            out[i, j] = ctx.sum(ctx.mul(a[i, :], b[:, j]))
    return out


def solve(ctx: FieldCtx, a, rhs) -> np.ndarray:
    """Gauss-Jordan solve ``a @ X = rhs``; raises Singular."""
    a = np.array(a, dtype=np.int64)
    rhs = np.array(rhs, dtype=np.int64)
    vec = rhs.ndim == 1
    if vec:
        rhs = rhs[:, None]
    m = a.shape[0]
    aug = np.concatenate([a, rhs], axis=1)
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r, col] != 0), None)
        if piv is None:
            raise Singular("matrix is not invertible")
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = ctx.mul(aug[col], ctx.inv(int(aug[col, col])))
        for r in range(m):
            if r != col and aug[r, col] != 0:
                aug[r] = ctx.sub(aug[r], ctx.mul(aug[col], int(aug[r, col])))
    out = aug[:, m:]
    return out[:, 0] if vec else out


def mat_inv(ctx: FieldCtx, a) -> np.ndarray:
    m = np.asarray(a).shape[0]
    return solve(ctx, a, np.eye(m, dtype=np.int64))


def linearized_matrix(tower: Tower, L: LinearizedPoly) -> np.ndarray:
    """Matrix of x -> L(x) over F_q; column j holds the coordinates of L(t^j)."""
    cols = [tower.coords(L(b)) for b in tower.basis]
    return np.array(cols, dtype=np.int64).T


def linearized_inverse(tower: Tower, L1: LinearizedPoly) -> LinearizedPoly:
    """The linearized polynomial inducing the inverse map of L1.

    Inverts the matrix, then recovers q-power coefficients from the images of
    the basis by solving the Moore system ``sum_i b_i t_j^(q^i) = y_j``.
    """
    ctx = tower.ctx
    minv = mat_inv(ctx, linearized_matrix(tower, L1))
    images = [tower.from_coords(minv[:, j]) for j in range(tower.n)]
    moore = np.array(
        [[ctx.pow(b, tower.q**i) if b else 0 for i in range(tower.n)] for b in tower.basis],
        dtype=np.int64,
    )
    coeffs = solve(ctx, moore, np.array(images, dtype=np.int64))
    return LinearizedPoly(tower, coeffs.tolist())


def associated_poly(tower: Tower, L: LinearizedPoly) -> Poly:
    for i, a in enumerate(L.coeffs):
        if not tower.in_base(a):
            raise CoefficientsNotInBaseField(f"a_{i} = {tower.ctx.format(a)} is not in F_{tower.q}")
    return Poly(tower.ctx, list(L.coeffs))


def associated_gcd_check(tower: Tower, L: LinearizedPoly) -> bool:
    """Whether gcd(l(x), x^n - 1) != 1 for the associated polynomial l."""
    ctx = tower.ctx
    l = associated_poly(tower, L)
    xn1 = Poly.from_terms(ctx, {tower.n: 1, 0: ctx.neg(1)})
    return l.gcd(xn1).degree >= 1


def kernel_elements(tower: Tower, L: LinearizedPoly) -> np.ndarray:
    vals = L.values()
    return np.nonzero(vals == 0)[0]


def format_linearized(L: LinearizedPoly) -> str:
    ctx = L.tower.ctx
    return "L:" + json.dumps([ctx.to_json(a) for a in L.coeffs], separators=(",", ":"))


def parse_linearized(tower: Tower, text: str) -> LinearizedPoly:
    """Parse ``"L:[a0,a1,...]"`` (entries are ints or coefficient vectors)."""
    body = text.strip()
    if not body.startswith("L:"):
        raise ParseError("linearized literal must start with 'L:'", text, 0)
    try:
        raw = json.loads(body[2:])
    except json.JSONDecodeError:
        raise ParseError("bad coefficient list", text, 2) from None
    if not isinstance(raw, list):
        raise ParseError("bad coefficient list", text, 2)
    if len(raw) > tower.n:
        raise ParseError(f"more than {tower.n} coefficients", text, 2)
    ctx = tower.ctx
    coeffs = []
    for v in raw:
        if isinstance(v, int):
            coeffs.append(ctx.scalar(v))
        elif isinstance(v, list) and all(isinstance(c, int) for c in v):
            coeffs.append(ctx.elem(v))
        else:
            raise ParseError("bad coefficient", text, 2)
    return LinearizedPoly(tower, coeffs)
