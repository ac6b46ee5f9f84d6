"""Dense univariate polynomials over a FieldCtx.

Coefficients are int64 ranks, low-to-high, with no trailing zeros. Functions
on F_q are compared through the normal form of degree < q
(:meth:`Poly.normalize`), which is what ``lagrange_interpolate`` returns.
"""

from __future__ import annotations

import json

import numpy as np

from . import kernels
from .errors import DomainNotTotal, ParseError
from .field import FieldCtx
from .pointmap import PointMap


def _trimmed(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.int64).ravel()
    nz = np.nonzero(c)[0]
    c = c[: nz[-1] + 1] if nz.size else c[:0]
    return np.ascontiguousarray(c)


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        c = _trimmed(coeffs)
        c.setflags(write=False)
        self.coeffs = c

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def const(cls, ctx, c: int):
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1])

    @classmethod
    def monomial(cls, ctx, c: int, k: int):
        out = np.zeros(k + 1, dtype=np.int64)
        out[k] = c
        return cls(ctx, out)

    @classmethod
    def from_terms(cls, ctx, terms):
        """Build from ``{exponent: coefficient}``, adding repeated exponents."""
        terms = dict(terms)
        if not terms:
            return cls(ctx)
        out = np.zeros(max(terms) + 1, dtype=np.int64)
        for k, c in terms.items():
            out[k] = ctx.add(int(out[k]), c)
        return cls(ctx, out)

    # -- basic properties -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial's -infinity."""
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def coeff(self, k: int) -> int:
        return int(self.coeffs[k]) if 0 <= k < self.coeffs.size else 0

    @property
    def lead(self) -> int:
        return int(self.coeffs[-1]) if self.coeffs.size else 0

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx.q == other.ctx.q and self.ctx.modulus == other.ctx.modulus and (
            np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.ctx.q, self.ctx.modulus, self.coeffs.tobytes()))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    # -- evaluation -------------------------------------------------------------

    def __call__(self, x):
        ctx = self.ctx
        if isinstance(x, np.ndarray):
            xs = np.ascontiguousarray(x, dtype=np.int64).ravel()
            out = kernels.horner(self.coeffs, xs, ctx.p, ctx.n, ctx.log_table, ctx.exp_table)
            return out.reshape(np.shape(x))
        acc = 0
        for c in self.coeffs[::-1].tolist():
            acc = ctx.add(ctx.mul(acc, x), c)
        return acc

    def values(self) -> np.ndarray:
        """Value table on F_q indexed by rank."""
        return self(self.ctx.elements())

    # -- arithmetic -------------------------------------------------------------

    def _pad(self, size):
        out = np.zeros(size, dtype=np.int64)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __add__(self, other: "Poly") -> "Poly":
        size = max(self.coeffs.size, other.coeffs.size)
        return Poly(self.ctx, self.ctx.add(self._pad(size), other._pad(size)))

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, self.ctx.neg(self.coeffs.copy()))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        ctx = self.ctx
        return Poly(
            ctx,
            kernels.poly_mul(self.coeffs, other.coeffs, ctx.p, ctx.n, ctx.log_table, ctx.exp_table),
        )

    def scale(self, c: int) -> "Poly":
        return Poly(self.ctx, self.ctx.mul(self.coeffs.copy(), int(c)))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly(self.ctx, np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]))

    def substitute_power(self, s: int) -> "Poly":
        """h(x) -> h(x^s)."""
        if self.is_zero() or s == 1:
            return self
        out = np.zeros(s * self.degree + 1, dtype=np.int64)
        out[::s] = self.coeffs
        return Poly(self.ctx, out)

    def pow(self, e: int, *, reduce=True) -> "Poly":
        result = Poly.const(self.ctx, 1)
        base = self.normalize() if reduce else self
        while e:
            if e & 1:
                result = result * base
                if reduce:
                    result = result.normalize()
            e >>= 1
            if e:
                base = base * base
                if reduce:
                    base = base.normalize()
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(x))`` reduced mod x^q - x at every step."""
        acc = Poly(self.ctx)
        for c in self.coeffs[::-1].tolist():
            acc = (acc * inner + Poly.const(self.ctx, c)).normalize()
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = self.coeffs.copy()
        dq = self.degree - other.degree
        if dq < 0:
            return Poly(ctx), self
        quo = np.zeros(dq + 1, dtype=np.int64)
        inv_lead = ctx.inv(other.lead)
        neg_div = ctx.neg(other.coeffs.copy())
        for k in range(dq, -1, -1):
            c = ctx.mul(int(rem[k + other.degree]), inv_lead)
            if c:
                quo[k] = c
                seg = slice(k, k + other.coeffs.size)
                rem[seg] = ctx.add(rem[seg], ctx.mul(neg_div, c))
        return Poly(ctx, quo), Poly(ctx, rem[: max(other.degree, 0)])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def normalize(self) -> "Poly":
        """The representative of degree < q of the same function on F_q.

        Exponents e >= q fold to ((e - 1) mod (q - 1)) + 1; the constant
        term never moves.
        """
        q = self.ctx.q
        c = self.coeffs
        if c.size <= q:
            return self
        tail = c[1:]
        pad = (-tail.size) % (q - 1)
        rows = np.concatenate([tail, np.zeros(pad, dtype=np.int64)]).reshape(-1, q - 1)
        out = np.zeros(q, dtype=np.int64)
        out[0] = c[0]
        out[1:] = self.ctx.sum_rows(rows)
        return Poly(self.ctx, out)

    def to_json(self):
        return str(self)


def poly_eval(ctx: FieldCtx, f: Poly, x):
    return f(x)


def poly_normalize(ctx: FieldCtx, f: Poly) -> Poly:
    return f.normalize()


def function_table(ctx: FieldCtx, f) -> np.ndarray:
    """Value table of a Poly, PointMap or length-q array on the whole field."""
    if isinstance(f, Poly):
        return f.values()
    if isinstance(f, PointMap):
        return _total_table(ctx, f)
    arr = np.asarray(f, dtype=np.int64)
    if arr.shape != (ctx.q,):
        raise DomainNotTotal(f"expected a table of length {ctx.q}")
    return arr


def _total_table(ctx, pm: PointMap) -> np.ndarray:
    if len(pm) != ctx.q or set(pm.domain.tolist()) != set(range(ctx.q)):
        missing = sorted(set(range(ctx.q)) - set(pm.domain.tolist()))
        raise DomainNotTotal(f"no image for {missing[:5]}")
    out = np.empty(ctx.q, dtype=np.int64)
    out[pm.domain] = pm.images
    return out


def lagrange_interpolate(ctx: FieldCtx, table) -> Poly:
    """Unique polynomial of degree < q with the given value table.

    Uses the closed form over F_q: for 1 <= k <= q-2 the coefficient of x^k
    is ``-sum_{a != 0} F(a) a^{-k}``, the top one is ``-sum_a F(a)`` and the
    constant is ``F(0)``. The inner sums run as a multiplicative DFT over
    the powers of gamma.
    """
    vals = function_table(ctx, table)
    q = ctx.q
    qm1 = q - 1
    on_units = np.ascontiguousarray(vals[ctx.exp_table[:qm1]])
    d = kernels.dft(on_units, qm1 - 1 if qm1 > 1 else 0, ctx.p, ctx.n, qm1, ctx.log_table, ctx.exp_table)
    coeffs = np.zeros(q, dtype=np.int64)
    coeffs[0] = vals[0]
    coeffs[1:qm1] = ctx.neg(d[1:qm1])
    coeffs[qm1] = ctx.neg(ctx.add(int(vals[0]), int(d[0])))
    return Poly(ctx, coeffs)


def interpolate_subgroup(ctx: FieldCtx, s: int, values) -> Poly:
    """Polynomial of degree < ell matching ``values[j]`` at gamma^(s*j).

    The points are the ell-th roots of unity, ell = (q-1)/s, so the
    coefficients are an inverse DFT scaled by 1/ell.
    """
    qm1 = ctx.q - 1
    vals = np.ascontiguousarray(values, dtype=np.int64)
    ell = qm1 // s
    if vals.size != ell:
        raise ValueError(f"expected {ell} values")
    d = kernels.dft(vals, (-s) % qm1, ctx.p, ctx.n, qm1, ctx.log_table, ctx.exp_table)
    return Poly(ctx, ctx.mul(d, ctx.inv(ctx.scalar(ell))))


def interpolate_points(ctx: FieldCtx, points, values) -> Poly:
    """Newton-form interpolation through arbitrary distinct points."""
    xs = [int(v) for v in points]
    ys = [int(v) for v in values]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    coef = list(ys)
    m = len(xs)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = ctx.div(ctx.sub(coef[i], coef[i - 1]), ctx.sub(xs[i], xs[i - j]))
    acc = Poly(ctx)
    for i in range(m - 1, -1, -1):
        acc = acc * Poly(ctx, [ctx.neg(xs[i]), 1]) + Poly.const(ctx, coef[i])
    return acc


def with_value_at_zero(f: Poly, v: int) -> Poly:
    """Same function on F_q^*, value ``v`` at 0 (adds a multiple of 1 - x^(q-1))."""
    ctx = f.ctx
    f = f.normalize()
    delta = ctx.sub(v, f.coeff(0))
    if delta == 0:
        return f
    bump = Poly.const(ctx, 1) - Poly.monomial(ctx, 1, ctx.q - 1)
    return (f + bump.scale(delta)).normalize()


# -- literal grammar ------------------------------------------------------------


def format_poly(f: Poly) -> str:
    ctx = f.ctx
    if f.is_zero():
        return "0"
    terms = []
    for k in range(f.degree, -1, -1):
        c = int(f.coeffs[k])
        if c == 0:
            continue
        cs = ctx.format(c)
        if k == 0:
            terms.append(cs)
        else:
            mono = "x" if k == 1 else f"x^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return "+".join(terms)


def _split_terms(text):
    """Split on top-level '+'/'-' keeping each sign and start offset."""
    out = []
    depth = 0
    start = 0
    sign = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunk = text[start:i]
            if chunk.strip():
                out.append((sign, chunk, start))
            elif i > 0 and text[:i].strip():
                raise ParseError("empty term", text, i)
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    chunk = text[start:]
    if not chunk.strip():
        raise ParseError("empty term", text, start)
    out.append((sign, chunk, start))
    return out


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Parse ``"c*x^k + ... "``; c is an int or ``[c0,c1,...]``."""
    if not text or not text.strip():
        raise ParseError("empty polynomial", text or "", 0)
    terms: dict[int, int] = {}
    for sign, chunk, offset in _split_terms(text):
        body = chunk.strip()
        pos = offset + chunk.index(body[0])
        if "x" in body:
            left, _, right = body.partition("x")
            left = left.strip()
            if left.endswith("*"):
                left = left[:-1].strip()
            right = right.strip()
            if right == "":
                k = 1
            elif right.startswith("^") and right[1:].strip().isdigit():
                k = int(right[1:].strip())
            else:
                raise ParseError("bad exponent", text, pos + body.index("x") + 1)
        else:
            left, k = body, 0
        if left == "":
            c = 1
        else:
            try:
                value = json.loads(left)
            except json.JSONDecodeError:
                raise ParseError("bad coefficient", text, pos) from None
            if isinstance(value, int):
                c = ctx.scalar(value)
            elif isinstance(value, list) and all(isinstance(v, int) for v in value):
                if len(value) > ctx.n:
                    raise ParseError("coefficient vector too long", text, pos)
                c = ctx.elem(value)
            else:
                raise ParseError("bad coefficient", text, pos)
        if sign < 0:
            c = ctx.neg(c)
        terms[k] = ctx.add(terms.get(k, 0), c)
    return Poly.from_terms(ctx, terms)
