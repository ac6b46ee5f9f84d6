"""Exact arithmetic in F_p and F_{p^n}.

An element is stored as its rank ``sum(c_i * p**i)`` where ``(c_0, ..., c_{n-1})``
are its coordinates in the power basis of the modulus root ``t``. Ranks
``0..q-1`` enumerate the field, so a function on the field is just an int64
array of length q indexed by rank.

Every field op accepts either Python ints (scalar path) or int64 arrays
(vectorised through :mod:`agwinv.kernels`).
"""

from __future__ import annotations

import functools
import json
import math
import re

import numpy as np

from . import kernels
from .errors import ParseError, Undefined, ZeroInverse

__all__ = [
    "FieldCtx",
    "ff_inv",
    "ff_pow",
    "find_irreducible",
    "find_primitive",
    "get_field",
    "is_irreducible",
    "parse_field_spec",
    "prime_factors",
]


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def is_prime(m: int) -> bool:
    return m >= 2 and prime_factors(m) == [m]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n``, or None."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    n = round(math.log(q, p))
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and p**cand == q:
            return p, cand
    return None


# -- dense polynomials over F_p as low-to-high int lists ----------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(list(a))
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def is_irreducible(coeffs, p: int) -> bool:
    """Rabin's test for a polynomial over F_p (coefficients low-to-high)."""
    f = _trim([c % p for c in coeffs])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**n, f, p), x, p):
        return False
    for r in prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def find_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, ordered by sum(c_i p^i)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return (0, 1)
    for rank in range(p**n):
        low = [(rank // p**i) % p for i in range(n)]
        if low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def find_primitive(ctx: "FieldCtx") -> int:
    """Element of smallest rank whose multiplicative order is q - 1."""
    q = ctx.q
    if q == 2:
        return 1
    checks = [(q - 1) // r for r in prime_factors(q - 1)]
    for cand in range(1, q):
        if all(ctx._raw_pow(cand, e) != 1 for e in checks):
            return cand
    raise AssertionError("unreachable: F_q^* is cyclic")


class FieldCtx:
    """A concrete field F_{p^n}: modulus, primitive element and log tables.

    Immutable after construction; share freely.
    """

    def __init__(self, p: int, n: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if n > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self._pw = [p**i for i in range(n)]
        self.gamma = find_primitive(self)
        self._build_tables()

    # -- bootstrap arithmetic (before tables exist) --------------------------

    def _digits(self, x: int) -> list[int]:
        return [(x // w) % self.p for w in self._pw]

    def _rank(self, digits) -> int:
        return sum(int(c) * w for c, w in zip(digits, self._pw))

    def _raw_mul(self, x: int, y: int) -> int:
        if self.n == 1:
            return x * y % self.p
        prod = _pmulmod(self._digits(x), self._digits(y), list(self.modulus), self.p)
        return self._rank(prod)

    def _raw_pow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, x)
            x = self._raw_mul(x, x)
            e >>= 1
        return r

    def _build_tables(self):
        q, p, n = self.q, self.p, self.n
        qm1 = q - 1
        # multiplication by gamma as an F_p-linear map on digit vectors
        mat = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            mat[:, j] = self._digits(self._raw_mul(self.gamma, p**j))
        pw = np.array(self._pw, dtype=np.int64)
        exp_t = np.empty(2 * qm1, dtype=np.int64)
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        for k in range(qm1):
            exp_t[k] = int(v @ pw)
            v = (mat @ v) % p
        exp_t[qm1:] = exp_t[:qm1]
        log_t = np.full(q, -1, dtype=np.int64)
        log_t[exp_t[:qm1]] = np.arange(qm1, dtype=np.int64)
        if (log_t[1:] < 0).any():
            raise AssertionError("gamma is not primitive")
        exp_t.setflags(write=False)
        log_t.setflags(write=False)
        self.exp_table = exp_t
        self.log_table = log_t

    # -- element conversion --------------------------------------------------

    def elem(self, value) -> int:
        """Coerce an int (prime-field residue) or coefficient vector to a rank."""
        if isinstance(value, (list, tuple, np.ndarray)):
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) > self.n:
                raise ValueError(f"too many coefficients for F_{self.q}")
            return self._rank(coeffs)
        return int(value) % self.p

    def coeffs(self, x: int) -> list[int]:
        return self._digits(int(x))

    def to_json(self, x: int):
        return int(x) if self.n == 1 else self.coeffs(x)

    def format(self, x: int) -> str:
        return json.dumps(self.to_json(x), separators=(",", ":"))

    def parse_elem(self, text: str) -> int:
        text = text.strip()
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            raise ParseError("bad field element", text, 0) from None
        if isinstance(value, int) or (
            isinstance(value, list) and all(isinstance(c, int) for c in value)
        ):
            return self.elem(value)
        raise ParseError("bad field element", text, 0)

    @property
    def t(self) -> int:
        """The modulus root (``p`` as a rank), or 0 in the prime field."""
        return self.p if self.n > 1 else 0

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def __repr__(self):
        if self.n == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.n}, modulus={list(self.modulus)})"

    def describe(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus),
            "gamma": self.to_json(self.gamma),
        }

    # -- arithmetic ------------------------------------------------------------

    def _arr(self, *xs):
        arrs = [np.asarray(x, dtype=np.int64) for x in xs]
        shape = np.broadcast_shapes(*(a.shape for a in arrs))
        return [np.ascontiguousarray(np.broadcast_to(a, shape)).ravel() for a in arrs], shape

    def add(self, x, y):
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            (a, b), shape = self._arr(x, y)
            return kernels.add(a, b, self.p, self.n).reshape(shape)
        p = self.p
        if p == 2:
            return x ^ y
        if self.n == 1:
            return (x + y) % p
        r = 0
        for w in self._pw:
            r += ((x // w + y // w) % p) * w
        return r

    def neg(self, x):
        if isinstance(x, np.ndarray):
            (a,), shape = self._arr(x)
            return kernels.neg(a, self.p, self.n).reshape(shape)
        p = self.p
        if p == 2:
            return x
        if self.n == 1:
            return -x % p
        r = 0
        for w in self._pw:
            r += ((p - (x // w) % p) % p) * w
        return r

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            (a, b), shape = self._arr(x, y)
            return kernels.mul(a, b, self.log_table, self.exp_table).reshape(shape)
        if x == 0 or y == 0:
            return 0
        return int(self.exp_table[self.log_table[x] + self.log_table[y]])

    def inv(self, x):
        if isinstance(x, np.ndarray):
            x = np.asarray(x, dtype=np.int64)
            if (x == 0).any():
                raise ZeroInverse("0 has no inverse")
            return self.exp_table[(self.q - 1 - self.log_table[x]) % (self.q - 1)]
        if x == 0:
            raise ZeroInverse("0 has no inverse")
        return int(self.exp_table[(self.q - 1 - self.log_table[x]) % (self.q - 1)])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        e = int(e)
        qm1 = self.q - 1
        if isinstance(x, np.ndarray):
            x = np.asarray(x, dtype=np.int64)
            zero = x == 0
            if zero.any() and e <= 0:
                if e == 0:
                    raise Undefined("0^0 is rejected; special-case the zero point")
                raise ZeroInverse("0 raised to a negative power")
            out = np.zeros(x.shape, dtype=np.int64)
            out[~zero] = self.exp_table[(self.log_table[x[~zero]] * (e % qm1)) % qm1]
            return out
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                raise Undefined("0^0 is rejected; special-case the zero point")
            raise ZeroInverse("0 raised to a negative power")
        return int(self.exp_table[(int(self.log_table[x]) * (e % qm1)) % qm1])

    def sum(self, xs) -> int:
        xs = np.ascontiguousarray(xs, dtype=np.int64).ravel()
        return int(kernels.field_sum(xs, self.p, self.n))

    def sum_rows(self, mat) -> np.ndarray:
        """Field sum down axis 0 of a 2-D rank array."""
        mat = np.asarray(mat, dtype=np.int64)
        if mat.shape[0] == 0:
            return np.zeros(mat.shape[1:], dtype=np.int64)
        p = self.p
        if p == 2:
            return np.bitwise_xor.reduce(mat, axis=0)
        if self.n == 1:
            return mat.sum(axis=0) % p
        out = np.zeros(mat.shape[1:], dtype=np.int64)
        x = mat.copy()
        for w in self._pw:
            out += ((x % p).sum(axis=0) % p) * w
            x //= p
        return out

    def log(self, x: int) -> int:
        """Discrete log base gamma."""
        if x == 0:
            raise ZeroInverse("log of 0")
        return int(self.log_table[x])

    def order(self, x: int) -> int:
        return (self.q - 1) // math.gcd(self.q - 1, self.log(x))

    def in_subfield(self, x, k: int):
        """Membership in F_{p^k} (elements fixed by x -> x^{p^k})."""
        if self.n % k:
            raise ValueError(f"F_{self.p}^{k} is not a subfield of F_{self.q}")
        xs = np.asarray(x, dtype=np.int64)
        out = np.ones(xs.shape, dtype=bool)
        nz = xs != 0
        out[nz] = self.pow(xs[nz], self.p**k) == xs[nz]
        return out if isinstance(x, np.ndarray) else bool(out)

    def scalar(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> F_q."""
        return int(c) % self.p


def ff_inv(ctx: FieldCtx, a):
    return ctx.inv(a)


def ff_pow(ctx: FieldCtx, a, e: int):
    return ctx.pow(a, e)


@functools.lru_cache(maxsize=64)
def get_field(p: int, n: int = 1, modulus: tuple | None = None) -> FieldCtx:
    return FieldCtx(p, n, modulus)


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:/\s*(\[[^\]]*\]))?\s*$")


def parse_field_spec(text) -> FieldCtx:
    """Parse ``"q"``, ``"p^n"`` or ``"p^n/[c0,...,1]"`` into a (cached) FieldCtx.

    A bare integer is read as the field order, so ``"9"`` means F_3^2.
    """
    text = str(text)
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError("bad field spec", text, 0)
    base = int(m.group(1))
    if m.group(2) is not None:
        p, n = base, int(m.group(2))
        if not is_prime(p) or n < 1:
            raise ParseError(f"{p}^{n} is not a prime power", text, 0)
    else:
        pn = prime_power(base)
        if pn is None:
            raise ParseError(f"{base} is not a prime power", text, 0)
        p, n = pn
    modulus = None
    if m.group(3) is not None:
        modulus = tuple(json.loads(m.group(3)))
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ParseError("modulus must be monic of degree n", text, m.start(3))
        if n > 1 and not is_irreducible(modulus, p):
            raise ParseError("modulus is reducible", text, m.start(3))
    return get_field(p, n, modulus)
