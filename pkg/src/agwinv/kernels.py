"""Hot loops over field-element ranks.

Every kernel exists twice: an explicit-loop version compiled with numba and
a vectorised numpy version. ``BACKEND`` (see ``_jit``) picks which one the
public names bind to; ``IMPLS`` exposes both for benchmarking and for the
cross-check tests.

Elements are int64 ranks. Multiplication goes through the log/antilog tables
of the field (``exp_t`` has length ``2*(q-1)`` so two logs can be added
without reduction); addition is digit-wise mod p.
"""

import numpy as np

from ._jit import BACKEND, HAVE_NUMBA, njit

# ---------------------------------------------------------------- numba path


@njit
def _add1(x, y, p, n):
    if p == 2:
        return x ^ y
    if n == 1:
        return (x + y) % p
    r = 0
    pw = 1
    for _ in range(n):
        r += ((x % p + y % p) % p) * pw
        x //= p
        y //= p
        pw *= p
    return r


@njit
def _mul1(x, y, log_t, exp_t):
    if x == 0 or y == 0:
        return 0
    return exp_t[log_t[x] + log_t[y]]


@njit
def _nb_add(a, b, p, n):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = _add1(a[i], b[i], p, n)
    return out


@njit
def _nb_neg(a, p, n):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        x = a[i]
        if p == 2:
            out[i] = x
            continue
        r = 0
        pw = 1
        for _ in range(n):
            r += ((p - x % p) % p) * pw
            x //= p
            pw *= p
        out[i] = r
    return out


@njit
def _nb_mul(a, b, log_t, exp_t):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = _mul1(a[i], b[i], log_t, exp_t)
    return out


@njit
def _digits_to_rank(dig, p):
    r = 0
    pw = 1
    for d in range(dig.size):
        r += (dig[d] % p) * pw
        pw *= p
    return r


@njit
def _nb_sum(a, p, n):
    if p == 2:
        acc = 0
        for i in range(a.size):
            acc ^= a[i]
        return acc
    # raw digit sums, reduced once at the end
    dig = np.zeros(n, dtype=np.int64)
    for i in range(a.size):
        x = a[i]
        for d in range(n):
            dig[d] += x % p
            x //= p
    return _digits_to_rank(dig, p)


@njit
def _nb_horner(coeffs, xs, p, n, log_t, exp_t):
    out = np.empty(xs.size, dtype=np.int64)
    d = coeffs.size
    for i in range(xs.size):
        x = xs[i]
        acc = 0
        for j in range(d - 1, -1, -1):
            acc = _add1(_mul1(acc, x, log_t, exp_t), coeffs[j], p, n)
        out[i] = acc
    return out


@njit
def _nb_dft(vals, step, p, n, qm1, log_t, exp_t):
    m = vals.size
    out = np.zeros(m, dtype=np.int64)
    dig = np.zeros(n, dtype=np.int64)
    for k in range(m):
        sk = (step * k) % qm1
        dig[:] = 0
        acc = 0
        for j in range(m):
            v = vals[j]
            if v != 0:
                x = exp_t[(log_t[v] + sk * j) % qm1]
                if p == 2:
                    acc ^= x
                else:
                    for d in range(n):
                        dig[d] += x % p
                        x //= p
        out[k] = acc if p == 2 else _digits_to_rank(dig, p)
    return out


@njit
def _nb_poly_mul(a, b, p, n, log_t, exp_t):
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in range(a.size):
        c = a[i]
        if c == 0:
            continue
        for j in range(b.size):
            if b[j] != 0:
                out[i + j] = _add1(out[i + j], _mul1(c, b[j], log_t, exp_t), p, n)
    return out


# ---------------------------------------------------------------- numpy path


def _np_add(a, b, p, n):
    if p == 2:
        return np.bitwise_xor(a, b)
    if n == 1:
        return (a + b) % p
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    x = np.array(a, dtype=np.int64)
    y = np.array(b, dtype=np.int64)
    pw = 1
    for _ in range(n):
        out += ((x % p + y % p) % p) * pw
        x //= p
        y //= p
        pw *= p
    return out


def _np_neg(a, p, n):
    if p == 2:
        return np.array(a, dtype=np.int64)
    if n == 1:
        return (-a) % p
    out = np.zeros(a.shape, dtype=np.int64)
    x = np.array(a, dtype=np.int64)
    pw = 1
    for _ in range(n):
        out += ((p - x % p) % p) * pw
        x //= p
        pw *= p
    return out


def _np_mul(a, b, log_t, exp_t):
    a, b = np.broadcast_arrays(a, b)
    nz = (a != 0) & (b != 0)
    out = np.zeros(a.shape, dtype=np.int64)
    out[nz] = exp_t[log_t[a[nz]] + log_t[b[nz]]]
    return out


def _np_sum(a, p, n):
    if a.size == 0:
        return 0
    if p == 2:
        return int(np.bitwise_xor.reduce(a))
    if n == 1:
        return int(a.sum() % p)
    x = np.array(a, dtype=np.int64)
    r = 0
    pw = 1
    for _ in range(n):
        r += int((x % p).sum() % p) * pw
        x //= p
        pw *= p
    return r


def _np_horner(coeffs, xs, p, n, log_t, exp_t):
    acc = np.zeros(xs.size, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = _np_add(_np_mul(acc, xs, log_t, exp_t), c, p, n)
    return acc


def _np_dft(vals, step, p, n, qm1, log_t, exp_t):
    m = vals.size
    nz = np.nonzero(vals)[0]
    logv = log_t[vals[nz]]
    out = np.zeros(m, dtype=np.int64)
    for k in range(m):
        e = (logv + ((step * k) % qm1) * nz) % qm1
        out[k] = _np_sum(exp_t[e], p, n)
    return out


def _np_poly_mul(a, b, p, n, log_t, exp_t):
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in np.nonzero(a)[0]:
        seg = slice(i, i + b.size)
        out[seg] = _np_add(out[seg], _np_mul(a[i], b, log_t, exp_t), p, n)
    return out


_NUMPY = {
    "add": _np_add,
    "neg": _np_neg,
    "mul": _np_mul,
    "sum": _np_sum,
    "horner": _np_horner,
    "dft": _np_dft,
    "poly_mul": _np_poly_mul,
}

IMPLS = {"numpy": _NUMPY}
if HAVE_NUMBA:
    IMPLS["numba"] = {
        "add": _nb_add,
        "neg": _nb_neg,
        "mul": _nb_mul,
        "sum": _nb_sum,
        "horner": _nb_horner,
        "dft": _nb_dft,
        "poly_mul": _nb_poly_mul,
    }

_ACTIVE = IMPLS[BACKEND]

add = _ACTIVE["add"]
neg = _ACTIVE["neg"]
mul = _ACTIVE["mul"]
field_sum = _ACTIVE["sum"]
horner = _ACTIVE["horner"]
dft = _ACTIVE["dft"]
poly_mul = _ACTIVE["poly_mul"]
