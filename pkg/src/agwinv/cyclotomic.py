"""Cyclotomic cosets C_i = gamma^i <gamma^ell> and the roots of unity mu_ell."""

from __future__ import annotations

import numpy as np

from .errors import BadIndex, ZeroArgument
from .field import FieldCtx


class CyclotomicSys:
    """Index data for an exponent s dividing q - 1.

    ``ell = (q-1)/s`` is the index; ``mu`` lists mu_ell as ``omega^j`` for
    ``j = 0..ell-1`` with ``omega = gamma^s``.
    """

    def __init__(self, ctx: FieldCtx, s: int):
        qm1 = ctx.q - 1
        if s < 1 or qm1 % s:
            raise BadIndex(f"s={s} does not divide q-1={qm1}")
        self.ctx = ctx
        self.s = s
        self.ell = qm1 // s
        self.gamma = ctx.gamma
        j = np.arange(self.ell, dtype=np.int64)
        self.mu = ctx.exp_table[(s * j) % qm1].copy()
        self.mu.setflags(write=False)

    @property
    def omega(self) -> int:
        return int(self.mu[1]) if self.ell > 1 else 1

    def coset(self, i: int) -> np.ndarray:
        """Elements of C_i in increasing-log order."""
        qm1 = self.ctx.q - 1
        k = np.arange(self.s, dtype=np.int64)
        return self.ctx.exp_table[(i + self.ell * k) % qm1].copy()

    def coset_labels(self) -> np.ndarray:
        """``labels[x] = coset_index(x)`` for x != 0; ``labels[0] = -1``."""
        labels = self.ctx.log_table % self.ell
        labels = labels.copy()
        labels[0] = -1
        return labels

    def __repr__(self):
        return f"CyclotomicSys(q={self.ctx.q}, s={self.s}, ell={self.ell})"


def coset_index(ctx: FieldCtx, sys: CyclotomicSys, x: int) -> int:
    if x == 0:
        raise ZeroArgument("0 lies in no cyclotomic coset")
    return ctx.log(x) % sys.ell
