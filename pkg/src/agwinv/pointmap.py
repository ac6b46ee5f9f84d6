"""Explicit function tables on finite sets of non-negative integers."""

from __future__ import annotations

import numpy as np


class PointMap:
    """A function given by its table: ``domain[i] -> images[i]``.

    Domain entries are distinct non-negative ints (field ranks, or labels
    for abstract sets). Instances are treated as immutable.
    """

    __slots__ = ("domain", "images", "_dense")

    def __init__(self, domain, images):
        domain = np.asarray(domain, dtype=np.int64).ravel()
        images = np.asarray(images, dtype=np.int64).ravel()
        if domain.shape != images.shape:
            raise ValueError("domain and images differ in length")
        if np.unique(domain).size != domain.size:
            raise ValueError("domain has duplicates")
        if domain.size and domain.min() < 0:
            raise ValueError("domain entries must be non-negative")
        domain.setflags(write=False)
        images.setflags(write=False)
        self.domain = domain
        self.images = images
        self._dense = None

    @classmethod
    def from_function(cls, domain, fn) -> "PointMap":
        domain = np.asarray(domain, dtype=np.int64)
        return cls(domain, [fn(int(x)) for x in domain])

    @classmethod
    def from_dict(cls, mapping) -> "PointMap":
        keys = sorted(mapping)
        return cls(keys, [mapping[k] for k in keys])

    @classmethod
    def identity(cls, domain) -> "PointMap":
        return cls(domain, domain)

    def _lookup(self):
        if self._dense is None:
            size = int(self.domain.max()) + 1 if self.domain.size else 0
            dense = np.full(size, -1, dtype=np.int64)
            dense[self.domain] = self.images
            self._dense = dense
        return self._dense

    def __call__(self, x):
        dense = self._lookup()
        xs = np.asarray(x, dtype=np.int64)
        if xs.size and (xs.min() < 0 or xs.max() >= dense.size):
            raise KeyError(f"point outside domain: {x}")
        out = dense[xs]
        if (out < 0).any() and not (self.images < 0).any():
            raise KeyError(f"point outside domain: {x}")
        return out if isinstance(x, np.ndarray) else int(out)

    def __len__(self):
        return int(self.domain.size)

    def __eq__(self, other):
        if not isinstance(other, PointMap):
            return NotImplemented
        if len(self) != len(other) or set(self.domain.tolist()) != set(other.domain.tolist()):
            return False
        return bool((self(other.domain) == other.images).all())

    __hash__ = None

    def __repr__(self):
        pairs = ", ".join(f"{a}->{b}" for a, b in zip(self.domain[:8], self.images[:8]))
        more = ", ..." if len(self) > 8 else ""
        return f"PointMap({{{pairs}{more}}})"

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain.tolist(), self.images.tolist()))

    def image(self) -> np.ndarray:
        return np.unique(self.images)

    def is_injective(self) -> bool:
        return np.unique(self.images).size == self.images.size

    def is_surjective_onto(self, target) -> bool:
        return set(np.unique(self.images).tolist()) == set(np.asarray(target).tolist())

    def is_permutation(self) -> bool:
        return self.is_injective() and self.is_surjective_onto(self.domain)

    def inverse(self) -> "PointMap":
        if not self.is_injective():
            raise ValueError("map is not injective")
        return PointMap(self.images, self.domain)

    def compose(self, inner: "PointMap") -> "PointMap":
        """``self o inner`` on ``inner.domain``."""
        return PointMap(inner.domain, self(inner.images))

    def restrict(self, subdomain) -> "PointMap":
        sub = np.asarray(subdomain, dtype=np.int64)
        return PointMap(sub, self(sub))

    def fibers(self) -> dict[int, np.ndarray]:
        """Preimage of each image value, keyed in order of first appearance."""
        out: dict[int, list[int]] = {}
        for a, b in zip(self.domain.tolist(), self.images.tolist()):
            out.setdefault(b, []).append(a)
        return {k: np.array(v, dtype=np.int64) for k, v in out.items()}
