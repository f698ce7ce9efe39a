"""numpy versions of the hot loops; always available."""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _indicators(tm: np.ndarray, p: int) -> list[np.ndarray]:
    return [(tm == k).astype(np.float64) for k in range(p)]


def walsh_counts(values: np.ndarray, tm: np.ndarray, p: int) -> np.ndarray:
    """counts[w, j] = #{x : f(x) - Tr(w x) = j mod p}."""
    return walsh_counts_batch(values[None, :], tm, p)[0]


def walsh_counts_batch(values: np.ndarray, tm: np.ndarray, p: int) -> np.ndarray:
    """Same as walsh_counts for a (B, N) stack of functions; returns (B, N, p)."""
    values = np.asarray(values)
    onehot = np.stack([(values == v).astype(np.float64) for v in range(p)])  # (p, B, N)
    out = np.zeros((values.shape[0], tm.shape[0], p), dtype=np.float64)
    for k, ind in enumerate(_indicators(tm, p)):
        prod = np.einsum("wx,vbx->bwv", ind, onehot, optimize=True)
        # f(x) = v and Tr(wx) = k contribute to j = v - k
        out += np.roll(prod, -k, axis=2)
    return np.rint(out).astype(np.int64)


def hyperplane_census(values: np.ndarray, tm: np.ndarray, p: int) -> np.ndarray:
    """census[w, v] = #{x : Tr(w x) = 0 and f(x) = v}."""
    onehot = np.stack([(values == v) for v in range(p)], axis=1).astype(np.float64)
    return np.rint((tm == 0).astype(np.float64) @ onehot).astype(np.int64)


def weight_counts(tm: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Hamming weight of (Tr(w d))_{d in columns} for every w."""
    return np.count_nonzero(tm[:, columns], axis=1).astype(np.int64)


def find_covering_pair(supports: np.ndarray) -> tuple[int, int]:
    """First (i, j), i != j, with supp(j) a subset of supp(i); (-1, -1) if none."""
    sup = np.asarray(supports, dtype=bool)
    outside = ~sup
    for i in range(sup.shape[0]):
        # j is covered by i iff j has nothing outside supp(i)
        hit = ~(sup & outside[i]).any(axis=1)
        hit[i] = False
        js = np.flatnonzero(hit)
        if len(js):
            return i, int(js[0])
    return -1, -1
