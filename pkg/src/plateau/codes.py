"""Linear codes C_D = {(Tr(w d))_{d in D} : w in F_{p^m}} from defining sets."""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import NotBalanced, NotOrbitClosed, RankDeficient
from .field import FieldCtx, quad_char
from .pfunc import PFunction
from .tables import ClosedFormDistribution, table_distribution

__all__ = [
    "KINDS",
    "FULL_KINDS",
    "DefiningSet",
    "LinearCode",
    "build_defining_set",
    "expected_size",
    "puncture",
    "brute_force_distribution",
    "closed_form_distribution",
    "generator_matrix",
    "rank_mod_p",
    "distribution_csv",
]

FULL_KINDS = ("D0", "D1", "D2", "D01", "D02", "D12", "Dsq", "Dnsq", "Dsq0", "Dnsq0")
KINDS = FULL_KINDS + ("PuncD0", "PuncD12")


@dataclass(frozen=True, eq=False)
class DefiningSet:
    kind: str
    ctx: FieldCtx
    elements: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.elements)


def _value_classes(p: int, kind: str) -> tuple[set[int], bool]:
    """Allowed f-values and whether x = 0 is excluded."""
    chi = quad_char(p)
    sq, nsq = set(chi.squares), set(chi.nonsquares)
    return {
        "D0": ({0}, True),
        "D1": ({1}, False),
        "D2": ({2 % p}, False),
        "D01": ({0, 1}, True),
        "D02": ({0, 2 % p}, True),
        "D12": ({1, 2 % p}, False),
        "Dsq": (sq, False),
        "Dnsq": (nsq, False),
        "Dsq0": (sq | {0}, True),
        "Dnsq0": (nsq | {0}, True),
    }[kind]


def expected_size(kind: str, p: int, m: int) -> int:
    q = p ** (m - 1)
    return {
        "D0": q - 1,
        "D1": q,
        "D2": q,
        "D01": 2 * q - 1,
        "D02": 2 * q - 1,
        "D12": 2 * q,
        "Dsq": q * (p - 1) // 2,
        "Dnsq": q * (p - 1) // 2,
        "Dsq0": q * (p + 1) // 2 - 1,
        "Dnsq0": q * (p + 1) // 2 - 1,
        "PuncD0": (q - 1) // (p - 1),
        "PuncD12": 2 * q // (p - 1),
    }[kind]


def build_defining_set(f: PFunction, kind: str, check: bool = True) -> DefiningSet:
    if kind not in KINDS:
        raise KeyError(f"unknown defining-set kind {kind!r}")
    if kind.startswith("Punc"):
        return puncture(build_defining_set(f, kind[4:], check))
    ctx = f.ctx
    allowed, drop_zero = _value_classes(ctx.p, kind)
    mask = np.isin(f.values, list(allowed))
    if drop_zero:
        mask[0] = False
    elems = np.flatnonzero(mask)
    want = expected_size(kind, ctx.p, ctx.m)
    if check and len(elems) != want:
        raise NotBalanced(f"#{kind} = {len(elems)}, expected {want} for a balanced f with f(0)=0")
    elems.setflags(write=False)
    return DefiningSet(kind, ctx, elems)


def puncture(ds: DefiningSet, representative: str = "min") -> DefiningSet:
    """One element per F_p^* orbit (smallest encoding unless ``representative='max'``)."""
    if ds.kind not in ("D0", "D12"):
        raise NotOrbitClosed(f"puncturing is defined for D0 and D12, not {ds.kind}")
    ctx = ds.ctx
    members = np.zeros(ctx.order, dtype=bool)
    members[ds.elements] = True
    orbits = ctx.scalar_orbits[1:, ds.elements]  # (p-1, n)
    if not members[orbits].all():
        raise NotOrbitClosed(f"{ds.kind} is not closed under F_{ctx.p}^* scaling")
    reps = orbits.min(axis=0) if representative == "min" else orbits.max(axis=0)
    elems = np.unique(reps)
    elems.setflags(write=False)
    return DefiningSet("Punc" + ds.kind, ctx, elems)


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx
    defining_set: DefiningSet
    n: int
    k: int
    word_weights: np.ndarray = field(repr=False)  # wt(c_w) for every w
    weight_distribution: dict = field(default_factory=dict)  # nonzero weights only

    @property
    def d(self) -> int:
        return min(self.weight_distribution) if self.weight_distribution else 0

    @property
    def enumerator(self) -> list[int]:
        coeffs = [0] * (self.n + 1)
        coeffs[0] = 1
        for w, a in self.weight_distribution.items():
            coeffs[w] += a
        return coeffs

    @property
    def params(self) -> tuple[int, int, int]:
        return self.n, self.k, self.d

    def codewords(self) -> np.ndarray:
        """(p^m, n) table of c_w; rows repeat when k < m."""
        return np.asarray(self.ctx.trace_matrix[:, self.defining_set.elements])

    def enumerator_hash(self) -> str:
        text = ",".join(f"{w}:{a}" for w, a in sorted(self.weight_distribution.items()))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def enumerator_string(self) -> str:
        terms = ["1"] + [f"{a}y^{w}" for w, a in sorted(self.weight_distribution.items())]
        return " + ".join(terms)


def brute_force_distribution(ds: DefiningSet) -> LinearCode:
    ctx = ds.ctx
    weights = kernels.weight_counts(ctx.trace_matrix, ds.elements)
    zero_words = int((weights == 0).sum())
    k = ctx.m
    while ctx.p ** (ctx.m - k) < zero_words:
        k -= 1
    if ctx.p ** (ctx.m - k) != zero_words:
        raise ArithmeticError("zero-weight frequencies do not form a subspace")
    vals, counts = np.unique(weights[weights > 0], return_counts=True)
    dist = {int(w): int(c) // zero_words for w, c in zip(vals, counts)}
    return LinearCode(ctx, ds, len(ds), k, weights, dist)


def closed_form_distribution(profile, kind: str) -> ClosedFormDistribution:
    ctx = profile.ctx
    return table_distribution(kind, ctx.p, ctx.m, profile.s, profile.epsilon)


def rank_mod_p(mat: np.ndarray, p: int) -> tuple[int, list[int]]:
    """Rank over F_p and the indices of the first maximal independent set of rows."""
    pivots: list[tuple[int, np.ndarray]] = []  # (pivot column, normalized row)
    keep = []
    for idx, row in enumerate(np.array(mat, dtype=np.int64) % p):
        v = row.copy()
        for col, b in pivots:
            if v[col]:
                v = (v - v[col] * b) % p
        nz = np.flatnonzero(v)
        if len(nz):
            col = int(nz[0])
            pivots.append((col, v * pow(int(v[col]), -1, p) % p))
            keep.append(idx)
    return len(keep), keep


def generator_matrix(code: LinearCode) -> np.ndarray:
    """k x n matrix whose rows are codewords c_w for w running over a basis."""
    ctx = code.ctx
    basis = [ctx.p**j for j in range(ctx.m)]
    rows = np.asarray(ctx.trace_matrix[np.ix_(basis, code.defining_set.elements)], dtype=np.int64)
    rank, keep = rank_mod_p(rows, ctx.p)
    if rank != code.k:
        raise RankDeficient(f"rank {rank} but dimension {code.k}")
    return rows[keep]


def distribution_csv(code_or_dist) -> str:
    dist = getattr(code_or_dist, "weight_distribution", None)
    if dist is None:
        dist = code_or_dist.weights
    buf = io.StringIO()
    buf.write("weight,multiplicity\n0,1\n")
    for w, a in sorted(dist.items()):
        buf.write(f"{w},{a}\n")
    return buf.getvalue()
