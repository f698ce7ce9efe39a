"""Deterministic sweeps over quadratic functions and the witness corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from . import kernels
from .codes import FULL_KINDS, brute_force_distribution, build_defining_set
from .errors import NotPlateaued, NotWeaklyRegular, NoWitnessFound
from .field import FieldCtx, build_field, ff_pow, format_field_spec
from .pfunc import monomial_table, quadratic
from .spectrum import classify, classify_counts

__all__ = [
    "FAMILIES",
    "DEFAULT_TARGETS",
    "WitnessRecord",
    "Miss",
    "Corpus",
    "candidate_count",
    "candidates",
    "batch_values",
    "batch_kernel_dims",
    "batch_classify",
    "enumerate_quadratics",
    "find_witnesses",
    "build_corpus",
    "parse_corpus",
    "stride_sample",
    "require_witness",
]

FAMILIES = ("quadratic", "affine")
# the (p, m, s) settings the worked examples need, then a few extra shapes
EXAMPLE_TARGETS = ((3, 5, 1), (5, 3, 1), (3, 4, 1), (3, 3, 1))
DEFAULT_TARGETS = EXAMPLE_TARGETS + ((3, 4, 2), (3, 6, 1), (5, 4, 1), (7, 3, 1))
DEFAULT_CAP = 10**6
CHUNK = 2048


# ---------------------------------------------------------------- candidates


def candidate_count(ctx: FieldCtx) -> int:
    return ctx.order ** (ctx.m // 2 + 1)


def candidates(ctx: FieldCtx, indices: np.ndarray) -> np.ndarray:
    """Coefficient tuples for sweep indices; a_0 is the most significant digit."""
    k = ctx.m // 2 + 1
    idx = np.asarray(indices, dtype=np.int64)
    out = np.empty((len(idx), k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % ctx.order
        idx = idx // ctx.order
    return out


def batch_values(ctx: FieldCtx, coeffs: np.ndarray, linear=None) -> np.ndarray:
    """(B, N) value tables of sum_i Tr(a_i x^{p^i+1}) (+ Tr(b x))."""
    tm = ctx.trace_matrix
    # at most m//2 + 2 terms below p each, so uint8 cannot overflow for p <= 31
    acc = np.zeros((len(coeffs), ctx.order), dtype=np.uint8)
    for i in range(coeffs.shape[1]):
        acc += tm[coeffs[:, i]][:, monomial_table(ctx, i)]
    if linear is not None:
        acc += tm[np.asarray(linear, dtype=np.int64)]
    return acc % np.uint8(ctx.p)


@lru_cache(maxsize=None)
def _kernel_blocks(ctx: FieldCtx) -> tuple[np.ndarray, ...]:
    """Per i, the (N, m, m) stack of M(a)F^i + M(a^{p^{m-i}})F^{m-i} over all a."""
    p, m = ctx.p, ctx.m
    muls = np.stack([ctx.mul_matrix(a) for a in range(ctx.order)])
    blocks = []
    for i in range(m // 2 + 1):
        conj = np.array([ff_pow(ctx, a, p ** ((m - i) % m)) for a in range(ctx.order)])
        blk = muls @ ctx.frobenius_power_matrix(i) + muls[conj] @ ctx.frobenius_power_matrix(m - i)
        blocks.append(blk % p)
    return tuple(blocks)


def batch_kernel_dims(ctx: FieldCtx, coeffs: np.ndarray) -> np.ndarray:
    """Dimension of the linearized kernel for each coefficient row."""
    blocks = _kernel_blocks(ctx)
    mats = sum(blocks[i][coeffs[:, i]] for i in range(coeffs.shape[1])) % ctx.p
    images = np.einsum("xj,bkj->bxk", ctx.digits, mats) % ctx.p
    sizes = (~images.any(axis=2)).sum(axis=1)
    return np.rint(np.log(sizes) / np.log(ctx.p)).astype(np.int64)


def batch_classify(ctx: FieldCtx, values: np.ndarray):
    """(s, epsilon) per row; epsilon is 0 for a sign that varies.

    Rows that are not plateaued raise NotPlateaued.
    """
    counts = kernels.walsh_counts_batch(values, ctx.trace_matrix, ctx.p)
    out = []
    for row in counts:
        s, _, signs, _ = classify_counts(row, ctx.p, ctx.m)
        eps = int(signs[0]) if (signs == signs[0]).all() else 0
        out.append((s, eps))
    return out


def stride_sample(total: int, count: int) -> np.ndarray:
    """``count`` distinct indices spread over [0, total) by a fixed coprime stride."""
    count = min(count, total)
    step = max(1, int(total * 0.6180339887) | 1)
    while gcd(step, total) != 1:
        step += 2
    return (np.arange(count, dtype=np.int64) * step) % total


# ---------------------------------------------------------------- records


@dataclass
class WitnessRecord:
    field_spec: str
    p: int
    m: int
    coeffs: tuple[int, ...]
    linear: int
    family: str
    s: int
    epsilon: int
    balanced: bool
    t: int | None
    wrpb: bool
    codes: dict = field(default_factory=dict)  # kind -> {"params": [n,k,d], "hash": ...}

    def line(self) -> str:
        t = "-" if self.t is None else str(self.t)
        parts = [
            str(self.p), str(self.m), str(self.s), f"{self.epsilon:+d}", t,
            "coeffs=" + ",".join(map(str, self.coeffs)),
        ]
        if self.linear:
            parts.append(f"linear={self.linear}")
        parts += [f"family={self.family}", f"wrpb={int(self.wrpb)}"]
        return " ".join(parts)

    def function(self):
        return quadratic(build_field(self.p, self.m), self.coeffs, self.linear, check=False)

    def to_dict(self) -> dict:
        return {
            "field": self.field_spec,
            "p": self.p,
            "m": self.m,
            "coeffs": list(self.coeffs),
            "linear": self.linear,
            "family": self.family,
            "s": self.s,
            "epsilon": self.epsilon,
            "balanced": self.balanced,
            "t": self.t,
            "wrpb": self.wrpb,
            "codes": self.codes,
        }


@dataclass(frozen=True)
class Miss:
    """A target and family for which the sweep found nothing."""

    p: int
    m: int
    s: int
    family: str
    epsilon: int | None
    swept: int

    def line(self) -> str:
        sign = "any" if self.epsilon is None else f"{self.epsilon:+d}"
        return f"no-witness {self.p} {self.m} {self.s} {sign} family={self.family} swept={self.swept}"

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "s": self.s, "family": self.family,
                "epsilon": self.epsilon, "swept": self.swept}


@dataclass
class Corpus:
    records: list[WitnessRecord] = field(default_factory=list)
    misses: list[Miss] = field(default_factory=list)

    def text(self) -> str:
        lines = ["# p m s epsilon t coeffs=... [linear=b] family=... wrpb=0|1"]
        lines += [r.line() for r in self.records]
        lines += [x.line() for x in self.misses]
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        return json.dumps(
            {"witnesses": [r.to_dict() for r in self.records],
             "misses": [x.to_dict() for x in self.misses]},
            indent=2, sort_keys=True,
        ) + "\n"

    def find(self, p: int, m: int, s: int, epsilon: int | None = None) -> list[WitnessRecord]:
        return [r for r in self.records
                if (r.p, r.m, r.s) == (p, m, s) and epsilon in (None, r.epsilon)]


def _record(ctx, coeffs, linear, family, with_codes: bool) -> WitnessRecord:
    f = quadratic(ctx, coeffs, linear, check=False)
    prof = classify(f)
    cert = prof.wrpb
    rec = WitnessRecord(
        format_field_spec(ctx.p, ctx.m, ctx.modulus), ctx.p, ctx.m,
        tuple(int(c) for c in coeffs), int(linear), family,
        prof.s, prof.epsilon, prof.balanced, cert.homogeneity_exponent_t, cert.holds,
    )
    if with_codes and prof.balanced and f(0) == 0:
        for kind in FULL_KINDS:
            code = brute_force_distribution(build_defining_set(f, kind))
            rec.codes[kind] = {"params": list(code.params), "hash": code.enumerator_hash()}
    return rec


# ---------------------------------------------------------------- sweeps


def enumerate_quadratics(ctx: FieldCtx, s: int | None = None, balanced_only: bool = False,
                         family: str = "quadratic", limit: int | None = None,
                         cap: int = DEFAULT_CAP, epsilon: int | None = None,
                         with_codes: bool = False, stats: dict | None = None):
    """Yield WitnessRecords in ascending sweep order.

    Pure quadratics go through a batched value-census balance test, then
    the kernel-dimension filter, then full classification.
    ``family='affine'`` pairs each surviving Q with the smallest b != 0 that
    makes Q + Tr(b x) balanced, so ``balanced_only`` is implied there.
    """
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}")
    total = min(candidate_count(ctx), cap)
    found = swept = 0
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total))
        coeffs = candidates(ctx, idx)
        swept += len(idx)
        keep = np.ones(len(idx), dtype=bool)
        if family == "quadratic" and balanced_only:
            vals = batch_values(ctx, coeffs)
            need = ctx.p ** (ctx.m - 1)
            for c in range(ctx.p):
                keep &= (vals == c).sum(axis=1) == need
        if s is not None and keep.any():
            sub = np.flatnonzero(keep)
            keep[sub[batch_kernel_dims(ctx, coeffs[sub]) != s]] = False
        for row in coeffs[keep]:
            rec = _candidate_record(ctx, row, family, balanced_only, epsilon, with_codes)
            if rec is None:
                continue
            yield rec
            found += 1
            if limit is not None and found >= limit:
                if stats is not None:
                    stats["swept"] = swept
                return
    if stats is not None:
        stats["swept"] = swept


def _candidate_record(ctx, row, family, balanced_only, epsilon, with_codes):
    q = quadratic(ctx, row, check=False)
    try:
        prof = classify(q, with_certificate=False)
    except NotWeaklyRegular as exc:
        raise AssertionError(f"quadratic {tuple(row)} is not weakly regular") from exc
    if epsilon is not None and prof.epsilon != epsilon:
        return None
    if family == "quadratic":
        if balanced_only and not prof.balanced:
            return None
        return _record(ctx, row, 0, family, with_codes)
    # W_{Q+Tr(bx)}(0) = W_Q(-b): balanced exactly when -b is off the support
    neg = ctx.scalar_orbits[ctx.p - 1]
    off = np.ones(ctx.order, dtype=bool)
    off[neg[prof.support]] = False
    off[0] = False
    bs = np.flatnonzero(off)
    if not len(bs):
        return None
    return _record(ctx, row, int(bs[0]), family, with_codes)


def find_witnesses(p: int, m: int, s: int, family: str, cap: int = DEFAULT_CAP,
                   with_codes: bool = True) -> tuple[list[WitnessRecord], list[Miss]]:
    """First balanced witness per sign epsilon = +1, -1, in one sweep."""
    ctx = build_field(p, m)
    first: dict[int, WitnessRecord] = {}
    stats: dict = {}
    for rec in enumerate_quadratics(ctx, s, True, family, None, cap, None, False, stats):
        first.setdefault(rec.epsilon, rec)
        if len(first) == 2:
            break
    swept = stats.get("swept", min(cap, candidate_count(ctx)))
    found, misses = [], []
    for eps in (1, -1):
        if eps in first:
            rec = first[eps]
            found.append(_record(ctx, rec.coeffs, rec.linear, family, with_codes) if with_codes else rec)
        else:
            misses.append(Miss(p, m, s, family, eps, swept))
    return found, misses


def build_corpus(targets=DEFAULT_TARGETS, cap: int = DEFAULT_CAP, families=FAMILIES,
                 with_codes: bool = True, pure_cap: int | None = None) -> Corpus:
    """Deterministic witness corpus; duplicate targets collapse."""
    corpus = Corpus()
    seen = set()
    for p, m, s in targets:
        if (p, m, s) in seen:
            continue
        seen.add((p, m, s))
        for fam in families:
            fam_cap = pure_cap if (fam == "quadratic" and pure_cap is not None) else cap
            recs, misses = find_witnesses(p, m, s, fam, fam_cap, with_codes)
            corpus.records += recs
            corpus.misses += misses
    return corpus


def require_witness(corpus: Corpus, p: int, m: int, s: int, epsilon: int | None = None) -> WitnessRecord:
    hits = corpus.find(p, m, s, epsilon)
    if not hits:
        raise NoWitnessFound(f"no corpus witness for (p, m, s) = ({p}, {m}, {s})")
    return hits[0]


def parse_corpus(text: str) -> Corpus:
    corpus = Corpus()
    for raw in text.splitlines():
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        toks = ln.split()
        if toks[0] == "no-witness":
            kv = dict(t.split("=", 1) for t in toks[5:])
            eps = None if toks[4] == "any" else int(toks[4])
            corpus.misses.append(Miss(int(toks[1]), int(toks[2]), int(toks[3]), kv["family"], eps, int(kv["swept"])))
            continue
        p, m, s, eps, t = toks[:5]
        kv = dict(tok.split("=", 1) for tok in toks[5:])
        ctx = build_field(int(p), int(m))
        corpus.records.append(WitnessRecord(
            format_field_spec(ctx.p, ctx.m, ctx.modulus), int(p), int(m),
            tuple(int(c) for c in kv["coeffs"].split(",")), int(kv.get("linear", 0)),
            kv.get("family", "quadratic"), int(s), int(eps), True,
            None if t == "-" else int(t), kv.get("wrpb", "0") == "1",
        ))
    return corpus
