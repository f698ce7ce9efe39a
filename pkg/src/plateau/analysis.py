"""Minimality, parameter predictions, dual enumerators, bounds and access structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .errors import InexactDivision, NotMinimal, OutOfRange, TooLarge
from .codes import LinearCode, generator_matrix
from .field import quad_char

__all__ = [
    "MinimalityReport",
    "DualReport",
    "SssReport",
    "PropositionParams",
    "minimality_ab",
    "minimality_exhaustive",
    "minimality_report",
    "proposition_parameters",
    "macwilliams_transform",
    "macwilliams_dual",
    "bounds_check",
    "sss_report",
    "minimal_access_sets_oracle",
    "projective_classes",
]

EXHAUSTIVE_BOUND = 3**8
ORACLE_BOUND = 3**5


@dataclass
class PropositionParams:
    n: int
    k: int
    d: int | None  # None when the distance expression is irrational
    branch: str
    note: str = ""

    def as_list(self) -> list:
        return [self.n, self.k, self.d]


@dataclass
class MinimalityReport:
    w_min: int
    w_max: int
    ab_ratio_holds: bool
    exhaustive_verdict: bool | None = None
    proposition_params: PropositionParams | None = None
    proposition_note: str = ""

    @property
    def certified(self) -> bool:
        if self.exhaustive_verdict is not None:
            return self.exhaustive_verdict
        return self.ab_ratio_holds

    @property
    def contradiction(self) -> bool:
        return self.ab_ratio_holds and self.exhaustive_verdict is False

    def to_dict(self) -> dict:
        pp = self.proposition_params
        return {
            "w_min": self.w_min,
            "w_max": self.w_max,
            "ab_ratio_holds": self.ab_ratio_holds,
            "exhaustive_verdict": self.exhaustive_verdict,
            "proposition_params": pp.as_list() if pp else None,
            "proposition_note": self.proposition_note or (pp.note if pp else ""),
        }


def minimality_ab(code: LinearCode) -> MinimalityReport:
    """Sufficient test w_min/w_max > (p-1)/p, cross-multiplied."""
    p = code.ctx.p
    ws = list(code.weight_distribution)
    if not ws:
        return MinimalityReport(0, 0, True)
    lo, hi = min(ws), max(ws)
    return MinimalityReport(lo, hi, p * lo > (p - 1) * hi)


def projective_classes(code: LinearCode) -> np.ndarray:
    """One codeword per scalar class, scaled so its first nonzero entry is 1."""
    words = np.unique(code.codewords(), axis=0)
    nz = words.any(axis=1)
    words = words[nz]
    first = words[np.arange(len(words)), (words != 0).argmax(axis=1)]
    return words[first == 1]


def minimality_exhaustive(code: LinearCode, bound: int = EXHAUSTIVE_BOUND) -> bool:
    """True iff no codeword's support covers a non-proportional codeword's support."""
    p, k = code.ctx.p, code.k
    if p**k > bound:
        raise TooLarge(f"p^k = {p**k} exceeds the exhaustive bound {bound}")
    reps = projective_classes(code)
    i, _ = kernels.find_covering_pair(reps != 0)
    return i < 0


def minimality_report(code: LinearCode, profile=None, exhaustive: bool = True,
                      bound: int = EXHAUSTIVE_BOUND) -> MinimalityReport:
    rep = minimality_ab(code)
    if exhaustive and code.ctx.p**code.k <= bound:
        rep.exhaustive_verdict = minimality_exhaustive(code, bound)
    if profile is not None:
        try:
            rep.proposition_params = proposition_parameters(profile, code.defining_set.kind)
        except OutOfRange as exc:
            rep.proposition_note = str(exc)
    return rep


# ---------------------------------------------------------------- propositions


def _rootp(p: int, e: int) -> int | None:
    return p ** (e // 2) if e % 2 == 0 else None


def proposition_parameters(profile, kind: str) -> PropositionParams:
    """[n, k, d] predicted for a minimal code of the given kind.

    Raises OutOfRange when s misses the stated range, when the kind has no
    prediction, or when the required parity is absent.
    """
    p, m, s, eps = profile.ctx.p, profile.ctx.m, profile.s, profile.epsilon
    odd = (m + s) % 2 == 1
    e_m1 = quad_char(p).eta0(p - 1)
    eps0 = eps * e_m1 ** ((m + s) // 2) if not odd else None
    eps1 = eps * e_m1 ** ((m + s - 3) // 2) if odd else None
    cond = eps == 1 if p % 4 == 1 else eps1 == -1
    q2 = p ** (m - 2)
    r3 = _rootp(p, m + s - 3)
    r4 = _rootp(p, m + s - 4)
    q = p ** (m - 1)

    def need(hi: int) -> None:
        if not 1 <= s <= m - hi:
            raise OutOfRange(f"{kind}: s={s} outside 1 <= s <= m-{hi}")

    def need_odd() -> None:
        if not odd:
            raise OutOfRange(f"{kind}: prediction stated for m+s odd only")

    if kind == "D0":
        need(4)
        if odd:
            raise OutOfRange("D0: prediction stated for m+s even only")
        n = q - 1
        d = (p - 1) * (q2 - (p - 1) * r4) if eps0 == 1 else (p - 1) * (q2 - r4)
        branch = f"eps0={eps0:+d}"
    elif kind == "D1":
        n = q
        if odd:
            need(5)
            d = (p - 1) * (q2 - r3) if cond else (p - 1) * q2 - 2 * r3
            branch = f"odd cond={cond}"
        else:
            need(4)
            d = (p - 1) * q2 - (p + 1) * r4 if eps0 == 1 else (p - 1) * (q2 - r4)
            branch = f"even eps0={eps0:+d}"
    elif kind == "D01":
        n = 2 * q - 1
        if odd:
            need(3)
            d = (p - 1) * (2 * q2 - r3)
            branch = "odd"
        else:
            need(4)
            d = (p - 1) * (2 * q2 - (p - 2) * r4) if eps0 == 1 else 2 * (p - 1) * (q2 - r4)
            branch = f"even eps0={eps0:+d}"
    elif kind == "D2":
        need(5)
        need_odd()
        n = q
        d = (p - 1) * q2 - 2 * r3 if cond else (p - 1) * (q2 - r3)
        branch = f"odd cond={cond}"
    elif kind == "D02":
        need(3)
        need_odd()
        n = 2 * q - 1
        d = (p - 1) * (2 * q2 - r3)
        branch = "odd"
    elif kind == "D12":
        n = 2 * q
        if odd:
            need(3)
            d = 2 * (p - 1) * q2 - 2 * r3
            branch = "odd"
        else:
            need(2 if eps0 == 1 else 4)
            d = 2 * (p - 1) * q2 - 2 * r4 if eps0 == 1 else 2 * (p - 1) * (q2 - r4)
            branch = f"even eps0={eps0:+d}"
    elif kind == "Dsq":
        n = q * (p - 1) // 2
        if odd:
            need(5)
            d = (p - 1) ** 2 * (q2 - r3) // 2 if cond else (p - 1) * (q2 * (p - 1) // 2 - r3)
            branch = f"odd cond={cond}"
        else:
            need(4)
            if eps0 == 1:
                d = (p - 1) * ((p - 1) * q2 - (p + 1) * r4) // 2
            else:
                d = (p - 1) ** 2 * (q2 - r4) // 2
            branch = f"even eps0={eps0:+d}"
    elif kind == "Dsq0":
        n = q * (p + 1) // 2 - 1
        if odd:
            need(3)
            if cond:
                d = (p - 1) * (q2 * (p + 1) - (p - 1) * r3) // 2
            else:
                d = q2 * (p * p - 1) // 2 - (p - 1) * r3
            branch = f"odd cond={cond}"
        else:
            need(4)
            if eps0 == 1:
                d = (p - 1) * ((p + 1) * q2 - (p - 1) * r4) // 2
            else:
                d = (p * p - 1) * (q2 - r4) // 2
            branch = f"even eps0={eps0:+d}"
    elif kind == "Dnsq":
        need(5)
        need_odd()
        n = q * (p - 1) // 2
        d = (p - 1) * (q2 * (p - 1) // 2 - r3) if cond else (p - 1) ** 2 * (q2 - r3) // 2
        branch = f"odd cond={cond}"
    elif kind == "Dnsq0":
        need(3)
        need_odd()
        n = q * (p + 1) // 2 - 1
        if cond:
            d = (p - 1) * (q2 * (p + 1) // 2 - r3)
        else:
            d = (p - 1) * (q2 * (p + 1) - (p - 1) * r3) // 2
        branch = f"odd cond={cond}"
    else:
        raise OutOfRange(f"no parameter prediction for {kind}")
    return PropositionParams(n, m, d, branch)


# ---------------------------------------------------------------- MacWilliams


@dataclass
class DualReport:
    dual_enumerator: list[int] = field(repr=False)
    d_perp: int
    k_perp: int

    def to_dict(self) -> dict:
        return {
            "dual_enumerator": {str(w): a for w, a in enumerate(self.dual_enumerator) if a},
            "d_perp": self.d_perp,
            "k_perp": self.k_perp,
        }


def macwilliams_transform(enum: list[int], n: int, q: int, k: int) -> list[int]:
    """q^{-k} sum_i A_i (1-z)^i (1+(q-1)z)^{n-i}, exactly."""
    if len(enum) != n + 1:
        raise ValueError("enumerator length must be n+1")
    c = q - 1
    poly = [comb(n, j) * c**j for j in range(n + 1)]  # i = 0 term
    acc = [0] * (n + 1)
    for i in range(n + 1):
        a = enum[i]
        if a:
            for j in range(n + 1):
                acc[j] += a * poly[j]
        if i == n:
            break
        # poly <- poly * (1 - z) / (1 + c z), degree stays n
        r = [0] * n
        r[0] = poly[0]
        for j in range(1, n):
            r[j] = poly[j] - c * r[j - 1]
        poly = [r[0]] + [r[j] - r[j - 1] for j in range(1, n)] + [-r[n - 1]]
    size = q**k
    out = []
    for j, v in enumerate(acc):
        if v % size:
            raise InexactDivision(f"coefficient {j} not divisible by q^k = {size}")
        out.append(v // size)
    return out


def macwilliams_dual(code: LinearCode) -> DualReport:
    p, n, k = code.ctx.p, code.n, code.k
    dual = macwilliams_transform(code.enumerator, n, p, k)
    if dual[0] != 1 or any(a < 0 for a in dual) or sum(dual) != p ** (n - k):
        raise InexactDivision("dual enumerator is not a valid enumerator")
    d_perp = next((w for w in range(1, n + 1) if dual[w]), 0)
    return DualReport(dual, d_perp, n - k)


# ---------------------------------------------------------------- bounds


def bounds_check(n: int, k: int, d: int, p: int) -> dict:
    total = sum(-(-d // p**i) for i in range(k))
    return {
        "griesmer_sum": total,
        "griesmer_ok": n >= total,
        "griesmer_gap": n - total,
        "singleton_ok": d <= n - k + 1,
    }


# ---------------------------------------------------------------- secret sharing


@dataclass
class SssReport:
    num_participants: int
    num_minimal_access_sets: int
    d_perp: int
    in_all: list[int] = field(default_factory=list)  # d_perp = 2 only
    partial_count: int | None = None  # sets containing a non-multiple participant
    coverage: dict[int, int] = field(default_factory=dict)  # d_perp >= 3 only

    def participant_tag(self, i: int) -> str:
        if self.d_perp != 2:
            return f"in {self.coverage[1]} sets"
        return "in all" if i in self.in_all else f"in {self.partial_count} sets"

    def to_dict(self) -> dict:
        return {
            "num_participants": self.num_participants,
            "num_minimal_access_sets": self.num_minimal_access_sets,
            "d_perp": self.d_perp,
            "in_all": self.in_all,
            "partial_count": self.partial_count,
            "coverage": {str(l): c for l, c in self.coverage.items()},
        }


def _multiple_of(col: np.ndarray, base: np.ndarray, p: int) -> bool:
    for a in range(1, p):
        if np.array_equal(col, a * base % p):
            return True
    return False


def sss_report(code: LinearCode, dual: DualReport, minimality: MinimalityReport) -> SssReport:
    if not minimality.certified:
        raise NotMinimal("access structure needs a certified minimal code")
    p, n, k = code.ctx.p, code.n, code.k
    rep = SssReport(n - 1, p ** (k - 1), dual.d_perp)
    if dual.d_perp == 2:
        gen = generator_matrix(code) % p
        g0 = gen[:, 0]
        rep.in_all = [i for i in range(1, n) if _multiple_of(gen[:, i], g0, p)]
        rep.partial_count = (p - 1) * p ** (k - 2) if k >= 2 else 0
    else:
        top = min(k - 1, dual.d_perp - 2) if dual.d_perp else k - 1
        rep.coverage = {l: (p - 1) ** l * p ** (k - l - 1) for l in range(1, top + 1)}
    return rep


def minimal_access_sets_oracle(code: LinearCode, bound: int = ORACLE_BOUND) -> list[frozenset]:
    """Participant sets of minimal codewords with nonzero first coordinate.

    Coordinate 0 is the dealer; participants are indexed 1..n-1.
    """
    p, k = code.ctx.p, code.k
    if p**k > bound:
        raise TooLarge(f"p^k = {p**k} exceeds the oracle bound {bound}")
    reps = projective_classes(code)
    sup = reps != 0
    outside = ~sup
    out = []
    for i in range(len(reps)):
        if not sup[i, 0]:
            continue
        covered = ~(sup & outside[i]).any(axis=1)
        covered[i] = False
        if covered.any():
            continue  # some other class sits inside supp(reps[i])
        out.append(frozenset(int(j) for j in np.flatnonzero(sup[i, 1:]) + 1))
    return out

