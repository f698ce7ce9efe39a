"""Exact Walsh spectra, plateaued classification and the hyperplane counting lemmas.

Walsh values are never formed as floats.  For each frequency w the kernel
returns the exponent counts ``c_j = #{x : f(x) - Tr(w x) = j}``, so that
``W_f(w) = sum_j c_j zeta^j``.  Everything else (|W|^2, sign, dual value)
is read off those integer vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .cyclo import CycloInt, as_rational_int, from_exponent_counts, norm_sq, sqrt_pstar_pow, zeta
from .errors import NonIntegerResult, NotPlateaued, NotWeaklyRegular, OverflowGuard, ZeroFrequency
from .field import FieldCtx, quad_char
from .pfunc import PFunction, WrpbCertificate, admissible_exponents, check_wrpb_conditions

__all__ = [
    "WalshSpectrum",
    "PlateauedProfile",
    "walsh_counts",
    "walsh_transform",
    "classify",
    "classify_counts",
    "pstar_power",
    "dual_value_census",
    "dual_census_closed_form",
    "dual_homogeneity_exponent",
    "census_table",
    "census_N0",
    "census_Nsq",
    "census_Nnsq",
    "census_N1",
    "census_N2",
    "census_Nsq0",
    "census_Nnsq0",
    "closed_form_count",
    "closed_form_N0",
    "closed_form_Nsq",
    "closed_form_Nnsq",
    "closed_form_N1",
    "closed_form_N2",
    "closed_form_Nsq0",
    "closed_form_Nnsq0",
    "COUNTERS",
]

COUNTERS = ("N0", "Nsq", "Nnsq", "N1", "N2", "Nsq0", "Nnsq0")


def _guard(ctx: FieldCtx) -> None:
    if ctx.p ** (2 * ctx.m) > 2**62:
        raise OverflowGuard(f"p^(2m) = {ctx.p}^{2 * ctx.m} exceeds the 62-bit guard")


def walsh_counts(f: PFunction) -> np.ndarray:
    _guard(f.ctx)
    return kernels.walsh_counts(f.values, f.ctx.trace_matrix, f.ctx.p)


def _norms(counts: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """|W|^2 per row via the autocorrelation of the count vector.

    |sum c_j zeta^j|^2 = sum_d R_d zeta^d with R_d = sum_j c_j c_{j+d};
    it is rational iff R_1 = ... = R_{p-1}, and then equals R_0 - R_1.
    """
    c = counts.astype(np.int64)
    auto = np.stack([(c * np.roll(c, -d, axis=-1)).sum(axis=-1) for d in range(p)], axis=-1)
    rational = np.all(auto[..., 1:] == auto[..., 1:2], axis=-1)
    return auto[..., 0] - auto[..., 1], rational


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """W_f at every frequency, as exact elements of Z[zeta_p]."""

    ctx: FieldCtx
    counts: np.ndarray = field(repr=False)

    @property
    def values(self) -> list[CycloInt]:
        p = self.ctx.p
        return [from_exponent_counts(p, row) for row in self.counts]

    def __getitem__(self, w: int) -> CycloInt:
        return from_exponent_counts(self.ctx.p, self.counts[w])

    def norms(self) -> np.ndarray:
        norm, rational = _norms(self.counts, self.ctx.p)
        if not rational.all():
            raise ArithmeticError("|W|^2 left the rationals")
        return norm

    def parseval_total(self) -> int:
        return int(self.norms().sum())


def walsh_transform(f: PFunction) -> WalshSpectrum:
    spec = WalshSpectrum(f.ctx, walsh_counts(f))
    if spec.parseval_total() != f.ctx.p ** (2 * f.ctx.m):
        raise ArithmeticError("Parseval identity violated")
    return spec


# ---------------------------------------------------------------- classification


@dataclass(frozen=True, eq=False)
class PlateauedProfile:
    ctx: FieldCtx
    s: int
    support: np.ndarray = field(repr=False)
    epsilon: int
    dual: np.ndarray = field(repr=False)
    balanced: bool
    weakly_regular: bool = True
    wrpb: WrpbCertificate | None = None
    function: PFunction | None = field(default=None, repr=False)

    @property
    def parity(self) -> int:
        return (self.ctx.m + self.s) % 2

    @property
    def support_size(self) -> int:
        return len(self.support)

    @property
    def in_support(self) -> np.ndarray:
        mask = np.zeros(self.ctx.order, dtype=bool)
        mask[self.support] = True
        return mask

    def dual_class(self, w: int) -> str:
        """'out', '0', 'sq' or 'nsq' for the frequency w."""
        if not self.in_support[w]:
            return "out"
        v = int(self.dual[w])
        if v == 0:
            return "0"
        return "sq" if quad_char(self.ctx.p).is_square(v) else "nsq"

    def to_dict(self) -> dict:
        cert = self.wrpb
        return {
            "p": self.ctx.p,
            "m": self.ctx.m,
            "s": self.s,
            "epsilon": self.epsilon,
            "parity": "even" if self.parity == 0 else "odd",
            "support_size": self.support_size,
            "dual_census": {str(a): n for a, n in dual_value_census(self).items()},
            "balanced": self.balanced,
            "wrpb": bool(cert and cert.holds),
            "t": cert.homogeneity_exponent_t if cert else None,
        }


@lru_cache(maxsize=None)
def _candidates(p: int, e: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Canonical vectors of eps * zeta^a * G^e for eps = +-1, a in F_p."""
    g = sqrt_pstar_pow(p, e)
    rows, labels = [], []
    for eps in (1, -1):
        for a in range(p):
            rows.append((g * zeta(p, a) * eps).coeffs)
            labels.append((eps, a))
    return np.array(rows, dtype=np.int64), labels


def classify_counts(counts: np.ndarray, p: int, m: int):
    """Vectorized classification of one spectrum given as exponent counts.

    Returns ``(s, support, eps_per_support_point, dual)``; raises
    NotPlateaued / NotWeaklyRegular.
    """
    norm, rational = _norms(counts, p)
    bad = np.flatnonzero(~rational)
    if len(bad):
        raise NotPlateaued("|W|^2 is not a rational integer", bad)
    support = np.flatnonzero(norm != 0)
    values = set(norm[support].tolist())
    if len(values) != 1:
        raise NotPlateaued(f"several nonzero |W|^2 values {sorted(values)}", support)
    (val,) = values
    s = 0
    while p ** (m + s) < val:
        s += 1
    if p ** (m + s) != val:
        raise NotPlateaued(f"|W|^2 = {val} is not a power p^(m+s)", support)
    canon = counts[support, : p - 1] - counts[support, p - 1 :]
    cand, labels = _candidates(p, m + s)
    hit = np.all(canon[:, None, :] == cand[None, :, :], axis=2)
    matched = hit.any(axis=1)
    if not matched.all():
        raise NotPlateaued("Walsh value outside eps*zeta^a*G^(m+s)", support[~matched])
    idx = hit.argmax(axis=1)
    signs = np.array([labels[i][0] for i in idx])
    dual = np.zeros(len(counts), dtype=np.uint8)
    dual[support] = [labels[i][1] for i in idx]
    return s, support, signs, dual


def classify(f: PFunction, with_certificate: bool = True) -> PlateauedProfile:
    ctx = f.ctx
    counts = walsh_counts(f)
    s, support, signs, dual = classify_counts(counts, ctx.p, ctx.m)
    if len(set(signs.tolist())) > 1:
        minority = 1 if (signs == 1).sum() < (signs == -1).sum() else -1
        raise NotWeaklyRegular("sign of W_f varies with the frequency", support[signs == minority])
    balanced = not bool(np.isin(0, support))
    cert = check_wrpb_conditions(f, balanced) if with_certificate else None
    dual.setflags(write=False)
    return PlateauedProfile(ctx, s, support, int(signs[0]), dual, balanced, True, cert, f)


# ---------------------------------------------------------------- dual

def pstar_power(p: int, e: int) -> Fraction:
    """sqrt(p*)^e for even e (any sign), exactly."""
    if e % 2:
        raise NonIntegerResult(f"sqrt(p*)^{e} is irrational")
    if e >= 0:
        val = as_rational_int(sqrt_pstar_pow(p, e))
        if val is None:
            raise NonIntegerResult(f"even Gauss-sum power {e} not rational")
        return Fraction(val)
    return 1 / Fraction(quad_char(p).p_star()) ** (-e // 2)


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise NonIntegerResult(f"{what} evaluated to {x}")
    return int(x)


def dual_value_census(profile: PlateauedProfile) -> dict[int, int]:
    vals = profile.dual[profile.support]
    counts = np.bincount(vals, minlength=profile.ctx.p)
    return {a: int(counts[a]) for a in range(profile.ctx.p)}


def dual_census_closed_form(profile: PlateauedProfile) -> dict[int, int]:
    p, m, s, eps = profile.ctx.p, profile.ctx.m, profile.s, profile.epsilon
    chi = quad_char(p)
    eta = chi.eta0(-1)
    base = Fraction(p) ** (m - s - 1)
    out = {}
    if (m - s) % 2 == 0:
        r = pstar_power(p, m - s - 2)
        for a in range(p):
            if a == 0:
                val = base + eps * eta ** (m + 1) * (p - 1) * r
            else:
                val = base - eps * eta ** (m + 1) * r
            out[a] = _as_int(val, f"dual count at {a}")
    else:
        r = pstar_power(p, m - s - 1)
        for a in range(p):
            if a == 0:
                val = base
            else:
                val = base + eps * eta**m * chi.eta0(a) * r
            out[a] = _as_int(val, f"dual count at {a}")
    return out


def dual_homogeneity_exponent(profile: PlateauedProfile) -> int | None:
    """Smallest admissible even l with f*(a w) = a^l f*(w) on the support."""
    ctx, p = profile.ctx, profile.ctx.p
    sup = profile.support
    dual = profile.dual.astype(np.int64)
    orbits = ctx.scalar_orbits
    for l in admissible_exponents(p):
        if all(np.array_equal(dual[orbits[a][sup]], pow(a, l, p) * dual[sup] % p) for a in range(2, p)):
            return l
    return None


def support_is_scaling_closed(profile: PlateauedProfile) -> bool:
    mask = profile.in_support
    orbits = profile.ctx.scalar_orbits
    return all(np.array_equal(mask[orbits[a]], mask) for a in range(2, profile.ctx.p))


def reconstruction_defects(profile: PlateauedProfile, spectrum: WalshSpectrum) -> list[int]:
    """Support points where W(w) != eps * G^(m+s) * zeta^{f*(w)} exactly."""
    p = profile.ctx.p
    g = sqrt_pstar_pow(p, profile.ctx.m + profile.s) * profile.epsilon
    bad = []
    for w in profile.support:
        if spectrum[int(w)] - g * zeta(p, int(profile.dual[w])):
            bad.append(int(w))
    return bad


def norm_census(spectrum: WalshSpectrum) -> dict[int, int]:
    """Exact |W|^2 multiset via norm_sq in Z[zeta_p] (slow reference route)."""
    out: dict[int, int] = {}
    for v in spectrum.values:
        r = as_rational_int(norm_sq(v))
        if r is None:
            raise ArithmeticError("norm left the rationals")
        out[r] = out.get(r, 0) + 1
    return out


# ---------------------------------------------------------------- hyperplane counts


def census_table(f: PFunction) -> np.ndarray:
    """``H[w, v] = #{x : Tr(w x) = 0, f(x) = v}`` for every w at once."""
    return kernels.hyperplane_census(f.values, f.ctx.trace_matrix, f.ctx.p)


def _classes(p: int):
    chi = quad_char(p)
    return list(chi.squares), list(chi.nonsquares)


def _count_from_row(row: np.ndarray, p: int, kind: str) -> int:
    sq, nsq = _classes(p)
    if kind == "N0":
        return int(row[0])
    if kind == "Nsq":
        return int(row[sq].sum())
    if kind == "Nnsq":
        return int(row[nsq].sum())
    if kind == "N1":
        return int(row[1])
    if kind == "N2":
        return int(row[2 % p])
    if kind == "Nsq0":
        return int(row[0] + row[sq].sum())
    if kind == "Nnsq0":
        return int(row[0] + row[nsq].sum())
    raise KeyError(kind)


def census_count(f: PFunction, w: int, kind: str) -> int:
    if w == 0:
        raise ZeroFrequency("counts are defined for nonzero frequencies only")
    ctx = f.ctx
    on_plane = ctx.trace_matrix[w] == 0
    row = np.bincount(f.values[on_plane], minlength=ctx.p)
    return _count_from_row(row, ctx.p, kind)


def census_N0(f, w):
    return census_count(f, w, "N0")


def census_Nsq(f, w):
    return census_count(f, w, "Nsq")


def census_Nnsq(f, w):
    return census_count(f, w, "Nnsq")


def census_N1(f, w):
    return census_count(f, w, "N1")


def census_N2(f, w):
    return census_count(f, w, "N2")


def census_Nsq0(f, w):
    return census_count(f, w, "Nsq0")


def census_Nnsq0(f, w):
    return census_count(f, w, "Nnsq0")


def census_all(f: PFunction) -> dict[str, np.ndarray]:
    """Every counter at every frequency (entry 0 is meaningless)."""
    table = census_table(f)
    p = f.ctx.p
    return {k: np.array([_count_from_row(row, p, k) for row in table]) for k in COUNTERS}


# ---------------------------------------------------------------- closed forms


def _closed_value(p: int, m: int, s: int, eps: int, cls: str, kind: str) -> Fraction:
    """The lemma expression for one counter, selected by the dual class of w."""
    if kind == "N1":
        return 2 * _closed_value(p, m, s, eps, cls, "Nsq") / (p - 1)
    if kind == "N2":
        return 2 * _closed_value(p, m, s, eps, cls, "Nnsq") / (p - 1)
    eta = quad_char(p).eta0(-1)
    base = Fraction(p) ** (m - 2)
    half_minus, half_plus = Fraction(p - 1, 2), Fraction(p + 1, 2)
    if cls == "out":
        return {"N0": base, "Nsq": half_minus * base, "Nnsq": half_minus * base,
                "Nsq0": half_plus * base, "Nnsq0": half_plus * base}[kind]
    if (m + s) % 2 == 0:
        r = pstar_power(p, m + s - 4)
        own = {"Nsq": "sq", "Nnsq": "nsq", "Nsq0": "nsq", "Nnsq0": "sq"}
        if kind == "N0":
            return base + eps * (p - 1) ** 2 * r if cls == "0" else base - eps * (p - 1) * r
        if kind in ("Nsq", "Nnsq"):
            if cls == own[kind]:
                return half_minus * (base + eps * (p + 1) * r)
            return half_minus * (base - eps * (p - 1) * r)
        # Nsq0 / Nnsq0: the "other" class is the exceptional one
        if cls == own[kind]:
            return half_plus * (base - eps * (p - 1) * r)
        return half_plus * base + eps * Fraction((p - 1) ** 2, 2) * r
    r = pstar_power(p, m + s - 3)
    q = half_minus * eps * r
    table = {
        "N0": {"0": base, "sq": base + eps * (p - 1) * r, "nsq": base - eps * (p - 1) * r},
        "Nsq": {
            "0": half_minus * base + q * eta * (p - 1),
            "sq": half_minus * base - q * (eta + 1),
            "nsq": half_minus * base - q * (eta - 1),
        },
        "Nnsq": {
            "0": half_minus * base - q * eta * (p - 1),
            "sq": half_minus * base + q * (eta - 1),
            "nsq": half_minus * base + q * (eta + 1),
        },
        "Nsq0": {
            "0": half_plus * base + q * eta * (p - 1),
            "sq": half_plus * base - q * (eta - 1),
            "nsq": half_plus * base - q * (eta + 1),
        },
        "Nnsq0": {
            "0": half_plus * base - q * eta * (p - 1),
            "sq": half_plus * base + q * (eta + 1),
            "nsq": half_plus * base + q * (eta - 1),
        },
    }
    return table[kind][cls]


def closed_form_count(profile: PlateauedProfile, w: int, kind: str) -> int:
    if w == 0:
        raise ZeroFrequency("counts are defined for nonzero frequencies only")
    if kind not in COUNTERS:
        raise KeyError(kind)
    ctx = profile.ctx
    val = _closed_value(ctx.p, ctx.m, profile.s, profile.epsilon, profile.dual_class(w), kind)
    return _as_int(val, f"{kind} at w={w}")


def closed_form_N0(profile, w):
    return closed_form_count(profile, w, "N0")


def closed_form_Nsq(profile, w):
    return closed_form_count(profile, w, "Nsq")


def closed_form_Nnsq(profile, w):
    return closed_form_count(profile, w, "Nnsq")


def closed_form_N1(profile, w):
    return closed_form_count(profile, w, "N1")


def closed_form_N2(profile, w):
    return closed_form_count(profile, w, "N2")


def closed_form_Nsq0(profile, w):
    return closed_form_count(profile, w, "Nsq0")


def closed_form_Nnsq0(profile, w):
    return closed_form_count(profile, w, "Nnsq0")
