"""p-ary functions F_{p^m} -> F_p, quadratic forms and the WRPB conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import BadEntry, BadLength, NotQuadratic
from .field import FieldCtx, build_field, ff_mul, ff_pow, format_field_spec, trace

__all__ = [
    "PFunction",
    "QuadraticForm",
    "WrpbCertificate",
    "from_table",
    "quadratic",
    "monomial_table",
    "linearized_kernel",
    "kernel_dimension",
    "kernel_matrix",
    "check_wrpb_conditions",
    "admissible_exponents",
    "parse_function_file",
    "dump_function_file",
]


@dataclass(frozen=True)
class QuadraticForm:
    """Coefficients a_0..a_k (k = m // 2) of sum_i Tr(a_i x^{p^i+1}).

    ``linear`` is an optional b adding Tr(b x); it is 0 for a genuine
    quadratic form.
    """

    coeffs: tuple[int, ...]
    linear: int = 0

    def describe(self) -> str:
        s = "quad: " + " ".join(str(c) for c in self.coeffs)
        if self.linear:
            s += f" linear: {self.linear}"
        return s


@dataclass(frozen=True, eq=False)
class PFunction:
    ctx: FieldCtx
    values: np.ndarray = field(repr=False)
    provenance: QuadraticForm | None = None

    def __len__(self):
        return len(self.values)

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def value_census(self) -> np.ndarray:
        return np.bincount(self.values, minlength=self.ctx.p)

    def is_balanced(self) -> bool:
        return bool(np.all(self.value_census() == self.ctx.p ** (self.ctx.m - 1)))


def from_table(ctx: FieldCtx, values, provenance=None) -> PFunction:
    vals = np.asarray(values)
    if vals.ndim != 1 or len(vals) != ctx.order:
        raise BadLength(f"need {ctx.order} values, got shape {vals.shape}")
    if len(vals) and (vals.min() < 0 or vals.max() >= ctx.p):
        raise BadEntry(f"values must lie in [0, {ctx.p})")
    vals = vals.astype(np.uint8)
    vals.setflags(write=False)
    return PFunction(ctx, vals, provenance)


@lru_cache(maxsize=None)
def monomial_table(ctx: FieldCtx, i: int) -> np.ndarray:
    """Encodings of x^{p^i + 1} for every x."""
    d = ctx.digits
    frob = d @ ctx.frobenius_power_matrix(i).T % ctx.p
    out = ctx.enc_rows(ctx.mul_rows(d, frob))
    out.setflags(write=False)
    return out


def _num_coeffs(m: int) -> int:
    return m // 2 + 1


def quadratic(ctx: FieldCtx, coeffs, linear: int = 0, check: bool = True) -> PFunction:
    """Q(x) = sum_i Tr(a_i x^{p^i+1}) (+ Tr(b x) when ``linear`` is b)."""
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != _num_coeffs(ctx.m):
        raise BadLength(f"need {_num_coeffs(ctx.m)} coefficients for m={ctx.m}, got {len(coeffs)}")
    if any(not 0 <= c < ctx.order for c in coeffs + (linear,)):
        raise BadEntry("coefficients must be element encodings")
    tm = ctx.trace_matrix
    acc = np.zeros(ctx.order, dtype=np.int64)
    for i, a in enumerate(coeffs):
        if a:
            acc += tm[a, monomial_table(ctx, i)]
    if linear:
        acc += tm[linear]
    values = (acc % ctx.p).astype(np.uint8)
    if check:
        _check_quadratic(ctx, coeffs, linear, values)
    return from_table(ctx, values, QuadraticForm(coeffs, int(linear)))


def _check_quadratic(ctx, coeffs, linear, values) -> None:
    # independent route: scalar powers and the trace table
    p = ctx.p
    for x in range(ctx.order):
        v = trace(ctx, ff_mul(ctx, linear, x)) if linear else 0
        for i, a in enumerate(coeffs):
            if a:
                v += trace(ctx, ff_mul(ctx, a, ff_pow(ctx, x, p**i + 1)))
        if v % p != values[x]:
            raise ArithmeticError(f"quadratic evaluation mismatch at x={x}")


def kernel_matrix(ctx: FieldCtx, qf: QuadraticForm) -> np.ndarray:
    """Matrix of L(z) = sum_i (a_i z^{p^i} + a_i^{p^{m-i}} z^{p^{m-i}})."""
    p, m = ctx.p, ctx.m
    mat = np.zeros((m, m), dtype=np.int64)
    for i, a in enumerate(qf.coeffs):
        if not a:
            continue
        conj = ff_pow(ctx, a, p ** ((m - i) % m))
        mat += ctx.mul_matrix(a) @ ctx.frobenius_power_matrix(i)
        mat += ctx.mul_matrix(conj) @ ctx.frobenius_power_matrix(m - i)
    return mat % p


def linearized_kernel(f, ctx: FieldCtx | None = None) -> list[int]:
    """Zeros of the linearized polynomial attached to a quadratic form.

    Accepts a PFunction carrying quadratic provenance, or a QuadraticForm
    together with its field.  The dimension of the returned subspace is s.
    """
    if isinstance(f, PFunction):
        ctx, qf = f.ctx, f.provenance
    else:
        qf = f
    if not isinstance(qf, QuadraticForm) or ctx is None:
        raise NotQuadratic("no quadratic-form provenance to take a kernel of")
    mat = kernel_matrix(ctx, qf)
    images = ctx.digits @ mat.T % ctx.p
    return [int(z) for z in np.flatnonzero(~images.any(axis=1))]


def kernel_dimension(f, ctx: FieldCtx | None = None) -> int:
    ker = linearized_kernel(f, ctx)
    p = (ctx or f.ctx).p
    s = 0
    while p**s < len(ker):
        s += 1
    return s


# ---------------------------------------------------------------- WRPB check


def admissible_exponents(p: int) -> list[int]:
    """Even t in [2, 2(p-1)] with gcd(t-1, p-1) = 1."""
    return [t for t in range(2, 2 * (p - 1) + 1, 2) if gcd(t - 1, p - 1) == 1]


@dataclass(frozen=True)
class WrpbCertificate:
    balanced: bool
    f_of_zero_is_zero: bool
    homogeneity_exponent_t: int | None
    holds: bool
    reasons: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "balanced": self.balanced,
            "f_of_zero_is_zero": self.f_of_zero_is_zero,
            "t": self.homogeneity_exponent_t,
            "holds": self.holds,
            "reasons": list(self.reasons),
        }


def homogeneity_exponent(f: PFunction, candidates=None) -> int | None:
    """Smallest admissible t with f(a x) = a^t f(x) for all a, x."""
    ctx, p = f.ctx, f.ctx.p
    orbits = ctx.scalar_orbits
    vals = f.values.astype(np.int64)
    for t in candidates if candidates is not None else admissible_exponents(p):
        if all(
            np.array_equal(vals[orbits[a]], pow(a, t, p) * vals % p) for a in range(2, p)
        ):
            return t
    return None


def check_wrpb_conditions(f: PFunction, spectrum_balanced: bool | None = None) -> WrpbCertificate:
    reasons = []
    balanced = f.is_balanced()
    if spectrum_balanced is not None and spectrum_balanced != balanced:
        raise ArithmeticError("value census and W_f(0) disagree on balancedness")
    if not balanced:
        reasons.append("unbalanced")
    zero_ok = f(0) == 0
    if not zero_ok:
        reasons.append("f(0) != 0")
    t = homogeneity_exponent(f)
    if t is None:
        reasons.append("no even homogeneity exponent")
    return WrpbCertificate(balanced, zero_ok, t, balanced and zero_ok and t is not None, tuple(reasons))


# ---------------------------------------------------------------- file format


def parse_function_file(text: str) -> PFunction:
    """Header ``p m [mod coeffs...]`` then ``quad: ...`` or ``table: ...``.

    An optional ``linear: b`` line adds Tr(b x) to a quadratic.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise BadLength("empty function file")
    head = lines[0].split()
    try:
        nums = [int(tok) for tok in head if tok != "mod"]
    except ValueError as exc:
        raise BadEntry(f"bad header {lines[0]!r}") from exc
    if len(nums) < 2:
        raise BadEntry("header needs p and m")
    p, m = nums[0], nums[1]
    ctx = build_field(p, m, tuple(nums[2:]) if len(nums) > 2 else None)
    body = {}
    for ln in lines[1:]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise BadEntry(f"unrecognised line {ln!r}")
        body[key.strip()] = [int(tok) for tok in rest.split()]
    if "table" in body:
        return from_table(ctx, body["table"])
    if "quad" in body:
        lin = body.get("linear", [0])
        return quadratic(ctx, body["quad"], lin[0] if lin else 0, check=False)
    raise BadEntry("function file needs a quad: or table: line")


def dump_function_file(f: PFunction) -> str:
    ctx = f.ctx
    head = f"{ctx.p} {ctx.m} mod " + " ".join(str(c) for c in ctx.modulus)
    if f.provenance is not None:
        body = "quad: " + " ".join(str(c) for c in f.provenance.coeffs)
        if f.provenance.linear:
            body += f"\nlinear: {f.provenance.linear}"
    else:
        body = "table: " + " ".join(str(int(v)) for v in f.values)
    return head + "\n" + body + "\n"


def field_spec_of(f: PFunction) -> str:
    return format_field_spec(f.ctx.p, f.ctx.m, f.ctx.modulus)
