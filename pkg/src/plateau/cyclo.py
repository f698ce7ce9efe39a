"""Exact arithmetic in Z[zeta_p].

Elements are stored in the reduced power basis ``1, zeta, ..., zeta^{p-2}``;
``zeta^{p-1}`` is always rewritten as ``-(1 + zeta + ... + zeta^{p-2})`` so
equal ring elements have equal coordinate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import MixedRoots
from .field import quad_char

__all__ = [
    "CycloInt",
    "GaussSum",
    "cy_add",
    "cy_mul",
    "cy_neg",
    "cy_conj",
    "norm_sq",
    "gauss_sum",
    "sqrt_pstar_pow",
    "as_rational_int",
    "zeta",
    "from_exponent_counts",
]


def _reduce(p: int, full) -> tuple[int, ...]:
    """Length-p coefficient list (powers 0..p-1) -> canonical length p-1 tuple."""
    top = full[p - 1]
    return tuple(int(full[i] - top) for i in range(p - 1))


@dataclass(frozen=True)
class CycloInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError(f"need {self.p - 1} coordinates, got {len(self.coeffs)}")

    @classmethod
    def from_int(cls, p: int, r: int) -> CycloInt:
        return cls(p, (int(r),) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycloInt:
        return cls(p, (0,) * (p - 1))

    def _check(self, other: CycloInt) -> None:
        if self.p != other.p:
            raise MixedRoots(f"cannot combine Z[zeta_{self.p}] with Z[zeta_{other.p}]")

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(self.p, other)
        self._check(other)
        return CycloInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        p = self.p
        if isinstance(other, int):
            return CycloInt(p, tuple(other * a for a in self.coeffs))
        self._check(other)
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycloInt(p, _reduce(p, out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements")
        result, base = CycloInt.from_int(self.p, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycloInt:
        """The automorphism zeta -> zeta^{-1}."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(-i) % p] += a
        return CycloInt(p, _reduce(p, out))

    def galois(self, k: int) -> CycloInt:
        """The automorphism zeta -> zeta^k, k prime to p."""
        p = self.p
        if k % p == 0:
            raise ValueError("k must be prime to p")
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(i * k) % p] += a
        return CycloInt(p, _reduce(p, out))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __bool__(self):
        return any(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def cy_add(a: CycloInt, b: CycloInt) -> CycloInt:
    return a + b


def cy_mul(a: CycloInt, b: CycloInt) -> CycloInt:
    return a * b


def cy_neg(a: CycloInt) -> CycloInt:
    return -a


def cy_conj(a: CycloInt) -> CycloInt:
    return a.conj()


def norm_sq(a: CycloInt) -> CycloInt:
    return a * a.conj()


def as_rational_int(a: CycloInt) -> int | None:
    return a.coeffs[0] if a.is_rational() else None


def zeta(p: int, k: int = 1) -> CycloInt:
    full = [0] * p
    full[k % p] = 1
    return CycloInt(p, _reduce(p, full))


def from_exponent_counts(p: int, counts) -> CycloInt:
    """sum_j counts[j] * zeta^j for j in 0..p-1."""
    return CycloInt(p, _reduce(p, [int(c) for c in counts]))


@dataclass(frozen=True)
class GaussSum:
    """The quadratic Gauss sum; its square is p* = eta0(-1) p."""

    p: int
    value: CycloInt


@lru_cache(maxsize=None)
def gauss_sum(p: int) -> GaussSum:
    chi = quad_char(p)
    full = [chi.eta0(x) for x in range(p)]
    g = from_exponent_counts(p, full)
    if g * g != CycloInt.from_int(p, chi.p_star()):
        raise ArithmeticError(f"Gauss sum self-check failed for p={p}")
    return GaussSum(p, g)


@lru_cache(maxsize=None)
def sqrt_pstar_pow(p: int, e: int) -> CycloInt:
    """sqrt(p*)^e realized as the e-th power of the Gauss sum."""
    if e < 0:
        raise ValueError("use pstar_power for negative exponents")
    if e % 2 == 0:
        return CycloInt.from_int(p, quad_char(p).p_star() ** (e // 2))
    return gauss_sum(p).value ** e
