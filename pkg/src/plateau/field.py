"""Arithmetic in F_p and F_{p^m}, the absolute trace and the quadratic character of F_p.

Elements of F_{p^m} are plain ints in ``[0, p^m)``: the base-p digits of the
integer are the coefficient vector of the element in the power basis
``1, x, ..., x^{m-1}`` of the modulus.  Dense tables indexed by this encoding
are what the rest of the package works on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import CompositeP, DivisionByZero, ReduciblePolynomial

__all__ = [
    "FieldCtx",
    "QuadChar",
    "build_field",
    "field_from_spec",
    "parse_field_spec",
    "format_field_spec",
    "is_prime",
    "is_irreducible",
    "default_modulus",
    "ff_add",
    "ff_sub",
    "ff_neg",
    "ff_mul",
    "ff_inv",
    "ff_pow",
    "ff_scale",
    "frobenius",
    "trace",
    "quad_char",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------- polynomials
# Polynomials over F_p are coefficient lists, low degree first.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, b, p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
        _trim(a)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_rem(modulus, list(tail) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m, comparing c0 first."""
    for tail in itertools.product(range(p), repeat=m):
        mod = tuple(tail) + (1,)
        if is_irreducible(mod, p):
            return mod
    raise ReduciblePolynomial(f"no irreducible polynomial of degree {m} over F_{p}")


# ---------------------------------------------------------------- field spec


def parse_field_spec(spec: str) -> tuple[int, int, tuple[int, ...] | None]:
    """Parse ``"p=<int>,m=<int>[,mod=<c0,c1,...,cm>]"``."""
    spec = spec.strip()
    modulus = None
    if "mod=" in spec:
        head, mod_part = spec.split("mod=", 1)
        modulus = tuple(int(c) for c in mod_part.split(",") if c.strip())
        spec = head.rstrip(", ")
    kv = {}
    for item in spec.split(","):
        if not item.strip():
            continue
        key, _, val = item.partition("=")
        kv[key.strip()] = int(val)
    if set(kv) != {"p", "m"}:
        raise ValueError(f"bad field spec {spec!r}: need p=<int>,m=<int>")
    return kv["p"], kv["m"], modulus


def format_field_spec(p: int, m: int, modulus=None) -> str:
    s = f"p={p},m={m}"
    if modulus is not None:
        s += ",mod=" + ",".join(str(c) for c in modulus)
    return s


# ---------------------------------------------------------------- context


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable description of F_{p^m} with precomputed tables.

    ``digits[x]`` is the coefficient vector of element ``x``; ``trace_table[x]``
    its absolute trace.  Heavier tables (the full trace matrix, scalar orbits)
    are built on first use.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    spec: str
    digits: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)
    generator: int = 0

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def size(self) -> int:
        return self.p**self.m

    @cached_property
    def place_values(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    def vec(self, a: int) -> list[int]:
        return [(a // self.p**j) % self.p for j in range(self.m)]

    def enc(self, v) -> int:
        return int(sum(int(c) % self.p * self.p**j for j, c in enumerate(v)))

    def enc_rows(self, rows: np.ndarray) -> np.ndarray:
        return (np.asarray(rows, dtype=np.int64) % self.p) @ self.place_values

    @cached_property
    def basis_trace(self) -> np.ndarray:
        """Tr(x^j) for j < 2m-1, enough to build the trace form."""
        out = [_trace_slow(self, _poly_x_pow(self, j)) for j in range(2 * self.m - 1)]
        return np.array(out, dtype=np.int64)

    @cached_property
    def trace_form(self) -> np.ndarray:
        """m x m matrix with entry (i, j) = Tr(x^i x^j); Tr(a b) = a^T M b."""
        bt = self.basis_trace
        m = self.m
        return np.array([[bt[i + j] for j in range(m)] for i in range(m)], dtype=np.int64)

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of a -> a^p on digit vectors (column j is the image of x^j)."""
        cols = [self.vec(frobenius(self, self.p**j)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    def frobenius_power_matrix(self, i: int) -> np.ndarray:
        mat = np.eye(self.m, dtype=np.int64)
        for _ in range(i % self.m):
            mat = self.frobenius_matrix @ mat % self.p
        return mat

    @cached_property
    def trace_matrix(self) -> np.ndarray:
        """``T[w, x] = Tr(w x)`` as a dense uint8 table."""
        d = self.digits
        t = (d @ self.trace_form % self.p) @ d.T % self.p
        t = t.astype(np.uint8)
        t.setflags(write=False)
        return t

    @cached_property
    def scalar_orbits(self) -> np.ndarray:
        """Row ``a`` holds the encodings of ``a*x`` for every x (a in F_p)."""
        rows = [self.enc_rows(a * self.digits) for a in range(self.p)]
        out = np.array(rows, dtype=np.int64)
        out.setflags(write=False)
        return out

    def mul_matrix(self, a: int) -> np.ndarray:
        """Matrix of the F_p-linear map x -> a*x."""
        cols = [self.vec(ff_mul(self, a, self.p**j)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    def mul_rows(self, a_rows: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
        """Elementwise product of two arrays of digit vectors."""
        p, m = self.p, self.m
        a = np.asarray(a_rows, dtype=np.int64)
        b = np.asarray(b_rows, dtype=np.int64)
        prod = np.zeros(a.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i : i + m] += a[..., i : i + 1] * b
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[..., k : k + 1]
            prod[..., k - m : k + 1] -= c * mod
            prod %= p
        return prod[..., :m]


def _poly_x_pow(ctx: FieldCtx, j: int) -> int:
    return ff_pow(ctx, _x_elem(ctx), j)


def _x_elem(ctx: FieldCtx) -> int:
    # for m = 1 the element "x" reduces to -c0 (modulus x + c0)
    return (-ctx.modulus[0]) % ctx.p if ctx.m == 1 else ctx.p


def _trace_slow(ctx: FieldCtx, a: int) -> int:
    """Tr(a) = a + a^p + ... + a^{p^{m-1}} by repeated Frobenius."""
    acc, y = 0, a
    for _ in range(ctx.m):
        acc = ff_add(ctx, acc, y)
        y = frobenius(ctx, y)
    if acc >= ctx.p:
        raise ArithmeticError("trace left the prime field; modulus is not irreducible")
    return acc


def build_field(p: int, m: int, modulus=None) -> FieldCtx:
    """Validated F_{p^m}.  Without a modulus the smallest irreducible is used."""
    if p % 2 == 0 or not is_prime(p):
        raise CompositeP(f"p={p} is not an odd prime")
    if m < 1:
        raise ValueError("degree m must be positive")
    if modulus is None:
        modulus = default_modulus(p, m)
        spec = format_field_spec(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ReduciblePolynomial(f"modulus must be monic of degree {m}: {modulus}")
        if not is_irreducible(modulus, p):
            raise ReduciblePolynomial(f"modulus {modulus} is reducible over F_{p}")
        spec = format_field_spec(p, m, modulus)
    n = p**m
    idx = np.arange(n, dtype=np.int64)
    digits = np.stack([(idx // p**j) % p for j in range(m)], axis=1)
    digits.setflags(write=False)
    ctx = FieldCtx(p, m, tuple(modulus), spec, digits, np.zeros(0, dtype=np.int64))

    basis = np.array([_trace_slow(ctx, p**j if m > 1 else 1) for j in range(m)], dtype=np.int64)
    tr = digits @ basis % p
    tr.setflags(write=False)
    object.__setattr__(ctx, "trace_table", tr)
    if np.any(np.bincount(tr, minlength=p) != p ** (m - 1)):
        raise ArithmeticError("trace is not balanced")
    object.__setattr__(ctx, "generator", _find_generator(ctx))
    return ctx


def _find_generator(ctx: FieldCtx) -> int:
    q = ctx.order - 1
    primes = _prime_factors(q)
    for g in range(1, ctx.order):
        if all(ff_pow(ctx, g, q // r) != 1 for r in primes):
            return g
    raise ArithmeticError("no generator: modulus is not irreducible")


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus) -> FieldCtx:
    return build_field(p, m, modulus)


def field_from_spec(spec: str) -> FieldCtx:
    p, m, modulus = parse_field_spec(spec)
    return _cached_field(p, m, modulus)


# ---------------------------------------------------------------- element ops


def ff_add(ctx: FieldCtx, a: int, b: int) -> int:
    p = ctx.p
    out, place = 0, 1
    for _ in range(ctx.m):
        out += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return out


def ff_neg(ctx: FieldCtx, a: int) -> int:
    p = ctx.p
    out, place = 0, 1
    for _ in range(ctx.m):
        out += (-(a % p) % p) * place
        a //= p
        place *= p
    return out


def ff_sub(ctx: FieldCtx, a: int, b: int) -> int:
    return ff_add(ctx, a, ff_neg(ctx, b))


def ff_scale(ctx: FieldCtx, c: int, a: int) -> int:
    """Multiply by the prime-field scalar c."""
    return ctx.enc([c * d for d in ctx.vec(a)])


def ff_mul(ctx: FieldCtx, a: int, b: int) -> int:
    p, m, mod = ctx.p, ctx.m, ctx.modulus
    av, bv = ctx.vec(a), ctx.vec(b)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(av):
        if x:
            for j, y in enumerate(bv):
                prod[i + j] += x * y
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(m + 1):
                prod[k - m + j] -= c * mod[j]
    return ctx.enc(prod[:m])


def ff_pow(ctx: FieldCtx, a: int, e: int) -> int:
    if e < 0:
        return ff_pow(ctx, ff_inv(ctx, a), -e)
    result, base = 1, a
    while e:
        if e & 1:
            result = ff_mul(ctx, result, base)
        base = ff_mul(ctx, base, base)
        e >>= 1
    return result


def ff_inv(ctx: FieldCtx, a: int) -> int:
    if a == 0:
        raise DivisionByZero("0 has no inverse")
    return ff_pow(ctx, a, ctx.order - 2)


def frobenius(ctx: FieldCtx, a: int) -> int:
    return ff_pow(ctx, a, ctx.p)


def trace(ctx: FieldCtx, a: int) -> int:
    return int(ctx.trace_table[a])


# ---------------------------------------------------------------- character


@dataclass(frozen=True)
class QuadChar:
    """Quadratic character of F_p as a lookup table (table[0] = 0)."""

    p: int
    table: tuple[int, ...]

    def eta0(self, a: int) -> int:
        return self.table[a % self.p]

    def is_square(self, a: int) -> bool:
        return self.table[a % self.p] == 1

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.p) if self.table[a] == 1)

    @property
    def nonsquares(self) -> tuple[int, ...]:
        return tuple(a for a in range(1, self.p) if self.table[a] == -1)

    def p_star(self) -> int:
        return self.eta0(-1) * self.p


@lru_cache(maxsize=None)
def quad_char(p: int) -> QuadChar:
    if p % 2 == 0 or not is_prime(p):
        raise CompositeP(f"p={p} is not an odd prime")
    sq = {a * a % p for a in range(1, p)}
    return QuadChar(p, tuple(0 if a == 0 else (1 if a in sq else -1) for a in range(p)))
