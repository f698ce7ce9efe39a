"""Closed-form weight distributions, one entry per appendix table.

Each table is a function of ``(p, m, s, eps)`` returning its rows as
``(weight, multiplicity)`` pairs of exact Fractions.  ``sqrt(p*)`` powers go
through the Gauss sum; the p = 1 mod 4 tables that print ``sqrt(p)`` are the
same thing since p* = p there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegerResult, UncoveredBranch
from .field import quad_char
from .spectrum import pstar_power

__all__ = ["TABLES", "ClosedFormDistribution", "select_table", "evaluate_table", "table_distribution"]


@dataclass(frozen=True)
class _Env:
    p: int
    m: int
    s: int
    eps: int

    @property
    def eta(self) -> int:
        return quad_char(self.p).eta0(-1)

    def P(self, e: int) -> Fraction:
        return Fraction(self.p) ** e

    def S(self, e: int) -> Fraction:
        return pstar_power(self.p, e)

    def rootp(self, e: int) -> Fraction:
        # sqrt(p)^e; only ever used with p = 1 mod 4 where it equals sqrt(p*)^e
        if self.p % 4 != 1:
            raise NonIntegerResult("sqrt(p) rows belong to the p = 1 mod 4 tables")
        return pstar_power(self.p, e)


def _rest(v: _Env) -> Fraction:
    return v.P(v.m) - v.P(v.m - v.s) - 1


def _t1(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    k = e * eta ** (m + 1)
    return [
        ((p - 1) * P(m - 2), _rest(v)),
        ((P(m) - e * (p - 1) * S(m + s)) * (p - 1) / P(2), P(m - s - 1) + k * (p - 1) * S(m - s - 2)),
        ((P(m) + e * S(m + s)) * (p - 1) / P(2), (p - 1) * (P(m - s - 1) - k * S(m - s - 2))),
    ]


def _t2(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    return [
        ((p - 1) * (P(m - 2) - e * R(m + s - 3)), P(m - s - 1)),
        ((p - 1) * P(m - 2) + 2 * e * R(m + s - 3), (P(m - s - 1) + e * R(m - s - 1)) * h),
        ((p - 1) * P(m - 2), _rest(v) + (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t3(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    return [
        ((p - 1) * (P(m - 2) + e * S(m + s - 3)), P(m - s - 1)),
        ((p - 1) * P(m - 2), _rest(v) + (P(m - s - 1) + sg * S(m - s - 1)) * h),
        ((p - 1) * P(m - 2) - 2 * e * S(m + s - 3), (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t4(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta ** (m + 1)
    return [
        ((p - 1) * P(m - 2), _rest(v)),
        ((P(m) + e * S(m + s)) * (p - 1) / P(2), P(m - s - 1) + (P(m - s - 1) + k * S(m - s - 2)) * h),
        (((p - 1) * P(m) - e * (p + 1) * S(m + s)) / P(2), (P(m - s - 1) - k * S(m - s - 2)) * h),
    ]


def _t5(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta**m
    base = 2 * (p - 1) * P(m - 2)
    return [
        (base, _rest(v)),
        ((p - 1) * (2 * P(m - 2) - e * eta * S(m + s - 3)), P(m - s - 1)),
        (base - e * (p - 2 - eta) * S(m + s - 3), (P(m - s - 1) + k * S(m - s - 1)) * h),
        (base + e * (p - 2 + eta) * S(m + s - 3), (P(m - s - 1) - k * S(m - s - 1)) * h),
    ]


def _t6(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta ** (m + 1)
    other = (P(m - s - 1) - k * S(m - s - 2)) * h
    return [
        (2 * (p - 1) * P(m - 2), _rest(v)),
        ((2 * P(m) - e * (p - 2) * S(m + s)) * (p - 1) / P(2), P(m - s - 1) + k * (p - 1) * S(m - s - 2)),
        (2 * ((p - 1) * P(m) - e * S(m + s)) / P(2), other),
        (2 * (P(m) + e * S(m + s)) * (p - 1) / P(2), other),
    ]


def _t7(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    return [
        ((p - 1) * (P(m - 2) + e * R(m + s - 3)), P(m - s - 1)),
        ((p - 1) * P(m - 2), _rest(v) + (P(m - s - 1) + e * R(m - s - 1)) * h),
        ((p - 1) * P(m - 2) - 2 * e * R(m + s - 3), (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t8(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    return [
        ((p - 1) * (P(m - 2) - e * S(m + s - 3)), P(m - s - 1)),
        ((p - 1) * P(m - 2) + 2 * e * S(m + s - 3), (P(m - s - 1) + sg * S(m - s - 1)) * h),
        ((p - 1) * P(m - 2), _rest(v) + (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t9(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta**m
    base = 2 * (p - 1) * P(m - 2)
    return [
        (base, _rest(v)),
        ((p - 1) * (2 * P(m - 2) + e * eta * S(m + s - 3)), P(m - s - 1)),
        (base - e * (p - 2 + eta) * S(m + s - 3), (P(m - s - 1) + k * S(m - s - 1)) * h),
        (base + e * (p - 2 - eta) * S(m + s - 3), (P(m - s - 1) - k * S(m - s - 1)) * h),
    ]


def _t10(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta**m
    base = 2 * (p - 1) * P(m - 2)
    return [
        (base, P(m - s - 1) + _rest(v)),
        (base + 2 * e * S(m + s - 3), (P(m - s - 1) + k * S(m - s - 1)) * h),
        (base - 2 * e * S(m + s - 3), (P(m - s - 1) - k * S(m - s - 1)) * h),
    ]


def _t11(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    k = e * eta ** (m + 1)
    return [
        (2 * (p - 1) * P(m - 2), _rest(v)),
        (2 * (p - 1) * (P(m) + e * S(m + s)) / P(2), P(m - s - 1) + k * (p - 1) * S(m - s - 2)),
        (2 * ((p - 1) * P(m) - e * S(m + s)) / P(2), (p - 1) * (P(m - s - 1) - k * S(m - s - 2))),
    ]


def _t12(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    return [
        ((P(m - 2) - e * R(m + s - 3)) * (p - 1) ** 2 / 2, P(m - s - 1)),
        ((p - 1) * (P(m - 2) * h + e * R(m + s - 3)), (P(m - s - 1) + e * R(m - s - 1)) * h),
        (P(m - 2) * (p - 1) ** 2 / 2, _rest(v) + (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t13(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    return [
        ((P(m - 2) + e * S(m + s - 3)) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (P(m - 2) * (p - 1) ** 2 / 2, _rest(v) + (P(m - s - 1) + sg * S(m - s - 1)) * h),
        ((p - 1) * (P(m - 2) * h - e * S(m + s - 3)), (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t14(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta ** (m + 1)
    return [
        (P(m) * (p - 1) ** 2 / (2 * P(2)), _rest(v)),
        ((P(m) + e * S(m + s)) * (p - 1) ** 2 / (2 * P(2)), P(m - s - 1) + (P(m - s - 1) + k * S(m - s - 2)) * h),
        (((p - 1) * P(m) - e * (p + 1) * S(m + s)) * (p - 1) / (2 * P(2)), (P(m - s - 1) - k * S(m - s - 2)) * h),
    ]


def _t15(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    base = P(m - 2) * (p * p - 1) / 2
    return [
        (base - e * R(m + s - 3) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (base, _rest(v) + (P(m - s - 1) + e * R(m - s - 1)) * h),
        (base + e * (p - 1) * R(m + s - 3), (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t16(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    base = P(m - 2) * (p * p - 1) / 2
    return [
        (base + e * S(m + s - 3) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (base - e * (p - 1) * S(m + s - 3), (P(m - s - 1) + sg * S(m - s - 1)) * h),
        (base, _rest(v) + (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t17(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    h = Fraction(p - 1, 2)
    k = e * eta ** (m + 1)
    return [
        (P(m) * (p * p - 1) / (2 * P(2)), _rest(v)),
        (((p + 1) * P(m) - e * (p - 1) * S(m + s)) * (p - 1) / (2 * P(2)), P(m - s - 1) + h * (P(m - s - 1) + k * S(m - s - 2))),
        ((P(m) + e * S(m + s)) * (p * p - 1) / (2 * P(2)), h * (P(m - s - 1) - k * S(m - s - 2))),
    ]


def _t18(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    return [
        ((P(m - 2) + e * R(m + s - 3)) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (P(m - 2) * (p - 1) ** 2 / 2, _rest(v) + (P(m - s - 1) + e * R(m - s - 1)) * h),
        ((p - 1) * (P(m - 2) * h - e * R(m + s - 3)), (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t19(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    return [
        ((P(m - 2) - e * S(m + s - 3)) * (p - 1) ** 2 / 2, P(m - s - 1)),
        ((p - 1) * (P(m - 2) * h + e * S(m + s - 3)), (P(m - s - 1) + sg * S(m - s - 1)) * h),
        (P(m - 2) * (p - 1) ** 2 / 2, _rest(v) + (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t20(v):
    p, m, s, e, P, R = v.p, v.m, v.s, v.eps, v.P, v.rootp
    h = Fraction(p - 1, 2)
    base = P(m - 2) * (p * p - 1) / 2
    return [
        (base + e * R(m + s - 3) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (base - e * (p - 1) * R(m + s - 3), (P(m - s - 1) + e * R(m - s - 1)) * h),
        (base, _rest(v) + (P(m - s - 1) - e * R(m - s - 1)) * h),
    ]


def _t21(v):
    p, m, s, e, P, S = v.p, v.m, v.s, v.eps, v.P, v.S
    h = Fraction(p - 1, 2)
    sg = e * (-1) ** m
    base = P(m - 2) * (p * p - 1) / 2
    return [
        (base - e * S(m + s - 3) * (p - 1) ** 2 / 2, P(m - s - 1)),
        (base, _rest(v) + (P(m - s - 1) + sg * S(m - s - 1)) * h),
        (base + e * (p - 1) * S(m + s - 3), (P(m - s - 1) - sg * S(m - s - 1)) * h),
    ]


def _t22(v):
    p, m, s, e, eta, P, S = v.p, v.m, v.s, v.eps, v.eta, v.P, v.S
    k = e * eta ** (m + 1)
    return [
        (P(m - 2), _rest(v)),
        (P(m - 2) - e * (p - 1) * S(m + s - 4), P(m - s - 1) + k * (p - 1) * S(m - s - 2)),
        (P(m - 2) + e * S(m + s - 4), (p - 1) * (P(m - s - 1) - k * S(m - s - 2))),
    ]


def _t23(v):
    m, s, e, P, S = v.m, v.s, v.eps, v.P, v.S
    sg = e * (-1) ** m
    return [
        (2 * P(m - 2), P(m - s - 1) + _rest(v)),
        (2 * P(m - 2) + e * S(m + s - 3), P(m - s - 1) + sg * S(m - s - 1)),
        (2 * P(m - 2) - e * S(m + s - 3), P(m - s - 1) - sg * S(m - s - 1)),
    ]


def _t24(v):
    m, s, e, P, S = v.m, v.s, v.eps, v.P, v.S
    sg = e * (-1) ** (m + 1)
    return [
        (2 * P(m - 2), _rest(v)),
        (2 * (P(m - 2) + e * S(m + s - 4)), P(m - s - 1) + sg * 2 * S(m - s - 2)),
        (2 * P(m - 2) - e * S(m + s - 4), 2 * (P(m - s - 1) - sg * S(m - s - 2))),
    ]


# name -> (appendix number, evaluator)
TABLES = {
    "Table0": (1, _t1),
    "TableD1odd": (2, _t2),
    "TableD1oddd": (3, _t3),
    "TableD1even": (4, _t4),
    "TableD01odd": (5, _t5),
    "TableD01even": (6, _t6),
    "TableD2": (7, _t7),
    "TableD2odd": (8, _t8),
    "Table02": (9, _t9),
    "table12odd": (10, _t10),
    "table12": (11, _t11),
    "TableSQodd": (12, _t12),
    "TableSQoddd": (13, _t13),
    "TableSQeven": (14, _t14),
    "tableSQ0": (15, _t15),
    "tableSQ00": (16, _t16),
    "tableSQ0even": (17, _t17),
    "tableNSQ": (18, _t18),
    "tableNSQ3": (19, _t19),
    "tableNSQ0": (20, _t20),
    "tableNSQ03": (21, _t21),
    "tablePunc": (22, _t22),
    "table12oddpunc": (23, _t23),
    "table12punc": (24, _t24),
}

# (kind, parity) -> table name, or {p mod 4: name} where the tables split.
# Kinds whose even case is delegated to another kind's table are aliased.
_DISPATCH = {
    ("D0", 0): "Table0",
    ("D1", 1): {1: "TableD1odd", 3: "TableD1oddd"},
    ("D1", 0): "TableD1even",
    ("D01", 1): "TableD01odd",
    ("D01", 0): "TableD01even",
    ("D2", 1): {1: "TableD2", 3: "TableD2odd"},
    ("D2", 0): "TableD1even",
    ("D02", 1): "Table02",
    ("D12", 1): "table12odd",
    ("D12", 0): "table12",
    ("Dsq", 1): {1: "TableSQodd", 3: "TableSQoddd"},
    ("Dsq", 0): "TableSQeven",
    ("Dsq0", 1): {1: "tableSQ0", 3: "tableSQ00"},
    ("Dsq0", 0): "tableSQ0even",
    ("Dnsq", 1): {1: "tableNSQ", 3: "tableNSQ3"},
    ("Dnsq", 0): "TableSQeven",
    ("Dnsq0", 1): {1: "tableNSQ0", 3: "tableNSQ03"},
    ("Dnsq0", 0): "tableSQ0even",
    ("PuncD0", 0): "tablePunc",
    ("PuncD12", 1): "table12oddpunc",
    ("PuncD12", 0): "table12punc",
}


def select_table(kind: str, p: int, m: int, s: int) -> str:
    parity = (m + s) % 2
    entry = _DISPATCH.get((kind, parity))
    if entry is None:
        raise UncoveredBranch(f"no closed form for {kind} with m+s {'odd' if parity else 'even'}")
    if kind == "PuncD12" and p != 3:
        raise UncoveredBranch("the punctured D12 tables are stated for p = 3 only")
    if isinstance(entry, dict):
        entry = entry[p % 4]
    return entry


def evaluate_table(name: str, p: int, m: int, s: int, eps: int) -> list[tuple[Fraction, Fraction]]:
    return TABLES[name][1](_Env(p, m, s, eps))


@dataclass(frozen=True)
class ClosedFormDistribution:
    """Integer rows of one table; ``weights`` excludes the zero word."""

    source_table: str
    table_number: int
    p: int
    m: int
    s: int
    epsilon: int
    weights: dict

    @property
    def parity(self) -> str:
        return "even" if (self.m + self.s) % 2 == 0 else "odd"

    @property
    def total(self) -> int:
        return sum(self.weights.values())

    def source(self) -> str:
        return f"closed_form:Table{self.table_number}"


def table_distribution(kind: str, p: int, m: int, s: int, eps: int) -> ClosedFormDistribution:
    name = select_table(kind, p, m, s)
    rows = evaluate_table(name, p, m, s, eps)
    weights: dict[int, int] = {}
    for w, a in rows:
        if a == 0:
            continue
        if w.denominator != 1 or a.denominator != 1 or a < 0 or w <= 0:
            raise NonIntegerResult(f"{name} row ({w}, {a}) is not a valid weight/multiplicity")
        weights[int(w)] = weights.get(int(w), 0) + int(a)
    return ClosedFormDistribution(name, TABLES[name][0], p, m, s, eps, dict(sorted(weights.items())))
