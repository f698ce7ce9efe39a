import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from plateau.errors import CompositeP, DivisionByZero, ReduciblePolynomial
from plateau.field import (
    build_field,
    default_modulus,
    ff_add,
    ff_inv,
    ff_mul,
    ff_neg,
    ff_pow,
    ff_scale,
    ff_sub,
    field_from_spec,
    format_field_spec,
    frobenius,
    is_irreducible,
    parse_field_spec,
    quad_char,
    trace,
)

FIELDS = [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)]


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pm: f"F{pm[0]}^{pm[1]}")
def ctx(request):
    return build_field(*request.param)


def test_prime_field_trace_is_identity():
    ctx = build_field(3, 1)
    assert ctx.modulus == (0, 1)
    assert [trace(ctx, a) for a in range(3)] == [0, 1, 2]


def test_default_moduli_are_smallest_low_degree_first():
    # tuples are (c0, ..., cm); c0 is the most significant sort key
    assert default_modulus(3, 5) == (1, 0, 0, 0, 2, 1)
    assert default_modulus(5, 3) == (1, 0, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    for p, m in [(3, 5), (5, 3), (3, 4)]:
        best = default_modulus(p, m)
        smaller = [t + (1,) for t in itertools.product(range(p), repeat=m) if t + (1,) < best]
        assert not any(is_irreducible(mod, p) for mod in smaller)


def test_trace_balance_243():
    ctx = build_field(3, 5)
    assert ctx.order == 243
    assert np.bincount(ctx.trace_table, minlength=3).tolist() == [81, 81, 81]


def test_generator_order_125():
    ctx = build_field(5, 3)
    g = ctx.generator
    assert ff_pow(ctx, g, 124) == 1
    assert all(ff_pow(ctx, g, 124 // r) != 1 for r in (2, 31))


def test_bad_inputs():
    with pytest.raises(CompositeP):
        build_field(9, 2)
    with pytest.raises(CompositeP):
        build_field(2, 3)
    with pytest.raises(ReduciblePolynomial):
        build_field(3, 2, (2, 0, 1))  # x^2 + 2 = (x-1)(x+1)
    with pytest.raises(ReduciblePolynomial):
        build_field(3, 2, (1, 0, 2))  # not monic
    with pytest.raises(DivisionByZero):
        ff_inv(build_field(3, 2), 0)


def test_custom_modulus_is_kept():
    ctx = build_field(3, 2, (2, 2, 1))
    assert is_irreducible((2, 2, 1), 3)
    assert ctx.modulus == (2, 2, 1)
    assert ctx.spec == "p=3,m=2,mod=2,2,1"


def test_spec_round_trip():
    assert parse_field_spec("p=3,m=5") == (3, 5, None)
    assert parse_field_spec("p=3,m=2,mod=2,2,1") == (3, 2, (2, 2, 1))
    assert format_field_spec(3, 2, (2, 2, 1)) == "p=3,m=2,mod=2,2,1"
    assert field_from_spec("p=5,m=2") is field_from_spec("p=5,m=2")
    with pytest.raises(ValueError):
        parse_field_spec("q=3")


def test_axioms_full_sweep(ctx):
    n = ctx.order
    for a in range(1, n):
        assert ff_mul(ctx, a, ff_inv(ctx, a)) == 1
        assert ff_pow(ctx, a, n - 1) == 1
        assert ff_pow(ctx, a, n) == a  # Frobenius fixed field
        assert ff_add(ctx, a, ff_neg(ctx, a)) == 0


def test_characteristic_three():
    ctx = build_field(3, 4)
    for a in range(ctx.order):
        assert ff_add(ctx, ff_add(ctx, a, a), a) == 0


def test_trace_table_matches_frobenius_sum(ctx):
    for a in range(ctx.order):
        acc, b = 0, a
        for _ in range(ctx.m):
            acc = ff_add(ctx, acc, b)
            b = frobenius(ctx, b)
        assert acc < ctx.p and acc == trace(ctx, a)


def test_trace_matrix_is_trace_of_product(ctx):
    tm = ctx.trace_matrix
    n = ctx.order
    for w in range(0, n, max(1, n // 17)):
        for x in range(0, n, max(1, n // 13)):
            assert tm[w, x] == trace(ctx, ff_mul(ctx, w, x))


def test_scalar_orbits_and_mul_rows(ctx):
    for a in range(ctx.p):
        assert [ff_scale(ctx, a, x) for x in range(ctx.order)] == ctx.scalar_orbits[a].tolist()
    prod = ctx.enc_rows(ctx.mul_rows(ctx.digits, ctx.digits[::-1]))
    assert prod.tolist() == [ff_mul(ctx, x, ctx.order - 1 - x) for x in range(ctx.order)]


@pytest.mark.parametrize(
    "p, sq, nsq, eta_m1, pstar",
    [(3, (1,), (2,), -1, -3), (5, (1, 4), (2, 3), 1, 5), (7, (1, 2, 4), (3, 5, 6), -1, -7)],
)
def test_quadratic_character(p, sq, nsq, eta_m1, pstar):
    chi = quad_char(p)
    assert chi.squares == sq and chi.nonsquares == nsq
    assert chi.eta0(-1) == eta_m1 == (-1) ** ((p - 1) // 2)
    assert chi.p_star() == pstar
    assert chi.eta0(0) == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_character_is_multiplicative(p):
    chi = quad_char(p)
    for a in range(1, p):
        for b in range(1, p):
            assert chi.eta0(a * b) == chi.eta0(a) * chi.eta0(b)


F125 = build_field(5, 3)
elems = st.integers(0, F125.order - 1)


@given(elems, elems, elems)
def test_ring_laws(a, b, c):
    ctx = F125
    assert ff_mul(ctx, a, ff_add(ctx, b, c)) == ff_add(ctx, ff_mul(ctx, a, b), ff_mul(ctx, a, c))
    assert ff_mul(ctx, ff_mul(ctx, a, b), c) == ff_mul(ctx, a, ff_mul(ctx, b, c))
    assert ff_sub(ctx, ff_add(ctx, a, b), b) == a


@given(elems, elems, st.integers(0, 4))
def test_trace_linearity_and_frobenius(a, b, c):
    ctx = F125
    assert trace(ctx, ff_add(ctx, a, b)) == (trace(ctx, a) + trace(ctx, b)) % 5
    assert trace(ctx, ff_scale(ctx, c, a)) == c * trace(ctx, a) % 5
    assert trace(ctx, frobenius(ctx, a)) == trace(ctx, a)
