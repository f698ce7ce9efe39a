from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from plateau.analysis import (
    DualReport,
    MinimalityReport,
    bounds_check,
    macwilliams_dual,
    macwilliams_transform,
    minimal_access_sets_oracle,
    minimality_ab,
    minimality_exhaustive,
    minimality_report,
    proposition_parameters,
    sss_report,
)
from plateau.codes import DefiningSet, FULL_KINDS, brute_force_distribution, build_defining_set, puncture
from plateau.errors import InexactDivision, NotMinimal, OutOfRange, TooLarge
from plateau.field import build_field
from plateau.pfunc import quadratic
from plateau.spectrum import classify

F125 = build_field(5, 3)


def fake_code(p, dist):
    return SimpleNamespace(ctx=SimpleNamespace(p=p), weight_distribution=dist)


def repetition_code(p, m, n):
    ctx = build_field(p, m)
    # elements of the prime subfield: c_w = Tr(w) * (1, 2, ...) is one-dimensional
    elems = np.array([a for a in range(1, p)][:n])
    return brute_force_distribution(DefiningSet("D1", ctx, elems))


@pytest.fixture(scope="module")
def quadric(f243):
    d0 = build_defining_set(quadratic(f243, [1, 0, 0]), "D0")
    return brute_force_distribution(d0), brute_force_distribution(puncture(d0))


def test_ab_examples():
    assert minimality_ab(fake_code(3, {48: 60, 54: 161, 66: 21})).ab_ratio_holds
    rep = minimality_ab(fake_code(5, {16: 24, 20: 99, 36: 1}))
    assert (rep.w_min, rep.w_max, rep.ab_ratio_holds) == (16, 36, False)
    assert minimality_ab(fake_code(3, {7: 2})).ab_ratio_holds
    # the boundary case w_min/w_max = (p-1)/p is not enough
    assert not minimality_ab(fake_code(3, {2: 1, 3: 1})).ab_ratio_holds


def test_exhaustive_on_small_codes(f27):
    rep = repetition_code(3, 2, 2)
    assert rep.k == 1 and minimality_exhaustive(rep)
    whole = brute_force_distribution(DefiningSet("D1", build_field(3, 2), np.array([1, 3])))
    assert whole.k == 2 and not minimality_exhaustive(whole)  # (1,1) covers (1,0)
    with pytest.raises(TooLarge):
        minimality_exhaustive(whole, bound=8)


def test_quadric_codes(quadric):
    full, punc = quadric
    for code in quadric:
        rep = minimality_report(code)
        assert rep.ab_ratio_holds and rep.exhaustive_verdict and not rep.contradiction
    assert macwilliams_dual(full).d_perp == 2
    assert macwilliams_dual(punc).d_perp == 3


def test_proposition_examples():
    prof = SimpleNamespace(ctx=SimpleNamespace(p=3, m=6), s=2, epsilon=1)
    pp = proposition_parameters(prof, "D0")
    assert pp.as_list() == [242, 6, 2 * (81 - 2 * 9)]
    prof = SimpleNamespace(ctx=SimpleNamespace(p=3, m=6), s=1, epsilon=-1)
    assert proposition_parameters(prof, "D02").as_list() == [485, 6, 2 * (2 * 81 - 9)]
    prof = SimpleNamespace(ctx=SimpleNamespace(p=5, m=3), s=1, epsilon=-1)
    with pytest.raises(OutOfRange):
        proposition_parameters(prof, "D0")
    with pytest.raises(OutOfRange):
        proposition_parameters(prof, "PuncD0")


@pytest.mark.parametrize("kind", FULL_KINDS)
def test_propositions_cover_some_setting(kind):
    hits = 0
    for p in (3, 5, 7):
        for m in range(3, 10):
            for s in range(1, m):
                for eps in (1, -1):
                    prof = SimpleNamespace(ctx=SimpleNamespace(p=p, m=m), s=s, epsilon=eps)
                    try:
                        pp = proposition_parameters(prof, kind)
                    except OutOfRange:
                        continue
                    assert pp.d > 0 and pp.k == m
                    hits += 1
    assert hits > 0


def test_macwilliams_small():
    assert macwilliams_transform([1, 0, 0, 2], 3, 3, 1) == [1, 0, 6, 2]
    with pytest.raises(InexactDivision):
        macwilliams_transform([1, 1, 0], 2, 3, 1)


def test_bounds():
    b = bounds_check(9, 3, 5, 3)
    assert (b["griesmer_sum"], b["griesmer_gap"], b["griesmer_ok"]) == (8, 1, True)
    assert bounds_check(9, 3, 6, 3)["griesmer_sum"] == 9
    t = bounds_check(7, 1, 7, 5)
    assert t["griesmer_gap"] == 0 and t["singleton_ok"]
    assert bounds_check(40, 5, 24, 3)["griesmer_sum"] == 37


def test_sss_on_projective_quadric(quadric):
    _, punc = quadric
    rep = sss_report(punc, macwilliams_dual(punc), minimality_report(punc))
    assert (rep.num_participants, rep.num_minimal_access_sets, rep.coverage) == (39, 81, {1: 54})
    sets = minimal_access_sets_oracle(punc)
    assert len(sets) == 81 and sum(1 in s for s in sets) == 54


def test_sss_on_full_code(quadric):
    full, _ = quadric
    rep = sss_report(full, macwilliams_dual(full), minimality_report(full))
    assert rep.d_perp == 2 and rep.partial_count == 54 and len(rep.in_all) == 1
    assert rep.participant_tag(rep.in_all[0]) == "in all"
    sets = minimal_access_sets_oracle(full)
    assert len(sets) == 81
    everywhere = set.intersection(*(set(s) for s in sets))
    assert everywhere == set(rep.in_all)
    for i in range(1, full.n):
        if i not in rep.in_all:
            assert sum(i in s for s in sets) == rep.partial_count


def test_sss_on_length_53_code(corpus):
    rec = corpus.find(3, 4, 1)[0]
    code = brute_force_distribution(build_defining_set(rec.function(), "D01"))
    rep = sss_report(code, macwilliams_dual(code), minimality_report(code))
    assert (code.n, code.k) == (53, 4)
    assert (rep.num_participants, rep.num_minimal_access_sets, rep.partial_count) == (52, 27, 18)


def test_sss_needs_minimality(quadric):
    full, _ = quadric
    with pytest.raises(NotMinimal):
        sss_report(full, DualReport([1], 2, 75), MinimalityReport(48, 60, False, False))


def test_oracle_small_cases():
    rep = repetition_code(3, 2, 2)
    assert minimal_access_sets_oracle(rep) == [frozenset({1})]
    with pytest.raises(TooLarge):
        minimal_access_sets_oracle(rep, bound=2)


def _balanced_affine(ctx, limit=40):
    found = []
    for a0 in range(0, ctx.order, 7):
        for a1 in range(1, ctx.order, 13):
            for b in (1, 2, 5, 11):
                f = quadratic(ctx, [a0, a1], linear=b, check=False)
                if f.is_balanced():
                    found.append(f)
                if len(found) == limit:
                    return found
    return found


BALANCED_125 = _balanced_affine(F125)


@given(st.sampled_from(BALANCED_125), st.sampled_from(FULL_KINDS))
def test_minimality_and_duality_invariants(f, kind):
    code = brute_force_distribution(build_defining_set(f, kind))
    rep = minimality_report(code, classify(f))
    if rep.ab_ratio_holds:
        assert rep.exhaustive_verdict
    dual = macwilliams_dual(code)
    assert dual.dual_enumerator[0] == 1 and min(dual.dual_enumerator) >= 0
    assert sum(dual.dual_enumerator) == 5 ** (code.n - code.k)
    back = macwilliams_transform(dual.dual_enumerator, code.n, 5, code.n - code.k)
    assert back == code.enumerator
