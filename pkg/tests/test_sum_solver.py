from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from cantor_arith.cantor_model import Left, Right, endpoint_value, params
from cantor_arith.errors import DomainError, Infeasible, OutOfInterval
from cantor_arith.intervals import lemma2_interval, thm3_family_Ilower, thm3_family_Iupper, thm4_interval
from cantor_arith.oracle import verify_decomposition
from cantor_arith.parameters import sum_counts
from cantor_arith.sum_solver import decompose_mixed_sum, decompose_sum, decompose_sum_variant

from conftest import rand_in

MIXED = [F(1, 2)] + [F(1, 3)] * 7


def _check_invariants(d):
    rep = verify_decomposition(d)
    assert rep.ok, rep.failures()
    # round-boundary bounds strictly decrease
    bounds = [s.bound for s in d.trace if s.kind == "round"]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))
    # a-points never move down, b-points never move up
    for s in d.trace:
        for idx, old, new in s.moved:
            assert new > old
    for p in d.points:
        init = Left("1") if p.role == "a" else Right("1")
        v0 = endpoint_value(params(p.alpha), init)
        assert (p.value >= v0) if p.role == "a" else (p.value <= v0)


def test_centre_is_exact():
    d = decompose_sum(F(1, 3), 1, F(5, 3), F(1, 10**6))
    assert d.residual == 0 and d.certified_bound == 0 and d.status == "exact"
    assert [str(p.address) for p in d.points] == ["L:1", "R:1"]


def test_left_end_lands_on_endpoint():
    d = decompose_sum(F(1, 3), 1, F(4, 3), F(1, 10**6))
    assert [p.value for p in d.points] == [F(2, 3), F(2, 3)]
    assert d.residual == 0


def test_three_halves():
    tol = 2 * F(1, 3) ** 40
    d = decompose_sum(F(1, 3), 1, F(3, 2), tol)
    assert d.certified_bound <= tol
    assert abs(d.residual) <= tol
    _check_invariants(d)
    # the points approach the witness 3/4 + 3/4
    assert all(abs(p.value - F(3, 4)) < F(1, 3**35) for p in d.points)


def test_half_alpha_example():
    tol = F(1, 4) ** 30
    d = decompose_sum(F(1, 2), 1, F(51, 10), tol)
    assert len(d.points) == 6
    assert d.certified_bound <= tol
    _check_invariants(d)


def test_out_of_interval():
    with pytest.raises(OutOfInterval):
        decompose_sum(F(1, 2), 1, 6, F(1, 100))
    with pytest.raises(DomainError):
        decompose_sum(F(1, 2), 1, F(51, 10), 0)


def test_depth_budget_stops_early():
    d = decompose_sum(F(1, 2), 2, F(61, 10), F(1, 10**40), depth_budget=12)
    assert d.status == "depth_budget"
    assert verify_decomposition(d).ok
    assert d.certified_bound > F(1, 10**40)


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(4, 5)])
@pytest.mark.parametrize("m", [1, 2, 4])
def test_random_points_certify(alpha, m, rng):
    iv = lemma2_interval(alpha, m)
    tol = m * params(alpha).eta_minus ** 25
    for _ in range(15):
        d = decompose_sum(alpha, m, rand_in(rng, iv.lo, iv.hi), tol)
        assert d.certified_bound <= tol
        assert len(d.points) == sum_counts(alpha, m).r
        _check_invariants(d)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 99), st.integers(1, 3), st.integers(0, 10**6))
def test_property_any_alpha(i, m, j):
    alpha = F(i, 100)
    iv = lemma2_interval(alpha, m)
    x = iv.lo + iv.length * F(j, 10**6)
    d = decompose_sum(alpha, m, x, F(1, 10**10))
    assert verify_decomposition(d).ok
    assert abs(d.residual) <= F(1, 10**10) or d.status != "tolerance"


def test_determinism():
    a = decompose_sum(F(2, 3), 3, F(63, 5), F(1, 10**20))
    b = decompose_sum(F(2, 3), 3, F(63, 5), F(1, 10**20))
    assert a == b


@pytest.mark.parametrize("alpha, m", [(F(1, 3), 1), (F(1, 2), 2), (F(2, 3), 1)])
def test_variant_families(alpha, m, rng):
    for family, fam in (("upper", thm3_family_Iupper(alpha, m)), ("lower", thm3_family_Ilower(alpha, m))):
        for t, iv in fam.members:
            for _ in range(5):
                d = decompose_sum_variant(alpha, m, t, family, rand_in(rng, iv.lo, iv.hi), F(1, 10**15))
                assert verify_decomposition(d).ok


def test_variant_centre_and_endpoint():
    iv = thm3_family_Iupper(F(1, 3), 1).member(1)
    d = decompose_sum_variant(F(1, 3), 1, 1, "upper", iv.midpoint, F(1, 10**6))
    assert d.residual == 0 and d.status == "exact"
    iv = thm3_family_Ilower(F(1, 3), 1).member(1)
    d = decompose_sum_variant(F(1, 3), 1, 1, "lower", iv.hi, F(1, 10**12))
    assert verify_decomposition(d).ok


def test_variant_errors():
    with pytest.raises(DomainError):
        decompose_sum_variant(F(1, 2), 1, 4, "upper", 5, F(1, 10))
    iv = thm3_family_Iupper(F(1, 2), 1).member(1)
    with pytest.raises(OutOfInterval):
        decompose_sum_variant(F(1, 2), 1, 1, "upper", iv.hi + 1, F(1, 10))


def test_mixed_example(rng):
    iv = thm4_interval(MIXED, MIXED, 1)
    d = decompose_mixed_sum(MIXED, MIXED, 1, F(27, 2), F(1, 4) ** 30)
    assert len(d.points) == 16
    assert verify_decomposition(d).ok
    for _ in range(10):
        d = decompose_mixed_sum(MIXED, MIXED, 1, rand_in(rng, iv.lo, iv.hi), F(1, 4) ** 30)
        assert verify_decomposition(d).ok


def test_mixed_single_pair_centre():
    d = decompose_mixed_sum([F(1, 3)], [F(1, 3)], 1, F(5, 3), F(1, 100), check_splits=False)
    assert d.residual == 0


def test_mixed_reduction_matches_single_set(rng):
    for alpha, m in [(F(1, 2), 2), (F(1, 3), 1), (F(2, 3), 1)]:
        half = sum_counts(alpha, m).half
        iv = lemma2_interval(alpha, m)
        for _ in range(5):
            x = rand_in(rng, iv.lo, iv.hi)
            a = decompose_sum(alpha, m, x, F(1, 10**12))
            b = decompose_mixed_sum([alpha] * half, [alpha] * half, m, x, F(1, 10**12), check_splits=False)
            assert a.deltas == b.deltas
            assert [p.address for p in a.points] == [p.address for p in b.points]


def test_mixed_infeasible():
    with pytest.raises(Infeasible):
        decompose_mixed_sum([F(1, 3)] * 4, [F(1, 3)] * 4, 1, F(5, 3) + 2, F(1, 100))
