import dataclasses
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cantor_arith.cantor_model import EndpointAddress
from cantor_arith.errors import ResourceLimit
from cantor_arith.intervals import RatInterval, lemma2_interval, thm5_interval
from cantor_arith.oracle import (
    IntervalUnion,
    address_value,
    coverage_check,
    level_set,
    map_phi,
    map_power,
    minkowski_product,
    minkowski_sum,
    verify_decomposition,
)
from cantor_arith.parameters import sum_counts
from cantor_arith.sum_solver import decompose_sum


def U(*pairs):
    return IntervalUnion.of(pairs)


def test_level_set_examples():
    assert level_set(F(1, 3), 1) == U((0, F(1, 3)), (F(2, 3), 1))
    c2 = level_set(F(1, 3), 2)
    assert len(c2) == 4 and {p.length for p in c2.parts} == {F(1, 9)}
    assert c2.measure == F(4, 9)


@given(st.integers(1, 99).map(lambda i: F(i, 100)), st.integers(0, 7))
@settings(max_examples=40)
def test_level_sets_nest(alpha, l):
    outer, inner = level_set(alpha, l), level_set(alpha, l + 1)
    assert len(outer) == 2**l
    assert outer.contains_union(inner)
    assert outer.measure == (1 - alpha) ** l


def test_level_cap(monkeypatch):
    monkeypatch.setenv("CANTOR_ARITH_LMAX", "3")
    with pytest.raises(ResourceLimit):
        level_set(F(1, 3), 4)


def test_maps():
    assert map_power(level_set(F(1, 3), 1), 2) == U((0, F(1, 9)), (F(4, 9), 1))
    assert map_power(U((F(1, 2), F(3, 4))), 3) == U((F(1, 8), F(27, 64)))
    c = level_set(F(1, 3), 2)
    assert map_phi(c, lambda v: v) == c


def test_minkowski():
    c1 = level_set(F(1, 3), 1)
    assert minkowski_sum(c1, c1) == U((0, 2))
    assert minkowski_sum(U((0, 1)), U((5, 5))) == U((5, 6))
    assert minkowski_product(U((F(1, 2), 1)), U((F(1, 2), 1))) == U((F(1, 4), 1))


def test_minkowski_order_independent():
    a, b, c = level_set(F(1, 3), 2), level_set(F(1, 2), 2), map_power(level_set(F(1, 4), 2), 2)
    assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(c, b))
    assert minkowski_product(minkowski_product(a, b), c) == minkowski_product(c, minkowski_product(b, a))


def test_coverage_examples():
    assert coverage_check(RatInterval(F(4, 3), 2), F(1, 3), 1, terms=2).covered
    assert coverage_check(RatInterval(F(512, 729), F(8, 9)), F(1, 3), 3, terms=4, op="product").covered


def test_coverage_reports_uncovered():
    rep = coverage_check(RatInterval(F(1, 3), F(2, 3)), F(1, 3), 2, terms=1)
    assert not rep.covered
    assert rep.uncovered == (RatInterval(F(1, 3), F(2, 3)),)


def test_coverage_matches_unpruned_fold():
    alpha, m = F(1, 2), 2
    r = sum_counts(alpha, m).r
    target = lemma2_interval(alpha, m)
    for l in (1, 2, 3):
        base = map_power(level_set(alpha, l), m)
        full = base
        for _ in range(r - 1):
            full = minkowski_sum(full, base)
        assert coverage_check(target, alpha, l, terms=r, m=m).covered == full.contains_interval(target)


def test_coverage_monotone_in_level():
    target = RatInterval(F(1, 2), F(3, 2))
    seen_fail = False
    for l in range(1, 7):
        ok = coverage_check(target, F(1, 2), l, terms=2).covered
        assert not (seen_fail and ok)
        seen_fail = seen_fail or not ok


def test_part_cap():
    with pytest.raises(ResourceLimit):
        coverage_check(RatInterval(0, 3), F(1, 5), 8, terms=3, part_cap=1000)


def test_address_value_independent():
    assert address_value(F(1, 3), EndpointAddress.parse("L:11")) == F(8, 9)
    assert address_value(F(1, 3), EndpointAddress.parse("R:10")) == F(7, 9)


def test_verify_passes_and_catches_tampering():
    d = decompose_sum(F(1, 2), 1, F(51, 10), F(1, 4) ** 30)
    rep = verify_decomposition(d)
    assert rep.ok and set(rep.checks) == {"values", "identity", "bound", "trace"}
    bad = dataclasses.replace(d, residual=d.residual + F(1, 10**30))
    assert not verify_decomposition(bad).checks["identity"][0]
    p = d.points[2]
    word = p.address.word
    flipped = word[:-1] + ("0" if word[-1] == "1" else "1")
    pts = list(d.points)
    pts[2] = dataclasses.replace(p, address=EndpointAddress(flipped, p.address.side))
    rep = verify_decomposition(d.with_points(pts))
    assert not rep.checks["identity"][0]
    assert "off by" in rep.checks["identity"][1]
    loose = dataclasses.replace(d, certified_bound=abs(d.residual) / 2)
    assert not verify_decomposition(loose).checks["bound"][0]
