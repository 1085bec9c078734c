from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cantor_arith.c1_maps import (
    c1_product_interval,
    c1_product_params,
    c1_sum_counts,
    c1_sum_interval,
    decompose_c1_sum,
    sum_bounds,
)
from cantor_arith.cantor_model import params
from cantor_arith.errors import DomainError, OutOfInterval
from cantor_arith.intervals import lemma2_interval, thm5_interval
from cantor_arith.oracle import verify_decomposition
from cantor_arith.parameters import product_counts, sum_counts
from cantor_arith.phi import parse_phi, phi_affine, phi_poly, phi_power
from cantor_arith.sum_solver import decompose_sum

from conftest import rand_in


def test_power_bounds():
    assert sum_bounds(F(1, 3), phi_power(1)) == (1, 1)
    assert sum_bounds(F(1, 3), phi_power(3)) == (F(4, 3), 3)
    assert sum_bounds(F(1, 3), phi_affine(2, 1)) == (2, 2)


@given(st.integers(1, 99).map(lambda i: F(i, 100)), st.integers(1, 6))
def test_power_counts_and_interval_match_native(alpha, m):
    assert c1_sum_counts(alpha, phi_power(m)) == sum_counts(alpha, m)
    assert c1_sum_interval(alpha, phi_power(m)) == lemma2_interval(alpha, m)


def test_affine_counts_and_interval():
    c = c1_sum_counts(F(1, 2), phi_affine(2, 0))
    assert (c.s, c.k, c.r) == (1, 2, 6)
    assert c1_sum_counts(F(1, 3), phi_poly([0, 1, 5])).k == 0
    iv = c1_sum_interval(F(1, 3), phi_affine(3, 1))
    assert (iv.lo, iv.hi) == (6, 8)
    assert iv.length == 2 * (phi_affine(3, 1)(1) - phi_affine(3, 1)(F(2, 3)))


@pytest.mark.parametrize("alpha", [F(1, 4), F(1, 3), F(1, 2), F(2, 3)])
def test_identity_products_reproduce_native(alpha):
    for phi in (phi_poly([0, 1]), phi_affine(1, 0), phi_power(1)):
        assert c1_product_params(alpha, phi) == product_counts(alpha)
        assert c1_product_interval(alpha, phi) == thm5_interval(alpha)


def test_product_interval_ratio():
    for phi in (phi_power(2), phi_poly([0, F(1, 2), F(1, 2)])):
        c = c1_product_params(F(1, 3), phi)
        iv = c1_product_interval(F(1, 3), phi)
        assert iv.lo == c.theta**2 * iv.hi
        assert c.t_alpha == c.s_alpha + c.p_alpha


def test_power_product_needs_deeper_anchor():
    c = c1_product_params(F(1, 3), phi_power(2))
    assert c.k_alpha == 3 and c.theta == F(26, 27) ** 2


@pytest.mark.parametrize("alpha", [F(1, 3), F(2, 3)])
@pytest.mark.parametrize("m", [1, 3])
def test_power_traces_identical(alpha, m, rng):
    iv = lemma2_interval(alpha, m)
    for _ in range(5):
        x = rand_in(rng, iv.lo, iv.hi)
        assert decompose_c1_sum(alpha, phi_power(m), x, F(1, 10**15)) == decompose_sum(alpha, m, x, F(1, 10**15))


def test_affine_equivariance(rng):
    alpha, phi = F(1, 2), phi_affine(2, 1)
    r = c1_sum_counts(alpha, phi).r
    iv = c1_sum_interval(alpha, phi)
    for _ in range(10):
        x = rand_in(rng, iv.lo, iv.hi)
        d = decompose_c1_sum(alpha, phi, x, F(1, 10**12))
        base = decompose_sum(alpha, 1, (x - r) / 2, F(1, 2 * 10**12))
        assert [p.address for p in d.points] == [p.address for p in base.points]
        assert d.residual == 2 * base.residual


def test_midpoint_exact():
    phi = phi_poly([0, 1, 1])
    iv = c1_sum_interval(F(1, 3), phi)
    d = decompose_c1_sum(F(1, 3), phi, iv.midpoint, F(1, 10**6))
    assert d.residual == 0


def test_polynomial_decomposition(rng):
    phi = phi_poly([F(1, 10), 1, 0, 2])
    for alpha in (F(1, 4), F(1, 2)):
        iv = c1_sum_interval(alpha, phi)
        g2, g1 = sum_bounds(alpha, phi)
        for _ in range(5):
            d = decompose_c1_sum(alpha, phi, rand_in(rng, iv.lo, iv.hi), g1 * params(alpha).eta_minus ** 25)
            assert verify_decomposition(d).ok


def test_mean_value_bracket(rng):
    phi = phi_poly([0, 1, 1, 1])
    g2, g1 = sum_bounds(F(1, 3), phi)
    for _ in range(50):
        a = rand_in(rng, F(2, 3), 1)
        b = rand_in(rng, F(2, 3), 1)
        lo, hi = min(a, b), max(a, b)
        assert g2 * (hi - lo) <= phi(hi) - phi(lo) <= g1 * (hi - lo)


def test_out_of_interval():
    with pytest.raises(OutOfInterval):
        decompose_c1_sum(F(1, 3), phi_affine(3, 1), 9, F(1, 10))


def test_non_monotone_rejected():
    with pytest.raises(DomainError):
        sum_bounds(F(1, 3), phi_poly([0, 3, F(-5, 2), 1]))
    with pytest.raises(DomainError):
        sum_bounds(F(1, 3), phi_poly([0, 1, -3, 2]))
    assert sum_bounds(F(2, 3), phi_poly([0, 3, F(-5, 2), 1])) == (F(11, 12), 1)


def test_parse_phi():
    assert parse_phi("power:3") == phi_power(3)
    assert parse_phi("affine:2,1") == phi_affine(2, 1)
    assert parse_phi("poly:0,1/2,1/2") == phi_poly([0, F(1, 2), F(1, 2)])
    for bad in ("power:x", "cos:1", "poly:", "affine:-1,0"):
        with pytest.raises(DomainError):
            parse_phi(bad)
