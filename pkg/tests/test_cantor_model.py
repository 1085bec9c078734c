from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, strategies as st

from cantor_arith.cantor_model import (
    DepthExceeded,
    EndpointAddress,
    Gap,
    Left,
    Member,
    Right,
    as_ratio,
    deepen,
    endpoint_value,
    gap,
    locate,
    move_decrease,
    move_increase,
    params,
    segment_left,
    shift,
)
from cantor_arith.errors import DomainError

THIRD = params(F(1, 3))
HALF = params(F(1, 2))

alphas = st.fractions(min_value=F(1, 100), max_value=F(99, 100)).filter(lambda a: 0 < a < 1)
words = st.text(alphabet="01", max_size=12)


def test_params_identities():
    p = params("2/5")
    assert p.eta_plus + p.eta_minus == 1
    assert p.eta_plus - p.eta_minus == p.alpha


@pytest.mark.parametrize("bad", [0, 1, F(3, 2), F(-1, 4)])
def test_params_domain(bad):
    with pytest.raises(DomainError):
        params(bad)


def test_float_rejected():
    with pytest.raises(TypeError):
        as_ratio(0.5)
    assert as_ratio("3/9") == F(1, 3)


@pytest.mark.parametrize(
    "addr, value",
    [(Left("1"), F(2, 3)), (Left("11"), F(8, 9)), (Right("10"), F(7, 9)), (Right(""), 1), (Left(""), 0)],
)
def test_endpoint_values(addr, value):
    assert endpoint_value(THIRD, addr) == value


def test_initial_constants_match_closed_forms():
    for a in (F(1, 4), F(1, 3), F(1, 2), F(5, 7)):
        p = params(a)
        assert endpoint_value(p, Left("11")) == p.eta_plus * (3 - a) / 2
        assert endpoint_value(p, Right("10")) == (3 + a * a) / 4


def test_address_text_roundtrip():
    for text in ("L:1101", "R:10", "L:"):
        assert str(EndpointAddress.parse(text)) == text
    with pytest.raises(DomainError):
        EndpointAddress.parse("X:10")
    with pytest.raises(DomainError):
        Left("012")


def test_locate_examples():
    res = locate(THIRD, F(1, 2), 10)
    assert isinstance(res, Gap) and res.gap.word == "" and (res.gap.left, res.gap.right) == (F(1, 3), F(2, 3))
    res = locate(THIRD, F(1, 4), 64)
    assert isinstance(res, Member) and res.periodic
    res = locate(THIRD, F(7, 9), 10)
    assert res == Member("1", Right("10"))
    assert locate(THIRD, 0, 5).address == Left("")
    assert locate(THIRD, 1, 5).address == Right("")


def test_locate_domain():
    with pytest.raises(DomainError):
        locate(THIRD, F(3, 2), 5)


def test_locate_depth_exceeded():
    # 1/4 + tiny stays inside segments for a while but is not periodic within 3 levels
    res = locate(THIRD, F(1, 4) + F(1, 3**12), 3)
    assert isinstance(res, DepthExceeded) and len(res.word) == 3


@pytest.mark.parametrize(
    "p, addr, new, inc",
    [(THIRD, Left("1"), Left("11"), F(2, 9)), (THIRD, Left("11"), Left("111"), F(2, 27)), (HALF, Left("1"), Left("11"), F(3, 16))],
)
def test_move_increase(p, addr, new, inc):
    out, step = move_increase(p, addr)
    assert (out, step) == (new, inc)
    assert endpoint_value(p, out) == endpoint_value(p, addr) + inc


@pytest.mark.parametrize(
    "p, addr, new, dec",
    [(THIRD, Right(""), Right("0"), F(2, 3)), (THIRD, Right("1"), Right("10"), F(2, 9)), (HALF, Right("1"), Right("10"), F(3, 16))],
)
def test_move_decrease(p, addr, new, dec):
    out, step = move_decrease(p, addr)
    assert (out, step) == (new, dec)
    assert endpoint_value(p, out) == endpoint_value(p, addr) - dec


def test_moves_need_matching_side():
    with pytest.raises(DomainError):
        move_increase(THIRD, Right("1"))
    with pytest.raises(DomainError):
        move_decrease(THIRD, Left("1"))


def test_deepen_examples():
    assert deepen(Left("1")) == Left("10")
    assert deepen(Right("1")) == Right("11")
    assert deepen(Left("")) == Left("0")


def test_shift_rejects_shallow_scale():
    with pytest.raises(DomainError):
        shift(THIRD, Left("111"), 2)


@given(alphas, words, st.sampled_from(["L", "R"]))
def test_endpoints_are_members(a, word, side):
    p = params(a)
    addr = EndpointAddress.parse(f"{side}:{word}")
    v = endpoint_value(p, addr)
    assert 0 <= v <= 1
    for depth in (1, len(word) + 1, len(word) + 3):
        assert not isinstance(locate(p, v, depth), Gap)


@given(alphas, words, st.sampled_from(["L", "R"]), st.integers(0, 5))
def test_deepen_and_shift(a, word, side, extra):
    p = params(a)
    addr = EndpointAddress.parse(f"{side}:{word}")
    v = endpoint_value(p, addr)
    assert endpoint_value(p, deepen(addr, extra)) == v
    out, step = shift(p, addr, len(word) + extra)
    assert step == p.step(len(word) + extra)
    signed = step if side == "L" else -step
    assert endpoint_value(p, out) == v + signed
    assert out.depth == len(word) + extra + 1


@given(alphas, words)
def test_gap_width(a, word):
    p = params(a)
    g = gap(p, word)
    assert g.right - g.left == p.alpha * p.eta_minus_pow(len(word))
    assert g.level == len(word)


@given(alphas, st.integers(0, 10**6))
def test_locate_agrees_with_segment_scan(a, n):
    p = params(a)
    x = F(n, 10**6)
    d = 5
    segs = []
    for bits in product("01", repeat=d):
        w = "".join(bits)
        lo = segment_left(p, w)
        segs.append((lo, lo + p.eta_minus_pow(d)))
    in_scan = any(lo <= x <= hi for lo, hi in segs)
    res = locate(p, x, d)
    if isinstance(res, Gap):
        assert res.gap.left < x < res.gap.right
        if res.gap.level < d:
            assert not in_scan
    else:
        assert in_scan
