import io

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from keplevin.errors import DegenerateTermError
from keplevin.seqxform import (
    LEVIN_D,
    WENIGER_DELTA,
    TermSequence,
    levin_d,
    partial_sums,
    weniger_delta,
    write_csv,
    write_json,
)


def geometric(ratio, n=14):
    return TermSequence([ratio**j for j in range(n)], "geometric")


def test_term_sequence_validation():
    with pytest.raises(ValueError):
        TermSequence([mpf(1)])
    with pytest.raises(ValueError):
        TermSequence([mpf(1), mpf("nan")])
    with pytest.raises(ValueError):
        TermSequence([mpf(1), mpf("inf")])
    t = TermSequence([1, 2, 3], "ints ok")
    assert len(t) == 3 and t[2] == 3 and list(t) == [1, 2, 3]


def test_partial_sums_exact_on_dyadic_terms():
    t = TermSequence([mpf(1), mpf(1) / 2, mpf(1) / 4, mpf(1) / 8])
    s = partial_sums(t)
    assert list(s) == [mpf(1), mpf(3) / 2, mpf(7) / 4, mpf(15) / 8]


def test_geometric_series_resummed_exactly():
    # both transforms are exact for geometric remainders at every order
    t = geometric(mpf(1) / 3)
    limit = mpf(3) / 2
    tiny = mpf(10) ** (-mp.dps + 12)
    for table in (levin_d(t, 4), weniger_delta(t, 4)):
        assert table.orders() == [1, 2, 3, 4]
        for k in table.orders():
            assert abs(table[k] - limit) < tiny


def test_distinct_remainder_conventions_at_order_one():
    """d and delta share weights at order 1 and still differ: the remainder
    estimate of d is the last included term, that of delta the first
    excluded one."""
    t = TermSequence([1 / mpf(j + 1) ** 2 for j in range(8)], "zeta(2)")
    d1 = levin_d(t, 1)[1]
    w1 = weniger_delta(t, 1)[1]
    s = partial_sums(t)
    # closed forms for order 1 with weights (1, -1)
    d_expect = (s[0] / t[0] - s[1] / t[1]) / (1 / t[0] - 1 / t[1])
    w_expect = (s[0] / t[1] - s[1] / t[2]) / (1 / t[1] - 1 / t[2])
    assert d1 == d_expect
    assert w1 == w_expect
    assert abs(d1 - w1) > mpf("1e-3")


def test_offset_override_reproduces_the_other_convention():
    t = TermSequence([1 / mpf(j + 1) ** 2 for j in range(8)], "zeta(2)")
    # the remainder offset changes the estimates on non-geometric input
    assert abs(levin_d(t, 3, remainder_offset=1)[3] - levin_d(t, 3)[3]) > mpf("1e-8")
    # at order 1 both kinds have unit weights, so equal offsets coincide
    assert levin_d(t, 1, remainder_offset=1)[1] == weniger_delta(t, 1)[1]


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=-9, max_value=9).filter(lambda n: n != 0), st.integers(min_value=1, max_value=7))
def test_scale_invariance(num, den):
    lam = mpf(num) / den
    t = geometric(mpf(1) / 3, 8)
    scaled = TermSequence([lam * a for a in t])
    tiny = mpf(10) ** (-mp.dps + 15)
    for f in (levin_d, weniger_delta):
        base = f(t, 4)
        moved = f(scaled, 4)
        for k in base.orders():
            assert abs(moved[k] - lam * base[k]) < tiny * max(1, abs(lam))


def test_translation_covariance_of_delta():
    # shifting a_0 shifts every partial sum; delta's remainder estimates
    # never touch a_0, so estimates shift by exactly the same constant
    t = geometric(mpf(1) / 3, 10)
    shifted = TermSequence([t[0] + mpf(5)] + list(t)[1:])
    base = weniger_delta(t, 5)
    moved = weniger_delta(shifted, 5)
    tiny = mpf(10) ** (-mp.dps + 15)
    for k in base.orders():
        assert abs(moved[k] - (base[k] + 5)) < tiny
    # d uses a_0 itself as a remainder estimate, so it is not covariant
    d_moved = levin_d(shifted, 5)
    assert abs(d_moved[5] - (levin_d(t, 5)[5] + 5)) > tiny


def test_complex_terms_supported():
    z = mpc(1, 1) / 3
    t = TermSequence([z**j for j in range(10)])
    limit = 1 / (1 - z)
    assert abs(weniger_delta(t, 3)[3] - limit) < mpf(10) ** (-mp.dps + 15)


def test_zero_term_raises_degenerate():
    t = TermSequence([mpf(1), mpf(0), mpf(1), mpf(1)])
    with pytest.raises(DegenerateTermError) as info:
        levin_d(t, 2)
    assert info.value.j == 1
    # delta looks one term further ahead
    with pytest.raises(DegenerateTermError) as info:
        weniger_delta(t, 1)
    assert info.value.j == 0


def test_vanishing_denominator_truncates_table():
    # constant terms make the order-1 denominator vanish identically
    t = TermSequence([mpf(1)] * 8)
    table = levin_d(t, 5)
    assert table.truncated_at == 1
    assert table.orders() == []
    assert table.last_order == 0
    assert 1 not in table


def test_insufficient_terms_rejected():
    t = TermSequence([mpf(1), mpf(1) / 2])
    with pytest.raises(ValueError):
        levin_d(t, 2)
    with pytest.raises(ValueError):
        weniger_delta(t, 1, remainder_offset=2)
    with pytest.raises(ValueError):
        levin_d(t, 0)


def test_indeterminate_empty_on_regular_input():
    table = weniger_delta(geometric(mpf(1) / 3), 6)
    assert table.indeterminate == frozenset()
    assert all(table.denominators[k] != 0 for k in table.orders())


def test_csv_and_json_writers_are_deterministic():
    t = geometric(mpf(1) / 3, 8)
    table = levin_d(t, 4)
    sums = partial_sums(t)
    outs = []
    for _ in range(2):
        fh = io.StringIO()
        write_csv(table, sums, fh, digits=20)
        outs.append(fh.getvalue())
    assert outs[0] == outs[1]
    assert outs[0].splitlines()[0] == "order,partial_sum_re,partial_sum_im,estimate_re,estimate_im"
    fh = io.StringIO()
    write_json(table, sums, fh, digits=20)
    assert '"kind": "LevinD"' in fh.getvalue()
