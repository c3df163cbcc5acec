import pytest
from mpmath import mp, mpf

from keplevin import goldens
from keplevin.bessel import (
    DebyeSeriesSpec,
    jn_asymptotic,
    jn_debye_terms,
    jn_reference,
    jn_resummed,
    rho,
    tail_value,
)
from keplevin.errors import DomainError
from keplevin.seqxform import LEVIN_D, WENIGER_DELTA, levin_d


def test_reference_anchors():
    assert jn_reference(0, mpf(0)) == 1
    assert jn_reference(3, mpf(0)) == 0
    assert goldens.matches_printed(jn_reference(10, mpf(5)), "0.001467802647")
    assert goldens.matches_printed(jn_reference(10, mpf(9)), "0.1246940928")


def test_reference_three_term_recurrence():
    # J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x); independent consistency check
    for n, x in ((5, mpf(3)), (10, mpf(9)), (20, mpf("19.8"))):
        lhs = jn_reference(n - 1, x) + jn_reference(n + 1, x)
        rhs = 2 * n / x * jn_reference(n, x)
        assert abs(lhs - rhs) <= abs(rhs) * mpf(10) ** (-mp.dps + 25)


def test_reference_against_library_bessel():
    # independent implementation cross-check at full working precision
    for n, x in ((0, mpf(1) / 4), (1, mpf(2)), (10, mpf(5)), (10, mpf(9)), (40, mpf("39.6"))):
        ref = mp.besselj(n, x)
        assert abs(jn_reference(n, x) - ref) <= abs(ref) * mpf(10) ** (-mp.dps + 25)


def test_rho_shape():
    assert rho(mpf(1)) == 1
    # rho(eps) ~ (e/2) eps as eps -> 0
    eps = mpf("1e-8")
    assert abs(rho(eps) / eps - mp.e / 2) < mpf("1e-7")
    # strictly increasing on a coarse grid
    grid = [mpf(i) / 10 for i in range(1, 11)]
    vals = [rho(e) for e in grid]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(DomainError):
        rho(mpf(0))
    with pytest.raises(DomainError):
        rho(mpf("1.01"))


def test_spec_validation():
    with pytest.raises(DomainError):
        DebyeSeriesSpec(0, mpf(1) / 2, 5)
    with pytest.raises(DomainError):
        DebyeSeriesSpec(10, mpf(0), 5)
    with pytest.raises(DomainError):
        DebyeSeriesSpec(10, mpf(1), 5)
    with pytest.raises(DomainError):
        DebyeSeriesSpec(10, mpf(1) / 2, 0)


def test_first_term_is_the_one_term_asymptotic(big_table):
    spec = DebyeSeriesSpec(10, mpf(1) / 2, 6)
    terms = jn_debye_terms(spec, big_table)
    assert terms[0] == jn_asymptotic(10, mpf(1) / 2)


def test_terms_shrink_then_grow(big_table):
    spec = DebyeSeriesSpec(10, mpf(1) / 2, 32)
    mags = [abs(a) for a in jn_debye_terms(spec, big_table)]
    assert mags[1] < mags[0]
    assert mags[31] > mags[12]


def test_resummed_hits_the_oracle(big_table):
    spec = DebyeSeriesSpec(10, mpf(1) / 2, 27)
    ref = jn_reference(10, mpf(5))
    table = jn_resummed(spec, LEVIN_D, 25, big_table)
    assert abs(table[25] - ref) < mpf("1e-9")
    # moderate eccentricity: measured accuracy floor near 1e-8 at order 30
    spec = DebyeSeriesSpec(10, mpf(9) / 10, 32)
    ref = jn_reference(10, mpf(9))
    table = jn_resummed(spec, WENIGER_DELTA, 30, big_table)
    assert abs(table[30] - ref) < mpf("1e-7")


def test_resummed_generates_table_when_missing():
    spec = DebyeSeriesSpec(10, mpf(1) / 2, 10)
    got = jn_resummed(spec, LEVIN_D, 12)
    assert got.last_order == 12


def test_shared_table_matches_owned_table(big_table):
    spec = DebyeSeriesSpec(6, mpf(3) / 10, 12)
    a = jn_resummed(spec, LEVIN_D, 10)
    b = jn_resummed(spec, LEVIN_D, 10, big_table)
    assert a.estimates == b.estimates


def test_tail_value(big_table):
    spec = DebyeSeriesSpec(10, mpf(1) / 2, 32)
    table = jn_resummed(spec, LEVIN_D, 30, big_table)
    value, spread = tail_value(table)
    assert value == table[30]
    assert spread < mpf("1e-11")
    assert abs(value - jn_reference(10, mpf(5))) < spread * 100 + mpf("1e-12")
