from mpmath import mp, mpf, mpc

from keplevin import goldens


def test_round_half_up_accepted():
    assert goldens.matches_printed(mpf("1.2345649"), "1.234565")
    assert goldens.matches_printed(mpf("1.2345651"), "1.234565")
    assert not goldens.matches_printed(mpf("1.2345449"), "1.234565")


def test_truncation_accepted():
    # 1.99996 rounds to 2.0000 but truncates to 1.9999; both styles appear
    # in the reference tables, so both must pass
    assert goldens.matches_printed(mpf("1.99996"), "1.9999")
    assert goldens.matches_printed(mpf("1.99996"), "2.0000")
    assert not goldens.matches_printed(mpf("1.99996"), "1.9998")


def test_sign_handling():
    assert goldens.matches_printed(mpf("-0.009444360750"), "-0.009444360750")
    assert not goldens.matches_printed(mpf("0.009444360750"), "-0.009444360750")
    assert not goldens.matches_printed(mpf("-0.009444360750"), "0.009444360750")


def test_exponent_forms():
    assert goldens.matches_printed(mpf("4.392572423e25"), "4.392572423e25")
    assert goldens.matches_printed(mpf("4.873145754e262"), "4.873145754e262")
    # two-digit mantissas with a bare decimal point, as typeset
    assert goldens.matches_printed(mpf("-1.04e9"), "-10.e8")
    assert goldens.matches_printed(mpf("3.35e47"), "-34.e46") is False
    assert goldens.matches_printed(mpf("-3.42e47"), "-34.e46")


def test_leading_zero_mantissas():
    assert goldens.matches_printed(mpf("0.001467802647"), "0.001467802647")
    assert not goldens.matches_printed(mpf("0.01467802647"), "0.001467802647")


def test_small_digit_counts():
    assert goldens.matches_printed(mpf("2.024"), "2.02")
    assert goldens.matches_printed(mpf("3.5099"), "3.51")
    assert not goldens.matches_printed(mpf("3.52"), "3.51")


def test_printed_digit_count():
    assert goldens.printed_digit_count("0.001467802647") == 10
    assert goldens.printed_digit_count("1.35949") == 6
    assert goldens.printed_digit_count("-10.e8") == 2
    assert goldens.printed_digit_count("4.392572423e25") == 10


def test_matches_printed_complex():
    v = mpc("-1.0018381", "1.2387649")
    assert goldens.matches_printed_complex(v, "-1.001838", "1.238765")
    assert not goldens.matches_printed_complex(v, "-1.001838", "1.238766")


def test_golden_tables_are_internally_consistent():
    for g in (goldens.TABLE1, goldens.TABLE2, goldens.TABLE3, goldens.TABLE4):
        for label, _ in g["ps"]:
            assert label in g["ps_index"]
    g = goldens.TABLE5
    for entry in g["ps"]:
        assert len(entry) == 5
        assert entry[0] in g["ps_index"]
    for column in ("d", "delta"):
        for entry in g[column]:
            assert len(entry) == 4
    # the plateau rows all repeat the printed limit digits
    assert all(text == goldens.TABLE2["limit"] for k, text in goldens.TABLE2["d"] if k >= 8)
    assert all(text == goldens.TABLE4["limit_d"] for k, text in goldens.TABLE4["d"] if k >= 50)


def test_precision_independence():
    v = mpf("0.001467802647")
    with mp.workdps(60):
        assert goldens.matches_printed(v, "0.001467802647")
    with mp.workdps(400):
        assert goldens.matches_printed(mpf(1) / 3, "0.3333333333")
