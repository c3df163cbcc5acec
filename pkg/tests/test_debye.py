import io
import json

import pytest
from gmpy2 import mpq
from mpmath import mp, mpf

from keplevin import debye
from keplevin.arith import rational_to_real
from keplevin.errors import RangeError


U1 = [mpq(0), mpq(1, 8), mpq(0), mpq(-5, 24)]
U2 = [mpq(0), mpq(0), mpq(9, 128), mpq(0), mpq(-77, 192), mpq(0), mpq(385, 1152)]


def test_lowest_rows_exact(small_table):
    assert small_table.row(0) == [mpq(1)]
    assert small_table.row(1) == U1
    assert small_table.row(2) == U2


def test_row_shape_and_sparsity(small_table):
    for k in range(13):
        row = small_table.row(k)
        assert len(row) == 3 * k + 1
        if k >= 1:
            assert row[0] == 0
        # polynomial parity: only powers of the same parity as k survive
        for m in range(3 * k + 1):
            if m % 2 != k % 2:
                assert row[m] == 0
        assert row[3 * k] != 0


def test_integro_differential_oracle(small_table):
    """The recurrence must agree with the independent integro-differential
    construction t^2/2 (1-t^2) U' + 1/8 Int_0^t (1-5 s^2) U(s) ds."""
    for k in range(8):
        assert debye.integro_differential_step(small_table.row(k)) == small_table.row(k + 1)


def test_exact_edge_ratio_law(big_table):
    for k in range(big_table.k_max):
        lhs = big_table.row(k + 1)[3 * (k + 1)] / big_table.row(k)[3 * k]
        assert lhs == debye.ratio_law_rhs(k)


def test_ratio_law_rhs_values():
    assert debye.ratio_law_rhs(0) == mpq(-5, 24)
    assert debye.ratio_law_rhs(1) == mpq(-77, 48)
    # -(36 k(k+1) + 5) / (24 (k+1))
    assert debye.ratio_law_rhs(4) == mpq(-725, 120)


def test_single_row_matches_generate(big_table):
    assert debye.single_row(9) == big_table.row(9)
    assert debye.single_row(0) == [mpq(1)]


def test_iter_rows_streams_in_order(small_table):
    seen = list(debye.iter_rows(12))
    assert [k for k, _ in seen] == list(range(13))
    for k, row in seen:
        assert row == small_table.row(k)


def test_row_range_errors(small_table):
    with pytest.raises(RangeError):
        small_table.row(13)
    with pytest.raises(RangeError):
        small_table.row(-1)


def test_eval_poly(small_table):
    # U_1(1/2) = 1/16 - 5/192 = 7/192
    v = debye.eval_poly(small_table, 1, mpf(1) / 2)
    assert abs(v - mpf(7) / 192) < mpf(10) ** (-mp.dps + 5)
    assert debye.eval_poly(small_table, 0, mpf("0.37")) == 1
    # odd k gives an odd polynomial
    w = debye.eval_poly(small_table, 3, mpf(-1) / 2)
    assert abs(w + debye.eval_poly(small_table, 3, mpf(1) / 2)) < mpf(10) ** (-mp.dps + 5)


def test_eval_row_matches_eval_poly(small_table):
    t = mpf(3) / 7
    assert debye.eval_row(small_table.row(4), t) == debye.eval_poly(small_table, 4, t)


def test_corrupted_table_detected(small_table):
    broken = debye.generate(6)
    broken.rows[5][15] *= 2
    with pytest.raises(ValueError, match="rows 4 and 5"):
        broken.check_ratio_law()


def test_edge_coefficients(big_table):
    edges = debye.edge_coefficients(20)
    assert len(edges) == 21
    for k in range(21):
        assert edges[k] == big_table.row(k)[3 * k]


def test_leading_coeff_asymptote():
    assert debye.leading_coeff_asymptote(1) == mpf(10) ** 4
    assert debye.leading_coeff_asymptote(3) == mpf(10) ** 4 * mpf(9) / 4 * 2
    with pytest.raises(ValueError):
        debye.leading_coeff_asymptote(0)


def test_edge_growth_is_factorial(big_table):
    # |a^{k+1}_{3k+3}| / |a^k_{3k}| ~ (3/2)(k+1); within 2% by k = 100
    k = 100
    ratio = rational_to_real(abs(big_table.row(k + 1)[3 * k + 3] / big_table.row(k)[3 * k]))
    model = mpf(3) / 2 * (k + 1)
    assert abs(ratio / model - 1) < mpf("0.02")


def test_json_export_round_trips(small_table):
    fh = io.StringIO()
    debye.write_json(small_table, fh)
    doc = json.loads(fh.getvalue())
    assert doc["k_max"] == 12
    assert doc["rows"][1] == ["0", "1/8", "0", "-5/24"]
    assert len(doc["rows"]) == 13


def test_generate_zero():
    t = debye.generate(0)
    assert t.k_max == 0
    assert t.row(0) == [mpq(1)]
