"""Debye polynomial coefficients by an exact rational recurrence.

U_0(t) = 1, and row k+1 of the coefficient table follows from row k through a
seven-case recurrence with rational coefficients (gmpy2.mpq end to end).
Writing U_k(t) = sum_{m=0}^{3k} a^k_m t^m:

    a^{k+1}_0 = 0
    a^{k+1}_1 = a^k_0 / 8
    a^{k+1}_2 = 9 a^k_1 / 16
    a^{k+1}_3 = 5 (5 a^k_2 - a^k_0) / 24
    a^{k+1}_m = (2m-1)^2/(8m) a^k_{m-1} - (4m(m-3)+5)/(8m) a^k_{m-3},  4 <= m <= 3k+1
    a^{k+1}_{3k+2} = -3 (2k+1)(6k-1) / (8 (3k+2)) a^k_{3k-1}
    a^{k+1}_{3k+3} = -(36k(k+1)+5) / (24(k+1)) a^k_{3k}

The last line is an exact ratio law for the edge coefficient; it drives the
factorial growth |a^k_{3k}| ~ C (3/2)^(k-1) (k-1)! that makes the Debye
expansion divergent.  The equivalent integro-differential rule

    U_{k+1}(t) = t^2/2 (1-t^2) U_k'(t) + 1/8 Integral_0^t (1-5*s^2) U_k(s) ds

is implemented only as a small-k cross-check oracle; the coefficient
recurrence is the production path.
"""

import json
import math

from gmpy2 import mpq
from mpmath import mpf

from .arith import rational_to_real
from .errors import RangeError

__all__ = [
    "DebyeTable",
    "generate",
    "iter_rows",
    "single_row",
    "eval_poly",
    "eval_row",
    "edge_coefficients",
    "ratio_law_rhs",
    "leading_coeff_asymptote",
    "integro_differential_step",
    "check_ratio_law",
    "rows_as_strings",
    "write_json",
]

_Q0 = mpq(0)


def _next_row(row, k):
    """Row k+1 of the coefficient table from row k."""
    n = 3 * k + 3
    new = [_Q0] * (n + 1)
    new[1] = row[0] / 8
    if k >= 1:
        new[2] = mpq(9, 16) * row[1]
        new[3] = mpq(5, 24) * (5 * row[2] - row[0])
    for m in range(4, 3 * k + 2):
        new[m] = (
            mpq((2 * m - 1) ** 2, 8 * m) * row[m - 1]
            - mpq(4 * m * (m - 3) + 5, 8 * m) * row[m - 3]
        )
    if k >= 1:
        new[3 * k + 2] = -mpq(3 * (2 * k + 1) * (6 * k - 1), 8 * (3 * k + 2)) * row[3 * k - 1]
    new[n] = ratio_law_rhs(k) * row[3 * k]
    return new


def ratio_law_rhs(k):
    """Exact edge-coefficient ratio a^{k+1}_{3k+3} / a^k_{3k}."""
    return -mpq(36 * k * (k + 1) + 5, 24 * (k + 1))


def iter_rows(k_max):
    """Yield (k, coefficient row) for k = 0 ... k_max, keeping one row live."""
    row = [mpq(1)]
    yield 0, row
    for k in range(k_max):
        row = _next_row(row, k)
        yield k + 1, row


def single_row(k):
    """Coefficient row of U_k alone, via streaming generation."""
    for _, row in iter_rows(k):
        pass
    return row


class DebyeTable:
    """Rows 0 ... k_max of Debye polynomial coefficients, exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or rows[0] != [mpq(1)]:
            raise ValueError("row 0 must be exactly [1]")
        for k, row in enumerate(rows):
            if len(row) != 3 * k + 1:
                raise ValueError("row %d must have %d entries" % (k, 3 * k + 1))
            if k >= 1 and row[0] != 0:
                raise ValueError("a^%d_0 must be 0" % k)
        self.rows = rows
        self.check_ratio_law()

    @property
    def k_max(self):
        return len(self.rows) - 1

    def row(self, k):
        if k < 0 or k > self.k_max:
            raise RangeError("k=%d outside table range 0..%d" % (k, self.k_max))
        return self.rows[k]

    def check_ratio_law(self):
        """Verify the exact edge-coefficient ratio law on every stored row.

        Raises ValueError naming the first violated k.  Exposed separately so
        integrity checks can re-run it on long-lived tables.
        """
        for k in range(self.k_max):
            lhs = self.rows[k + 1][3 * k + 3]
            rhs = ratio_law_rhs(k) * self.rows[k][3 * k]
            if lhs != rhs:
                raise ValueError("ratio law violated between rows %d and %d" % (k, k + 1))


def generate(k_max):
    """Full DebyeTable for k = 0 ... k_max."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    return DebyeTable([row for _, row in iter_rows(k_max)])


def eval_row(row, t):
    """Horner evaluation of one coefficient row at BigReal t."""
    acc = mpf(0)
    for a in reversed(row):
        acc = acc * t
        if a:
            acc += rational_to_real(a)
    return acc


def eval_poly(table, k, t):
    """U_k(t) at working precision; RangeError if k exceeds the table."""
    return eval_row(table.row(k), t)


def edge_coefficients(k_max):
    """List of a^k_{3k} for k = 0 ... k_max (streaming, exact)."""
    return [row[3 * k] for k, row in iter_rows(k_max)]


def leading_coeff_asymptote(k, c=10**4):
    """Magnitude model C*(3/2)^(k-1)*(k-1)! for |a^k_{3k}|.

    The constant C = 10^4 is an empirical calibration kept for comparison
    plots; the measured prefactor of the exact coefficients is about 0.24, so
    this model is only a slope/shape reference, off by a fixed factor.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return mpf(c) * mpf(3) ** (k - 1) / mpf(2) ** (k - 1) * mpf(math.factorial(k - 1))


def _poly_mul(p, q):
    out = [_Q0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return out


def integro_differential_step(row):
    """Row k+1 from row k via the integro-differential rule (test oracle).

    Computes t^2/2 (1-t^2) U' + 1/8 Integral_0^t (1-5 s^2) U(s) ds exactly in
    rational arithmetic.  Quadratic cost per coefficient; small k only.
    """
    deriv = [m * a for m, a in enumerate(row)][1:] or [_Q0]
    part1 = _poly_mul([_Q0, _Q0, mpq(1, 2), _Q0, -mpq(1, 2)], deriv)
    integrand = _poly_mul([mpq(1), _Q0, mpq(-5)], row)
    part2 = [_Q0] + [a / (8 * (m + 1)) for m, a in enumerate(integrand)]
    n = max(len(part1), len(part2))
    part1 += [_Q0] * (n - len(part1))
    part2 += [_Q0] * (n - len(part2))
    out = [a + b for a, b in zip(part1, part2)]
    target = len(row) + 3
    out += [_Q0] * (target - len(out))
    return out[:target]


def check_ratio_law(table):
    """Module-level alias used by integrity reports."""
    table.check_ratio_law()


def rows_as_strings(table):
    """Rows rendered as exact "p/q" decimal strings for JSON export."""
    return [[str(a) for a in row] for row in table.rows]


def write_json(table, fh):
    json.dump({"k_max": table.k_max, "rows": rows_as_strings(table)}, fh)
    fh.write("\n")
