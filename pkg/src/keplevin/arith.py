"""Arbitrary-precision scalars and the working-precision contract.

Every floating computation in this package runs through mpmath under an
explicit decimal working precision, never below ``MIN_DIGITS``.  BigReal and
BigComplex are mpmath's ``mpf``/``mpc``; BigRational is gmpy2's exact ``mpq``
(always lowest terms, positive denominator).  Exact rationals carry the Debye
coefficients end to end; conversion to floating point happens only when a
polynomial is actually evaluated.

Precision is ambient: operations round to the active context's precision,
which ``with_precision`` sets and restores.  Identical inputs under identical
precision give bit-identical results.
"""

from contextlib import contextmanager

from gmpy2 import mpq
from mpmath import mp, mpf, mpc

from .errors import ConfigurationError

__all__ = [
    "BigReal",
    "BigComplex",
    "BigRational",
    "MIN_DIGITS",
    "DEFAULT_DIGITS",
    "with_precision",
    "working_digits",
    "rational_to_real",
    "to_decimal_string",
    "from_decimal_string",
]

MIN_DIGITS = 50
DEFAULT_DIGITS = 250

BigReal = mpf
BigComplex = mpc
BigRational = mpq

mp.dps = DEFAULT_DIGITS


def _check_digits(digits):
    digits = int(digits)
    if digits < MIN_DIGITS:
        raise ConfigurationError(
            "working precision %d digits is below the floor of %d" % (digits, MIN_DIGITS)
        )
    return digits


def working_digits():
    """Decimal digits of the active working precision."""
    return mp.dps


@contextmanager
def with_precision(digits):
    """Context manager running the enclosed computation at `digits` decimals.

    Raises ConfigurationError if digits < MIN_DIGITS.  The previous precision
    is restored on exit, including on exceptions.
    """
    digits = _check_digits(digits)
    saved = mp.dps
    mp.dps = digits
    try:
        yield mp
    finally:
        mp.dps = saved


def rational_to_real(q, digits=None):
    """Convert an exact rational to BigReal, correctly rounded.

    Args:
        q: BigRational (or anything with numerator/denominator).
        digits: target precision; defaults to the working precision.
    """
    d = mp.dps if digits is None else _check_digits(digits)
    num = int(q.numerator)
    den = int(q.denominator)
    # Guard digits absorb the double rounding of two int->mpf conversions.
    with mp.workdps(d + 10):
        v = mpf(num) / mpf(den)
    with mp.workdps(d):
        return +v


def to_decimal_string(x, digits=None):
    """Serialize a BigReal so that from_decimal_string round-trips its bits.

    Five guard digits on top of the working precision make the decimal
    representation injective for the underlying binary significand.
    """
    d = mp.dps if digits is None else int(digits)
    return mp.nstr(x, d + 5)


def from_decimal_string(s):
    """Parse a decimal string produced by to_decimal_string."""
    return mpf(s)
