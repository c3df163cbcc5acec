"""Levin-type nonlinear sequence transformations.

Given series terms a_0, a_1, ... with partial sums s_n, the order-k estimate
of the limit (or antilimit) is the ratio

    T_k = sum_{j=0}^k (-1)^j C(k,j) w_kj s_j/omega_j
          -----------------------------------------
          sum_{j=0}^k (-1)^j C(k,j) w_kj / omega_j

with weights w_kj = (1+j)^(k-1) for the Levin d variant and the Pochhammer
symbol (1+j)_(k-1) for the Weniger delta variant.  The remainder estimate
omega_j is a term of the series itself, a_{j+offset}: offset 1 is the first
neglected term, offset 0 the last included one.  The delta default is
offset 1; the d default is offset 0, the convention under which the embedded
golden tables reproduce digit for digit (their order-1 d and delta entries
differ, which is only possible with distinct omega conventions, since the
weights coincide at k = 1).

Numerator and denominator are evaluated directly at working precision; the
binomial coefficients and weights are exact integers.
"""

import csv
import json
import math

from mpmath import mp, mpf, isfinite

from .errors import DegenerateTermError

__all__ = [
    "LEVIN_D",
    "WENIGER_DELTA",
    "TermSequence",
    "PartialSums",
    "TransformTable",
    "partial_sums",
    "levin_d",
    "weniger_delta",
    "write_csv",
    "write_json",
]

LEVIN_D = "LevinD"
WENIGER_DELTA = "WenigerDelta"


class TermSequence:
    """Ordered series terms a_0 ... a_N with a free-text descriptor."""

    __slots__ = ("terms", "descriptor")

    def __init__(self, terms, descriptor=""):
        terms = list(terms)
        if len(terms) < 2:
            raise ValueError("a TermSequence needs at least two terms")
        for i, a in enumerate(terms):
            if not isfinite(a):
                raise ValueError("term a_%d is not finite" % i)
        self.terms = terms
        self.descriptor = descriptor

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __iter__(self):
        return iter(self.terms)


class PartialSums:
    """Cumulative sums s_0 ... s_N of a TermSequence."""

    __slots__ = ("sums",)

    def __init__(self, sums):
        self.sums = list(sums)

    def __len__(self):
        return len(self.sums)

    def __getitem__(self, i):
        return self.sums[i]

    def __iter__(self):
        return iter(self.sums)


class TransformTable:
    """Estimates indexed by transformation order, with diagnostics.

    estimates maps order k >= 1 to the transformed value; denominators keeps
    the raw denominator of each evaluated ratio.  If a zero denominator stops
    the recursion, truncated_at records the failed order and estimates end at
    the order before.  Orders whose numerator and denominator both fell below
    10^(-precision+10) are listed in `indeterminate` and carry no estimate.
    """

    __slots__ = ("kind", "estimates", "denominators", "truncated_at", "indeterminate")

    def __init__(self, kind, estimates, denominators, truncated_at=None, indeterminate=()):
        self.kind = kind
        self.estimates = dict(estimates)
        self.denominators = dict(denominators)
        self.truncated_at = truncated_at
        self.indeterminate = frozenset(indeterminate)

    def orders(self):
        return sorted(self.estimates)

    def __getitem__(self, k):
        return self.estimates[k]

    def __contains__(self, k):
        return k in self.estimates

    @property
    def last_order(self):
        return max(self.estimates) if self.estimates else 0


def partial_sums(t):
    """Cumulative sums of a TermSequence, exact at working precision."""
    out = []
    s = None
    for a in t:
        s = a if s is None else s + a
        out.append(s)
    return PartialSums(out)


def _weights(kind, k):
    if kind == LEVIN_D:
        return [(1 + j) ** (k - 1) for j in range(k + 1)]
    if kind == WENIGER_DELTA:
        ws = []
        for j in range(k + 1):
            w = 1
            for i in range(k - 1):
                w *= 1 + j + i
            ws.append(w)
        return ws
    raise ValueError("unknown transform kind %r" % (kind,))


_coeff_cache = {}


def _coeffs(kind, k):
    """Signed integer coefficients (-1)^j C(k,j) w_kj, cached for small k."""
    got = _coeff_cache.get((kind, k))
    if got is not None:
        return got
    ws = _weights(kind, k)
    cs = []
    sign = 1
    for j in range(k + 1):
        cs.append(sign * math.comb(k, j) * ws[j])
        sign = -sign
    if k <= 300:
        _coeff_cache[(kind, k)] = cs
    return cs


def _transform(t, k_max, kind, offset):
    if not isinstance(t, TermSequence):
        t = TermSequence(t)
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    need = k_max + 1 + offset
    if len(t) < need:
        raise ValueError(
            "need %d terms for order %d with remainder offset %d, got %d"
            % (need, k_max, offset, len(t))
        )
    for j in range(k_max + 1):
        if t[j + offset] == 0:
            raise DegenerateTermError(j)

    sums = partial_sums(t)
    ratios = [sums[j] / t[j + offset] for j in range(k_max + 1)]
    inverses = [1 / t[j + offset] for j in range(k_max + 1)]
    tiny = mpf(10) ** (-mp.dps + 10)

    estimates = {}
    denominators = {}
    indeterminate = set()
    truncated_at = None
    for k in range(1, k_max + 1):
        cs = _coeffs(kind, k)
        num = den = 0
        for j in range(k + 1):
            c = cs[j]
            num += c * ratios[j]
            den += c * inverses[j]
        denominators[k] = den
        if abs(num) < tiny and abs(den) < tiny:
            indeterminate.add(k)
            continue
        if den == 0:
            truncated_at = k
            break
        estimates[k] = num / den
    return TransformTable(kind, estimates, denominators, truncated_at, indeterminate)


def levin_d(t, k_max, remainder_offset=0):
    """Levin d transformation of a TermSequence up to order k_max."""
    return _transform(t, k_max, LEVIN_D, remainder_offset)


def weniger_delta(t, k_max, remainder_offset=1):
    """Weniger delta transformation of a TermSequence up to order k_max."""
    return _transform(t, k_max, WENIGER_DELTA, remainder_offset)


def _rows(table, sums, digits):
    def fmt(v):
        return mp.nstr(v, digits)

    rows = []
    for k in table.orders():
        est = table[k]
        s = sums[k] if sums is not None and k < len(sums) else None
        rows.append(
            {
                "order": k,
                "partial_sum_re": fmt(s.real) if s is not None else "",
                "partial_sum_im": fmt(s.imag) if s is not None else "",
                "estimate_re": fmt(est.real),
                "estimate_im": fmt(est.imag),
            }
        )
    return rows


_CSV_FIELDS = ["order", "partial_sum_re", "partial_sum_im", "estimate_re", "estimate_im"]


def write_csv(table, sums, fh, digits=30):
    """Serialize a TransformTable (plus partial sums) as CSV."""
    w = csv.DictWriter(fh, fieldnames=_CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in _rows(table, sums, digits):
        w.writerow(row)


def write_json(table, sums, fh, digits=30):
    """Serialize a TransformTable (plus partial sums) as JSON."""
    doc = {
        "kind": table.kind,
        "truncated_at": table.truncated_at,
        "indeterminate": sorted(table.indeterminate),
        "rows": _rows(table, sums, digits),
    }
    json.dump(doc, fh, indent=1)
    fh.write("\n")
