"""Bessel J_n(n*eps) three ways.

jn_reference sums the convergent ascending series and is the verification
oracle for everything else.  jn_asymptotic is the leading-order large-n
approximation rho^n / sqrt(2*pi*sqrt(1-eps^2)*n) with

    rho(eps) = exp(sqrt(1-eps^2)) * (1 - sqrt(1-eps^2)) / eps,

and jn_debye_terms/jn_resummed expand J_n(n*eps) in the full (divergent)
Debye series, term k = rho^n/sqrt(2*pi*sqrt(1-eps^2)) * U_k(y)/n^(k+1/2)
with y = 1/sqrt(1-eps^2), to be resummed by a Levin-type transformation.
"""

import math

from mpmath import mp, mpf

from . import debye, seqxform
from .errors import DomainError
from .seqxform import LEVIN_D, TermSequence, WENIGER_DELTA

__all__ = [
    "DebyeSeriesSpec",
    "rho",
    "jn_reference",
    "jn_debye_terms",
    "jn_asymptotic",
    "jn_resummed",
    "tail_value",
]


class DebyeSeriesSpec:
    """Order n, argument factor eps in (0,1), and a Debye term count."""

    __slots__ = ("n", "eps", "k_terms")

    def __init__(self, n, eps, k_terms):
        if n < 1:
            raise DomainError("n must be a positive integer")
        eps = mpf(eps)
        if not (0 < eps < 1):
            raise DomainError("eps must lie in (0,1) for the Debye expansion")
        if k_terms < 1:
            raise DomainError("k_terms must be >= 1")
        self.n = int(n)
        self.eps = eps
        self.k_terms = int(k_terms)


def rho(eps):
    """exp(sqrt(1-eps^2))*(1-sqrt(1-eps^2))/eps, in (0,1) for eps in (0,1)."""
    eps = mpf(eps)
    if not (0 < eps <= 1):
        raise DomainError("rho requires 0 < eps <= 1")
    w = mp.sqrt(1 - eps**2)
    return mp.exp(w) * (1 - w) / eps


def jn_reference(n, x):
    """J_n(x) by the ascending series, the oracle for all Debye-based values.

    sum_{m>=0} (-1)^m (x/2)^(n+2m) / (m! (n+m)!), summed until the terms drop
    below the working-precision threshold.  The series alternates, so guard
    digits proportional to x absorb the cancellation before rounding back.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    x = mpf(x)
    if x < 0:
        raise DomainError("x must be >= 0")
    if x == 0:
        return mpf(1 if n == 0 else 0)
    outer = mp.dps
    guard = int(0.45 * float(x)) + 20
    with mp.workdps(outer + guard):
        tol = mpf(10) ** (-outer - 10)
        half = x / 2
        term = half**n / mp.factorial(n)
        s = term
        m = 0
        while True:
            m += 1
            term = -term * half * half / (m * (n + m))
            s += term
            if abs(term) < tol * (1 + abs(s)):
                break
    with mp.workdps(outer):
        return +s


def _prefactor(n, eps):
    return rho(eps) ** n / mp.sqrt(2 * mp.pi * mp.sqrt(1 - eps**2))


def jn_debye_terms(spec, table=None):
    """TermSequence of Debye-expansion terms k = 0 ... k_terms-1."""
    if table is None:
        table = debye.generate(spec.k_terms - 1)
    pre = _prefactor(spec.n, spec.eps)
    y = 1 / mp.sqrt(1 - spec.eps**2)
    n = mpf(spec.n)
    terms = []
    scale = pre / mp.sqrt(n)
    for k in range(spec.k_terms):
        terms.append(scale * debye.eval_poly(table, k, y))
        scale = scale / n
    return TermSequence(
        terms, "Debye terms for J_%d(%d*%s)" % (spec.n, spec.n, mp.nstr(spec.eps, 8))
    )


def jn_asymptotic(n, eps):
    """Leading-order asymptotic rho^n / sqrt(2*pi*sqrt(1-eps^2)*n)."""
    eps = mpf(eps)
    if not (0 < eps < 1):
        raise DomainError("jn_asymptotic requires 0 < eps < 1")
    return _prefactor(n, eps) / mp.sqrt(mpf(n))


def jn_resummed(spec, kind=LEVIN_D, k_max=None, table=None):
    """TransformTable resumming the Debye expansion of J_n(n*eps).

    k_max defaults to the largest order the spec's term count supports.
    """
    if k_max is None:
        k_max = spec.k_terms - 2
    need = k_max + 2
    if spec.k_terms < need:
        spec = DebyeSeriesSpec(spec.n, spec.eps, need)
    terms = jn_debye_terms(spec, table)
    if kind == LEVIN_D:
        return seqxform.levin_d(terms, k_max)
    if kind == WENIGER_DELTA:
        return seqxform.weniger_delta(terms, k_max)
    raise ValueError("unknown transform kind %r" % (kind,))


def tail_value(table, n_last=5):
    """Accepted value of a transform table: the last estimate, plus spread.

    Returns (value, spread) where spread is the largest pairwise distance
    among the final n_last estimates; callers require small spread before
    trusting the value.
    """
    ks = table.orders()[-n_last:]
    if not ks:
        raise ValueError("empty transform table")
    vals = [table[k] for k in ks]
    spread = max(abs(a - b) for a in vals for b in vals)
    return vals[-1], spread
