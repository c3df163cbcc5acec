"""Kepler equation solvers and convergence-rate fits.

The real equation M = psi - eps*sin(psi) is solved two ways: Newton iteration
(the oracle) and resummation of the Kapteyn series psi = M + Im S(eps; M).
The complexified equation log z = Psi - eps*sinh(Psi) extends the series off
the unit circle; complex_identity_check probes the two-sided series identity

    sum z^m/m J_m(m*eps) - sum z^-m/m J_m(m*eps) = Psi - log z

order by order.  fit_rate recovers (alpha, nu) of the error model
exp(-alpha*k^nu) by least squares on log(-log e_k) = log alpha + nu*log k.
"""

import math

from mpmath import mp, mpf, mpc

from . import seqxform
from .bessel import jn_reference
from .errors import ConfigurationError, ConvergenceError, DomainError, FitError
from .kapteyn import KapteynParams, kapteyn_terms
from .seqxform import LEVIN_D, TermSequence, WENIGER_DELTA

__all__ = [
    "KeplerProblem",
    "ComplexKeplerProblem",
    "SeriesSolution",
    "RateFit",
    "RateCell",
    "solve_newton",
    "solve_series",
    "solve_complex_newton",
    "complex_identity_check",
    "fit_rate",
    "rate_scan",
    "DEFAULT_M_LIST",
    "DEFAULT_EPS_GRID",
]


class KeplerProblem:
    """Eccentricity eps in [0,1) and mean anomaly M (radians)."""

    __slots__ = ("eps", "M")

    def __init__(self, eps, M):
        eps = mpf(eps)
        if not (0 <= eps < 1):
            raise DomainError("eps must lie in [0,1)")
        self.eps = eps
        self.M = mpf(M)


class ComplexKeplerProblem:
    """Eccentricity eps in [0,1) and nonzero complex parameter z."""

    __slots__ = ("eps", "z")

    def __init__(self, eps, z):
        eps = mpf(eps)
        if not (0 <= eps < 1):
            raise DomainError("eps must lie in [0,1)")
        z = mpc(z)
        if z == 0:
            raise DomainError("z must be nonzero")
        self.eps = eps
        self.z = z


def _default_tol():
    return mpf(10) ** (-mp.dps + 10)


def solve_newton(p, tol=None):
    """Newton solution of M = psi - eps*sin(psi), started at M + eps*sin(M).

    tol defaults to 10^(-precision+10) and may not be tighter than that.
    """
    floor = _default_tol()
    if tol is None:
        tol = floor
    elif mpf(tol) < floor:
        raise ConfigurationError("tol tighter than 10^(-precision+10)")
    if p.eps == 0:
        return p.M
    psi = p.M + p.eps * mp.sin(p.M)
    trace = [psi]
    for _ in range(200):
        f = psi - p.eps * mp.sin(psi) - p.M
        if abs(f) < tol:
            return psi
        psi -= f / (1 - p.eps * mp.cos(psi))
        trace.append(psi)
    raise ConvergenceError("Newton failed for eps=%s M=%s" % (p.eps, p.M), trace)


class SeriesSolution:
    """Resummed-series solution: psi estimates by order, or a degenerate M.

    degenerate=True means every series term vanishes (eps = 0 or sin M = 0
    exactly); psi = M is then exact and no transform table exists.
    """

    __slots__ = ("kind", "degenerate", "psi", "table", "M")

    def __init__(self, kind, M, degenerate, psi=None, table=None):
        self.kind = kind
        self.M = M
        self.degenerate = degenerate
        self.psi = psi
        self.table = table

    def psi_at(self, k):
        if self.degenerate:
            return self.psi
        return self.M + self.table[k].imag

    def orders(self):
        return [] if self.degenerate else self.table.orders()


def solve_series(p, kind=LEVIN_D, k_max=40):
    """Kepler solution via transform of the complex Kapteyn series.

    Estimate at order k is M + Im(T_k).  Returns a SeriesSolution; if the
    series is identically zero the solution is flagged degenerate with
    psi = M (exact, since sin(psi) = sin(M) = 0 there).
    """
    if p.eps == 0 or mp.sin(p.M) == 0:
        return SeriesSolution(kind, p.M, True, psi=p.M)
    z = mp.exp(mpc(0, 1) * p.M)
    terms = kapteyn_terms(KapteynParams(p.eps, z, k_max + 2))
    if kind == LEVIN_D:
        table = seqxform.levin_d(terms, k_max)
    elif kind == WENIGER_DELTA:
        table = seqxform.weniger_delta(terms, k_max)
    else:
        raise ValueError("unknown transform kind %r" % (kind,))
    return SeriesSolution(kind, p.M, False, table=table)


def solve_complex_newton(p, tol=None, steps=10):
    """Principal-branch solution of log z = Psi - eps*sinh(Psi).

    Continuation in eps from Psi = log z (the eps = 0 solution), with a
    Newton iteration at each stage; keeps the full iterate trace for the
    failure report.
    """
    floor = _default_tol()
    if tol is None:
        tol = floor
    elif mpf(tol) < floor:
        raise ConfigurationError("tol tighter than 10^(-precision+10)")
    logz = mp.log(p.z)
    if p.eps == 0:
        return logz
    psi = logz
    trace = [psi]
    for i in range(1, steps + 1):
        e = p.eps * i / steps
        for _ in range(200):
            f = psi - e * mp.sinh(psi) - logz
            if abs(f) < tol:
                break
            psi -= f / (1 - e * mp.cosh(psi))
            trace.append(psi)
        else:
            raise ConvergenceError(
                "complex Newton failed at continuation stage %d/%d" % (i, steps), trace
            )
    return psi


def complex_identity_check(p, kind=WENIGER_DELTA, k_max=40):
    """Relative error, per order, of the resummed two-sided series identity.

    Both series are resummed at each order k and compared against
    Psi - log z from solve_complex_newton.  Returns [(k, relative error)].
    For eps = 0 both sides vanish identically and the error is 0 by
    convention at every order.
    """
    if p.eps == 0:
        return [(k, mpf(0)) for k in range(1, k_max + 1)]
    plus = kapteyn_terms(KapteynParams(p.eps, p.z, k_max + 2, generalized=True))
    minus = kapteyn_terms(KapteynParams(p.eps, 1 / p.z, k_max + 2, generalized=True))
    if kind == LEVIN_D:
        tp = seqxform.levin_d(plus, k_max)
        tm = seqxform.levin_d(minus, k_max)
    elif kind == WENIGER_DELTA:
        tp = seqxform.weniger_delta(plus, k_max)
        tm = seqxform.weniger_delta(minus, k_max)
    else:
        raise ValueError("unknown transform kind %r" % (kind,))
    rhs = solve_complex_newton(p) - mp.log(p.z)
    scale = abs(rhs)
    out = []
    for k in range(1, k_max + 1):
        if k in tp and k in tm:
            out.append((k, abs(tp[k] - tm[k] - rhs) / scale))
    return out


class RateFit:
    """Fitted error model exp(-alpha*k^nu) with its window and residual."""

    __slots__ = ("alpha", "nu", "fit_window", "residual", "n_points")

    def __init__(self, alpha, nu, fit_window, residual, n_points):
        self.alpha = alpha
        self.nu = nu
        self.fit_window = fit_window
        self.residual = residual
        self.n_points = n_points


def fit_rate(errors, precision=None):
    """Least-squares fit of log(-log e_k) = log alpha + nu log k.

    Uses orders k > 10 with e in (0,1), excluding points at the precision
    floor (e <= 10^(-precision+20)); needs at least 8 usable points.
    The fit itself runs in double precision, ample for two parameters.
    """
    d = mp.dps if precision is None else int(precision)
    floor = mpf(10) ** (-d + 20)
    xs = []
    ys = []
    lo = hi = None
    for k, e in errors:
        if k <= 10:
            continue
        e = mpf(e)
        if not (0 < e < 1) or e <= floor:
            continue
        xs.append(math.log(k))
        ys.append(math.log(-mp.log(e)))
        lo = k if lo is None else min(lo, k)
        hi = k if hi is None else max(hi, k)
    n = len(xs)
    if n < 8:
        raise FitError("only %d usable points, need 8" % n)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    nu = sxy / sxx
    intercept = my - nu * mx
    rss = sum((y - (intercept + nu * x)) ** 2 for x, y in zip(xs, ys))
    return RateFit(math.exp(intercept), nu, (lo, hi), math.sqrt(rss / n), n)


class RateCell:
    """One (eps, M, kind) cell of a rate scan: a RateFit or a failure note."""

    __slots__ = ("eps", "M", "kind", "fit", "note")

    def __init__(self, eps, M, kind, fit=None, note=None):
        self.eps = eps
        self.M = M
        self.kind = kind
        self.fit = fit
        self.note = note


def _pi_times(frac):
    return mp.pi * mpf(frac)


DEFAULT_M_LIST = ("1/4", "1/3", "1/2", "2/3", "3/4")
DEFAULT_EPS_GRID = ("1/10", "2/10", "3/10", "4/10", "5/10", "6/10", "7/10", "8/10", "9/10", "99/100")


def rate_scan(M_fracs=DEFAULT_M_LIST, eps_grid=DEFAULT_EPS_GRID, kinds=(LEVIN_D, WENIGER_DELTA), k_max=250):
    """nu(eps; M, kind) over a grid; per-cell fit failures become notes.

    M values are given as fractions of pi (strings or numbers).  The Bessel
    values J_m(m*eps) are shared across all M and kinds at fixed eps, which
    dominates the cost.  eps = 0 cells are recorded as degenerate, not fit.
    """
    cells = []
    for eps_s in eps_grid:
        eps = mpf(_parse_frac(eps_s))
        if eps == 0:
            for frac in M_fracs:
                for kind in kinds:
                    cells.append(RateCell(eps, _pi_times(_parse_frac(frac)), kind, note="degenerate"))
            continue
        jns = [jn_reference(m, m * eps) for m in range(1, k_max + 3)]
        for frac in M_fracs:
            M = _pi_times(_parse_frac(frac))
            psi = solve_newton(KeplerProblem(eps, M))
            phase = mp.exp(mpc(0, 1) * M)
            zp = mpc(1)
            terms = []
            for m in range(1, k_max + 3):
                zp = zp * phase
                terms.append(2 * jns[m - 1] / m * zp)
            seq = TermSequence(terms, "rate scan terms")
            for kind in kinds:
                tab = seqxform.levin_d(seq, k_max) if kind == LEVIN_D else seqxform.weniger_delta(seq, k_max)
                errors = [(k, abs(M + tab[k].imag - psi) / abs(psi)) for k in tab.orders()]
                try:
                    cells.append(RateCell(eps, M, kind, fit=fit_rate(errors)))
                except FitError as exc:
                    cells.append(RateCell(eps, M, kind, note=str(exc)))
    return cells


def _parse_frac(s):
    if isinstance(s, str) and "/" in s:
        num, den = s.split("/", 1)
        return mpf(int(num)) / mpf(int(den))
    return mpf(s)
