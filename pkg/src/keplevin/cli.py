"""Command line front end: golden-table reproduction, scans, self checks.

reproduce rebuilds one reference table or figure dataset at its published
parameters, writes the artifact (CSV or JSON) and compares every cell
carrying golden digits against the embedded strings; any mismatch on a
check-enabled cell exits nonzero with a diff report.  Cells whose printed
digits are known not to reproduce under an exact-precision rerun carry a
disabled check flag and are listed as notes instead.

selfcheck runs a reduced-scale invariant suite over all modules.  All
computations are deterministic, so repeated runs with the same config
produce byte-identical artifacts.
"""

import argparse
import csv
import json
import os
import sys

from gmpy2 import mpq
from mpmath import mp, mpf, mpc

from . import bessel, debye, goldens, kapteyn, kepler, seqxform
from .arith import DEFAULT_DIGITS, MIN_DIGITS, rational_to_real, with_precision
from .errors import (
    ConfigurationError,
    DomainError,
    KeplevinError,
    RangeError,
)

_ENV_PRECISION = "KEPLEVIN_PRECISION"


class RunConfig:
    """Validated run configuration; all computations are seed-free."""

    __slots__ = ("precision_digits", "output_format", "output_path")

    def __init__(self, precision_digits=DEFAULT_DIGITS, output_format="csv", output_path=None):
        precision_digits = int(precision_digits)
        if precision_digits < MIN_DIGITS:
            raise ConfigurationError("precision_digits must be >= %d" % MIN_DIGITS)
        if output_format not in ("csv", "json"):
            raise ConfigurationError("output_format must be csv or json")
        if output_path is not None:
            parent = os.path.dirname(os.path.abspath(output_path))
            if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
                raise ConfigurationError("output_path %r is not writable" % output_path)
        self.precision_digits = precision_digits
        self.output_format = output_format
        self.output_path = output_path


def _fmt(v, digits=15):
    return mp.nstr(mpf(v), digits)


def _parse_number(s):
    """Decimal or p/q fraction string to BigReal."""
    s = str(s).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return rational_to_real(mpq(int(num), int(den)))
    return mpf(s)


def _parse_angle(s):
    """Angle in radians; accepts plain decimals and pi fractions like 3pi/4."""
    s = str(s).strip().lower().replace(" ", "").replace("*", "")
    if "pi" not in s:
        return _parse_number(s)
    head, _, tail = s.partition("pi")
    value = mp.pi
    if head in ("", "+"):
        pass
    elif head == "-":
        value = -value
    else:
        value = value * _parse_number(head)
    if tail:
        if not tail.startswith("/"):
            raise DomainError("cannot parse angle %r" % s)
        value = value / _parse_number(tail[1:])
    return value


def _unit_grid(n=101):
    """n uniform points i/n, i = 1..n, covering (0, 1]."""
    return [mpf(i) / n for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# reproduce targets


def _cell(column, row, computed, text, match):
    return {
        "column": column,
        "row": row,
        "computed": computed,
        "golden": text,
        "match": match,
    }


def _check_real_cells(name, column, cells, value_at, rows, checks):
    for label, text in cells:
        v = value_at(label)
        ok = goldens.matches_printed(v, text)
        digits = goldens.printed_digit_count(text) + 3
        rows.append(_cell(column, label, _fmt(v, digits), text, ok))
        checks.append(("%s %s[%s]" % (name, column, label), ok, _fmt(v, digits), text))


def _target_table1():
    eps = mpf(9) / 10
    M = mp.pi / 4
    psi = kepler.solve_newton(kepler.KeplerProblem(eps, M))
    z = mp.exp(mpc(0, 1) * M)
    terms = kapteyn.kapteyn_terms(kapteyn.KapteynParams(eps, z, 71))
    sums = seqxform.partial_sums(terms)
    g = goldens.TABLE1
    rows, checks = [], []
    _check_real_cells(
        "table1", "ps", g["ps"], lambda r: M + sums[g["ps_index"][r]].imag, rows, checks
    )
    ok = goldens.matches_printed(psi, goldens.NEWTON_PSI_REF)
    rows.append(_cell("newton", "", _fmt(psi, 25), goldens.NEWTON_PSI_REF, ok))
    checks.append(("table1 newton psi", ok, _fmt(psi, 25), goldens.NEWTON_PSI_REF))
    residual = abs(psi - eps * mp.sin(psi) - M)
    notes = ["newton residual |psi - eps*sin(psi) - M| = %s" % _fmt(residual, 5)]
    return _FIELDS_TABLE, rows, checks, notes


def _bessel_table(name, g, n, eps, k_hi):
    spec = bessel.DebyeSeriesSpec(n, eps, k_hi + 2)
    table = debye.generate(k_hi + 1)
    terms = bessel.jn_debye_terms(spec, table)
    sums = seqxform.partial_sums(terms)
    tabs = {
        "d": seqxform.levin_d(terms, k_hi),
        "delta": seqxform.weniger_delta(terms, k_hi),
    }
    rows, checks = [], []
    _check_real_cells(name, "ps", g["ps"], lambda r: sums[g["ps_index"][r]], rows, checks)
    for column in ("d", "delta"):
        _check_real_cells(name, column, g[column], lambda k: tabs[column][k], rows, checks)
    ref = bessel.jn_reference(n, n * eps)
    ok = goldens.matches_printed(ref, g["limit"])
    rows.append(_cell("reference", "", _fmt(ref, 14), g["limit"], ok))
    checks.append(("%s reference J_%d(%s)" % (name, n, mp.nstr(n * eps, 4)), ok, _fmt(ref, 14), g["limit"]))
    return _FIELDS_TABLE, rows, checks, []


def _target_table2():
    return _bessel_table("table2", goldens.TABLE2, 10, mpf(1) / 2, 30)


def _target_table3():
    return _bessel_table("table3", goldens.TABLE3, 10, mpf(9) / 10, 25)


def _target_table4():
    x = mp.log(2)
    y = mpf(100) / mp.sqrt(199)
    table = debye.generate(106)
    terms = kapteyn.u_terms(kapteyn.UQuery(x, y, 105), table)
    sums = seqxform.partial_sums(terms)
    tabs = {
        "d": seqxform.levin_d(terms, 105),
        "delta": seqxform.weniger_delta(terms, 105),
    }
    g = goldens.TABLE4
    rows, checks = [], []
    _check_real_cells("table4", "ps", g["ps"], lambda r: sums[g["ps_index"][r]], rows, checks)
    for column in ("d", "delta"):
        _check_real_cells("table4", column, g[column], lambda k: tabs[column][k], rows, checks)
    return _FIELDS_TABLE, rows, checks, []


def _target_table5():
    eps = mpf(9) / 10
    z = 10 * mp.exp(mpc(0, 1) * mp.pi / 3)
    terms = kapteyn.kapteyn_terms(kapteyn.KapteynParams(eps, z, 52, generalized=True))
    sums = seqxform.partial_sums(terms)
    tabs = {
        "d": seqxform.levin_d(terms, 50),
        "delta": seqxform.weniger_delta(terms, 50),
    }
    g = goldens.TABLE5
    rows, checks, notes = [], [], []

    def complex_cell(column, label, v, re_t, im_t, re_ok, im_ok):
        mre = goldens.matches_printed(v.real, re_t)
        mim = goldens.matches_printed(v.imag, im_t)
        digits = max(goldens.printed_digit_count(re_t), goldens.printed_digit_count(im_t)) + 3
        rows.append(
            {
                "column": column,
                "row": label,
                "computed_re": _fmt(v.real, digits),
                "computed_im": _fmt(v.imag, digits),
                "golden_re": re_t,
                "golden_im": im_t,
                "match": mre and mim,
            }
        )
        for part, m, text, flagged in (("re", mre, re_t, re_ok), ("im", mim, im_t, im_ok)):
            cv = _fmt(v.real if part == "re" else v.imag, digits)
            if flagged:
                checks.append(("table5 %s[%s] %s" % (column, label, part), m, cv, text))
            else:
                notes.append(
                    "table5 %s[%s] %s unchecked: printed %s, exact rerun %s"
                    % (column, label, part, text, cv)
                )

    for label, re_t, im_t, re_ok, im_ok in g["ps"]:
        complex_cell("ps", label, sums[g["ps_index"][label]], re_t, im_t, re_ok, im_ok)
    for column in ("d", "delta"):
        for label, re_t, im_t, ok in g[column]:
            complex_cell(column, label, tabs[column][label], re_t, im_t, ok, ok)
    return _FIELDS_TABLE5, rows, checks, notes


def _target_fig2():
    table = debye.generate(41)
    cols = {}
    for tag, eps in (("1_2", mpf(1) / 2), ("9_10", mpf(9) / 10)):
        spec = bessel.DebyeSeriesSpec(10, eps, 41)
        cols[tag] = [abs(a) for a in bessel.jn_debye_terms(spec, table)]
    fields = ["k", "abs_term_eps_1_2", "abs_term_eps_9_10"]
    rows = [
        {"k": k, "abs_term_eps_1_2": _fmt(cols["1_2"][k], 12), "abs_term_eps_9_10": _fmt(cols["9_10"][k], 12)}
        for k in range(41)
    ]
    checks = [
        ("fig2 terms diverge (eps=1/2)", cols["1_2"][40] > cols["1_2"][10], _fmt(cols["1_2"][40], 6), "> " + _fmt(cols["1_2"][10], 6)),
        ("fig2 terms diverge (eps=9/10)", cols["9_10"][40] > cols["9_10"][10], _fmt(cols["9_10"][40], 6), "> " + _fmt(cols["9_10"][10], 6)),
    ]
    return fields, rows, checks, []


def _target_fig3():
    edges = debye.edge_coefficients(200)
    fields = ["k", "abs_edge_coeff", "factorial_law"]
    rows = []
    for k in range(1, 201):
        rows.append(
            {
                "k": k,
                "abs_edge_coeff": _fmt(abs(rational_to_real(edges[k])), 12),
                "factorial_law": _fmt(debye.leading_coeff_asymptote(k), 12),
            }
        )
    ratio = abs(rational_to_real(edges[200] / edges[199]))
    rel = abs(ratio / (mpf(3) / 2 * 200) - 1)
    checks = [
        ("fig3 edge ratio ~ (3/2)k at k=200 (1%)", rel < mpf("0.01"), _fmt(rel, 4), "< 0.01")
    ]
    notes = [
        "the factorial-law column uses the calibration constant 1e4; the"
        " measured prefactor of the exact coefficients is about 0.24, so the"
        " curve is a slope reference only"
    ]
    return fields, rows, checks, notes


def _target_fig4():
    n = 10
    eps = mpf(99) / 100
    table = debye.generate(81)
    terms = [abs(a) for a in bessel.jn_debye_terms(bessel.DebyeSeriesSpec(n, eps, 81), table)]
    w = mp.sqrt(1 - eps**2)
    pre = bessel.rho(eps) ** n * mpf(10) ** 4 / mp.sqrt(2 * mp.pi * n * w)
    base = mpf(3) / (2 * n * w**3)
    fields = ["k", "abs_term", "factorial_law"]
    rows = []
    law = pre
    for k in range(81):
        rows.append({"k": k, "abs_term": _fmt(terms[k], 12), "factorial_law": _fmt(law, 12)})
        law = law * base * (k + 1)
    grow = all(terms[k + 1] > terms[k] for k in range(10, 80))
    checks = [("fig4 terms grow factorially from k=10", grow, "monotone growth", "increasing |term|")]
    return fields, rows, checks, []


def _scan_checks(tag, pts, checks):
    vals = [p.value for p in pts]
    done = all(v is not None for v in vals)
    checks.append(("%s scan completed" % tag, done, "%d points" % len(vals), "no failed points"))
    vv = [v for v in vals if v is not None]
    slack = mpf(10) ** (-8)
    low = min(vv)
    checks.append(("%s U >= -1e-8" % tag, low >= -slack, _fmt(low, 6), ">= -1e-8"))
    # ascending t is descending x, so nondecreasing in x reads right-to-left
    mono = all(b <= a + slack for a, b in zip(vv, vv[1:]))
    checks.append(("%s nondecreasing in x (1e-8 slack)" % tag, mono, "monotone" if mono else "violated", "nonincreasing along t"))


def _target_fig5():
    eps = mpf(99) / 100
    grid = _unit_grid()
    table = debye.generate(41)
    orders = (6, 10, 20, 40)
    scans = {o: kapteyn.stieltjes_scan(eps, grid, o, seqxform.LEVIN_D, table) for o in orders}
    fields = ["t", "x"] + ["u_order_%d" % o for o in orders]
    rows = []
    for i, t in enumerate(grid):
        row = {"t": _fmt(t, 12), "x": _fmt(scans[40][i].x, 12)}
        for o in orders:
            v = scans[o][i].value
            row["u_order_%d" % o] = "" if v is None else _fmt(v, 12)
        rows.append(row)
    checks, notes = [], []
    _scan_checks("fig5 order-40", scans[40], checks)
    spread = max(
        abs(a.value - b.value)
        for a, b in zip(scans[20], scans[40])
        if a.value is not None and b.value is not None
    )
    notes.append(
        "max |order-20 - order-40| over the grid = %s (successive-order"
        " agreement plateaus above 1e-6 at this eccentricity)" % _fmt(spread, 4)
    )
    return fields, rows, checks, notes


def _target_fig6():
    grid = _unit_grid()
    table = debye.generate(41)
    tags = (("1_10", mpf(1) / 10), ("5_10", mpf(5) / 10), ("7_10", mpf(7) / 10), ("9_10", mpf(9) / 10))
    scans = {tag: kapteyn.stieltjes_scan(eps, grid, 40, seqxform.LEVIN_D, table) for tag, eps in tags}
    fields = ["t", "x"] + ["u_eps_%s" % tag for tag, _ in tags]
    rows = []
    for i, t in enumerate(grid):
        row = {"t": _fmt(t, 12), "x": _fmt(scans["1_10"][i].x, 12)}
        for tag, _ in tags:
            v = scans[tag][i].value
            row["u_eps_%s" % tag] = "" if v is None else _fmt(v, 12)
        rows.append(row)
    checks = []
    for tag, _ in tags:
        _scan_checks("fig6 eps=%s" % tag.replace("_", "/"), scans[tag], checks)
    return fields, rows, checks, []


def _rate_curve(kind):
    eps = mpf(99) / 100
    M = mp.pi / 2
    p = kepler.KeplerProblem(eps, M)
    psi = kepler.solve_newton(p)
    sol = kepler.solve_series(p, kind, k_max=250)
    errors = [(k, abs(sol.psi_at(k) - psi) / psi) for k in sol.orders()]
    return errors, kepler.fit_rate(errors)


def _rate_fig(tag, kind, lo, hi):
    errors, fit = _rate_curve(kind)
    fields = ["order", "rel_error"]
    rows = [{"order": k, "rel_error": _fmt(e, 10)} for k, e in errors]
    ok = lo <= fit.nu <= hi
    checks = [("%s fitted nu within [%s, %s]" % (tag, lo, hi), ok, "%.4f" % fit.nu, "[%s, %s]" % (lo, hi))]
    notes = [
        "%s fit: alpha=%.6g nu=%.4f window=%s points=%d residual=%.3g"
        % (tag, fit.alpha, fit.nu, fit.fit_window, fit.n_points, fit.residual)
    ]
    return fields, rows, checks, notes


def _target_fig7():
    return _rate_fig("fig7 delta", seqxform.WENIGER_DELTA, 0.85, 1.15)


def _target_fig8():
    return _rate_fig("fig8 d", seqxform.LEVIN_D, 0.75, 1.05)


def _target_fig9():
    eps = mpf(9) / 10
    z = 10 * mp.exp(mpc(0, 1) * mp.pi / 3)
    p = kepler.ComplexKeplerProblem(eps, z)
    err_d = dict(kepler.complex_identity_check(p, seqxform.LEVIN_D, 40))
    err_w = dict(kepler.complex_identity_check(p, seqxform.WENIGER_DELTA, 40))
    fields = ["order", "identity_err_d", "identity_err_delta"]
    rows = []
    for k in range(1, 41):
        rows.append(
            {
                "order": k,
                "identity_err_d": _fmt(err_d[k], 8) if k in err_d else "",
                "identity_err_delta": _fmt(err_w[k], 8) if k in err_w else "",
            }
        )
    terms = kapteyn.kapteyn_terms(kapteyn.KapteynParams(eps, z, 42, generalized=True))
    d30 = seqxform.weniger_delta(terms, 40)[30]
    g = goldens.TABLE5
    ok = goldens.matches_printed_complex(d30, g["delta_limit_re"], g["delta_limit_im"])
    checks = [
        (
            "fig9 delta_30 printed digits",
            ok,
            "%s + %s i" % (_fmt(d30.real, 9), _fmt(d30.imag, 9)),
            "%s + %s i" % (g["delta_limit_re"], g["delta_limit_im"]),
        ),
        (
            "fig9 delta identity error <= d identity error at order 30",
            err_w[30] <= err_d[30],
            _fmt(err_w[30], 4),
            "<= " + _fmt(err_d[30], 4),
        ),
    ]
    notes = []
    for tag, errs in (("d", err_d), ("delta", err_w)):
        hit = [k for k in sorted(errs) if errs[k] <= mpf(10) ** (-5)]
        if hit:
            notes.append("fig9 %s identity error first <= 1e-5 at order %d" % (tag, hit[0]))
        else:
            best = min(errs.values())
            notes.append("fig9 %s identity error never <= 1e-5 through order 40 (min %s)" % (tag, _fmt(best, 4)))
    return fields, rows, checks, notes


def _target_fig10():
    cells = kepler.rate_scan()
    fields = ["eps", "M", "kind", "alpha", "nu", "residual"]
    rows, notes = [], []
    nus = {seqxform.LEVIN_D: [], seqxform.WENIGER_DELTA: []}
    unfit = 0
    for c in cells:
        if c.fit is None:
            unfit += 1
            notes.append("flagged cell eps=%s M=%s kind=%s: %s" % (_fmt(c.eps, 6), _fmt(c.M, 6), c.kind, c.note))
            continue
        nus[c.kind].append(c.fit.nu)
        rows.append(
            {
                "eps": _fmt(c.eps, 10),
                "M": _fmt(c.M, 10),
                "kind": c.kind,
                "alpha": "%.8g" % c.fit.alpha,
                "nu": "%.6f" % c.fit.nu,
                "residual": "%.4g" % c.fit.residual,
            }
        )
    mean_d = sum(nus[seqxform.LEVIN_D]) / len(nus[seqxform.LEVIN_D])
    mean_w = sum(nus[seqxform.WENIGER_DELTA]) / len(nus[seqxform.WENIGER_DELTA])
    checks = [
        ("fig10 all grid cells fitted", unfit == 0, "%d flagged" % unfit, "0 flagged"),
        ("fig10 mean nu (d) > mean nu (delta)", mean_d > mean_w, "%.4f" % mean_d, "> %.4f" % mean_w),
    ]
    return fields, rows, checks, notes


_FIELDS_TABLE = ["column", "row", "computed", "golden", "match"]
_FIELDS_TABLE5 = ["column", "row", "computed_re", "computed_im", "golden_re", "golden_im", "match"]

TARGETS = {
    "table1": _target_table1,
    "table2": _target_table2,
    "table3": _target_table3,
    "table4": _target_table4,
    "table5": _target_table5,
    "fig2": _target_fig2,
    "fig3": _target_fig3,
    "fig4": _target_fig4,
    "fig5": _target_fig5,
    "fig6": _target_fig6,
    "fig7": _target_fig7,
    "fig8": _target_fig8,
    "fig9": _target_fig9,
    "fig10": _target_fig10,
}


def _write_artifact(cfg, target, fields, rows, checks, notes):
    path = cfg.output_path or "%s.%s" % (target, cfg.output_format)
    if cfg.output_format == "csv":
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    else:
        doc = {
            "target": target,
            "precision_digits": cfg.precision_digits,
            "rows": rows,
            "checks": [
                {"label": lb, "ok": ok, "computed": cv, "expected": ev}
                for lb, ok, cv, ev in checks
            ],
            "notes": notes,
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    return path


def reproduce(target, cfg, out=None):
    """Rebuild one target, write its artifact, return a process exit code."""
    out = out if out is not None else sys.stdout
    if target not in TARGETS:
        raise ConfigurationError("unknown target %r" % target)
    with with_precision(cfg.precision_digits):
        fields, rows, checks, notes = TARGETS[target]()
        path = _write_artifact(cfg, target, fields, rows, checks, notes)
    bad = [c for c in checks if not c[1]]
    print("%s at precision %d: %d checks, %d mismatched" % (target, cfg.precision_digits, len(checks), len(bad)), file=out)
    for label, ok, computed, expected in checks:
        if not ok:
            print("MISMATCH %s: computed %s, expected %s" % (label, computed, expected), file=out)
    for note in notes:
        print("note: %s" % note, file=out)
    print("wrote %s" % path, file=out)
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# selfcheck


def _selfcheck_list(digits, corrupt_row=None):
    """Reduced-scale invariant suite; returns (module, name, ok, detail, warn)."""
    checks = []
    warn_ok = digits >= 100  # high-order transforms cancel below this

    def add(module, name, ok, detail="", warn=False):
        checks.append((module, name, bool(ok), detail, warn))

    tiny = mpf(10) ** (-mp.dps + 10)

    # arith
    from .arith import from_decimal_string, to_decimal_string

    x = mp.pi / 3
    add("arith", "decimal-round-trip", from_decimal_string(to_decimal_string(x)) == x)
    try:
        with with_precision(MIN_DIGITS - 1):
            pass
        add("arith", "min-precision-guard", False, "no error raised")
    except ConfigurationError:
        add("arith", "min-precision-guard", True)
    q = mpq(1, 3)
    add(
        "arith",
        "rational-conversion",
        abs(rational_to_real(q) - mpf(1) / 3) <= abs(mpf(1) / 3) * mpf(10) ** (-mp.dps + 2),
    )

    # seqxform
    geo = seqxform.TermSequence([mpf(3) ** (-j) for j in range(13)], "geometric")
    limit = mpf(3) / 2
    ok = True
    for table in (seqxform.levin_d(geo, 3), seqxform.weniger_delta(geo, 3)):
        ok = ok and all(abs(table[k] - limit) < tiny * 10 for k in table.orders())
    add("seqxform", "geometric-exactness", ok)

    shifted = seqxform.TermSequence([geo[0] + 3] + list(geo)[1:], "shifted geometric")
    t0 = seqxform.weniger_delta(geo, 4)
    t1 = seqxform.weniger_delta(shifted, 4)
    add("seqxform", "translation-covariance", abs(t1[4] - (t0[4] + 3)) < tiny * 10)

    scaled = seqxform.TermSequence([7 * a for a in geo], "scaled geometric")
    ok = True
    for f in (seqxform.levin_d, seqxform.weniger_delta):
        ok = ok and abs(f(scaled, 4)[4] - 7 * f(geo, 4)[4]) < tiny * 100
    add("seqxform", "scale-invariance", ok)

    spec = bessel.DebyeSeriesSpec(10, mpf(1) / 2, 14)
    v1 = bessel.jn_resummed(spec, seqxform.WENIGER_DELTA, 12)[12]
    with with_precision(2 * mp.dps):
        v2 = bessel.jn_resummed(spec, seqxform.WENIGER_DELTA, 12)[12]
    agree = abs(v1 - v2) <= abs(v2) * mpf(10) ** (-(digits - 20))
    add(
        "seqxform",
        "precision-doubling",
        agree,
        "order-12 resummation at %d vs %d digits" % (digits, 2 * digits),
        warn=not warn_ok,
    )

    # debye
    table = debye.generate(12)
    add("debye", "explicit-low-rows", table.row(1) == [0, mpq(1, 8), 0, mpq(-5, 24)]
        and table.row(2) == [0, 0, mpq(9, 128), 0, mpq(-77, 192), 0, mpq(385, 1152)])
    ok = True
    for k in range(5):
        ok = ok and debye.integro_differential_step(table.row(k)) == table.row(k + 1)
    add("debye", "integro-differential-recurrence", ok)
    ok = True
    for k in range(13):
        row = table.row(k)
        ok = ok and all(row[m] == 0 for m in range(3 * k + 1) if m % 2 != k % 2)
    add("debye", "sparsity-pattern", ok)
    if corrupt_row is not None:
        broken = debye.generate(max(int(corrupt_row) + 1, 3))
        k = min(int(corrupt_row), broken.k_max)
        broken.rows[k][3 * k] *= 3
        try:
            broken.check_ratio_law()
            detail = "corruption at row %d not detected" % k
        except ValueError as exc:
            detail = str(exc)
        add("debye", "ratio-law", False, detail)
    else:
        try:
            table.check_ratio_law()
            add("debye", "ratio-law", True)
        except ValueError as exc:
            add("debye", "ratio-law", False, str(exc))

    # bessel
    add("bessel", "series-oracle-anchors",
        bessel.jn_reference(0, 0) == 1
        and goldens.matches_printed(bessel.jn_reference(10, 5), "0.001467802647")
        and goldens.matches_printed(bessel.jn_reference(10, 9), "0.1246940928"))
    add("bessel", "rho-anchors",
        bessel.rho(1) == 1
        and bessel.rho(mpf("1e-6")) < mpf("1e-5")
        and goldens.matches_printed(bessel.rho(mpf(9) / 10), "0.96923"))
    spec = bessel.DebyeSeriesSpec(10, mpf(1) / 2, 27)
    got = bessel.jn_resummed(spec, seqxform.LEVIN_D, 25)[25]
    err = abs(got - bessel.jn_reference(10, 5))
    add("bessel", "resummed-vs-oracle", err <= mpf("1e-9"),
        "|d_25 - J_10(5)| = %s" % _fmt(err, 4), warn=not warn_ok)

    # kapteyn
    nu = mpf(3) / 2
    z = mpf(1) / 2
    series = kapteyn.polylog(nu, z)
    with mp.workdps(max(45, mp.dps)):
        quad = z / mp.gamma(nu) * mp.quad(lambda s: s ** (nu - 1) / (mp.e**s - z), [0, mp.inf])
    add("kapteyn", "polylog-vs-quadrature", abs(series - quad) <= mpf(10) ** (-20),
        "|series - quadrature| = %s" % _fmt(abs(series - quad), 4))
    ms = [kapteyn.stieltjes_measure(nu, mpf(i) / 20) for i in range(1, 21)]
    mono = all(b >= a for a, b in zip(ms, ms[1:]))
    try:
        kapteyn.stieltjes_measure(nu, 0)
        dom = False
    except DomainError:
        dom = True
    add("kapteyn", "measure-monotone", mono and dom and ms[-1] == 1)
    zero_terms = kapteyn.u_terms(kapteyn.UQuery(0, mpf(3), 8))
    add("kapteyn", "u-terms-vanish-at-x0", all(a == 0 for a in zero_terms))
    zc = mp.exp(mpc(0, 1) * mp.pi / 5)
    a1 = kapteyn.kapteyn_terms(kapteyn.KapteynParams(mpf(1) / 2, zc, 12))
    a2 = kapteyn.kapteyn_terms(kapteyn.KapteynParams(mpf(1) / 2, mp.conj(zc), 12))
    add("kapteyn", "conjugate-symmetry", all(x == mp.conj(y) for x, y in zip(a2, a1)))

    # kepler
    eps = mpf(7) / 10
    M = mpf("0.9")
    p1 = kepler.solve_newton(kepler.KeplerProblem(eps, M))
    p2 = kepler.solve_newton(kepler.KeplerProblem(eps, 2 * mp.pi - M))
    add("kepler", "reflection-symmetry", abs(p2 - (2 * mp.pi - p1)) < tiny * 100)
    prob = kepler.KeplerProblem(mpf(6) / 10, 3 * mp.pi / 4)
    newton = kepler.solve_newton(prob)
    series = kepler.solve_series(prob, seqxform.WENIGER_DELTA, 40).psi_at(40)
    err = abs(series - newton) / newton
    add("kepler", "series-vs-newton", err <= mpf("1e-10"),
        "relative error %s at order 40" % _fmt(err, 4), warn=not warn_ok)
    synth = [(k, mp.exp(-2 * mpf(k) ** mpf("0.75"))) for k in range(1, 61)]
    fit = kepler.fit_rate(synth)
    add("kepler", "rate-fit-synthetic", abs(fit.nu - 0.75) <= 1e-6, "nu = %.8f" % fit.nu)
    prob = kepler.KeplerProblem(mpf(1) / 2, mp.pi / 3)
    newton = kepler.solve_newton(prob)
    sol = kepler.solve_series(prob, seqxform.WENIGER_DELTA, 25)
    errs = [abs(sol.psi_at(k) - newton) for k in sol.orders()]
    mins = [min(errs[i : i + 5]) for i in range(0, 25, 5)]
    add("kepler", "windowed-error-decay", all(b < a for a, b in zip(mins, mins[1:])))

    return checks


def selfcheck(cfg, corrupt_row=None, out=None):
    """Run the invariant suite, print a report, return an exit code."""
    out = out if out is not None else sys.stdout
    with with_precision(cfg.precision_digits):
        checks = _selfcheck_list(cfg.precision_digits, corrupt_row)
    failed = warned = 0
    for module, name, ok, detail, warn in checks:
        if ok:
            status = "ok"
        elif warn:
            status = "warn"
            warned += 1
        else:
            status = "FAIL"
            failed += 1
        line = "%s/%s: %s" % (module, name, status)
        if detail and status != "ok":
            line += " (%s)" % detail
        print(line, file=out)
    print(
        "selfcheck: %d checks, %d ok, %d failed, %d warnings"
        % (len(checks), len(checks) - failed - warned, failed, warned),
        file=out,
    )
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# small subcommands


def _cmd_debye(args):
    t = _parse_number(args.t)
    table = debye.generate(args.k)
    value = debye.eval_poly(table, args.k, t)
    print("U_%d(%s) = %s" % (args.k, mp.nstr(t, 8), mp.nstr(value, args.digits)))
    if args.export:
        with open(args.export, "w") as fh:
            debye.write_json(table, fh)
        print("wrote %s" % args.export)
    return 0


def _cmd_bessel(args):
    eps = _parse_number(args.eps)
    k_hi = args.k_max
    spec = bessel.DebyeSeriesSpec(args.n, eps, k_hi + 2)
    terms = bessel.jn_debye_terms(spec)
    sums = seqxform.partial_sums(terms)
    dtab = seqxform.levin_d(terms, k_hi)
    wtab = seqxform.weniger_delta(terms, k_hi)
    rows = []
    for order in range(1, k_hi + 1):
        rows.append(
            {
                "order": order,
                "partial_sum": mp.nstr(sums[order - 1], args.digits),
                "d": mp.nstr(dtab[order], args.digits) if order in dtab else "",
                "delta": mp.nstr(wtab[order], args.digits) if order in wtab else "",
            }
        )
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=["order", "partial_sum", "d", "delta"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
            print("wrote %s" % args.out)
    return 0


def _cmd_u_scan(args):
    eps = _parse_number(args.eps)
    kind = seqxform.LEVIN_D if args.kind == "d" else seqxform.WENIGER_DELTA
    grid = _unit_grid(args.grid)
    pts = kapteyn.stieltjes_scan(eps, grid, args.order, kind)
    rows = []
    failures = []
    for p in pts:
        rows.append(
            {
                "t": _fmt(p.t, 12),
                "x": _fmt(p.x, 12),
                "u_value": "" if p.value is None else _fmt(p.value, 12),
                "order": args.order,
                "eps": _fmt(eps, 10),
            }
        )
        if p.error:
            failures.append("t=%s: %s" % (_fmt(p.t, 6), p.error))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=["t", "x", "u_value", "order", "eps"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
            print("wrote %s" % args.out)
    for f in failures:
        print("note: %s" % f, file=sys.stderr)
    return 0


def _cmd_kepler_solve(args):
    eps = _parse_number(args.eps)
    M = _parse_angle(args.M)
    p = kepler.KeplerProblem(eps, M)
    if args.method == "newton":
        psi = kepler.solve_newton(p)
        print("psi = %s" % mp.nstr(psi, args.digits))
        print("residual = %s" % mp.nstr(abs(psi - eps * mp.sin(psi) - M), 5))
        return 0
    kind = seqxform.LEVIN_D if args.method == "levin" else seqxform.WENIGER_DELTA
    sol = kepler.solve_series(p, kind, args.order)
    if sol.degenerate:
        print("psi = %s (degenerate: every series term vanishes; exact)" % mp.nstr(sol.psi, args.digits))
        return 0
    psi = sol.psi_at(args.order)
    print("psi = %s (%s, order %d)" % (mp.nstr(psi, args.digits), args.method, args.order))
    newton = kepler.solve_newton(p)
    print("vs newton: |diff| = %s" % mp.nstr(abs(psi - newton), 5))
    return 0


def _cmd_kepler_rates(args):
    eps_grid = [s.strip() for s in args.grid.split(",") if s.strip()]
    m_list = [s.strip() for s in args.m_list.split(",") if s.strip()]
    cells = kepler.rate_scan(m_list, eps_grid, k_max=args.k_max)
    rows = []
    flagged = []
    for c in cells:
        if c.fit is None:
            flagged.append("eps=%s M=%s kind=%s: %s" % (_fmt(c.eps, 6), _fmt(c.M, 6), c.kind, c.note))
            continue
        rows.append(
            {
                "eps": _fmt(c.eps, 10),
                "M": _fmt(c.M, 10),
                "kind": c.kind,
                "alpha": "%.8g" % c.fit.alpha,
                "nu": "%.6f" % c.fit.nu,
                "residual": "%.4g" % c.fit.residual,
            }
        )
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=["eps", "M", "kind", "alpha", "nu", "residual"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
            print("wrote %s" % args.out)
    for f in flagged:
        print("flagged: %s" % f, file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="keplevin",
        description="High-precision resummation toolkit with golden-table reproduction.",
    )
    ap.add_argument(
        "--precision",
        type=int,
        default=DEFAULT_DIGITS,
        help="working decimal digits (>= %d); the %s environment variable overrides this flag"
        % (MIN_DIGITS, _ENV_PRECISION),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("reproduce", help="rebuild a reference table or figure dataset")
    rp.add_argument("--target", required=True, choices=sorted(TARGETS))
    rp.add_argument("--format", choices=("csv", "json"), default="csv")
    rp.add_argument("--out", default=None, help="artifact path (default <target>.<format>)")

    sc = sub.add_parser("selfcheck", help="run the reduced-scale invariant suite")
    sc.add_argument(
        "--corrupt-debye-row",
        type=int,
        default=None,
        metavar="K",
        help="test hook: corrupt coefficient row K and prove the ratio law catches it",
    )

    dp = sub.add_parser("debye", help="evaluate a Debye polynomial U_k(t)")
    dp.add_argument("--k", type=int, required=True)
    dp.add_argument("--t", required=True)
    dp.add_argument("--digits", type=int, default=15)
    dp.add_argument("--export", default=None, help="also write the coefficient table as JSON")

    bp = sub.add_parser("bessel", help="emit the resummed Debye expansion of J_n(n*eps) as CSV")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--eps", required=True)
    bp.add_argument("--k-max", type=int, default=30)
    bp.add_argument("--digits", type=int, default=10)
    bp.add_argument("--out", default=None)

    up = sub.add_parser("u-scan", help="scan the resummed function U(-log t, y) over a t grid")
    up.add_argument("--eps", required=True)
    up.add_argument("--order", type=int, default=40)
    up.add_argument("--kind", choices=("d", "delta"), default="d")
    up.add_argument("--grid", type=int, default=101, help="number of uniform t points in (0,1]")
    up.add_argument("--out", default=None)

    kp = sub.add_parser("kepler", help="Kepler equation solvers and rate scans")
    ksub = kp.add_subparsers(dest="kepler_command", required=True)
    ks = ksub.add_parser("solve", help="solve M = psi - eps*sin(psi)")
    ks.add_argument("--eps", required=True)
    ks.add_argument("--M", required=True, help="radians; accepts pi fractions like 3pi/4")
    ks.add_argument("--method", choices=("newton", "levin", "weniger"), default="newton")
    ks.add_argument("--order", type=int, default=40)
    ks.add_argument("--digits", type=int, default=25)
    kr = ksub.add_parser("rates", help="fit the error model exp(-alpha*k^nu) over a grid")
    kr.add_argument("--grid", default=",".join(kepler.DEFAULT_EPS_GRID), help="comma-separated eps values (fractions allowed)")
    kr.add_argument("--m-list", default=",".join(kepler.DEFAULT_M_LIST), help="comma-separated M values as fractions of pi")
    kr.add_argument("--k-max", type=int, default=250)
    kr.add_argument("--out", default=None)

    return ap


def _dispatch(args):
    if args.command == "reproduce":
        cfg = RunConfig(args.precision, args.format, args.out)
        return reproduce(args.target, cfg)
    if args.command == "selfcheck":
        cfg = RunConfig(args.precision)
        return selfcheck(cfg, args.corrupt_debye_row)
    if args.command == "debye":
        return _cmd_debye(args)
    if args.command == "bessel":
        return _cmd_bessel(args)
    if args.command == "u-scan":
        return _cmd_u_scan(args)
    if args.command == "kepler":
        if args.kepler_command == "solve":
            return _cmd_kepler_solve(args)
        return _cmd_kepler_rates(args)
    raise ConfigurationError("unknown command %r" % args.command)


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    digits = args.precision
    env = os.environ.get(_ENV_PRECISION)
    if env is not None:
        try:
            digits = int(env)
        except ValueError:
            ap.error("%s must be an integer, got %r" % (_ENV_PRECISION, env))
    if digits < MIN_DIGITS:
        ap.error("precision must be >= %d digits" % MIN_DIGITS)
    args.precision = digits
    try:
        with with_precision(digits):
            return _dispatch(args)
    except (ConfigurationError, DomainError, RangeError, ValueError) as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except KeplevinError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
