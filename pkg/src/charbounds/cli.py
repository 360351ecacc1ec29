"""Command-line surface: datum facts, corner tables, extrema, reports.

Everything here is presentation and plumbing; the mathematics lives in
the library modules.  Output is deterministic for a fixed configuration
and cache state: JSON is emitted with sorted keys, CSV with a header
row and fixed line endings, and the derivation-matrix cache is keyed by
datum content hash (directory from --cache or CHARBOUNDS_CACHE).

Exit codes: 0 ok, 2 infeasible or over a cap, 3 undecided numerical or
sign result, 4 usage.
"""

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass

from . import branch, closedform
from .algsolve import (
    NotZeroDimensionalError,
    SolveError,
    UndecidedSignError,
)
from .charring import (
    FundamentalPolynomial,
    OrbitCapError,
)
from .compactcert import adjoint_objective, extremum
from .invder import derivation_matrix
from .polynomials import Poly, qq, qq_str
from .rootdata import (
    EnumerationCapError,
    build_root_datum,
    corners,
    weyl_min_trace,
)
from .su2asym import (
    DEFAULT_WEYL_CAP,
    ConditioningError,
    chebyshev_character,
    eval_X,
    limit_constant,
    su2_min,
)

JSON_VERSION = "charbounds/1"

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_UNDECIDED = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    datum: object = None          # RootDatum, when the command takes --type
    objective: str = "adjoint"
    fmt: str = "text"
    cache_dir: str = None
    precision: int = 6
    rank_cap: int = 6
    orbit_cap: int = 10_000_000
    pair_cap: int = 200_000
    long_running: bool = False
    columns: tuple = None         # corners
    pins: tuple = ()              # branch-minimize, ((index, value), ...)
    family: str = "simple"        # table
    max_rank: int = 8             # table
    max_degree: int = 12          # su2
    degree: int = None            # su2
    s_vec: tuple = None           # xfun
    t_vec: tuple = None           # xfun

    def validate(self):
        if self.precision < 1:
            raise UsageError("precision must be at least 1")
        for cap_name in ("rank_cap", "orbit_cap", "pair_cap"):
            if getattr(self, cap_name) < 1:
                raise UsageError("%s must be positive" % cap_name)
        return self


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_type(text):
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text or "")
    if not m:
        raise UsageError(
            "--type wants a letter and rank like G2 or D5, got %r" % text
        )
    try:
        return build_root_datum(m.group(1).upper(), int(m.group(2)))
    except ValueError as e:
        raise UsageError(str(e))


def parse_objective(datum, text):
    """Linear combinations 'c1*f1 + c2*f2 - f3' plus the word 'adjoint'."""
    s = (text or "").replace(" ", "")
    if not s:
        raise UsageError("empty objective")
    if s == "adjoint":
        return adjoint_objective(datum)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise UsageError("cannot parse objective %r" % text)
    r = datum.rank
    terms = {}
    for piece in pieces:
        sign = 1 if piece[0] == "+" else -1
        body = piece[1:]
        m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*)?f(\d+)", body)
        if m:
            coeff = qq(m.group(1)) if m.group(1) else qq(1)
            k = int(m.group(2))
            if not 1 <= k <= r:
                raise UsageError(
                    "objective uses f%d but the rank is %d" % (k, r)
                )
            mono = tuple(1 if i == k - 1 else 0 for i in range(r))
        elif re.fullmatch(r"\d+(?:/\d+)?", body):
            coeff = qq(body)
            mono = (0,) * r
        else:
            raise UsageError("cannot parse objective term %r" % piece)
        terms[mono] = terms.get(mono, qq(0)) + sign * coeff
    return FundamentalPolynomial(datum, Poly(r, terms))


def _parse_pins(text, n):
    pins = {}
    if not text:
        return pins
    for part in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*=\s*(-?2)\s*", part)
        if not m:
            raise UsageError(
                "pins look like '1=2,3=-2' (1-based variables), got %r" % part
            )
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise UsageError("pin variable %d out of range 1..%d" % (i, n))
        pins[i - 1] = int(m.group(2))
    return pins


def _parse_vector(text, rank, flag):
    try:
        items = tuple(complex(tok) for tok in (text or "").split(","))
    except ValueError:
        raise UsageError("%s wants comma-separated numbers, got %r" % (flag, text))
    if len(items) != rank:
        raise UsageError("%s needs %d entries" % (flag, rank))
    return items


# ---------------------------------------------------------------------------
# rendering helpers


def _fmt_float(x, precision):
    return "%.*g" % (precision, x)


def _fmt_alg(v, precision):
    """Exact when rational, decimal plus defining equation otherwise."""
    if v.is_rational():
        return qq_str(v.as_rational())
    return "%s (root of %s = 0)" % (
        _fmt_float(v.approx(), precision),
        _poly_eq(v.minpoly),
    )


def _poly_eq(minpoly):
    parts = []
    for e in range(len(minpoly) - 1, -1, -1):
        c = minpoly[e]
        if not c:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            var = "v" if e == 1 else "v^%d" % e
            body = var if abs(c) == 1 else "%d*%s" % (abs(c), var)
        parts.append(("- " if c < 0 else "+ ") + body)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _fmt_cyc(v, precision):
    if v.is_rational():
        return qq_str(v.as_rational())
    z = v.approx()
    if v.is_real():
        return _fmt_float(z.real, precision)
    return _fmt_complex(z, precision)


def _fmt_complex(z, precision):
    sign = "-" if z.imag < 0 else "+"
    return "%s%s%si" % (
        _fmt_float(z.real, precision),
        sign,
        _fmt_float(abs(z.imag), precision),
    )


def _witness_text(w, precision):
    if hasattr(w, "kac_coordinates"):
        return "corner (%s)" % ", ".join(
            _fmt_cyc(v, precision) for v in w.values
        )
    coords = ", ".join(_fmt_float(c.approx(), precision) for c in w.coords)
    return "critical point (%s)" % coords


def _emit_json(command, payload):
    doc = {"version": JSON_VERSION, "command": command}
    doc.update(payload)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# command handlers; each returns the emitted string


def _cmd_datum(cfg):
    d = cfg.datum
    if cfg.fmt == "json":
        return _emit_json("datum", {"datum": d.to_json()})
    facts = [
        ("type", d.name()),
        ("rank", d.rank),
        ("dimension", d.dim),
        ("weyl_order", d.weyl_order),
        ("positive_roots", len(d.positive_roots)),
        ("fundamental_group", d.fundamental_group_order),
        ("minus_one_in_weyl", d.minus_one_in_weyl()),
        ("highest_root", "(%s)" % ", ".join(str(x) for x in d.highest_root)),
    ]
    if cfg.fmt == "csv":
        return _emit_csv(["fact", "value"], [(k, v) for k, v in facts])
    return "".join("%s: %s\n" % (k, v) for k, v in facts)


def _cmd_corners(cfg):
    d = cfg.datum
    cols = cfg.columns or tuple(range(1, d.rank + 1))
    found = corners(d, columns=cols)
    if cfg.fmt == "json":
        payload = {
            "type": d.name(),
            "columns": list(cols),
            "corners": [
                {
                    "kac_coordinates": list(c.kac_coordinates),
                    "order": c.order,
                    "values": [_fmt_cyc(v, 17) for v in c.values],
                    "decimals": [
                        [v.approx().real, v.approx().imag] for v in c.values
                    ],
                }
                for c in found
            ],
        }
        return _emit_json("corners", payload)
    header = ["kac", "order"] + ["f%d" % j for j in cols]
    rows = [
        [
            "".join(str(x) for x in c.kac_coordinates),
            c.order,
        ]
        + [_fmt_cyc(v, cfg.precision) for v in c.values]
        for c in found
    ]
    if cfg.fmt == "csv":
        return _emit_csv(header, rows)
    lines = []
    for row in rows:
        lines.append(
            "corner %s (order %s): %s"
            % (row[0], row[1], ", ".join(str(x) for x in row[2:]))
        )
    return "".join(line + "\n" for line in lines)


def _cmd_matrix(cfg):
    m = derivation_matrix(
        cfg.datum,
        cache_dir=cfg.cache_dir,
        rank_cap=cfg.rank_cap,
        allow_large=cfg.long_running,
    )
    if cfg.fmt == "json":
        return _emit_json(
            "matrix", {"cache_hit": m.cache_hit, "matrix": m.to_json()}
        )
    r = cfg.datum.rank
    rows = [
        (i + 1, j + 1, m.entry(i, j).to_str())
        for i in range(r)
        for j in range(i, r)
    ]
    if cfg.fmt == "csv":
        return _emit_csv(["i", "j", "entry"], rows)
    out = ["cache: %s" % ("hit" if m.cache_hit else "computed")]
    out += ["M[%d,%d] = %s" % row for row in rows]
    return "".join(line + "\n" for line in out)


def _cmd_extremize(cfg, maximize):
    objective = parse_objective(cfg.datum, cfg.objective)
    report = extremum(
        cfg.datum,
        objective,
        cache_dir=cfg.cache_dir,
        rank_cap=cfg.rank_cap,
        allow_large=cfg.long_running,
        pair_cap=cfg.pair_cap,
        expand_cap=cfg.orbit_cap,
    )
    if cfg.fmt == "json":
        return _emit_json(
            "maximize" if maximize else "minimize", {"report": report.to_json()}
        )
    value = report.maximum if maximize else report.minimum
    witness = report.max_witness if maximize else report.min_witness
    tag = "max" if maximize else "min"
    line = "%s = %s at %s" % (
        tag,
        _fmt_alg(value, cfg.precision),
        _witness_text(witness, cfg.precision),
    )
    if cfg.fmt == "csv":
        return _emit_csv(
            ["objective", tag, "decimal", "witness"],
            [
                (
                    objective.to_str(),
                    _fmt_alg(value, cfg.precision),
                    _fmt_float(value.approx(), cfg.precision),
                    _witness_text(witness, cfg.precision),
                )
            ],
        )
    return line + "\n"


def _cmd_branch_minimize(cfg):
    problem = branch.adjoint_problem(
        cfg.datum, pins=dict(cfg.pins), cap=cfg.orbit_cap
    )
    try:
        result = branch.branch_minimize(problem, pair_cap=cfg.pair_cap)
    except ValueError as e:
        # too many free variables without pins is a feasibility refusal
        raise EnumerationCapError(str(e))
    if cfg.fmt == "json":
        return _emit_json("branch-minimize", {"result": result.to_json()})
    witness = ", ".join(
        _fmt_alg(w, cfg.precision) for w in result.witness
    )
    line = "min = %s at t = (%s)" % (
        _fmt_alg(result.minimum, cfg.precision),
        witness,
    )
    if cfg.fmt == "csv":
        return _emit_csv(
            ["polynomial", "min", "witness"],
            [(problem.f.to_str(), _fmt_alg(result.minimum, cfg.precision), witness)],
        )
    return line + "\n"


_SHORT_ROOT_ROWS = (
    ("B_n (n >= 2)", "1-2n", "2n+1"),
    ("C_n (n >= 2)", "1-n for n odd, -1-n for n even", "2n^2-n-1"),
    ("F4", "-6", "26"),
    ("G2", "-2", "7"),
)


def _cmd_table(cfg):
    if cfg.family == "short-root":
        header = ["type", "minimum", "dimension"]
        rows = list(_SHORT_ROOT_ROWS)
        if cfg.fmt == "json":
            return _emit_json(
                "table",
                {
                    "family": "short-root",
                    "rows": [dict(zip(header, r)) for r in rows],
                },
            )
        if cfg.fmt == "csv":
            return _emit_csv(header, rows)
        return "".join(
            "%s: min = %s on the %s-dimensional representation\n" % r
            for r in rows
        )
    if cfg.family != "simple":
        raise UsageError("unknown table family %r" % cfg.family)
    entries = closedform.bounds_table(max_rank=cfg.max_rank)
    header = ["type", "component", "lower", "upper", "provenance"]
    rows = [
        (
            "%s%d" % (e.letter, e.rank),
            e.s,
            str(e.lower),
            str(e.upper),
            e.provenance,
        )
        for e in entries
    ]
    if cfg.fmt == "json":
        return _emit_json(
            "table",
            {"family": "simple", "rows": [e.to_json() for e in entries]},
        )
    if cfg.fmt == "csv":
        return _emit_csv(header, rows)
    return "".join(
        "%s s=%s: [%s, %s] (%s)\n" % r for r in rows
    )


def _cmd_su2(cfg):
    degrees = (
        [cfg.degree] if cfg.degree is not None else list(range(1, cfg.max_degree + 1))
    )
    if any(d < 1 for d in degrees):
        raise UsageError("degrees must be positive")
    rows = []
    for d in degrees:
        m = su2_min(d)
        dec = m.approx()
        rows.append(
            {
                "d": d,
                "minpoly": list(m.minpoly),
                "exact": (
                    qq_str(m.as_rational())
                    if m.is_rational()
                    else "root of %s = 0" % _poly_eq(m.minpoly)
                ),
                "min": dec,
                "ratio": dec / (d + 1),
            }
        )
    if cfg.fmt == "json":
        c, theta0 = limit_constant()
        return _emit_json(
            "su2", {"rows": rows, "limit_constant": c, "theta0": theta0}
        )
    if cfg.fmt == "csv":
        return _emit_csv(
            ["d", "min", "ratio", "exact"],
            [
                (
                    r["d"],
                    _fmt_float(r["min"], cfg.precision),
                    _fmt_float(r["ratio"], cfg.precision),
                    r["exact"],
                )
                for r in rows
            ],
        )
    lines = [
        "d=%d: min = %s, min/(d+1) = %s"
        % (
            r["d"],
            r["exact"],
            _fmt_float(r["ratio"], cfg.precision),
        )
        for r in rows
    ]
    c, theta0 = limit_constant()
    lines.append("limit: min/(d+1) -> -c = %s (theta0 = %s)" % (
        _fmt_float(-c, cfg.precision),
        _fmt_float(theta0, cfg.precision),
    ))
    return "".join(line + "\n" for line in lines)


def _cmd_xfun(cfg):
    cap = 10_000_000 if cfg.long_running else DEFAULT_WEYL_CAP
    ev = eval_X(cfg.datum, cfg.s_vec, cfg.t_vec, cap=cap)
    if cfg.fmt == "json":
        return _emit_json("xfun", {"evaluation": ev.to_json()})
    line = "X(s, t) = %s  [%s]" % (
        _fmt_complex(ev.value, cfg.precision),
        ev.method,
    )
    if ev.error:
        line += "  error<=%.1e" % ev.error
    if cfg.fmt == "csv":
        return _emit_csv(
            ["re", "im", "method", "error"],
            [(ev.value.real, ev.value.imag, ev.method, ev.error)],
        )
    return line + "\n"


def _selfcheck_battery(cfg):
    checks = []

    def check(name, fn):
        checks.append((name, fn))

    g2 = build_root_datum("G", 2)

    def g2_corner_set():
        got = {
            tuple(v.as_rational() for v in c.values)
            for c in corners(g2)
        }
        return got == {(7, 14), (-2, 5), (-1, -2)}

    check("G2 corner values", g2_corner_set)

    def g2_extremum():
        rep = extremum(g2, adjoint_objective(g2), cache_dir=cfg.cache_dir)
        return (
            rep.minimum.is_rational()
            and rep.minimum.as_rational() == -2
            and rep.maximum.as_rational() == 14
        )

    check("G2 adjoint extremum", g2_extremum)

    def g2_branch():
        res = branch.branch_minimize(branch.adjoint_problem(g2))
        return res.minimum.is_rational() and res.minimum.as_rational() == -2

    check("G2 branch oracle", g2_branch)

    check("G2 Weyl trace bound", lambda: weyl_min_trace(g2) == -2)

    check(
        "SU(2) degree-6 minimum",
        lambda: su2_min(6).minpoly == (-49, 14, 27),
    )

    def constant_ok():
        c, theta0 = limit_constant()
        return abs(c - 0.2172) < 1e-4 and abs(theta0 - 4.493) < 1e-3

    check("limit constant", constant_ok)

    check(
        "closed-form rows",
        lambda: closedform.trace_bounds("E", 6, 2).bounds() == (-6, 26)
        and closedform.short_root_min("C", 4) == (-5, 27),
    )

    def x_identities():
        a1 = build_root_datum("A", 1)
        v = eval_X(a1, (1,), (2j,)).value
        if abs(v - math.sin(2.0) / 2.0) > 1e-12:
            return False
        a2 = build_root_datum("A", 2)
        s, t = (0.7 + 0.2j, 1.3), (0.4, -1.1 + 0.5j)
        return (
            abs(eval_X(a2, s, t).value - eval_X(a2, t, s).value) < 1e-9
        )

    check("X identities", x_identities)

    def zeros_bracket():
        ch = chebyshev_character(8)
        eps = qq(1, 10**10)
        for z in ch.zeros():
            if ch.evaluate(qq(z) - eps) * ch.evaluate(qq(z) + eps) >= 0:
                return False
        return True

    check("Chebyshev zero brackets", zeros_bracket)

    def deterministic():
        once = _cmd_corners(
            RunConfig(command="corners", datum=g2, fmt="csv").validate()
        )
        again = _cmd_corners(
            RunConfig(command="corners", datum=g2, fmt="csv").validate()
        )
        return once == again

    check("deterministic emission", deterministic)

    return checks


def _cmd_selfcheck(cfg):
    lines = []
    failures = 0
    results = []
    for name, fn in _selfcheck_battery(cfg):
        try:
            ok = bool(fn())
        except Exception as e:  # a broken check is a failed check
            ok = False
            name = "%s (%s)" % (name, e)
        failures += 0 if ok else 1
        results.append({"check": name, "ok": ok})
        lines.append("%s - %s" % ("ok" if ok else "FAIL", name))
    lines.append(
        "selfcheck %s (%d checks, %d failures)"
        % ("passed" if not failures else "FAILED", len(results), failures)
    )
    if cfg.fmt == "json":
        text = _emit_json(
            "selfcheck", {"results": results, "failures": failures}
        )
    elif cfg.fmt == "csv":
        text = _emit_csv(
            ["check", "ok"], [(r["check"], r["ok"]) for r in results]
        )
    else:
        text = "".join(line + "\n" for line in lines)
    return text, failures


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", default=None, metavar="DIR")
    common.add_argument("--precision", type=int, default=6)
    common.add_argument("--rank-cap", type=int, default=6)
    common.add_argument("--orbit-cap", type=int, default=10_000_000)
    common.add_argument("--pair-cap", type=int, default=200_000)
    common.add_argument("--long-running", action="store_true")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--type", required=True, metavar="LETTER+RANK")

    p = _Parser(prog="charbounds", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("datum", parents=[common, typed])
    c = sub.add_parser("corners", parents=[common, typed])
    c.add_argument("--columns", default=None, metavar="J1,J2,...")
    sub.add_parser("matrix", parents=[common, typed])
    for name in ("minimize", "maximize"):
        m = sub.add_parser(name, parents=[common, typed])
        m.add_argument("--objective", default="adjoint")
    b = sub.add_parser("branch-minimize", parents=[common, typed])
    b.add_argument("--pins", default="", metavar="I=V,...")
    t = sub.add_parser("table", parents=[common])
    t.add_argument("--family", choices=("simple", "short-root"), default="simple")
    t.add_argument("--max-rank", type=int, default=8)
    s = sub.add_parser("su2", parents=[common])
    s.add_argument("--max-degree", type=int, default=12)
    s.add_argument("--degree", type=int, default=None)
    x = sub.add_parser("xfun", parents=[common, typed])
    x.add_argument("--s", required=True, metavar="A1,A2,...")
    x.add_argument("--t", required=True, metavar="B1,B2,...")
    sub.add_parser("selfcheck", parents=[common])
    return p


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        fmt=ns.format,
        cache_dir=ns.cache,
        precision=ns.precision,
        rank_cap=ns.rank_cap,
        orbit_cap=ns.orbit_cap,
        pair_cap=ns.pair_cap,
        long_running=ns.long_running,
    )
    if hasattr(ns, "type"):
        cfg.datum = _parse_type(ns.type)
    if hasattr(ns, "objective"):
        cfg.objective = ns.objective
    if getattr(ns, "columns", None):
        try:
            cfg.columns = tuple(int(x) for x in ns.columns.split(","))
        except ValueError:
            raise UsageError("--columns wants integers like 1,2,8")
    if hasattr(ns, "pins"):
        cfg.pins = tuple(
            sorted(_parse_pins(ns.pins, cfg.datum.rank).items())
        )
    if hasattr(ns, "family"):
        cfg.family = ns.family
        cfg.max_rank = ns.max_rank
    if hasattr(ns, "max_degree"):
        cfg.max_degree = ns.max_degree
        cfg.degree = ns.degree
    if hasattr(ns, "s"):
        cfg.s_vec = _parse_vector(ns.s, cfg.datum.rank, "--s")
        cfg.t_vec = _parse_vector(ns.t, cfg.datum.rank, "--t")
    return cfg.validate()


def run(config):
    """Dispatch a validated config; returns (exit_status, report text)."""
    handlers = {
        "datum": _cmd_datum,
        "corners": _cmd_corners,
        "matrix": _cmd_matrix,
        "minimize": lambda c: _cmd_extremize(c, maximize=False),
        "maximize": lambda c: _cmd_extremize(c, maximize=True),
        "branch-minimize": _cmd_branch_minimize,
        "table": _cmd_table,
        "su2": _cmd_su2,
        "xfun": _cmd_xfun,
    }
    try:
        if config.command == "selfcheck":
            text, failures = _cmd_selfcheck(config)
            return (EXIT_OK if not failures else 1), text
        handler = handlers.get(config.command)
        if handler is None:
            raise UsageError("unknown command %r" % config.command)
        return EXIT_OK, handler(config)
    except UsageError as e:
        return EXIT_USAGE, "usage error: %s\n" % e
    except (UndecidedSignError, ConditioningError) as e:
        return EXIT_UNDECIDED, "undecided: %s\n" % e
    except (
        EnumerationCapError,
        OrbitCapError,
        NotZeroDimensionalError,
        SolveError,
        OverflowError,
    ) as e:
        return EXIT_INFEASIBLE, "infeasible: %s\n" % e


def main(argv=None):
    try:
        config = parse_config(argv)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    status, text = run(config)
    stream = sys.stdout if status == EXIT_OK else sys.stderr
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
