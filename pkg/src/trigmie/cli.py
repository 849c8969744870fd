"""
trigmie command line.

    trigmie coeffs --x 10 --m 1.5 --n 3
    trigmie integrate --dist uniform --x 10:20 --m 1.2:1.8 --grid 64x64 --evaluator both
    trigmie verify --law circular --samples 10000 --seed 7
    trigmie --paper-figure 6 --out fig6.csv

Every command writes one CSV (``--out``, default stdout) with a header
row and prints a one-line summary to stdout (stderr when the CSV goes to
stdout).  Options may also come from ``--config FILE`` holding flat
``key = value`` lines; flags given on the command line win.

Exit status: 0 ok, 1 bad configuration / parameters / output path,
2 numerical degeneracy, 3 a ``verify`` check failed.
"""
import argparse
import csv
import io
import sys
import time

import numpy as np

from . import __version__
from .analysis import (
    SweepConfig,
    absolute_error_integral,
    cumulative_error,
    per_mode_relative_error,
    pointwise_error_sweep,
    sign_changes,
)
from .bench import HOMOGENEOUS_DOMAIN, LAYERED_DOMAIN, bench_sweep
from .circular_law import circle_residual
from .errors import DomainError, NumericalDegeneracyError
from .mie_exact import (
    HomogeneousSphere,
    LayeredSphere,
    coefficient_sweep,
    cross_sections,
    default_n_max,
)
from .trig_approx import approx_cross_section, approx_homogeneous, approx_layered
from .uncertainty import (
    CONVERGENCE_ORDERS,
    LayeredModel,
    NormalComponent,
    ParametricDistribution,
    QuadratureGrid,
    expected_cross_section,
    reference_distributions,
)

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_VERIFY = 0, 1, 2, 3
COMMANDS = ("coeffs", "cross-section", "sweep", "integrate", "errors", "bench", "verify")
FIGURES = ("1", "2b", "4", "5", "6", "7", "8", "9", "10")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for degeneracy here
    def error(self, message):
        raise ConfigError(message)


def _range(text):
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _int_range(text):
    lo, hi = _range(text)
    return range(int(lo), int(hi) + 1)


def _grid(text):
    try:
        nx, nm = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxM, got {text!r}")
    return nx, nm


def _components(text):
    # "mu_x,sigma_x,mu_m,sigma_m;mu_x,sigma_x,mu_m,sigma_m"
    try:
        return [NormalComponent(*(float(v) for v in part.split(",")))
                for part in text.split(";")]
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"bad component list {text!r}")


def read_config(path):
    """Flat ``key = value`` file; '#' starts a comment, keys use - or _."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    for i, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{i}: expected key = value")
        key, value = (t.strip() for t in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _sphere_args(p):
    p.add_argument("--model", choices=("homogeneous", "layered"), default="homogeneous")
    p.add_argument("--x", type=float, help="size parameter (core size when layered)")
    p.add_argument("--m", type=float, help="refractive index (homogeneous)")
    p.add_argument("--m1", type=float)
    p.add_argument("--y", type=float, help="outer size parameter")
    p.add_argument("--m2", type=float)


def build_parser():
    parser = _Parser(prog="trigmie", description="Mie coefficients and their trigonometric approximation")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key = value file; command-line flags override it")
    parser.add_argument("--out", help="CSV output path (default: stdout)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--paper-figure", choices=FIGURES, help="emit the data of a reference figure")
    # the same options after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="exact and approximate a_n, b_n")
    _sphere_args(p)
    p.add_argument("--n", type=int, default=None, help="highest mode (default: Wiscombe)")

    p = sub.add_parser("cross-section", parents=[common], help="exact and approximate cross-sections")
    _sphere_args(p)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--k", type=float, default=1.0)

    p = sub.add_parser("sweep", parents=[common], help="sin^2 of the mode angles along m x = c")
    p.add_argument("--c", type=float, default=20.0)
    p.add_argument("--x", type=_range, default=(1.0, 20.0))
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--points", type=int, default=400)

    p = sub.add_parser("integrate", parents=[common], help="expected scattering cross-section")
    p.add_argument("--dist", choices=("uniform", "normal", "bimodal"), default="uniform")
    p.add_argument("--model", choices=("homogeneous", "layered"), default="homogeneous")
    p.add_argument("--x", type=_range, default=(10.0, 20.0), help="uniform x range")
    p.add_argument("--m", type=_range, default=(1.2, 1.8), help="uniform m (or m1) range")
    p.add_argument("--mu-x", type=float, default=15.0)
    p.add_argument("--sigma-x", type=float, default=1.67)
    p.add_argument("--mu-m", type=float, default=1.5)
    p.add_argument("--sigma-m", type=float, default=0.1)
    p.add_argument("--components", type=_components, default=None,
                   help="bimodal: mu_x,sigma_x,mu_m,sigma_m;mu_x,sigma_x,mu_m,sigma_m")
    p.add_argument("--weights", type=_range, default=(0.5, 0.5), help="bimodal w1:w2")
    p.add_argument("--preset", choices=sorted(reference_distributions()), default=None)
    p.add_argument("--y-offset", type=float, default=20.0)
    p.add_argument("--m2", type=float, default=1.51)
    p.add_argument("--grid", type=_grid, default=(60, 60))
    p.add_argument("--converge", action="store_true", help="sweep grids 8x8..128x128")
    p.add_argument("--evaluator", choices=("exact", "approx", "both"), default="both")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--k", type=float, default=1.0)

    p = sub.add_parser("errors", parents=[common], help="error structure of the approximation")
    p.add_argument("--study", choices=("pointwise", "per-mode"), default="pointwise")
    p.add_argument("--family", choices=("homogeneous", "layered"), default="homogeneous")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--x", type=_range, default=(10.0, 100.0), help="sweep range (y when layered)")
    p.add_argument("--c", type=float, default=100.0)
    p.add_argument("--c1", type=float, default=50.0)
    p.add_argument("--c2", type=float, default=30.0)
    p.add_argument("--c3", type=float, default=100.0)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--modes", type=_int_range, default=range(1, 21))

    p = sub.add_parser("bench", parents=[common], help="per-point speedup over a grid")
    p.add_argument("--model", choices=("homogeneous", "layered"), default="homogeneous")
    p.add_argument("--grid", type=_grid, default=(60, 60))
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--reps", type=int, default=11)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--hist-out", default=None, help="histogram CSV (default: <out>.hist.csv)")

    p = sub.add_parser("verify", parents=[common], help="randomised property checks")
    p.add_argument("--law", choices=("circular", "balance"), default="circular")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--tol", type=float, default=None)
    return parser


def _bool(text):
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def parse(argv):
    """Parse ``argv``, filling unset options from ``--config``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        values = read_config(args.config)
        if args.command is None and "command" in values:
            argv = [*argv, values["command"]]
            args = parser.parse_args(argv)
        values.pop("command", None)
        sub = parser._subparsers._group_actions[0].choices.get(args.command) if args.command else None
        known = {}
        for target in (parser, sub):
            if target is None:
                continue
            for action in target._actions:
                if action.dest in values:
                    v = values.pop(action.dest)
                    if isinstance(action, argparse._StoreTrueAction):
                        v = _bool(v)
                    known[action.dest] = (target, v)
        if values:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(values))}")
        for dest, (target, v) in known.items():
            target.set_defaults(**{dest: v})
        args = parser.parse_args(argv)
    if args.command is None and args.paper_figure is None:
        raise ConfigError("a command or --paper-figure is required")
    return args


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return repr(complex(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


class Table:
    def __init__(self, columns):
        self.columns = list(columns)
        self.rows = []

    def add(self, *row):
        assert len(row) == len(self.columns)
        self.rows.append([_fmt(v) for v in row])

    def render(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()


def _write(table, path):
    text = table.render()
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise ConfigError("missing parameter(s): " + ", ".join("--" + n for n in missing))


def _sphere(args):
    if args.model == "homogeneous":
        _need(args, "x", "m")
        return HomogeneousSphere(args.x, args.m)
    _need(args, "x", "m1", "y", "m2")
    return LayeredSphere(args.x, args.m1, args.y, args.m2)


# --- commands: each returns (tables, summary, exit status) ---

def cmd_coeffs(args):
    s = _sphere(args)
    n_max = args.n or default_n_max(s.outer_size)
    a, b = coefficient_sweep(s, n_max)
    approx = approx_homogeneous if args.model == "homogeneous" else approx_layered
    t = Table(["n", "a_real", "a_imag", "b_real", "b_imag",
               "sin2_alpha", "sin2_beta", "sin2_alpha_approx", "sin2_beta_approx"])
    worst = 0.0
    for n in range(1, n_max + 1):
        an, bn = a[n - 1], b[n - 1]
        f = approx(s, n)
        t.add(n, an.real, an.imag, bn.real, bn.imag, abs(an) ** 2, abs(bn) ** 2,
              f.sin2_alpha, f.sin2_beta)
        worst = max(worst, abs(circle_residual(an)), abs(circle_residual(bn)))
    return [t], f"coeffs: {n_max} modes, max circle residual {worst:.3g}", EXIT_OK


def cmd_cross_section(args):
    s = _sphere(args)
    t = Table(["evaluator", "n_max", "c_sca", "c_ext", "sigma_b", "sigma_f", "seconds"])
    vals = {}
    for name, fn in (("exact", cross_sections), ("approx", approx_cross_section)):
        t0 = time.perf_counter()
        cs = fn(s, args.k, args.n_max)
        dt = time.perf_counter() - t0
        vals[name] = cs.c_sca
        t.add(name, cs.n_max, cs.c_sca, cs.c_ext, cs.sigma_b, cs.sigma_f, dt)
    err = _rel(vals["approx"], vals["exact"])
    return [t], (f"cross-section: C_sca exact {vals['exact']:.6g}, approx {vals['approx']:.6g}, "
                 f"relative difference {err:.3g}"), EXIT_OK


def _rel(value, ref):
    return abs(value - ref) / abs(ref) if ref else abs(value - ref)


def cmd_sweep(args):
    lo, hi = args.x
    x = np.linspace(lo, hi, args.points)
    s = HomogeneousSphere(x, args.c / x)
    a, b = coefficient_sweep(s, args.n)
    f = approx_homogeneous(s, args.n)
    t = Table(["x", "m", "sin2_alpha", "sin2_alpha_approx", "sin2_beta", "sin2_beta_approx"])
    sa, sb = np.abs(a[-1]) ** 2, np.abs(b[-1]) ** 2
    for row in zip(x, args.c / x, sa, f.sin2_alpha, sb, f.sin2_beta):
        t.add(*row)
    worst = max(np.max(np.abs(sa - f.sin2_alpha)), np.max(np.abs(sb - f.sin2_beta)))
    return [t], f"sweep: c={args.c:g}, n={args.n}, {args.points} points, max |error| {worst:.3g}", EXIT_OK


def _distribution(args):
    if args.preset:
        return reference_distributions()[args.preset]
    model = "homogeneous" if args.model == "homogeneous" else LayeredModel(args.y_offset, args.m2)
    if args.dist == "uniform":
        d = ParametricDistribution.uniform(args.x, args.m)
    elif args.dist == "normal":
        d = ParametricDistribution.normal(args.mu_x, args.sigma_x, args.mu_m, args.sigma_m)
    else:
        if not args.components or len(args.components) != 2:
            raise ConfigError("bimodal needs --components with two entries")
        d = ParametricDistribution.bimodal(*args.components, weights=args.weights)
    return d, model


def cmd_integrate(args):
    d, model = _distribution(args)
    evaluators = ("exact", "approx") if args.evaluator == "both" else (args.evaluator,)
    grids = [(n, n) for n in CONVERGENCE_ORDERS] if args.converge else [args.grid]
    t = Table(["evaluator", "n_x", "n_m", "n_points", "value", "seconds"])
    last = {}
    for nx, nm in grids:
        g = QuadratureGrid.for_distribution(d, nx, nm)
        for ev in evaluators:
            r = expected_cross_section(d, g, ev, model, args.k, args.n_max)
            t.add(ev, nx, nm, r.n_points, r.value, r.elapsed)
            last[ev] = r
    parts = [f"{ev} {r.value:.6g} ({r.elapsed:.3g} s)" for ev, r in last.items()]
    if len(last) == 2:
        e, a = last["exact"], last["approx"]
        parts.append(f"relative difference {_rel(a.value, e.value):.3g}")
        if a.elapsed > 0:
            parts.append(f"speedup {e.elapsed / a.elapsed:.3g}")
    return [t], "integrate: " + ", ".join(parts), EXIT_OK


def cmd_errors(args):
    if args.study == "per-mode":
        t = Table(["n", "relative_error"])
        res = per_mode_relative_error(args.modes)
        for n, e in res:
            t.add(n, e)
        worst = max(res, key=lambda r: r[1])
        return [t], f"errors: per-mode relative integral error, max {worst[1]:.3g} at n={worst[0]}", EXIT_OK
    cfg = SweepConfig(args.family, n=args.n, x_range=args.x, n_points=args.points,
                      c=args.c, c1=args.c1, c2=args.c2, c3=args.c3)
    curve = pointwise_error_sweep(cfg)
    t = Table(["y" if args.family == "layered" else "x", "error", "factorized_error", "cumulative"])
    for row in zip(curve.abscissa, curve.pointwise_error, curve.factorized_error,
                   curve.cumulative_integral):
        t.add(*row)
    ratio = abs(cumulative_error(curve)) / absolute_error_integral(curve)
    return [t], (f"errors: max |error| {np.max(np.abs(curve.pointwise_error)):.3g}, "
                 f"{sign_changes(curve.pointwise_error)} sign changes, "
                 f"|int e| / int |e| = {ratio:.3g}"), EXIT_OK


def cmd_bench(args):
    if args.model == "homogeneous":
        sweep = bench_sweep(HOMOGENEOUS_DOMAIN, args.grid, args.n_max, reps=args.reps, bins=args.bins)
        cols = ["x", "m"]
    else:
        sweep = bench_sweep(LAYERED_DOMAIN, args.grid, args.n_max, LayeredModel(20.0, 1.51),
                            reps=args.reps, bins=args.bins)
        cols = ["x", "m1", "y", "m2"]
    t = Table(cols + ["t_exact", "t_approx", "speedup"])
    for r in sweep.records:
        t.add(*r.point, r.t_exact, r.t_approx, r.speedup)
    # the median is repeated on every bin row so the file stands alone
    h = Table(["bin_lo", "bin_hi", "count", "median_speedup"])
    for lo, hi, c in zip(sweep.edges[:-1], sweep.edges[1:], sweep.counts):
        h.add(lo, hi, c, sweep.median_speedup)
    args._hist_path = args.hist_out or (args.out + ".hist.csv" if args.out not in (None, "-") else None)
    return [t, h], (f"bench: {args.model} {len(sweep.records)} points, median speedup "
                    f"{sweep.median_speedup:.3g} (timer resolution {sweep.resolution:.3g} s)"), EXIT_OK


def _random_homogeneous(rng, count):
    x = rng.uniform(1.0, 100.0, count)
    m = rng.uniform(1.05, 2.0, count)
    n = np.minimum(np.floor(x), 30).astype(int)
    n = 1 + (rng.random(count) * n).astype(int)
    return x, m, n


def cmd_verify(args):
    rng = np.random.default_rng(args.seed)
    x, m, n = _random_homogeneous(rng, args.samples)
    n_top = int(n.max())
    a, b = coefficient_sweep(HomogeneousSphere(x, m), n_top)
    a = np.array(a)
    b = np.array(b)
    t = Table(["x", "m", "n", "residual"])
    if args.law == "circular":
        tol = 1e-9 if args.tol is None else args.tol
        idx = n - 1, np.arange(len(x))
        res = np.maximum(np.abs(circle_residual(a[idx])), np.abs(circle_residual(b[idx])))
    else:
        tol = 1e-8 if args.tol is None else args.tol
        w = (2 * np.arange(1, n_top + 1) + 1)[:, None]
        mask = np.arange(1, n_top + 1)[:, None] <= n[None, :]
        sca = np.sum(mask * w * (np.abs(a) ** 2 + np.abs(b) ** 2), axis=0)
        ext = np.sum(mask * w * (a.real + b.real), axis=0)
        res = np.abs(ext - sca) / ext
    for row in zip(x, m, n, res):
        t.add(*row)
    worst = float(np.max(res))
    ok = worst <= tol
    return [t], (f"verify: {args.law} law over {args.samples} samples, max residual "
                 f"{worst:.3g} ({'ok' if ok else 'FAILED'}, tol {tol:g})"), EXIT_OK if ok else EXIT_VERIFY


# --- reference figures ---

def figure(key, seed=0):
    """(tables, summary) holding the data behind a reference figure."""
    ns = argparse.Namespace
    if key == "1":
        rng = np.random.default_rng(seed)
        x, m, n = _random_homogeneous(rng, 2000)
        a, _ = coefficient_sweep(HomogeneousSphere(x, m), int(n.max()))
        a = np.array(a)[n - 1, np.arange(len(x))]
        t = Table(["x", "m", "n", "a_real", "a_imag"])
        for row in zip(x, m, n, a.real, a.imag):
            t.add(*row)
        return [t], f"figure 1: {len(x)} coefficients, max circle residual {np.max(np.abs(circle_residual(a))):.3g}"
    if key == "2b":
        tables, summary, _ = cmd_sweep(ns(c=20.0, x=(1.0, 20.0), n=1, points=400))
        return tables, "figure 2b: " + summary
    if key in ("4", "5"):
        tables, parts = [], []
        for fam in ("homogeneous", "layered"):
            tbl, summary, _ = cmd_errors(ns(study="pointwise", family=fam, n=1, x=(10.0, 100.0),
                                           points=None, c=100.0, c1=50.0, c2=30.0, c3=100.0))
            tbl = tbl[0]
            tbl.columns[0] = "abscissa"
            tbl.columns.insert(0, "family")
            tbl.rows = [[fam] + r for r in tbl.rows]
            tables.append(tbl)
            parts.append(f"{fam} {summary[len('errors: '):]}")
        merged = Table(tables[0].columns)
        merged.rows = tables[0].rows + tables[1].rows
        return [merged], f"figure {key}: " + "; ".join(parts)
    if key == "6":
        tables, summary, _ = cmd_errors(ns(study="per-mode", modes=range(1, 21)))
        return tables, "figure 6: " + summary
    if key == "7":
        out, parts = [], []
        for model in ("homogeneous", "layered"):
            tables, summary, _ = cmd_bench(ns(model=model, grid=(60, 60), n_max=3, reps=11, bins=20,
                                              hist_out=None, out=None))
            tbl = tables[0]
            if model == "homogeneous":
                tbl.columns = ["x", "m1", "y", "m2"] + tbl.columns[2:]
                tbl.rows = [r[:2] + ["", ""] + r[2:] for r in tbl.rows]
            tbl.columns.insert(0, "model")
            tbl.rows = [[model] + r for r in tbl.rows]
            out.append(tbl)
            parts.append(summary[len("bench: "):])
        merged = Table(out[0].columns)
        merged.rows = out[0].rows + out[1].rows
        return [merged], "figure 7: " + "; ".join(parts)
    dist = {"8": "uniform", "9": "normal", "10": "bimodal"}[key]
    merged, parts = None, []
    for fam in ("homogeneous", "layered"):
        tables, summary, _ = cmd_integrate(ns(preset=f"{dist}-{fam}", evaluator="both", converge=True,
                                              k=1.0, n_max=3))
        tbl = tables[0]
        tbl.columns.insert(0, "model")
        tbl.rows = [[fam] + r for r in tbl.rows]
        if merged is None:
            merged = Table(tbl.columns)
        merged.rows += tbl.rows
        parts.append(f"{fam} {summary[len('integrate: '):]}")
    return [merged], f"figure {key}: " + "; ".join(parts)


HANDLERS = {
    "coeffs": cmd_coeffs,
    "cross-section": cmd_cross_section,
    "sweep": cmd_sweep,
    "integrate": cmd_integrate,
    "errors": cmd_errors,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def run(argv=None):
    """Run the CLI and return the exit status."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse(argv)
        if args.paper_figure:
            tables, summary = figure(args.paper_figure, args.seed)
            status = EXIT_OK
        else:
            tables, summary, status = HANDLERS[args.command](args)
        _write(tables[0], args.out)
        if len(tables) > 1 and getattr(args, "_hist_path", None):
            _write(tables[1], args._hist_path)
        stream = sys.stderr if args.out in (None, "-") else sys.stdout
        print(summary, file=stream)
        return status
    except NumericalDegeneracyError as exc:
        print(f"trigmie: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, DomainError, argparse.ArgumentTypeError) as exc:
        print(f"trigmie: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
