"""Command line interface: zeros, eval, gram, expand, evolve, verify.

All delimited output is deterministic (17-significant-digit floats, no
timestamps), so identical invocations produce byte-identical files.
Numeric failures exit 2 with the error on stderr; verify exits 1 when
any check family fails.
"""

import argparse
import os
import sys

import numpy as np

from . import fieldio
from .basis import BasisIndex, DiskPoint, eval_Fnm, standard_function
from .bessel import BesselZeroTable, default_zero_table
from .config import load_config
from .diskquad import make_rule
from .errors import ConfigurationError, MetamonoError
from .evolution import WaveState, evolve_eval
from .expansion import project
from .fieldio import parse_field_csv
from .gram import gram_matrix
from .verify import CHECK_NAMES, run_verify

_COMPONENT_INDEX = {"s": 0, "i": 1, "j": 2, "k": 3}


def _parse_grid(text):
    try:
        w, _, h = text.lower().partition("x")
        w, h = int(w), int(h)
    except ValueError:
        raise ConfigurationError("grid must look like 256x256, got %r" % text)
    if w < 2 or h < 2:
        raise ConfigurationError("grid must be at least 2x2")
    return w, h


def _parse_times(text):
    try:
        times = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigurationError("times must be comma-separated reals, got %r" % text)
    if not times:
        raise ConfigurationError("need at least one time")
    return times


def _table_for(cfg):
    if (cfg.bessel_n_max, cfg.bessel_m_max) == (32, 64):
        return default_zero_table()
    return BesselZeroTable(n_max=cfg.bessel_n_max, m_max=cfg.bessel_m_max)


def _grid_points(w, h):
    # top row first so CSV and raster share the image convention
    x = np.linspace(-1.0, 1.0, w)
    y = np.linspace(1.0, -1.0, h)
    X, Y = np.meshgrid(x, y)
    return x, y, DiskPoint.from_cartesian(X, Y)


def _cmd_zeros(args, cfg):
    n_max = cfg.bessel_n_max if args.n_max is None else args.n_max
    m_max = cfg.bessel_m_max if args.m_max is None else args.m_max
    table = BesselZeroTable(n_max=n_max, m_max=m_max)
    fieldio.write_zeros_csv(args.out, table, n_max, m_max)
    return 0


def _cmd_eval(args, cfg):
    table = _table_for(cfg)
    idx = BasisIndex(args.n, args.m)
    if args.at_quadrature_nodes:
        if args.pgm or args.png:
            raise ConfigurationError(
                "raster output needs a cartesian grid, not quadrature nodes"
            )
        rule = make_rule(cfg.quad_nr, cfg.quad_ntheta)
        p = rule.points
        values = eval_Fnm(idx, p, table)
        fieldio.write_field_csv(args.out, p.x, p.y, values)
        return 0
    w, h = _parse_grid(args.grid)
    x, y, p = _grid_points(w, h)
    values = eval_Fnm(idx, p, table)
    fieldio.write_field_csv(args.out, p.x, p.y, values)
    if args.pgm:
        if args.component is None:
            raise ConfigurationError("--pgm needs --component")
        comp = values[..., _COMPONENT_INDEX[args.component]]
        fieldio.write_pgm(args.pgm, comp, p.rho <= 1.0)
    if args.png:
        from . import figures

        figures.save_component_panels(
            args.png, x, y[::-1], values[::-1], title="F(%d,%d)" % (idx.n, idx.m)
        )
    return 0


def _cmd_gram(args, cfg):
    table = _table_for(cfg)
    rule = make_rule(cfg.quad_nr, cfg.quad_ntheta)
    indices = [
        BasisIndex(n, m)
        for n in range(args.n_max + 1)
        for m in range(1, args.m_max + 1)
    ]
    report = gram_matrix(indices, rule, table)
    fieldio.write_gram_csv(args.out, report)
    if args.png:
        from . import figures

        figures.save_gram_heatmap(args.png, report)
    return 0


def _cmd_expand(args, cfg):
    table = _table_for(cfg)
    rule = make_rule(cfg.quad_nr, cfg.quad_ntheta)
    if args.builtin is not None:
        name = args.builtin.strip().upper()
        if not name.startswith("F") or not name[1:].isdigit():
            raise ConfigurationError(
                "builtin must be F<n> (F0, F1, ...), got %r" % args.builtin
            )
        f = standard_function(int(name[1:]), args.lam)
    else:
        f = parse_field_csv(args.input, rule, args.lam)
    state = project(f, args.lam, args.n_max, args.m_max, rule, table)
    fieldio.write_coeffs_csv(args.out, state.coeffs)
    print("residual_l2 = %s" % fieldio.fmt(state.residual_l2))
    return 0


def _cmd_evolve(args, cfg):
    table = _table_for(cfg)
    coeffs = fieldio.read_coeffs_csv(args.coeffs)
    state = WaveState(coeffs, k=args.k)
    times = _parse_times(args.times)
    w, h = _parse_grid(args.grid)
    x, y, p = _grid_points(w, h)
    os.makedirs(args.out_dir, exist_ok=True)
    inside = p.rho <= 1.0
    index_rows = []
    for frame, t in enumerate(times):
        values = evolve_eval(state, p, t, table)
        name = "frame_%03d.csv" % frame
        fieldio.write_field_csv(os.path.join(args.out_dir, name), p.x, p.y, values)
        index_rows.append((str(frame), fieldio.fmt(t), name))
        if args.pgm:
            for comp, c in _COMPONENT_INDEX.items():
                fieldio.write_pgm(
                    os.path.join(args.out_dir, "frame_%03d_%s.pgm" % (frame, comp)),
                    values[..., c],
                    inside,
                )
        if args.png:
            from . import figures

            figures.save_component_panels(
                os.path.join(args.out_dir, "frame_%03d.png" % frame),
                x,
                y[::-1],
                values[::-1],
                title="t = %g" % t,
            )
    with open(os.path.join(args.out_dir, "index.csv"), "w", newline="") as fh:
        fh.write("frame,t,path\n")
        for row in index_rows:
            fh.write(",".join(row) + "\n")
    return 0


def _cmd_verify(args, cfg):
    only = None
    if args.only is not None:
        only = [v.strip() for v in args.only.split(",") if v.strip()]
    report = run_verify(cfg, only=only, figures_dir=args.figures_dir)
    for r in report.results:
        line = "%s %s" % ("PASS" if r.passed else "FAIL", r.name)
        if not r.passed and r.notes:
            line += "  (%s)" % "; ".join(r.notes)
        print(line)
    text = report.to_json()
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.all_passed else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="metamono",
        description="Quaternionic metamonogenic basis functions on the unit disk.",
    )
    parser.add_argument("--config", metavar="PATH", help="key=value config file")
    parser.add_argument("--quad-nr", type=int, help="radial quadrature nodes")
    parser.add_argument("--quad-ntheta", type=int, help="angular quadrature nodes")
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("zeros", help="tabulate Bessel zeros j_{n,m}")
    q.add_argument("--n-max", type=int)
    q.add_argument("--m-max", type=int)
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_zeros)

    q = sub.add_parser("eval", help="sample a basic function on a grid")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--grid", default="256x256")
    q.add_argument("--out", required=True)
    q.add_argument("--component", choices=sorted(_COMPONENT_INDEX))
    q.add_argument("--pgm", metavar="PATH", help="raster of --component")
    q.add_argument("--png", metavar="PATH", help="four-component figure")
    q.add_argument(
        "--at-quadrature-nodes",
        action="store_true",
        help="sample on the configured quadrature rule instead of a grid",
    )
    q.set_defaults(func=_cmd_eval)

    q = sub.add_parser("gram", help="quadrature Gram matrix against closed forms")
    q.add_argument("--n-max", type=int, required=True)
    q.add_argument("--m-max", type=int, required=True)
    q.add_argument("--out", required=True)
    q.add_argument("--png", metavar="PATH", help="heatmap figure")
    q.set_defaults(func=_cmd_gram)

    q = sub.add_parser("expand", help="project a field onto the basis")
    q.add_argument("--lambda", dest="lam", type=float, required=True)
    q.add_argument("--n-max", type=int, required=True)
    q.add_argument("--m-max", type=int, required=True)
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--input", metavar="CSV", help="node-aligned field samples")
    grp.add_argument("--builtin", metavar="F<n>", help="standard function F<n>")
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_expand)

    q = sub.add_parser("evolve", help="evolve a coefficient state in time")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--k", type=float, default=1.0)
    q.add_argument("--times", default="0,0.1,0.2,0.3,0.4")
    q.add_argument("--grid", default="256x256")
    q.add_argument("--out-dir", required=True)
    q.add_argument("--pgm", action="store_true", help="per-component rasters")
    q.add_argument("--png", action="store_true", help="per-frame figures")
    q.set_defaults(func=_cmd_evolve)

    q = sub.add_parser("verify", help="run the numerical acceptance checks")
    q.add_argument("--only", help="comma-separated subset of: %s" % ", ".join(CHECK_NAMES))
    q.add_argument("--out", metavar="JSON", help="write the report here")
    q.add_argument("--figures-dir", metavar="DIR", help="render figures here")
    q.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            overrides={"quad.nr": args.quad_nr, "quad.ntheta": args.quad_ntheta},
        )
        return args.func(args, cfg)
    except MetamonoError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
