"""Command line front end.

Subcommands: `sweep` runs a states x radii grid and writes csv/json/plot
data, `table` recomputes one shipped reference table and reports per-row
deviations, `single` prints every measure and complexity of one cell.

Every flag can be preset through an environment variable with the
CHAINFO_ prefix (flag --grid-points -> CHAINFO_GRID_POINTS); explicit
flags win over the environment. Exit codes: 0 full success, 1 any cell
failure or table mismatch, 2 configuration error.
"""

import argparse
import json
import os
import sys

from .complexity import DEFAULT_B_VALUES, assemble_report
from .errors import ChainfoError, ConfigurationError
from .measures import assemble_measures
from .momentum import MomentumGridSpec
from .pipeline import (
    OUTPUT_FORMATS,
    TABLE_SPEC,
    SolutionCache,
    SweepConfig,
    cache_get_or_compute,
    render_output,
    reproduce_table,
    run_sweep,
)
from .radial import STATE_LABELS, SolverOptions

ENV_PREFIX = "CHAINFO_"

EXIT_OK = 0
EXIT_CELL_FAILURE = 1
EXIT_CONFIG = 2


def _env_name(flag):
    return ENV_PREFIX + flag.strip("-").upper().replace("-", "_")


def _default(flag, fallback, convert):
    """Flag default, taken from the matching CHAINFO_* variable when set."""
    raw = os.environ.get(_env_name(flag))
    if raw is None:
        return fallback
    try:
        return convert(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad value for {_env_name(flag)}: {raw!r}") from exc


def _str_list(raw):
    return [tok for tok in raw.replace(",", " ").split() if tok]


def _float_list(raw):
    return [float(tok) for tok in _str_list(raw)]


def _add_common(parser, with_output=True, default_format="csv"):
    parser.add_argument("--alpha", type=float,
                        default=_default("--alpha", 0.6, float),
                        help="Renyi order of the position-space entropy")
    parser.add_argument("--beta", type=float,
                        default=_default("--beta", 3.0, float),
                        help="Renyi order of the momentum-space entropy")
    parser.add_argument("--grid-points", type=int,
                        default=_default("--grid-points", 400, int),
                        help="collocation points of the radial eigensolver")
    parser.add_argument("--pmax", type=float,
                        default=_default("--pmax", 0.0, float),
                        help="momentum cutoff; 0 selects it automatically")
    parser.add_argument("--threads", type=int,
                        default=_default("--threads", 4, int),
                        help="worker threads for independent cells")
    parser.add_argument("--cache-dir",
                        default=_default("--cache-dir", "", str),
                        help="directory for persistent solution caching")
    if with_output:
        parser.add_argument("--format", choices=OUTPUT_FORMATS,
                            default=_default("--format", default_format, str),
                            help="output serialization")
        parser.add_argument("--out",
                            default=_default("--out", "-", str),
                            help="output path, or - for stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chainfo",
        description="Information measures and complexities of a hydrogen "
                    "atom confined in an impenetrable sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep", help="compute a states x confinement-radii grid")
    p_sweep.add_argument("--states",
                         default=_default("--states", "1s", str),
                         help="comma-separated state labels, e.g. 1s,2s,2p")
    p_sweep.add_argument("--rc",
                         default=_default("--rc", "", str),
                         help="comma-separated confinement radii in bohr")
    p_sweep.add_argument("--b",
                         default=_default("--b", "0.6666666666666666,1.0", str),
                         help="comma-separated complexity scaling parameters")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_table = sub.add_parser(
        "table", help="recompute one shipped reference table")
    p_table.add_argument("which", choices=sorted(TABLE_SPEC),
                         help="reference table to reproduce")
    _add_common(p_table, with_output=False)
    p_table.add_argument("--out",
                         default=_default("--out", "-", str),
                         help="report path, or - for stdout")
    p_table.set_defaults(func=_cmd_table)

    p_single = sub.add_parser(
        "single", help="all measures and complexities of one (state, r_c)")
    p_single.add_argument("--states",
                          default=_default("--states", "1s", str),
                          help="exactly one state label")
    p_single.add_argument("--rc",
                          default=_default("--rc", "", str),
                          help="exactly one confinement radius in bohr")
    p_single.add_argument("--b",
                          default=_default("--b", "0.6666666666666666,1.0", str),
                          help="comma-separated complexity scaling parameters")
    _add_common(p_single, default_format="json")
    p_single.set_defaults(func=_cmd_single)
    return parser


def _write_text(text, out_path):
    if out_path in ("", "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _options_from(args):
    solver = SolverOptions(grid_points=args.grid_points)
    momentum = MomentumGridSpec(p_max=args.pmax)
    return solver, momentum


def _cmd_sweep(args):
    solver, momentum = _options_from(args)
    cfg = SweepConfig(
        states=tuple(_str_list(args.states)),
        rc_values=tuple(_float_list(args.rc)),
        alpha=args.alpha,
        beta=args.beta,
        b_values=tuple(_float_list(args.b)),
        solver=solver,
        momentum=momentum,
        output_format=args.format,
        output_path="" if args.out == "-" else args.out,
        threads=args.threads,
    )
    cache = SolutionCache(args.cache_dir or None)
    records = run_sweep(cfg, cache)
    for rec in records:
        if not rec.ok:
            print(f"cell ({rec.state}, {rec.r_c:g}) failed: {rec.error}",
                  file=sys.stderr)
    if records:
        _write_text(render_output(records, cfg.output_format), args.out)
    return EXIT_CELL_FAILURE if any(not r.ok for r in records) else EXIT_OK


def _cmd_table(args):
    solver, momentum = _options_from(args)
    cache = SolutionCache(args.cache_dir or None)
    comparison = reproduce_table(args.which, cache,
                                 alpha=args.alpha, beta=args.beta,
                                 solver=solver, momentum=momentum,
                                 threads=args.threads)
    _write_text(comparison.report_text() + "\n", args.out)
    return EXIT_OK if comparison.passed else EXIT_CELL_FAILURE


def _round9(value):
    return float(format(value, ".9g"))


def _cmd_single(args):
    states = _str_list(args.states)
    radii = _float_list(args.rc)
    if len(states) != 1 or len(radii) != 1:
        raise ConfigurationError(
            "single needs exactly one state and one radius, got "
            f"states={states} rc={radii}")
    if states[0] not in STATE_LABELS:
        raise ConfigurationError(f"unsupported state: {states[0]}")
    b_values = tuple(_float_list(args.b)) or DEFAULT_B_VALUES

    solver, momentum = _options_from(args)
    cache = SolutionCache(args.cache_dir or None)
    rsol, psol = cache_get_or_compute(cache, states[0], radii[0],
                                      solver, momentum)
    ms = assemble_measures(rsol, psol, args.alpha, args.beta)
    rep = assemble_report(ms, b_values)

    if args.format == "csv":
        from .pipeline import CellResult
        rec = CellResult(states[0], radii[0], ms, rep)
        _write_text(render_output([rec], "csv"), args.out)
        return EXIT_OK

    payload = {
        "state": states[0],
        "r_c": radii[0],
        "energy": _round9(rsol.energy),
        "alpha": args.alpha,
        "beta": args.beta,
        "measures": {
            name: _round9(getattr(ms, name))
            for name in ("S_r", "S_p", "S_t", "R_r_alpha", "R_p_beta", "R_t",
                         "I_r", "I_p", "I_t", "E_r", "E_p", "E_t",
                         "r2", "p2", "rm2", "pm2")
        },
        "complexities": {
            f"C_{family}_{space}_b={b:.6g}": _round9(value)
            for (family, space, b), value in sorted(rep.entries.items())
        },
    }
    _write_text(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_OK


def main(argv=None):
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ChainfoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CELL_FAILURE


if __name__ == "__main__":
    sys.exit(main())
