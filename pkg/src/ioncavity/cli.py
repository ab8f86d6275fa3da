"""
Command-line interface.

    ioncavity ghz-check [flags]
    ioncavity sweep [--config FILE] [flags] --out PATH [--format csv|json]
    ioncavity plot INPUT.csv --field N_B --out FIG.svg [--line --theta-deg 90]

A run-config file holds ``key = value`` lines whose keys are the long flag
names without the leading dashes; flags given on the command line override
the file.  Exit status: 0 success, 2 usage error, 3 numeric gate failure,
4 I/O error.
"""

import argparse
import sys

import numpy as np

from .errors import IonCavityError
from .hamiltonians import Tier, assign_blocks, block_support, build_hamiltonian
from .measures import (SUBSYSTEMS, linear_entropy, mode_count, negativity,
                       reduce)
from .propagator import Propagator, ghz_fidelity
from .serialize import SchemaError, records_from_csv, write_result
from .states import Family, InitialSpec, make_initial
from .svg import heatmap_svg, line_svg
from .sweep import Grid, SweepConfig, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_GATE, EXIT_IO = 0, 2, 3, 4
GHZ_GATE = 1e-9

_DEFAULTS = SweepConfig()


def _add_model_flags(p):
    p.add_argument("--tier", choices=[t.value for t in Tier], default=Tier.BLOCK.value)
    p.add_argument("--mu-over-a", type=float, default=_DEFAULTS.mu_over_a)
    p.add_argument("--g-eta-c", type=float, default=_DEFAULTS.g_eta_c,
                   help="product g*eta_c = 2a (sets the unit of a)")
    p.add_argument("--eta-l", type=float, default=_DEFAULTS.eta_L)
    p.add_argument("--eta-c", type=float, default=_DEFAULTS.eta_c)
    p.add_argument("--cutoff-m", type=int, default=_DEFAULTS.cutoff_m)
    p.add_argument("--cutoff-n", type=int, default=_DEFAULTS.cutoff_n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ioncavity", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ghz = sub.add_parser("ghz-check", help="evolve family (i) to mu*t = p*pi and test the GHZ state")
    ghz.add_argument("--config")
    _add_model_flags(ghz)
    ghz.add_argument("--theta-deg", type=float, default=0.0)
    ghz.add_argument("--q", type=int, choices=[0, 1], default=0)
    ghz.add_argument("--p", type=int, default=1)
    ghz.add_argument("--gate", choices=["on", "off"], default="on")

    sw = sub.add_parser("sweep", help="run a (theta, T) grid and write CSV or JSON")
    sw.add_argument("--config")
    _add_model_flags(sw)
    sw.add_argument("--family", choices=[f.value for f in Family], default=Family.I.value)
    sw.add_argument("--beta-re", type=float, default=1.0)
    sw.add_argument("--beta-im", type=float, default=0.0)
    sw.add_argument("--theta-deg", type=float)
    sw.add_argument("--theta-grid", type=Grid.parse, default=_DEFAULTS.theta)
    sw.add_argument("--t-grid", type=Grid.parse, default=_DEFAULTS.T)
    sw.add_argument("--d-mode", default="auto")
    sw.add_argument("--truncation-tol", type=float, default=_DEFAULTS.truncation_tol)
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--out", required=True)
    sw.add_argument("--format", choices=["csv", "json"], default="csv")

    pl = sub.add_parser("plot", help="render a sweep CSV as an SVG heatmap or line plot")
    pl.add_argument("input")
    pl.add_argument("--field", default="N_B", help="field name; comma-separated in --line mode")
    pl.add_argument("--out", required=True)
    pl.add_argument("--line", action="store_true", help="plot traces against T at one theta")
    pl.add_argument("--theta-deg", type=float, default=90.0)
    return parser


def _config_tokens(path: str, subparser: argparse.ArgumentParser):
    known = {s for a in subparser._actions for s in a.option_strings}
    flags = {a.option_strings[-1]: a for a in subparser._actions if a.option_strings}
    tokens = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key
            if flag not in known or key in ("config", "help"):
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if isinstance(flags[flag], argparse._StoreTrueAction):
                if value.lower() in ("1", "true", "yes", "on"):
                    tokens.append(flag)
            else:
                tokens += [flag, value]
    return tokens


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        sub = parser._subparsers._group_actions[0].choices[args.command]
        try:
            tokens = _config_tokens(args.config, sub)
        except OSError as err:
            print(f"ioncavity: cannot read config: {err}", file=sys.stderr)
            raise SystemExit(EXIT_IO)
        except ValueError as err:
            parser.error(str(err))
        # command-line flags come last so they override the file
        args = parser.parse_args([args.command] + tokens + list(argv[1:]))
    return parser, args


def _sweep_config(args, parser) -> SweepConfig:
    theta = args.theta_grid
    if args.theta_deg is not None:
        if args.theta_grid != _DEFAULTS.theta:
            parser.error("--theta-deg and --theta-grid are mutually exclusive")
        theta = Grid.single(args.theta_deg)
    try:
        return SweepConfig(
            tier=args.tier, family=args.family,
            beta=complex(args.beta_re, args.beta_im),
            mu_over_a=args.mu_over_a, g_eta_c=args.g_eta_c,
            eta_L=args.eta_l, eta_c=args.eta_c,
            theta=theta, T=args.t_grid,
            cutoff_m=args.cutoff_m, cutoff_n=args.cutoff_n,
            d_mode=args.d_mode, truncation_tol=args.truncation_tol,
            workers=args.workers,
        )
    except ValueError as err:
        parser.error(str(err))


def cmd_ghz_check(args, parser) -> int:
    cfg = _sweep_config_for_ghz(args, parser)
    params, dims = cfg.params, cfg.dims
    T = params.pi_instant_deg(args.p)
    try:
        psi0 = make_initial(InitialSpec(Family.I, args.theta_deg), dims)
        blocks = [spec for spec, _ in assign_blocks(psi0)]
        h = build_hamiltonian(cfg.tier, dims, params, blocks)
    except IonCavityError as err:
        print(f"ioncavity: {err}", file=sys.stderr)
        return EXIT_GATE
    psi = Propagator(h, params.a, dims).evolve(psi0, T)
    fid = ghz_fidelity(psi, args.q)
    leakage = float(np.sum(np.abs(psi.amplitudes[~block_support(dims, blocks)]) ** 2))

    print(f"tier          {cfg.tier.value}")
    print(f"mu/a          {cfg.mu_over_a:g}   (Omega = {params.Omega:.12g} a)")
    print(f"theta         {args.theta_deg:g} deg, q = {args.q}")
    print(f"T             {T:.12g} deg   (mu t = {args.p} pi)")
    print(f"GHZ fidelity  {fid:.12f}")
    for s in SUBSYSTEMS:
        rho = reduce(psi, s)
        d = max(2, mode_count(rho.populations))
        print(f"subsystem {s}   N = {negativity(psi, s):.12f}   "
              f"S_l = {linear_entropy(rho, d):.12f}   (d = {d})")
    print(f"leakage       {leakage:.6e}")
    passed = fid >= 1 - GHZ_GATE
    if args.gate == "off":
        print("gate          off")
        return EXIT_OK
    print(f"gate          {'PASS' if passed else 'FAIL'} (fidelity >= 1 - {GHZ_GATE:g})")
    if not passed:
        print(f"ioncavity: GHZ fidelity {fid:.6g} below gate", file=sys.stderr)
        return EXIT_GATE
    return EXIT_OK


def _sweep_config_for_ghz(args, parser) -> SweepConfig:
    if not 0 <= args.theta_deg <= 180:
        parser.error("--theta-deg must lie in [0, 180]")
    try:
        return SweepConfig(tier=args.tier, mu_over_a=args.mu_over_a, g_eta_c=args.g_eta_c,
                           eta_L=args.eta_l, eta_c=args.eta_c,
                           cutoff_m=args.cutoff_m, cutoff_n=args.cutoff_n)
    except ValueError as err:
        parser.error(str(err))


def cmd_sweep(args, parser) -> int:
    cfg = _sweep_config(args, parser)
    try:
        result = run_sweep(cfg)
    except IonCavityError as err:
        print(f"ioncavity: {err}", file=sys.stderr)
        return EXIT_GATE
    try:
        write_result(result, args.out, args.format)
    except OSError as err:
        print(f"ioncavity: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(result)} records to {args.out}")
    return EXIT_OK


def cmd_plot(args, parser) -> int:
    try:
        with open(args.input) as fh:
            records = records_from_csv(fh.read())
    except OSError as err:
        print(f"ioncavity: cannot read {args.input}: {err}", file=sys.stderr)
        return EXIT_IO
    except SchemaError as err:
        parser.error(f"{args.input}: {err}")
    fields = [f.strip() for f in args.field.split(",") if f.strip()]
    try:
        if args.line:
            svg = line_svg(records, fields, args.theta_deg)
        else:
            if len(fields) != 1:
                parser.error("heatmap mode takes exactly one --field")
            svg = heatmap_svg(records, fields[0])
    except SchemaError as err:
        parser.error(str(err))
    try:
        with open(args.out, "w") as fh:
            fh.write(svg)
    except OSError as err:
        print(f"ioncavity: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {"ghz-check": cmd_ghz_check, "sweep": cmd_sweep, "plot": cmd_plot}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser, args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
