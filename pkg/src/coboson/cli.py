"""Command-line front end: sweeps, figure presets, limit checks, CSV/JSON output.

Subcommands
-----------
chi        normalization-ratio curves (closed form and oracle) over x
two-level  canonical two-level condensate fraction over x and T
trap       trapped-gas condensate fraction over x and T/T0
analytic   thermodynamic-limit fraction for delta = 1 - x over T/T0
hydrogen   atomic-hydrogen temperatures and proton purity in SI units
figure     reference-figure presets (CSV plus a rendered PNG)
check      verification suites; nonzero exit when any property fails

Exit codes: 0 success, 1 property failure, 2 usage error, 3 numerical
non-convergence.  Command-line flags override an optional JSON config
file; there are no environment variables.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, analytic, trap, two_level, units
from .checks import run_check
from .core import (Kind, SchmidtSpec, ValidityWarning, normalization_ratio,
                   normalization_ratio_oracle, truncated_weights)
from .curves import FLAG_CLAMPED, FLAG_VALIDITY, CurveSet
from .figures import PRESETS, build_figure, render_png
from .trap import BracketingError, ConvergenceError, CutoffWarning

_DEFAULTS = {"kind": "bifermion", "n": 100, "estimator": "paper-approx",
             "format": "csv", "jobs": 1}


def _parse_values(tokens):
    """Flag values: repeatable scalars or inclusive ranges 'a:b:steps'."""
    out = []
    for tok in tokens:
        if ":" in tok:
            parts = tok.split(":")
            if len(parts) != 3:
                raise ValueError(f"range must be a:b:steps, got {tok!r}")
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise ValueError(f"range needs at least 1 step, got {tok!r}")
            out.extend(float(v) for v in np.linspace(lo, hi, steps))
        else:
            out.append(float(tok))
    return out


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="coboson",
        description="Condensate statistics for composite bosons made of entangled pairs.")
    parser.add_argument("--version", action="version", version=f"coboson {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_estimator=False):
        p.add_argument("--kind", choices=["bifermion", "biboson"])
        p.add_argument("--n", type=int, help="particle number (ratio order for chi)")
        p.add_argument("--x", action="append", metavar="X|a:b:steps",
                       help="entanglement parameter values (repeatable)")
        p.add_argument("--t", action="append", metavar="T|a:b:steps",
                       help="temperature values (repeatable)")
        if with_estimator:
            p.add_argument("--estimator", choices=["paper-approx", "full-solve"])
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--jobs", type=int, help="worker threads for sweep points")
        p.add_argument("--config", help="JSON config file; flags override it")

    add_common(sub.add_parser("chi", help="normalization-ratio curves over x"))
    add_common(sub.add_parser("two-level", help="two-level condensate fraction"))
    add_common(sub.add_parser("trap", help="trapped condensate fraction"),
               with_estimator=True)
    add_common(sub.add_parser("analytic", help="thermodynamic-limit fraction"))
    add_common(sub.add_parser("hydrogen", help="hydrogen example in SI units"))

    fig = sub.add_parser("figure", help="reference-figure presets")
    fig.add_argument("preset", choices=sorted(PRESETS))
    fig.add_argument("--no-plot", action="store_true",
                     help="skip the rendered PNG, write delimited data only")
    add_common(fig)

    chk = sub.add_parser("check", help="run the verification suites")
    chk.add_argument("--perturb-zeta3", type=float, default=0.0,
                     help="offset added to zeta(3); sensitivity canary")
    add_common(chk)
    return parser


def _merge_config(args):
    config = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)

    def pick(name, fallback=None):
        cli = getattr(args, name, None)
        if cli is not None:
            return cli
        if name in config:
            return config[name]
        return _DEFAULTS.get(name, fallback)

    merged = argparse.Namespace(**vars(args))
    for name in ("kind", "n", "estimator", "format", "jobs", "out"):
        setattr(merged, name, pick(name))
    for name in ("x", "t"):
        raw = getattr(args, name, None)
        if raw is None:
            raw = config.get(name)
        if raw is not None:
            raw = [str(v) for v in raw] if isinstance(raw, list) else [str(raw)]
            setattr(merged, name, _parse_values(raw))
        else:
            setattr(merged, name, None)
    return merged


def _require(args, parser, need_x=False, need_t=False):
    if need_x and not args.x:
        parser.error("--x is required for this command")
    if need_t and not args.t:
        parser.error("--t is required for this command")
    if args.x and not all(0.0 <= v <= 1.0 for v in args.x):
        parser.error("all --x values must lie in [0, 1]")
    if args.t and not all(v > 0.0 for v in args.t):
        parser.error("all --t values must be > 0")


def _pmap(fn, values, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, values))
    return [fn(v) for v in values]


def _kind(args):
    return Kind(args.kind)


def _emit(curveset, args, default_stem=None):
    meta = curveset.metadata
    meta.setdefault("package_version", __version__)
    for name in ("kind", "n", "estimator", "jobs"):
        value = getattr(args, name, None)
        if value is not None:
            meta.setdefault(f"request_{name}", value)
    fmt = args.format
    out = args.out
    if out is None and default_stem is not None:
        out = f"{default_stem}.{fmt}"
    if out is None:
        sys.stdout.write(curveset.to_csv() if fmt == "csv" else curveset.to_json())
        return None
    if fmt == "json":
        meta.setdefault("generated_at",
                        datetime.datetime.now(datetime.timezone.utc).isoformat())
    curveset.write(out, fmt)
    return out


def _cmd_chi(args):
    kind = _kind(args)
    order = args.n if args.n is not None else 1
    cs = CurveSet(metadata={"command": "chi", "ratio_order": order})
    for x in args.x:
        spec = SchmidtSpec(x, kind)
        closed = normalization_ratio(spec, order)
        cs.add(series="closed-form", x=x, kind=kind.value, n=order,
               estimator="closed-form", abscissa=x, value=closed, raw_value=closed)
        if x < 1.0:
            oracle = normalization_ratio_oracle(kind, truncated_weights(spec), order)
            cs.add(series="oracle", x=x, kind=kind.value, n=order,
                   estimator="oracle", abscissa=x, value=oracle, raw_value=oracle)
    cs.sort()
    return cs


def _cmd_two_level(args):
    kind = _kind(args)
    n = args.n
    cs = CurveSet(metadata={"command": "two-level", "N": n,
                            "abscissa_label": "T" if len(args.t) > 1 else "x"})

    def fraction(x, t):
        ens = two_level.TwoLevelEnsemble(n, SchmidtSpec(x, kind), beta=1.0 / t)
        return two_level.condensate_fraction(ens)

    if len(args.t) > 1:
        def one_curve(x):
            return [(x, t, fraction(x, t)) for t in args.t]
        for rows in _pmap(one_curve, args.x, args.jobs):
            for x, t, val in rows:
                cs.add(series=f"x={x:g}", x=x, kind=kind.value, n=n,
                       estimator="exact", abscissa=t, value=val, raw_value=val)
    else:
        t = args.t[0]
        vals = _pmap(lambda x: fraction(x, t), args.x, args.jobs)
        for x, val in zip(args.x, vals):
            cs.add(series=f"T={t:g}", x=x, kind=kind.value, n=n,
                   estimator="exact", abscissa=x, value=val, raw_value=val)
    cs.sort()
    return cs


def _cmd_trap(args):
    kind = _kind(args)
    n = args.n
    estimator = args.estimator
    cs = CurveSet(metadata={"command": "trap", "N": n, "estimator": estimator})

    if estimator == "paper-approx":
        def one_curve(x):
            spec = SchmidtSpec(x, kind)
            ground = trap.accumulation_occupation(n, spec)
            slope = trap.depletion_sum(n, spec)
            return [(x, t, ground / n - t ** 3 * slope) for t in args.t]
        raw_rows = [r for rows in _pmap(one_curve, args.x, args.jobs) for r in rows]
    else:
        points = [(x, t) for x in args.x for t in args.t]
        def one_point(pt):
            x, t = pt
            return (x, t, trap.condensate_fraction_full(n, SchmidtSpec(x, kind), t))
        raw_rows = _pmap(one_point, points, args.jobs)

    sweep_over_t = len(args.t) > 1 or len(args.x) == 1
    for x, t, raw in raw_rows:
        value = max(0.0, raw) if estimator == "paper-approx" else raw
        flags = (FLAG_CLAMPED,) if value != raw else ()
        series = f"x={x:g}" if sweep_over_t else f"t={t:g}"
        abscissa = t if sweep_over_t else x
        cs.add(series=series, x=x, kind=kind.value, n=n, estimator=estimator,
               abscissa=abscissa, value=value, raw_value=raw, flags=flags)
    cs.sort()
    return cs


def _cmd_analytic(args):
    cs = CurveSet(metadata={"command": "analytic",
                            "note": "delta = 1 - x feeds the thermodynamic-limit fraction"})
    for x in args.x:
        delta = 1.0 - x
        expansion = analytic.DeltaExpansion(delta)
        for t in args.t:
            raw = analytic.fraction_thermo_limit(delta, t, clamp=False)
            value = max(0.0, raw)
            flags = []
            if value != raw:
                flags.append(FLAG_CLAMPED)
            if not expansion.valid:
                flags.append(FLAG_VALIDITY)
            cs.add(series=f"delta={delta:g}", x=x, kind=args.kind, n=args.n,
                   estimator="closed-form", abscissa=t, value=value,
                   raw_value=raw, flags=tuple(flags))
    cs.sort()
    return cs


def _cmd_hydrogen(args):
    sample = units.HYDROGEN_BEC
    tc = units.critical_temperature(sample)
    t0_theory = units.pseudo_critical_temperature(tc)
    t0_exp = units.pseudo_critical_temperature(50e-6)
    purity = units.proton_purity(sample)
    cs = CurveSet(metadata={
        "command": "hydrogen",
        "density_m^-3": sample.density,
        "particle_mass_kg": sample.particle_mass,
        "trap_size_m": sample.trap_size_b,
        "experimental_critical_temperature_K": 50e-6,
        "proton_classification": units.classify_purity(purity),
    })
    rows = [
        ("critical-temperature-K", tc, ()),
        ("pseudo-critical-theory-K", t0_theory, ()),
        ("pseudo-critical-experiment-K", t0_exp, ()),
        ("proton-purity", purity, (FLAG_VALIDITY,) if purity > 1.0 else ()),
    ]
    for name, value, flags in rows:
        cs.add(series=name, x=0.0, kind="bifermion", n=1, estimator="closed-form",
               abscissa=0.0, value=value, raw_value=value, flags=flags)
    return cs


def _cmd_figure(args):
    cs = build_figure(args.preset, jobs=args.jobs or 1)
    out = _emit(cs, args, default_stem=args.preset)
    if not args.no_plot:
        target = Path(out) if out else Path(f"{args.preset}.csv")
        render_png(cs, target.with_suffix(".png"))
    return 0


def _cmd_check(args):
    results = run_check(zeta3_offset=args.perturb_zeta3)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if args.out:
        cs = CurveSet(metadata={"command": "check",
                                "perturb_zeta3": args.perturb_zeta3,
                                "note": "a row passes when value <= raw_value"})
        for res in results:
            cs.add(series=f"{res.suite}:{res.name}", x=0.0, kind="bifermion",
                   n=0, estimator="check", abscissa=0.0, value=res.observed,
                   raw_value=res.tolerance)
        cs.write(args.out, args.format)
    return 1 if failed else 0


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    warnings.simplefilter("ignore", ValidityWarning)
    warnings.simplefilter("ignore", CutoffWarning)
    try:
        args = _merge_config(args)
        if args.command == "chi":
            _require(args, parser, need_x=True)
            _emit(_cmd_chi(args), args)
        elif args.command == "two-level":
            _require(args, parser, need_x=True, need_t=True)
            _emit(_cmd_two_level(args), args)
        elif args.command == "trap":
            _require(args, parser, need_x=True, need_t=True)
            _emit(_cmd_trap(args), args)
        elif args.command == "analytic":
            _require(args, parser, need_x=True, need_t=True)
            _emit(_cmd_analytic(args), args)
        elif args.command == "hydrogen":
            _emit(_cmd_hydrogen(args), args)
        elif args.command == "figure":
            return _cmd_figure(args)
        elif args.command == "check":
            return _cmd_check(args)
        return 0
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (BracketingError, ConvergenceError) as exc:
        print(f"coboson: numerical non-convergence: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"coboson: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
