"""Command-line entry point: ``bounds``, ``compute`` and ``moment`` subcommands."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import (
    THEOREM_PAIRS,
    derivation_dict,
    derive_mixed_bound,
    render_database,
    render_derivation,
    render_table,
    theorem_rows,
)
from .cache import CacheStore
from .config import RunConfig, load_config
from .errors import CacheError, InfeasibleError, NumericError, OutOfRangeError, ResourceError, ValidityRangeError

_HANDLED = (CacheError, InfeasibleError, NumericError, OutOfRangeError, ResourceError, ValidityRangeError, ValueError, OSError)


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    S = argparse.SUPPRESS
    g.add_argument("--config", default=S, help="flat key = value config file")
    g.add_argument("--cache-dir", dest="cache_dir", default=S)
    g.add_argument("--threads", type=int, default=S)
    g.add_argument("--theta", default=S, help="pointwise Delta exponent, exact rational")
    g.add_argument("--zeta-exponent", dest="zeta_pointwise", default=S,
                   help="32/205 (classic_32_205) or 53/342 (bourgain_53_342)")
    g.add_argument("--h", type=float, default=S, help="critical-line grid step")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="zetadelta", parents=[common], description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", parents=[common], help="derive mixed-moment exponents")
    b.add_argument("what", nargs="?", choices=["table", "facts"], help="'table' for both theorems, 'facts' for the database")
    b.add_argument("--k", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--json", action="store_true", help="key-value output")

    c = sub.add_parser("compute", parents=[common], help="build caches and sample values")
    c.add_argument("target", choices=["delta", "grid", "zeta"])
    c.add_argument("--N", type=int, help="divisor table size (delta)")
    c.add_argument("--t0", type=float)
    c.add_argument("--t1", type=float)
    c.add_argument("--E", type=_float_list, help="T values for E(T) from the cached grid (zeta)")
    c.add_argument("--csv", type=Path, help="write samples here instead of stdout (zeta)")

    mo = sub.add_parser("moment", parents=[common], help="integrate a mixed moment and fit its growth")
    mo.add_argument("--k", type=int, required=True)
    mo.add_argument("--m", type=int, required=True)
    mo.add_argument("--T", type=_float_list, required=True, help="comma-separated T values")
    mo.add_argument("--abs", action="store_true", help="integrate |Delta|^k instead of Delta^k")
    mo.add_argument("--csv", type=Path, help="CSV destination (default stdout)")
    mo.add_argument("--report", type=Path, help="JSON report destination (default stderr)")
    return parser


def _config(args) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in ("cache_dir", "threads", "theta", "zeta_pointwise", "h")}
    return load_config(getattr(args, "config", None), overrides)


def cmd_bounds(args, cfg: RunConfig, out) -> int:
    db = cfg.database()
    if args.what == "facts":
        print(render_database(db), file=out)
        return 0
    if args.what == "table":
        start = time.perf_counter()
        rows = theorem_rows(THEOREM_PAIRS, db)
        if args.json:
            payload = [
                {**derivation_dict(r["derivation"]), "trivial": str(r["trivial"]), "conjectural": str(r["conjectural"])}
                for r in rows
            ]
            print(json.dumps(payload, indent=2), file=out)
        else:
            print(render_table(rows), file=out)
            for r in rows:
                print("", file=out)
                print(render_derivation(r["derivation"]), file=out)
            print(f"\n[{time.perf_counter() - start:.3f} s]", file=sys.stderr)
        return 0
    if args.k is None or args.m is None:
        raise UsageError("bounds needs --k and --m, or the literal 'table'")
    if not (1 <= args.k <= 8 and 1 <= args.m <= 3):
        raise UsageError(f"--k must be in 1..8 and --m in 1..3 (got k={args.k}, m={args.m})")
    d = derive_mixed_bound(args.k, args.m, db)
    print(json.dumps(derivation_dict(d), indent=2) if args.json else render_derivation(d), file=out)
    return 0


def _report_cache(store: CacheStore, name: str, build, out) -> None:
    if store.has(name):
        digest = store.verify(name)  # CacheError on mismatch; never rebuilt silently
        print(f"cache hit {name} sha256={digest}", file=out)
        return
    digest = build()
    print(f"wrote {store.root / name} sha256={digest}", file=out)


def cmd_compute(args, cfg: RunConfig, out) -> int:
    store = CacheStore(cfg.cache_dir)
    meta = cfg.as_dict()
    if args.target == "delta":
        from .divisor import sieve_divisor_counts

        if args.N is None:
            raise UsageError("compute delta needs --N")
        name = store.divisor_name(args.N)
        _report_cache(store, name, lambda: store.store_divisor(sieve_divisor_counts(args.N, cfg.threads), meta), out)
        return 0
    if args.target == "grid":
        from .zeta.grid import sample_critical_line

        if args.t0 is None or args.t1 is None:
            raise UsageError("compute grid needs --t0 and --t1")
        name = store.grid_name(args.t0, args.t1, cfg.h)
        build = lambda: store.store_grid(sample_critical_line(args.t0, args.t1, cfg.h, cfg.threads), meta)  # noqa: E731
        _report_cache(store, name, build, out)
        return 0
    return _compute_zeta(args, cfg, store, out)


def _compute_zeta(args, cfg, store, out) -> int:
    from .zeta.grid import mean_square_error_E, sample_critical_line

    if args.E:
        name = store.find_grid(max(args.E), cfg.h)
        if name is None:
            raise CacheError(
                f"no cached grid covers [2, {max(args.E):g}] at h={cfg.h:g}; run: "
                f"zetadelta compute grid --t0 2 --t1 {max(args.E):g} --h {cfg.h:g}"
            )
        grid = store.open_grid(name)
        print("T,E,err_est", file=out)
        for T in args.E:
            e = mean_square_error_E(T, grid)
            print(f"{T:.17g},{e.value:.17g},{e.error:.17g}", file=out)
        return 0
    if args.t0 is None or args.t1 is None:
        raise UsageError("compute zeta needs --t0/--t1 or --E")
    grid = sample_critical_line(args.t0, args.t1, cfg.h, cfg.threads)
    lines = ["t,abs_zeta_sq,method"]
    for t, v in zip(grid.times, grid.values):
        method = "riemann_siegel" if t >= 10 else "euler_maclaurin"
        lines.append(f"{t:.17g},{v:.17g},{method}")
    text = "\n".join(lines) + "\n"
    if args.csv:
        args.csv.write_text(text)
    else:
        out.write(text)
    return 0


def cmd_moment(args, cfg: RunConfig, out) -> int:
    from .moments import MomentRequest, compare_with_bounds, fit_growth_exponent, mixed_moment, moment_csv

    Ts = sorted(args.T)
    store = CacheStore(cfg.cache_dir)
    T_max = Ts[-1]
    name = store.find_grid(T_max, cfg.h)
    if name is None:
        raise CacheError(
            f"no cached zeta grid covers [2, {T_max:g}] at h={cfg.h:g}; run: "
            f"zetadelta compute grid --t0 2 --t1 {T_max:g} --h {cfg.h:g}"
        )
    grid = store.open_grid(name)
    table = None
    if args.k:
        need = int(T_max)
        dname = store.find_divisor(need)
        if dname is None:
            raise CacheError(f"no cached divisor table reaches {need}; run: zetadelta compute delta --N {need}")
        table = store.open_divisor(dname)
    req = MomentRequest(args.k, args.m, tuple(Ts), h=cfg.h, absolute=args.abs)
    points = mixed_moment(req, table, grid, cfg.threads)
    text = moment_csv(args.k, args.m, points)
    if args.csv:
        args.csv.write_text(text)
    else:
        out.write(text)
    if len(points) >= 3:
        odd = args.k % 2 == 1 and not args.abs
        fit = fit_growth_exponent([(p.T, p.value) for p in points], use_abs=odd)
        report = compare_with_bounds(args.k, args.m, fit, cfg.database())
    else:
        report = {"k": args.k, "m": args.m, "note": "fewer than 3 T values: no growth fit"}
    report["points"] = [{"T": p.T, "I": p.value, "err_est": p.error} for p in points]
    report["config"] = cfg.as_dict()
    payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report:
        args.report.write_text(payload)
    else:
        sys.stderr.write(payload)
    return 0


COMMANDS = {"bounds": cmd_bounds, "compute": cmd_compute, "moment": cmd_moment}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"zetadelta {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except _HANDLED as exc:
        print(f"zetadelta {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
