"""Command line entry point: ``labormarket <mode> [options]``.

Every mode writes a comma-separated data table and a ``.meta.json`` sidecar
holding the config echo, derived quantities, version and timestamp.  Data
tables depend only on the config, never on wall-clock time or worker count.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .config import MODES, ConfigError, GridSpec, RunConfig, parse_config
from .fit import fit_offset_power_law
from .neugart import coupled_run, fixed_point, run_macro
from .observables import beveridge_sweep, gamma_sweep, order_parameter, simulate

log = logging.getLogger("labormarket")

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def write_table(path: Path, header: Sequence[str], rows) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
            n += 1
    return n


def read_points(path: str | Path) -> np.ndarray:
    """Read ``(U, pi)`` pairs from delimiter-separated text.

    Comma, semicolon, tab and whitespace delimiters are accepted.  A
    non-numeric first row is a header; columns named ``U`` and ``pi`` are
    used when present, otherwise the first two columns.
    """
    cols = (0, 1)
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for sep in (",", ";", "\t"):
                if sep in line:
                    fields = [f.strip() for f in line.split(sep)]
                    break
            else:
                fields = line.split()
            try:
                values = [float(f) for f in fields]
            except ValueError:
                if rows:
                    raise ValueError(f"{path}:{lineno}: non-numeric row {line!r}") from None
                if "U" in fields and "pi" in fields:
                    cols = (fields.index("U"), fields.index("pi"))
                continue
            if len(values) <= max(cols):
                raise ValueError(f"{path}:{lineno}: expected at least {max(cols) + 1} columns")
            rows.append((values[cols[0]], values[cols[1]]))
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return np.array(rows)


def _derived(cfg: RunConfig) -> dict:
    out: dict = {}
    if cfg.market is not None:
        out.update(V=cfg.market.V, alpha=cfg.market.alpha)
    if cfg.macro is not None:
        U_star, pi_star = fixed_point(cfg.macro.params)
        out.update(Js=cfg.macro.params.Js, U_star=U_star, pi_star=pi_star)
    return out


def _config_echo(cfg: RunConfig) -> dict:
    def clean(obj):
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return obj

    return clean(dataclasses.asdict(cfg))


def execute(cfg: RunConfig, out: Path | None = None) -> list[Path]:
    """Run ``cfg`` and return the files written."""
    out = Path(out or cfg.output_path or f"{cfg.mode}.csv")
    written = [out]
    extra: dict = {}
    log.info("running %s -> %s", cfg.mode, out)

    if cfg.mode == "simulate":
        series = simulate(cfg.market)
        write_table(out, ["t", "U_t"], enumerate(series.U_series))
        extra["order_parameter"] = order_parameter(series.U_series, cfg.market.burn_in)

    elif cfg.mode in ("beveridge", "gamma-sweep"):
        name, sweep_fn = ("alpha", beveridge_sweep) if cfg.mode == "beveridge" else ("gamma", gamma_sweep)
        res = sweep_fn(cfg.market, cfg.sweep.values(), cfg.trials, cfg.workers)
        write_table(
            out,
            [name, "employment_mean", "employment_stderr", "trials"],
            ((x, m, s, res.trials) for x, m, s in
             zip(res.grid, res.employment_mean, res.employment_stderr)),
        )
        trials_path = out.with_name(out.stem + ".trials.csv")
        write_table(
            trials_path,
            [name, "trial", "seed", "employment"],
            ((res.grid[i], j, res.seeds[i, j], res.samples[i, j])
             for i in range(len(res.grid)) for j in range(res.trials)),
        )
        written.append(trials_path)

    elif cfg.mode == "neugart":
        m = cfg.macro
        tr = run_macro(m.params, m.initial, m.horizon, m.burn_in)
        t0 = m.burn_in + 1
        write_table(out, ["t", "U", "pi"], ((t0 + j, u, p) for j, (u, p) in enumerate(zip(tr.U, tr.pi))))
        extra["clamp_events"] = tr.clamp_events

    elif cfg.mode == "coupled":
        tr = coupled_run(cfg.market, cfg.macro.params, pi0=cfg.macro.pi0)
        write_table(out, ["t", "U", "pi"], ((t, u, p) for t, (u, p) in enumerate(zip(tr.U, tr.pi))))
        extra["pearson_U_pi"] = float(np.corrcoef(tr.U, tr.pi)[0, 1]) if np.ptp(tr.U) > 0 else None

    elif cfg.mode == "fit":
        if cfg.fit.input is None:
            raise ConfigError("fit mode needs an input file (fit.input or positional argument)")
        pts = read_points(cfg.fit.input)
        res = fit_offset_power_law(pts, cfg.fit.b_range, cfg.fit.grid)
        write_table(out, ["b", "c", "logC", "sse", "n"], [(res.b, res.c, res.logC, res.sse, res.n)])
        extra["dropped_nonpositive_U"] = res.dropped

    meta = {
        "mode": cfg.mode,
        "config": _config_echo(cfg),
        "derived": _derived(cfg),
        "results": extra,
        "outputs": [str(p) for p in written],
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    meta_path = out.with_name(out.name + ".meta.json")
    with open(meta_path, "w") as fh:
        json.dump(meta, fh, indent=2, default=str)
    written.append(meta_path)
    return written


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI run configuration")
    common.add_argument("--seed", type=int, help="base RNG seed (unsigned 64-bit)")
    common.add_argument("--out", type=Path, help="data table path (CSV)")
    common.add_argument("--trials", type=int, help="independent trials per sweep cell")
    common.add_argument("--workers", type=int, help="worker processes for sweeps")
    common.add_argument("--grid", help="sweep grid start:stop:count[:log]")
    common.add_argument("--b-range", help="fit offset interval lo:hi")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="labormarket", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode, parents=[common])
        if mode == "fit":
            p.add_argument("input", nargs="?", help="two-column (U, pi) text file")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, dict[str, str]]:
    ov: dict[str, dict[str, str]] = {}
    if args.seed is not None:
        ov.setdefault("run", {})["seed"] = str(args.seed)
    if args.trials is not None:
        ov.setdefault("run", {})["trials"] = str(args.trials)
    if args.workers is not None:
        ov.setdefault("run", {})["workers"] = str(args.workers)
    if args.grid is not None:
        g = GridSpec.parse(args.grid)
        ov["sweep"] = {"start": str(g.start), "stop": str(g.stop), "count": str(g.count), "scale": g.scale}
    if args.b_range is not None:
        try:
            lo, hi = args.b_range.split(":")
            float(lo), float(hi)
        except ValueError:
            raise ConfigError(f"--b-range must be lo:hi, got {args.b_range!r}") from None
        ov.setdefault("fit", {}).update(b_lo=lo, b_hi=hi)
    if getattr(args, "input", None):
        ov.setdefault("fit", {})["input"] = args.input
    return ov


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        text = args.config.read_text() if args.config else ""
        cfg = parse_config(text, mode=args.mode, overrides=_overrides(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        for path in execute(cfg, args.out):
            log.info("wrote %s", path)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
