"""Command-line entry point.

One binary, one subcommand per run type. Written file paths go to stdout;
progress and summaries go to stderr. Exit codes: 0 success, 2 for
configuration problems (syntax, unknown key, range), 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import sys

from .config import COMMANDS, ConfigError, load_config
from .evolution import (
    aggregate_power_spectrum,
    evolve_periods,
    per_site_power,
    subharmonic_metrics,
)
from .harness import initial_bits, interaction_comparison, rigidity_scan, run_ensemble
from .io import RunProducts, SpectrumTable, write_results
from .model import build_cycle
from .spectral import MAX_DENSE_SITES, analyze_cycle
from .statevec import new_basis_state

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

_DESCRIPTIONS = {
    "evolve": "drive one disorder realization and record per-site magnetizations",
    "spectrum": "evolve one realization and report its subharmonic power spectrum "
    "(plus dense Floquet eigenstate diagnostics when n_sites <= 12)",
    "ensemble": "collect nu = 1/2 peak statistics over disorder realizations",
    "scan": "sweep the pulse deviation epsilon = 1 - g and locate the locking boundary",
    "compare": "run matched ensembles with and without spin-spin coupling",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtclab",
        description="exact numerical laboratory for discrete time crystals "
        "in driven disordered spin chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        p = sub.add_parser(command, help=_DESCRIPTIONS[command])
        p.add_argument("--config", metavar="PATH", help="key-value configuration file")
        p.add_argument(
            "--set",
            metavar="KEY=VALUE",
            action="append",
            default=[],
            help="override one configuration key (repeatable)",
        )
        p.add_argument(
            "--plot",
            action="store_true",
            help="also render figures next to the delimited output",
        )
    return parser


def _initial_state(config):
    bits = initial_bits(config.initial_state, config.model.n_sites)
    return new_basis_state(config.model.n_sites, bits)


def _execute(config) -> RunProducts:
    products = RunProducts()
    model = config.model
    run_kwargs = dict(
        periods=config.periods,
        initial_state=config.initial_state,
        aggregate=config.aggregate,
        window=config.window,
        workers=config.workers,
    )
    if config.command == "evolve":
        products.timeseries = evolve_periods(
            _initial_state(config), build_cycle(model), config.periods
        )
    elif config.command == "spectrum":
        cycle = build_cycle(model)
        ts = evolve_periods(_initial_state(config), cycle, config.periods)
        products.timeseries = ts
        aggregate = aggregate_power_spectrum(ts, config.aggregate, config.window)
        per_site = per_site_power(ts, config.window) if config.aggregate == "per-site" else None
        products.spectrum = SpectrumTable(aggregate.frequencies, per_site, aggregate.power)
        met = subharmonic_metrics(aggregate)
        print(
            f"peak_height_at_half = {met.peak_height_at_half:.6g}, "
            f"peak_location = {met.peak_location:.6g}, is_split = {met.is_split}",
            file=sys.stderr,
        )
        if model.n_sites <= MAX_DENSE_SITES:
            products.eigen = analyze_cycle(cycle)
        else:
            print(
                f"n_sites = {model.n_sites} > {MAX_DENSE_SITES}: skipping dense "
                "eigenstate diagnostics (dynamics outputs only)",
                file=sys.stderr,
            )
    elif config.command == "ensemble":
        result = run_ensemble(model, config.realizations, **run_kwargs)
        products.ensemble = result
        print(
            f"{result.n_realizations} realizations: mean_peak = {result.mean_peak:.6g}, "
            f"fraction_locked = {result.fraction_locked:.3f}",
            file=sys.stderr,
        )
    elif config.command == "scan":
        def progress(eps, result):
            print(
                f"epsilon = {eps:.4g}: fraction_locked = {result.fraction_locked:.3f}, "
                f"mean_peak = {result.mean_peak:.6g}",
                file=sys.stderr,
            )

        scan = rigidity_scan(
            model, config.epsilon_grid, config.realizations,
            progress=progress, **run_kwargs,
        )
        products.scan = scan
        star = "out of range" if scan.epsilon_star is None else f"{scan.epsilon_star:.4g}"
        print(f"estimated locking boundary epsilon* = {star}", file=sys.stderr)
    elif config.command == "compare":
        comparison = interaction_comparison(model, config.realizations, **run_kwargs)
        products.comparison = comparison
        print(
            f"epsilon = {comparison.epsilon:.4g}: peak ratio "
            f"(interacting / noninteracting) = {comparison.peak_ratio:.3f}",
            file=sys.stderr,
        )
    else:
        raise ValueError(f"unknown command {config.command!r}")
    return products


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.command, path=args.config, sets=args.set, plot=args.plot)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        products = _execute(config)
        paths = write_results(products, config.output_dir, config)
        if config.plot:
            from . import plots  # defer matplotlib to the runs that need it

            paths += plots.render_products(products, config.output_dir)
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
