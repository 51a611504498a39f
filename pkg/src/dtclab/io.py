"""Delimited result files with self-describing headers.

Every file starts with comment lines carrying the code version, the fully
resolved configuration, any per-file summary values, and the numerical
conventions needed to reread the numbers without the source (bit order,
diagonal phase sign, DFT normalization, quasi-energy branch). Data rows follow
a fixed column order and a fixed row order, and reals are written with 17
significant digits, so rerunning the same configuration reproduces every file
byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .config import RunConfig
from .evolution import TimeSeries
from .harness import ComparisonResult, EnsembleResult, ScanResult
from .spectral import SpectrumReport

_CONVENTIONS = (
    "# conventions: basis index bit b = site b (bit 0 = spin up); "
    "rotations U = exp(-i*angle/2*axis.sigma); diagonal layer multiplies by "
    "exp(+i*phase); DFT f(nu_j) = (1/K)*sum_k m(k)*exp(-2*pi*i*j*k/K), "
    "power = |f|^2, nu_j = j/K; quasi-energy branch (-Omega/2, Omega/2] "
    "with Omega = 2*pi/period\n"
)


@dataclass
class SpectrumTable:
    """Spectrum rows for one realization: optional per-site power plus the aggregate."""

    frequencies: np.ndarray
    per_site: np.ndarray | None
    average: np.ndarray


@dataclass
class RunProducts:
    """Everything a single command produced, ready for the writers."""

    timeseries: TimeSeries | None = None
    spectrum: SpectrumTable | None = None
    eigen: SpectrumReport | None = None
    ensemble: EnsembleResult | None = None
    scan: ScanResult | None = None
    comparison: ComparisonResult | None = None


def _real(x) -> str:
    return format(float(x), ".17g")


def _bool(x) -> str:
    return "true" if x else "false"


def _write_header(fh, config: RunConfig, extra=()):
    fh.write(f"# dtclab {__version__}\n")
    fh.write("# config:\n")
    for line in config.serialize().splitlines():
        fh.write(f"#   {line}\n")
    for line in extra:
        fh.write(f"# {line}\n")
    fh.write(_CONVENTIONS)


def write_timeseries(path, ts: TimeSeries, config: RunConfig):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config)
        fh.write("site,period,m\n")
        for site in range(ts.n_sites):
            for k in range(ts.periods):
                fh.write(f"{site},{k},{_real(ts.m[site, k])}\n")


def write_spectrum(path, table: SpectrumTable, config: RunConfig):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config)
        fh.write("nu,power,site\n")
        if table.per_site is not None:
            for site in range(table.per_site.shape[0]):
                for j, nu in enumerate(table.frequencies):
                    fh.write(f"{_real(nu)},{_real(table.per_site[site, j])},{site}\n")
        for j, nu in enumerate(table.frequencies):
            fh.write(f"{_real(nu)},{_real(table.average[j])},avg\n")


def write_eigenstates(path, report: SpectrumReport, config: RunConfig):
    degenerate = np.flatnonzero(report.degenerate)
    flagged = ",".join(str(i) for i in degenerate) if degenerate.size else "none"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config, extra=(f"degenerate_indices: {flagged}",))
        fh.write(
            "index,quasi_energy,partner_index,pairing_defect,"
            "mean_total_mz,mz_variance,edge_correlator\n"
        )
        for a in range(report.quasi_energies.size):
            fh.write(
                f"{a},{_real(report.quasi_energies[a])},"
                f"{int(report.partner_index[a])},{_real(report.pairing_defect[a])},"
                f"{_real(report.mean_total_mz[a])},{_real(report.mz_variance[a])},"
                f"{_real(report.edge_correlator[a])}\n"
            )


def _ensemble_rows(fh, rows, prefix=""):
    for r in rows:
        fh.write(
            f"{prefix}{r.realization},{_real(r.peak_height)},"
            f"{_real(r.peak_location)},{_bool(r.is_split)}\n"
        )


def write_ensemble(path, result: EnsembleResult, config: RunConfig):
    extra = (
        f"mean_peak: {_real(result.mean_peak)}",
        f"var_peak: {_real(result.var_peak)}",
        f"fraction_locked: {_real(result.fraction_locked)}",
    )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config, extra=extra)
        fh.write("realization,peak_height,peak_location,is_split\n")
        _ensemble_rows(fh, result.rows)


def write_scan(path, scan: ScanResult, config: RunConfig):
    star = "out_of_range" if scan.epsilon_star is None else _real(scan.epsilon_star)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config, extra=(f"epsilon_star: {star}",))
        fh.write("epsilon,mean_peak,var_peak,fraction_locked\n")
        for i, eps in enumerate(scan.epsilons):
            fh.write(
                f"{_real(eps)},{_real(scan.mean_peak[i])},"
                f"{_real(scan.var_peak[i])},{_real(scan.fraction_locked[i])}\n"
            )


def write_compare(path, comparison: ComparisonResult, config: RunConfig):
    extra = (
        f"epsilon: {_real(comparison.epsilon)}",
        f"peak_ratio: {_real(comparison.peak_ratio)}",
        f"interacting_mean_peak: {_real(comparison.interacting.mean_peak)}",
        f"noninteracting_mean_peak: {_real(comparison.noninteracting.mean_peak)}",
    )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_header(fh, config, extra=extra)
        fh.write("branch,realization,peak_height,peak_location,is_split\n")
        _ensemble_rows(fh, comparison.interacting.rows, prefix="interacting,")
        _ensemble_rows(fh, comparison.noninteracting.rows, prefix="noninteracting,")


def write_results(results: RunProducts, directory, config: RunConfig) -> list:
    """Write every present product to its schema file; returns the paths written."""
    os.makedirs(directory, exist_ok=True)
    written = []

    def emit(name, writer, payload):
        path = os.path.join(directory, name)
        writer(path, payload, config)
        written.append(path)

    if results.timeseries is not None:
        emit("timeseries.csv", write_timeseries, results.timeseries)
    if results.spectrum is not None:
        emit("spectrum.csv", write_spectrum, results.spectrum)
    if results.eigen is not None:
        emit("eigenstates.csv", write_eigenstates, results.eigen)
    if results.ensemble is not None:
        emit("ensemble.csv", write_ensemble, results.ensemble)
    if results.scan is not None:
        emit("scan.csv", write_scan, results.scan)
    if results.comparison is not None:
        emit("compare.csv", write_compare, results.comparison)
    return written
