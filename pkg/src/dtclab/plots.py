"""Figure rendering for the report path; one PNG per delimited file.

Figures are a convenience view of the same data the CSV files carry and are
only rendered when requested (``--plot`` / ``output.plot``), keeping the
delimited output the sole determinism surface.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_STYLE = {
    "figure.figsize": (6.4, 4.0),
    "figure.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
}


def _new_axes(nrows=1, ncols=1, **kwargs):
    with plt.rc_context(_STYLE):
        return plt.subplots(nrows, ncols, constrained_layout=True, **kwargs)


def _save(fig, path):
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_timeseries(ts, path):
    fig, ax = _new_axes()
    k = np.arange(ts.periods)
    for site in range(ts.n_sites):
        ax.plot(k, ts.m[site], alpha=0.35, lw=0.8)
    ax.plot(k, ts.m.mean(axis=0), color="black", lw=1.4, label="site average")
    ax.set_xlabel("period k")
    ax.set_ylabel(r"$\langle\sigma^z_i\rangle$")
    ax.set_ylim(-1.05, 1.05)
    ax.legend(loc="upper right")
    return _save(fig, path)


def plot_spectrum(table, path):
    fig, ax = _new_axes()
    k = table.frequencies.size
    half = k // 2 + 1
    nu = table.frequencies[:half]
    if table.per_site is not None:
        for site in range(table.per_site.shape[0]):
            ax.semilogy(nu, np.maximum(table.per_site[site, :half], 1e-30),
                        alpha=0.3, lw=0.7)
    ax.semilogy(nu, np.maximum(table.average[:half], 1e-30),
                color="black", lw=1.5, label="aggregate")
    ax.axvline(0.5, color="tab:red", ls="--", lw=0.9)
    ax.set_xlabel(r"$\nu$ (cycles per period)")
    ax.set_ylabel("power")
    ax.legend(loc="upper left")
    return _save(fig, path)


def plot_eigenstates(report, path):
    fig, (ax1, ax2) = _new_axes(1, 2, figsize=(8.5, 4.0))
    idx = np.arange(report.quasi_energies.size)
    sc = ax1.scatter(idx, report.quasi_energies, c=report.edge_correlator,
                     cmap="coolwarm", vmin=-1, vmax=1, s=8)
    fig.colorbar(sc, ax=ax1, label="edge correlator")
    ax1.set_xlabel("eigenstate index")
    ax1.set_ylabel("quasi-energy")
    defects = np.maximum(report.pairing_defect, 1e-18)
    bins = np.logspace(-18, np.log10(report.omega / 2), 40)
    ax2.hist(defects, bins=bins, color="tab:blue")
    ax2.set_xscale("log")
    ax2.set_xlabel("pairing defect")
    ax2.set_ylabel("count")
    return _save(fig, path)


def plot_ensemble(result, path):
    fig, (ax1, ax2) = _new_axes(1, 2, figsize=(8.5, 4.0))
    heights = [r.peak_height for r in result.rows]
    ax1.hist(heights, bins=20, color="tab:blue")
    ax1.set_xlabel(r"power at $\nu = 1/2$")
    ax1.set_ylabel("realizations")
    locations = [r.peak_location for r in result.rows]
    split = [r.is_split for r in result.rows]
    colors = ["tab:red" if s else "tab:green" for s in split]
    ax2.scatter([r.realization for r in result.rows], locations, c=colors, s=12)
    ax2.axhline(0.5, color="black", ls="--", lw=0.8)
    ax2.set_xlabel("realization")
    ax2.set_ylabel("peak location")
    ax2.set_title(f"fraction locked = {result.fraction_locked:.2f}", fontsize=9)
    return _save(fig, path)


def plot_scan(scan, path):
    fig, ax = _new_axes()
    ax.plot(scan.epsilons, scan.fraction_locked, "o-", color="tab:blue",
            label="fraction locked")
    ax.set_xlabel(r"pulse deviation $\epsilon = 1 - g$")
    ax.set_ylabel("fraction locked", color="tab:blue")
    ax.set_ylim(-0.05, 1.05)
    ax2 = ax.twinx()
    ax2.plot(scan.epsilons, scan.var_peak, "s-", color="tab:orange",
             label="peak variance")
    ax2.set_ylabel("peak-height variance", color="tab:orange")
    ax2.grid(False)
    if scan.epsilon_star is not None:
        ax.axvline(scan.epsilon_star, color="black", ls="--", lw=0.9)
        ax.annotate(rf"$\epsilon^* \approx {scan.epsilon_star:.3f}$",
                    (scan.epsilon_star, 0.5), textcoords="offset points",
                    xytext=(6, 6), fontsize=8)
    return _save(fig, path)


def plot_compare(comparison, path):
    fig, ax = _new_axes()
    k = comparison.interacting.mean_power.size
    nu = np.arange(k)[: k // 2 + 1] / k
    for result, label, color in (
        (comparison.interacting, "interacting", "tab:blue"),
        (comparison.noninteracting, "noninteracting", "tab:orange"),
    ):
        ax.semilogy(nu, np.maximum(result.mean_power[: k // 2 + 1], 1e-30),
                    color=color, label=label)
    ax.axvline(0.5, color="tab:red", ls="--", lw=0.9)
    ax.set_xlabel(r"$\nu$ (cycles per period)")
    ax.set_ylabel("mean power")
    ax.set_title(rf"$\epsilon = {comparison.epsilon:.3g}$, "
                 rf"peak ratio = {comparison.peak_ratio:.2f}", fontsize=9)
    ax.legend(loc="upper left")
    return _save(fig, path)


def render_products(products, directory) -> list:
    """Render a PNG next to each delimited file present; returns figure paths."""
    os.makedirs(directory, exist_ok=True)
    rendered = []

    def emit(name, plotter, payload):
        rendered.append(plotter(payload, os.path.join(directory, name)))

    if products.timeseries is not None:
        emit("timeseries.png", plot_timeseries, products.timeseries)
    if products.spectrum is not None:
        emit("spectrum.png", plot_spectrum, products.spectrum)
    if products.eigen is not None:
        emit("eigenstates.png", plot_eigenstates, products.eigen)
    if products.ensemble is not None:
        emit("ensemble.png", plot_ensemble, products.ensemble)
    if products.scan is not None:
        emit("scan.png", plot_scan, products.scan)
    if products.comparison is not None:
        emit("compare.png", plot_compare, products.comparison)
    return rendered
