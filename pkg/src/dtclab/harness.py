"""Disorder-ensemble experiments: locking statistics, rigidity scans, comparisons.

Realizations are independent: realization r of an ensemble uses
``realization_index = params.realization_index + r``, so a run can be split
into chunks (e.g. indices 0-24 and 25-49) and merged back without changing a
single bit of the result. Aggregates are always recomputed from the
per-realization arrays for exactly that reason.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .evolution import (
    AGGREGATES,
    WINDOWS,
    aggregate_power_spectrum,
    evolve_periods,
    subharmonic_metrics,
)
from .model import (
    ModelParams,
    NearestNeighborCoupling,
    PowerLawCoupling,
    build_cycle,
)
from .statevec import new_basis_state


@dataclass(frozen=True)
class RealizationMetrics:
    realization: int
    peak_height: float
    peak_location: float
    is_split: bool


@dataclass
class EnsembleResult:
    """Subharmonic statistics over a block of disorder realizations.

    rows[r] holds the metrics of realization ``params.realization_index + r``;
    power[r] is that realization's aggregate spectrum (n_realizations x K).
    mean_peak / var_peak are the mean and population variance of the power at
    nu = 0.5, fraction_locked the share of realizations with is_split false.
    """

    params: ModelParams
    n_realizations: int
    periods: int
    initial_state: str
    aggregate: str
    window: str
    rows: tuple
    power: np.ndarray
    mean_peak: float
    var_peak: float
    fraction_locked: float
    mean_power: np.ndarray


@dataclass
class ScanResult:
    """Ensemble statistics on a grid of pulse deviations epsilon = 1 - g."""

    epsilons: np.ndarray
    ensembles: tuple
    mean_peak: np.ndarray
    var_peak: np.ndarray
    fraction_locked: np.ndarray
    epsilon_star: float | None


@dataclass
class ComparisonResult:
    """The same drive with and without spin-spin coupling, fields identical."""

    epsilon: float
    interacting: EnsembleResult
    noninteracting: EnsembleResult
    peak_ratio: float


def initial_bits(spec: str, n_sites: int) -> str:
    """Resolve an initial-state spec to a bitstring.

    Accepts an explicit bitstring, "neel" for the alternating pattern 0101...,
    or "random:<seed>" for a seeded random z-basis pattern.
    """
    if spec == "neel":
        return ("01" * n_sites)[:n_sites]
    if spec.startswith("random:"):
        rng = np.random.default_rng(int(spec.split(":", 1)[1]))
        return "".join("01"[b] for b in rng.integers(0, 2, n_sites))
    if len(spec) == n_sites and not set(spec) - {"0", "1"}:
        return spec
    raise ValueError(
        f"initial state must be a length-{n_sites} bitstring, 'neel', or "
        f"'random:<seed>', got {spec!r}"
    )


def _run_realization(params: ModelParams, periods, initial_state, aggregate, window):
    cycle = build_cycle(params)
    state = new_basis_state(params.n_sites, initial_bits(initial_state, params.n_sites))
    ts = evolve_periods(state, cycle, periods)
    spectrum = aggregate_power_spectrum(ts, aggregate, window)
    met = subharmonic_metrics(spectrum)
    row = RealizationMetrics(
        realization=params.realization_index,
        peak_height=met.peak_height_at_half,
        peak_location=met.peak_location,
        is_split=met.is_split,
    )
    return row, spectrum.power


def _finalize(params, periods, initial_state, aggregate, window, rows, power):
    heights = np.array([r.peak_height for r in rows])
    locked = sum(1 for r in rows if not r.is_split)
    return EnsembleResult(
        params=params,
        n_realizations=len(rows),
        periods=periods,
        initial_state=initial_state,
        aggregate=aggregate,
        window=window,
        rows=tuple(rows),
        power=power,
        mean_peak=float(np.mean(heights)),
        var_peak=float(np.var(heights)),
        fraction_locked=locked / len(rows),
        mean_power=power.mean(axis=0),
    )


def run_ensemble(
    params: ModelParams,
    n_realizations: int,
    periods: int = 100,
    initial_state: str = "neel",
    aggregate: str = "per-site",
    window: str = "none",
    workers: int = 1,
) -> EnsembleResult:
    """Evolve n_realizations independent disorder draws and collect peak metrics.

    Realization r uses realization_index = params.realization_index + r; every
    realization starts from the same initial pattern. Results are independent
    of ``workers`` (the pool only parallelizes independent realizations and the
    collection order is fixed).
    """
    if n_realizations < 1:
        raise ValueError(f"n_realizations must be >= 1, got {n_realizations}")
    if periods < 2 or periods % 2:
        raise ValueError(f"periods must be even and >= 2, got {periods}")
    if aggregate not in AGGREGATES or window not in WINDOWS:
        raise ValueError(f"unknown aggregate {aggregate!r} or window {window!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    tasks = [
        replace(params, realization_index=params.realization_index + r)
        for r in range(n_realizations)
    ]

    def one(task):
        return _run_realization(task, periods, initial_state, aggregate, window)

    if workers == 1:
        outcomes = [one(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, tasks))
    rows = [row for row, _ in outcomes]
    power = np.array([p for _, p in outcomes])
    return _finalize(params, periods, initial_state, aggregate, window, rows, power)


def merge_ensembles(first: EnsembleResult, second: EnsembleResult) -> EnsembleResult:
    """Concatenate two contiguous blocks of the same ensemble.

    The second block must start exactly where the first ends and agree on every
    other setting; the merged result is bit-identical to the monolithic run.
    """
    expected = replace(
        first.params,
        realization_index=first.params.realization_index + first.n_realizations,
    )
    if second.params != expected:
        raise ValueError(
            "blocks are not contiguous: second must differ from first only by "
            f"realization_index == {expected.realization_index}"
        )
    for attr in ("periods", "initial_state", "aggregate", "window"):
        if getattr(first, attr) != getattr(second, attr):
            raise ValueError(f"blocks disagree on {attr}")
    rows = list(first.rows) + list(second.rows)
    power = np.concatenate([first.power, second.power], axis=0)
    return _finalize(
        first.params, first.periods, first.initial_state, first.aggregate,
        first.window, rows, power,
    )


def rigidity_scan(
    params: ModelParams,
    epsilons,
    n_realizations: int,
    periods: int = 100,
    initial_state: str = "neel",
    aggregate: str = "per-site",
    window: str = "none",
    workers: int = 1,
    progress=None,
) -> ScanResult:
    """Sweep the pulse deviation epsilon = 1 - g and track locking statistics.

    epsilon_star estimates where fraction_locked crosses 0.5 (linear
    interpolation between the first bracketing grid neighbors); None when the
    grid never brackets a downward crossing.
    """
    eps = np.asarray(epsilons, dtype=float)
    if eps.size < 1 or np.any(eps < 0.0) or np.any(eps >= 1.0):
        raise ValueError("epsilon grid must be non-empty with values in [0, 1)")
    if np.any(np.diff(eps) <= 0.0):
        raise ValueError("epsilon grid must be strictly increasing")
    ensembles = []
    for e in eps:
        result = run_ensemble(
            replace(params, g=1.0 - e),
            n_realizations,
            periods=periods,
            initial_state=initial_state,
            aggregate=aggregate,
            window=window,
            workers=workers,
        )
        ensembles.append(result)
        if progress is not None:
            progress(float(e), result)
    locked = np.array([r.fraction_locked for r in ensembles])
    star = None
    for i in range(eps.size - 1):
        if locked[i] >= 0.5 > locked[i + 1]:
            frac = (locked[i] - 0.5) / (locked[i] - locked[i + 1])
            star = float(eps[i] + frac * (eps[i + 1] - eps[i]))
            break
    return ScanResult(
        epsilons=eps,
        ensembles=tuple(ensembles),
        mean_peak=np.array([r.mean_peak for r in ensembles]),
        var_peak=np.array([r.var_peak for r in ensembles]),
        fraction_locked=locked,
        epsilon_star=star,
    )


def _zero_coupling(coupling):
    if isinstance(coupling, NearestNeighborCoupling):
        return NearestNeighborCoupling(0.0, 0.0)
    if isinstance(coupling, PowerLawCoupling):
        return PowerLawCoupling(0.0, coupling.alpha)
    raise TypeError(f"unknown coupling spec {coupling!r}")


def interaction_comparison(
    params: ModelParams,
    n_realizations: int,
    periods: int = 100,
    initial_state: str = "neel",
    aggregate: str = "per-site",
    window: str = "none",
    workers: int = 1,
) -> ComparisonResult:
    """Contrast the configured chain against its coupling-free counterpart.

    Both branches see identical pulse deviation and identical field draws (the
    disorder stream emits fields before bonds); only the coupling differs. The
    headline number is the ratio of mean nu = 0.5 peak heights.
    """
    epsilon = 1.0 - params.g
    if epsilon <= 0.0:
        raise ValueError(
            f"comparison needs a pulse deviation (g < 1), got g = {params.g}"
        )
    kwargs = dict(
        periods=periods,
        initial_state=initial_state,
        aggregate=aggregate,
        window=window,
        workers=workers,
    )
    interacting = run_ensemble(params, n_realizations, **kwargs)
    noninteracting = run_ensemble(
        replace(params, coupling=_zero_coupling(params.coupling)),
        n_realizations,
        **kwargs,
    )
    return ComparisonResult(
        epsilon=epsilon,
        interacting=interacting,
        noninteracting=noninteracting,
        peak_ratio=interacting.mean_peak / noninteracting.mean_peak,
    )
