"""Stroboscopic dynamics, the DFT convention, and subharmonic peak metrics.

The fft-based spectrum is held against a direct O(K^2) summation and against
the closed form for a pure cosine, so the fast route can never drift away from
the definition silently.
"""

import numpy as np
import pytest

from dtclab.evolution import (
    PowerSpectrum,
    aggregate_power_spectrum,
    dft_power_spectrum,
    evolve_periods,
    per_site_power,
    subharmonic_metrics,
)
from dtclab.model import ModelParams, NearestNeighborCoupling, apply_cycle, build_cycle
from dtclab.statevec import SpinState, new_basis_state

from oracles import cosine_dft_power, direct_dft_power


def single_spin(g, **kwargs):
    return ModelParams(
        n_sites=1, g=g, coupling=NearestNeighborCoupling(0.0, 0.0),
        wx=0.0, wy=0.0, wz=0.0, **kwargs,
    )


def test_evolve_records_initial_sample_first():
    params = single_spin(0.83)
    state = new_basis_state(1, "0")
    ts = evolve_periods(state, build_cycle(params), 8)
    assert ts.m.shape == (1, 8)
    assert ts.m[0, 0] == pytest.approx(1.0)
    # the caller's state has really been advanced 8 periods
    assert abs(state.amplitudes[0]) == pytest.approx(abs(np.cos(np.pi * 0.83 * 8 / 2)))


def test_evolve_rejects_zero_periods():
    params = single_spin(0.5)
    with pytest.raises(ValueError):
        evolve_periods(new_basis_state(1, "0"), build_cycle(params), 0)


def test_exact_echo_alternates_all_magnetizations():
    # g = 1 without transverse fields: m_i(k) = (-1)^k m_i(0) for any J, Wz
    params = ModelParams(n_sites=6, g=1.0, wx=0.0, wy=0.0, seed=8)
    state = new_basis_state(6, "110100")
    ts = evolve_periods(state, build_cycle(params), 24)
    signs = (-1.0) ** np.arange(24)
    assert np.max(np.abs(ts.m - np.outer(ts.m[:, 0], signs))) < 1e-12


def test_single_spin_cosine_closed_form():
    params = single_spin(0.83)
    ts = evolve_periods(new_basis_state(1, "0"), build_cycle(params), 200)
    k = np.arange(200)
    assert np.max(np.abs(ts.m[0] - np.cos(np.pi * 0.83 * k))) < 1e-12


def test_evolution_is_linear():
    params = ModelParams(n_sites=4, seed=5)
    cycle = build_cycle(params)
    rng = np.random.default_rng(30)
    a = rng.normal(size=16) + 1j * rng.normal(size=16)
    b = rng.normal(size=16) + 1j * rng.normal(size=16)
    alpha, beta = 0.3 - 0.4j, 1.1 + 0.2j
    sup = SpinState(4, alpha * a + beta * b)
    sa, sb = SpinState(4, a.copy()), SpinState(4, b.copy())
    for s in (sup, sa, sb):
        for _ in range(3):
            apply_cycle(s, cycle)
    combined = alpha * sa.amplitudes + beta * sb.amplitudes
    assert np.max(np.abs(sup.amplitudes - combined)) < 1e-12


def test_dft_alternating_series_puts_unit_power_at_half():
    spec = dft_power_spectrum((-1.0) ** np.arange(50))
    assert spec.power[25] == pytest.approx(1.0, abs=1e-13)
    assert np.max(np.abs(np.delete(spec.power, 25))) < 1e-25
    assert spec.frequencies[25] == pytest.approx(0.5)


def test_dft_matches_direct_summation():
    rng = np.random.default_rng(31)
    for k in (16, 37, 100):
        series = rng.normal(size=k)
        fast = dft_power_spectrum(series).power
        slow = direct_dft_power(series)
        assert np.max(np.abs(fast - slow)) < 1e-12


def test_dft_matches_cosine_closed_form():
    k = 80
    samples = np.arange(k)
    for nu0 in (0.2, 0.3125, 0.5):
        series = np.cos(2.0 * np.pi * nu0 * samples)
        assert np.max(np.abs(dft_power_spectrum(series).power - cosine_dft_power(nu0, k))) < 1e-12


def test_dft_parseval_and_conjugate_symmetry():
    rng = np.random.default_rng(32)
    series = rng.normal(size=64)
    power = dft_power_spectrum(series).power
    assert power.sum() == pytest.approx(np.mean(series**2), rel=1e-12)
    for j in range(1, 64):
        assert power[j] == pytest.approx(power[64 - j], rel=1e-10, abs=1e-18)


def test_dft_input_validation():
    with pytest.raises(ValueError):
        dft_power_spectrum(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        dft_power_spectrum([])
    with pytest.raises(ValueError):
        dft_power_spectrum(np.ones(8), window="boxcar")


def test_hann_window_spreads_an_exact_bin():
    # periodic Hann splits a bin-centered cosine over three bins with 1:2:1 amplitude
    k = 40
    series = np.cos(2.0 * np.pi * 10 * np.arange(k) / k)
    power = dft_power_spectrum(series, window="hann").power
    assert power[10] == pytest.approx(0.0625, rel=1e-10)
    assert power[9] == pytest.approx(power[10] / 4.0, rel=1e-10)
    assert power[11] == pytest.approx(power[10] / 4.0, rel=1e-10)


def test_per_site_power_matches_row_wise_transform():
    rng = np.random.default_rng(33)
    params = ModelParams(n_sites=5, seed=6)
    ts = evolve_periods(new_basis_state(5, "01011"), build_cycle(params), 32)
    stacked = per_site_power(ts, window="hann")
    for site in range(5):
        row = dft_power_spectrum(ts.m[site], window="hann").power
        assert np.max(np.abs(stacked[site] - row)) < 1e-15
    del rng


def test_aggregate_modes():
    params = ModelParams(n_sites=4, seed=11)
    ts = evolve_periods(new_basis_state(4, "0101"), build_cycle(params), 20)
    per_site = aggregate_power_spectrum(ts, "per-site")
    assert np.max(np.abs(per_site.power - per_site_power(ts).mean(axis=0))) < 1e-15
    averaged = aggregate_power_spectrum(ts, "averaged")
    direct = dft_power_spectrum(ts.m.mean(axis=0)).power
    assert np.max(np.abs(averaged.power - direct)) < 1e-15
    with pytest.raises(ValueError):
        aggregate_power_spectrum(ts, "median")


def test_averaged_aggregate_cancels_staggered_patterns():
    # a Neel start makes the site-averaged series vanish while per-site power stays
    params = ModelParams(n_sites=4, g=1.0, wx=0.0, wy=0.0, seed=2)
    ts = evolve_periods(new_basis_state(4, "0101"), build_cycle(params), 16)
    per_site = aggregate_power_spectrum(ts, "per-site")
    averaged = aggregate_power_spectrum(ts, "averaged")
    assert per_site.power[8] == pytest.approx(1.0, abs=1e-12)
    assert averaged.power[8] < 1e-24


def test_subharmonic_metrics_locked_series():
    met = subharmonic_metrics(dft_power_spectrum((-1.0) ** np.arange(60)))
    assert met.peak_height_at_half == pytest.approx(1.0, abs=1e-13)
    assert met.peak_location == pytest.approx(0.5)
    assert not met.is_split


def test_subharmonic_metrics_split_single_spin():
    # one free spin at g = 0.9 responds at nu = 0.45 exactly
    params = single_spin(0.9)
    ts = evolve_periods(new_basis_state(1, "0"), build_cycle(params), 100)
    met = subharmonic_metrics(aggregate_power_spectrum(ts))
    assert met.is_split
    assert met.peak_location == pytest.approx(0.45)
    assert met.peak_height_at_half < 1e-25


def test_subharmonic_metrics_needs_even_bins():
    with pytest.raises(ValueError):
        subharmonic_metrics(dft_power_spectrum(np.ones(9)))


def test_subharmonic_tie_resolves_to_lowest_bin():
    power = np.zeros(20)
    power[3] = power[7] = 0.5
    met = subharmonic_metrics(PowerSpectrum(np.arange(20) / 20, power))
    assert met.peak_location == pytest.approx(3 / 20)
    assert met.is_split


def test_subharmonic_search_excludes_dc():
    power = np.zeros(10)
    power[0] = 5.0
    power[5] = 0.1
    met = subharmonic_metrics(PowerSpectrum(np.arange(10) / 10, power))
    assert met.peak_location == pytest.approx(0.5)
    assert not met.is_split
