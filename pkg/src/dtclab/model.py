"""Driven spin-chain model: parameters, disorder realizations, compiled cycles.

One driving period of duration ``T = t1 + t2 + t3`` is three layers applied in
order:

1. a global rotation of every spin about x by ``pi * g`` (g = 1 is a perfect
   flip; the angle does not depend on t1 because the pulse amplitude scales
   inversely with its duration),
2. Ising phases from pairwise sigma^z sigma^z couplings, diagonal in the z
   basis: the amplitude at basis index z gains ``exp(+i * t2 * sum_ij J_ij z_i z_j)``,
3. per-site rotations generated by random local fields ``h_i``, each a rotation
   by ``2 * |h_i| * t3`` about ``-h_i / |h_i|``.

Every layer is a product of commuting terms, so applying them site by site (and
the diagonal in one shot) advances the state by exactly one period with no
splitting error. Disorder is a pure function of ``(seed, realization_index)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .statevec import (
    MAX_SITES,
    SpinState,
    _apply_phase_kernel,
    _apply_rotation_kernel,
    rotation_matrix,
)

_X_AXIS = (1.0, 0.0, 0.0)


@dataclass(frozen=True)
class NearestNeighborCoupling:
    """Open-chain bonds J_i = j0 + uniform(-delta_j, +delta_j), one draw per bond."""

    j0: float
    delta_j: float = 0.0

    def __post_init__(self):
        if self.delta_j < 0:
            raise ValueError(f"delta_j must be >= 0, got {self.delta_j}")

    def bonds(self, n_sites: int, rng: np.random.Generator):
        offsets = rng.uniform(-self.delta_j, self.delta_j, n_sites - 1)
        return tuple((i, i + 1, self.j0 + offsets[i]) for i in range(n_sites - 1))


@dataclass(frozen=True)
class PowerLawCoupling:
    """All-to-all bonds J_ij = j0 / |i - j|**alpha on the open chain, no randomness."""

    j0: float
    alpha: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")

    def bonds(self, n_sites: int, rng: np.random.Generator):
        return tuple(
            (i, j, self.j0 / float(j - i) ** self.alpha)
            for i in range(n_sites - 1)
            for j in range(i + 1, n_sites)
        )


CouplingSpec = Union[NearestNeighborCoupling, PowerLawCoupling]


@dataclass(frozen=True)
class ModelParams:
    """Full specification of one disordered chain and its drive.

    Args:
        n_sites: chain length, 1..24.
        g: global rotation fraction; the layer-1 angle is pi*g.
        t1, t2, t3: stage durations; the period is their sum and must be positive.
        coupling: bond specification (nearest-neighbor or power-law).
        wx, wy, wz: disorder widths; each field component is uniform in [0, W].
        seed: master seed for the disorder stream.
        realization_index: which independent disorder realization to draw.
    """

    n_sites: int
    g: float = 0.97
    t1: float = 1.0
    t2: float = 1.0
    t3: float = 1.0
    coupling: CouplingSpec = NearestNeighborCoupling(0.25, 0.1)
    wx: float = 0.02
    wy: float = 0.02
    wz: float = math.pi
    seed: int = 1
    realization_index: int = 0

    def __post_init__(self):
        if not 1 <= self.n_sites <= MAX_SITES:
            raise ValueError(f"n_sites must be in [1, {MAX_SITES}], got {self.n_sites}")
        if not self.g >= 0 or not math.isfinite(self.g):
            raise ValueError(f"g must be finite and >= 0, got {self.g}")
        for name in ("t1", "t2", "t3"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.t1 + self.t2 + self.t3 <= 0:
            raise ValueError("period t1 + t2 + t3 must be positive")
        for name in ("wx", "wy", "wz"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.seed < 0 or self.realization_index < 0:
            raise ValueError("seed and realization_index must be non-negative")

    @property
    def period(self) -> float:
        return self.t1 + self.t2 + self.t3


@dataclass(frozen=True)
class DisorderRealization:
    """One draw of local fields and bonds; hx/hy/hz have one entry per site."""

    hx: np.ndarray
    hy: np.ndarray
    hz: np.ndarray
    bonds: tuple


def sample_disorder(params: ModelParams) -> DisorderRealization:
    """Draw the disorder realization selected by (seed, realization_index).

    The stream layout is fixed: hx, hy, hz site fields, then bond randomness.
    Draws are consumed even when a width is zero, so realizations that differ
    only in the coupling spec share identical fields.
    """
    rng = np.random.default_rng(
        np.random.SeedSequence([params.seed, params.realization_index])
    )
    hx = rng.uniform(0.0, params.wx, params.n_sites)
    hy = rng.uniform(0.0, params.wy, params.n_sites)
    hz = rng.uniform(0.0, params.wz, params.n_sites)
    bonds = params.coupling.bonds(params.n_sites, rng)
    return DisorderRealization(hx=hx, hy=hy, hz=hz, bonds=bonds)


@dataclass(frozen=True)
class FloquetCycle:
    """One period compiled into directly applicable layers.

    interaction_phases[z] = t2 * sum over bonds of J_ij * z_i * z_j, so the
    diagonal layer is exp(+i * interaction_phases). layer3 axes/angles hold the
    per-site field rotations. Compilation is pure: identical params give
    bit-identical contents.
    """

    n_sites: int
    layer1_angle: float
    interaction_phases: np.ndarray
    layer3_axes: np.ndarray
    layer3_angles: np.ndarray
    period: float


def build_cycle(params: ModelParams) -> FloquetCycle:
    """Compile one driving period for one disorder realization."""
    realization = sample_disorder(params)
    dim = 1 << params.n_sites
    idx = np.arange(dim, dtype=np.int64)
    phases = np.zeros(dim)
    for i, j, strength in realization.bonds:
        # z_i * z_j = 1 - 2 * (bit_i XOR bit_j)
        anti = ((idx >> i) ^ (idx >> j)) & 1
        phases += (params.t2 * strength) * (1.0 - 2.0 * anti)

    axes = np.zeros((params.n_sites, 3))
    angles = np.zeros(params.n_sites)
    h = np.stack([realization.hx, realization.hy, realization.hz], axis=1)
    norms = np.linalg.norm(h, axis=1)
    for i in range(params.n_sites):
        if norms[i] > 0.0:
            axes[i] = -h[i] / norms[i]
            angles[i] = 2.0 * norms[i] * params.t3
        else:
            axes[i] = _X_AXIS
    return FloquetCycle(
        n_sites=params.n_sites,
        layer1_angle=math.pi * params.g,
        interaction_phases=phases,
        layer3_axes=axes,
        layer3_angles=angles,
        period=params.period,
    )


def _apply_cycle_kernel(amps: np.ndarray, cycle: FloquetCycle):
    """Advance a (2**n,) or (2**n, m) amplitude array by one period, in place."""
    n = cycle.n_sites
    if cycle.layer1_angle != 0.0:
        u1 = rotation_matrix(_X_AXIS, cycle.layer1_angle)
        for site in range(n):
            _apply_rotation_kernel(amps, n, site, u1)
    _apply_phase_kernel(amps, cycle.interaction_phases)
    for site in range(n):
        if cycle.layer3_angles[site] != 0.0:
            u3 = rotation_matrix(cycle.layer3_axes[site], cycle.layer3_angles[site])
            _apply_rotation_kernel(amps, n, site, u3)


def apply_cycle(state: SpinState, cycle: FloquetCycle) -> SpinState:
    """Advance the state by exactly one period (layer 1, 2, 3 in order), in place."""
    if state.n_sites != cycle.n_sites:
        raise ValueError("state and cycle have different chain lengths")
    _apply_cycle_kernel(state.amplitudes, cycle)
    return state
