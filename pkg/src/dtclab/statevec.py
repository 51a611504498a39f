"""Dense state vectors for chains of spin-1/2 sites, with in-place layer kernels.

Conventions, fixed across the package:

* Basis index ``z`` encodes the chain in binary: bit ``b`` of ``z`` is site ``b``,
  with bit value 0 meaning spin up (``sigma^z = +1``) and 1 meaning spin down.
  Bit 0 (the least significant bit) is site 0.
* Rotations follow ``U = exp(-i * angle/2 * axis . sigma)``.
* Amplitudes are double-precision complex. The maximum chain length is 24 sites
  (2^24 amplitudes); the dense spectral tools cap out much earlier.

All ``apply_*`` operations mutate the state in place and return it, so a state
is owned by one execution context at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_SITES = 24

_AXIS_TOL = 1e-12


@dataclass
class SpinState:
    """Wavefunction of ``n_sites`` spins as a flat array of 2**n_sites amplitudes."""

    n_sites: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.n_sites <= MAX_SITES:
            raise ValueError(f"n_sites must be in [1, {MAX_SITES}], got {self.n_sites}")
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_sites,):
            raise ValueError(
                f"amplitude array must have shape ({1 << self.n_sites},), got {amps.shape}"
            )
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "SpinState":
        return SpinState(self.n_sites, self.amplitudes.copy())


def new_basis_state(n_sites: int, bits: str) -> SpinState:
    """Build the computational basis state described by a bitstring.

    Args:
        n_sites: chain length.
        bits: string of '0'/'1' of length ``n_sites``, read as a binary number;
            the rightmost character is site 0, '0' is spin up.

    Returns:
        A normalized SpinState with a single nonzero amplitude.
    """
    if len(bits) != n_sites or set(bits) - {"0", "1"}:
        raise ValueError(f"bits must be a length-{n_sites} string of 0/1, got {bits!r}")
    amps = np.zeros(1 << n_sites, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return SpinState(n_sites, amps)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """2x2 unitary exp(-i*angle/2 * axis.sigma) for a unit 3-vector axis."""
    ax = np.asarray(axis, dtype=float)
    if ax.shape != (3,) or abs(np.linalg.norm(ax) - 1.0) > _AXIS_TOL:
        raise ValueError(f"axis must be a unit 3-vector, got {axis!r}")
    c = np.cos(angle / 2.0)
    s = np.sin(angle / 2.0)
    nx, ny, nz = ax
    return np.array(
        [
            [c - 1j * s * nz, -1j * s * (nx - 1j * ny)],
            [-1j * s * (nx + 1j * ny), c + 1j * s * nz],
        ],
        dtype=np.complex128,
    )


def _check_site(n_sites: int, site: int):
    if not 0 <= site < n_sites:
        raise ValueError(f"site must be in [0, {n_sites}), got {site}")


def _apply_rotation_kernel(amps: np.ndarray, n_sites: int, site: int, u: np.ndarray):
    """Apply a 2x2 unitary to one site of a C-contiguous amplitude array in place.

    ``amps`` may be the flat state (2**n,) or a column batch (2**n, m); the index
    decomposition z = high * 2**(site+1) + bit * 2**site + low makes both cases the
    same reshape, with any trailing batch axis absorbed into the low block.
    """
    block = amps.size >> (n_sites - site)
    v = amps.reshape(-1, 2, block)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    v[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1


def _apply_phase_kernel(amps: np.ndarray, phase: np.ndarray):
    """Multiply amplitudes by exp(+i*phase) per basis index, in place."""
    factors = np.exp(1j * phase)
    if amps.ndim == 1:
        amps *= factors
    else:
        amps *= factors[:, None]


def apply_single_site_rotation(state: SpinState, site: int, axis, angle: float) -> SpinState:
    """Rotate one site by exp(-i*angle/2 * axis.sigma), in place.

    Args:
        state: state to advance (mutated).
        site: target site, 0-based.
        axis: unit 3-vector (x, y, z).
        angle: rotation angle in radians.

    Returns:
        The same state, for chaining.
    """
    _check_site(state.n_sites, site)
    u = rotation_matrix(axis, angle)
    _apply_rotation_kernel(state.amplitudes, state.n_sites, site, u)
    return state


def apply_diagonal_phase(state: SpinState, phase_per_basis: np.ndarray) -> SpinState:
    """Multiply the amplitude at each basis index z by exp(+i*phase_per_basis[z]).

    The phase array must be real with one entry per basis state. Diagonal layers
    commute, so successive calls may be reordered freely.
    """
    phase = np.asarray(phase_per_basis, dtype=float)
    if phase.shape != state.amplitudes.shape:
        raise ValueError(
            f"phase array must have shape {state.amplitudes.shape}, got {phase.shape}"
        )
    _apply_phase_kernel(state.amplitudes, phase)
    return state


def expectation_sigma_z(state: SpinState, site: int) -> float:
    """<sigma^z> at one site: P(bit=0) - P(bit=1) under the bit convention."""
    _check_site(state.n_sites, site)
    p = np.abs(state.amplitudes) ** 2
    v = p.reshape(-1, 2, 1 << site)
    return float(v[:, 0, :].sum() - v[:, 1, :].sum())


def all_sigma_z(state: SpinState) -> np.ndarray:
    """<sigma^z> for every site, as a length-n_sites float array."""
    p = np.abs(state.amplitudes) ** 2
    out = np.empty(state.n_sites)
    for site in range(state.n_sites):
        v = p.reshape(-1, 2, 1 << site)
        out[site] = v[:, 0, :].sum() - v[:, 1, :].sum()
    return out


def inner_product(a: SpinState, b: SpinState) -> complex:
    """<a|b>, conjugating the first argument."""
    if a.n_sites != b.n_sites:
        raise ValueError("states must have the same number of sites")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
