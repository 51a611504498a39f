"""Dense Floquet-operator diagnostics: quasi-energies, pi pairing, cat structure.

The one-period operator U is diagonalized via a complex Schur decomposition
(for a unitary input the Schur form is numerically diagonal and the returned
basis is orthonormal by construction). Eigenphases phi map to quasi-energies
eps = -phi / T folded into the branch (-Omega/2, Omega/2] with Omega = 2*pi/T.

Each eigenstate's pairing partner is the eigenvector with the largest overlap
under the global spin flip X = prod_i sigma^x_i (which, in the bit convention,
just reverses the amplitude array). The pairing defect measures how far the
partner's quasi-energy splitting is from exactly Omega/2; a defect near zero
for every state is the spectral fingerprint of period doubling. Cat metrics
quantify whether an eigenvector is an equal-weight superposition of a z
pattern and its global flip.

Dense mode is capped at 12 sites; dynamics handles longer chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .model import FloquetCycle, _apply_cycle_kernel

MAX_DENSE_SITES = 12
UNITARITY_TOL = 1e-8
DEGENERACY_TOL = 1e-12


@dataclass
class SpectrumReport:
    """Sorted quasi-energy spectrum plus per-eigenstate diagnostics.

    quasi_energies is ascending; eigenvectors[:, a] belongs to quasi_energies[a].
    degenerate flags states whose circular gap to a neighbor is below 1e-12 (the
    pairing analysis cannot resolve partners inside such clusters). The pairing
    and cat-metric arrays are filled by pairing_defect / fill_cat_metrics.
    """

    n_sites: int
    period: float
    quasi_energies: np.ndarray
    eigenvectors: np.ndarray
    degenerate: np.ndarray
    partner_index: np.ndarray | None = None
    pairing_defect: np.ndarray | None = None
    mean_total_mz: np.ndarray | None = None
    mz_variance: np.ndarray | None = None
    edge_correlator: np.ndarray | None = None

    @property
    def omega(self) -> float:
        return 2.0 * np.pi / self.period


@dataclass(frozen=True)
class CatMetrics:
    mean_total_mz: float
    mz_variance: float
    edge_correlator: float


def floquet_operator_dense(cycle: FloquetCycle) -> np.ndarray:
    """Dense one-period operator; column a is the evolved basis state a."""
    if cycle.n_sites > MAX_DENSE_SITES:
        raise ValueError(
            f"dense mode is capped at {MAX_DENSE_SITES} sites, got {cycle.n_sites}"
        )
    dim = 1 << cycle.n_sites
    u = np.eye(dim, dtype=np.complex128)
    _apply_cycle_kernel(u, cycle)
    return u


def quasi_energies(operator: np.ndarray, period: float) -> SpectrumReport:
    """Diagonalize a one-period operator into a sorted quasi-energy report.

    Args:
        operator: square unitary matrix (checked to 1e-8).
        period: driving period T > 0.

    Returns:
        SpectrumReport with quasi-energies in (-Omega/2, Omega/2], ascending,
        and the matching orthonormal eigenvector columns.
    """
    u = np.asarray(operator, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"operator must be square, got shape {u.shape}")
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    dim = u.shape[0]
    n_sites = dim.bit_length() - 1
    if 1 << n_sites != dim:
        raise ValueError(f"operator dimension must be a power of two, got {dim}")
    defect = np.abs(u.conj().T @ u - np.eye(dim)).max()
    if defect > UNITARITY_TOL:
        raise ValueError(f"operator is not unitary: max |U^dag U - I| = {defect:.3e}")

    t_schur, q = scipy.linalg.schur(u, output="complex")
    eigvals = np.diag(t_schur)
    omega = 2.0 * np.pi / period
    eps = -np.angle(eigvals) / period
    # fold the single half-open boundary so the branch is (-Omega/2, Omega/2]
    eps = np.where(eps <= -omega / 2.0, eps + omega, eps)
    order = np.argsort(eps, kind="stable")
    eps = eps[order]
    vecs = q[:, order]

    gap_next = np.empty(dim)
    if dim > 1:
        gap_next[:-1] = np.diff(eps)
        gap_next[-1] = eps[0] + omega - eps[-1]  # circular wrap
        degenerate = np.minimum(gap_next, np.roll(gap_next, 1)) < DEGENERACY_TOL
    else:
        degenerate = np.zeros(1, dtype=bool)
    return SpectrumReport(
        n_sites=n_sites,
        period=period,
        quasi_energies=eps,
        eigenvectors=vecs,
        degenerate=degenerate,
    )


def pairing_defect(report: SpectrumReport) -> np.ndarray:
    """Identify each eigenstate's global-flip partner and its splitting defect.

    The partner of state a is argmax over b != a of |<u_b| X |u_a>|; the defect
    is | ((eps_a - eps_b) mod Omega) - Omega/2 |, in [0, Omega/2]. Results are
    stored on the report (partner_index, pairing_defect) and returned.
    """
    vecs = report.eigenvectors
    overlap = np.abs(vecs.conj().T @ vecs[::-1, :])  # [b, a] = |<u_b|X|u_a>|
    np.fill_diagonal(overlap, -1.0)
    partner = np.asarray(overlap.argmax(axis=0))
    eps = report.quasi_energies
    gaps = np.mod(eps - eps[partner], report.omega)
    defect = np.abs(gaps - report.omega / 2.0)
    report.partner_index = partner
    report.pairing_defect = defect
    return defect


@lru_cache(maxsize=8)
def _z_tables(n_sites: int):
    """Total-magnetization and edge-sign lookups per basis index."""
    idx = np.arange(1 << n_sites, dtype=np.int64)
    popcount = np.array([int(z).bit_count() for z in idx])
    total_mz = (n_sites - 2 * popcount).astype(float)
    s_first = 1.0 - 2.0 * (idx & 1)
    s_last = 1.0 - 2.0 * ((idx >> (n_sites - 1)) & 1)
    return total_mz, s_first, s_last


def cat_metrics(eigenvector: np.ndarray, n_sites: int) -> CatMetrics:
    """Magnetization statistics that expose cat (flip-superposition) structure.

    For an equal-weight superposition of one z pattern and its global flip the
    mean total magnetization vanishes while the connected first/last-site
    correlator has magnitude 1.

    Args:
        eigenvector: normalized state of length 2**n_sites.
        n_sites: chain length.

    Returns:
        CatMetrics(mean_total_mz, mz_variance, edge_correlator), with the mean
        and variance normalized per site and per site squared.
    """
    v = np.asarray(eigenvector, dtype=np.complex128)
    if v.shape != (1 << n_sites,):
        raise ValueError(f"eigenvector must have length {1 << n_sites}, got {v.shape}")
    nrm = np.linalg.norm(v)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"eigenvector must be normalized, |v| = {nrm:.6f}")
    p = np.abs(v) ** 2
    total_mz, s_first, s_last = _z_tables(n_sites)
    mean_m = p @ total_mz
    mean_m2 = p @ (total_mz * total_mz)
    e_first = p @ s_first
    e_last = p @ s_last
    e_pair = p @ (s_first * s_last)
    return CatMetrics(
        mean_total_mz=float(mean_m / n_sites),
        mz_variance=float((mean_m2 - mean_m * mean_m) / n_sites**2),
        edge_correlator=float(e_pair - e_first * e_last),
    )


def fill_cat_metrics(report: SpectrumReport) -> SpectrumReport:
    """Compute cat metrics for every eigenvector column and store them."""
    dim = report.eigenvectors.shape[1]
    mean = np.empty(dim)
    var = np.empty(dim)
    edge = np.empty(dim)
    for a in range(dim):
        cm = cat_metrics(report.eigenvectors[:, a], report.n_sites)
        mean[a] = cm.mean_total_mz
        var[a] = cm.mz_variance
        edge[a] = cm.edge_correlator
    report.mean_total_mz = mean
    report.mz_variance = var
    report.edge_correlator = edge
    return report


def analyze_cycle(cycle: FloquetCycle) -> SpectrumReport:
    """Full spectral workup of one compiled cycle (dense mode, n <= 12)."""
    report = quasi_energies(floquet_operator_dense(cycle), cycle.period)
    pairing_defect(report)
    fill_cat_metrics(report)
    return report
