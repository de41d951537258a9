"""Continuous-time quantum walk evolution and long-time averages.

All quantities are evaluated in the eigenbasis: the walker amplitude is
alpha_kj(t) = sum_n <k|psi_n> exp(-i E_n t) <psi_n|j> and pi_kj = |alpha|^2.
The long-time average of pi is exact under the convention that clusters
at the working tolerance are exactly degenerate and distinct clusters
never cancel: chi_kj = sum_E |(P_E)_kj|^2.
"""

from __future__ import annotations

import numpy as np

from .hamiltonian import Hamiltonian
from .spectral import Spectrum

PROB_SLACK = 1e-12


def _check_node(spec: Spectrum, j: int) -> int:
    j = int(j)
    if j < 0 or j >= spec.n:
        raise IndexError(f"node id {j} out of range [0, {spec.n})")
    return j


def _clamp(p: np.ndarray | float):
    return np.clip(p, 0.0, 1.0)


def amplitude_column(spec: Spectrum, j: int, t: float) -> np.ndarray:
    """Complex walker amplitudes <k|exp(-iHt)|j> for all k."""
    j = _check_node(spec, j)
    phases = np.exp(-1j * spec.eigenvalues * t)
    weights = spec.eigenvectors[j] * phases
    return spec.eigenvectors @ weights


def transition_probability(spec: Spectrum, j: int, k: int, t: float) -> float:
    """pi_kj(t): probability to find at k a walker started at j."""
    j = _check_node(spec, j)
    k = _check_node(spec, k)
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    phases = np.exp(-1j * spec.eigenvalues * t)
    amp = np.sum(spec.eigenvectors[k] * phases * spec.eigenvectors[j])
    return float(_clamp(abs(amp) ** 2))


def evolve_distribution(spec: Spectrum, j: int, t: float) -> np.ndarray:
    """Probability over all nodes after time t, starting at node j."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    amp = amplitude_column(spec, j, t)
    return _clamp(np.abs(amp) ** 2)


def snapshot(spec: Spectrum, t: float) -> np.ndarray:
    """Full pi(t) matrix; column j is the distribution started at j."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    phases = np.exp(-1j * spec.eigenvalues * t)
    u = (spec.eigenvectors * phases) @ spec.eigenvectors.T.astype(complex)
    return _clamp(np.abs(u) ** 2)


def return_series(spec: Spectrum, j: int, t_max: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """pi_jj(t) on a uniform grid over [0, t_max] (inclusive)."""
    j = _check_node(spec, j)
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")
    times = np.linspace(0.0, t_max, samples)
    # pi_jj(t) = |sum_n w_n exp(-i E_n t)|^2 with w_n = psi_n(j)^2
    w = spec.eigenvectors[j] ** 2
    phases = np.exp(-1j * np.outer(times, spec.eigenvalues))
    amp = phases @ w
    return times, _clamp(np.abs(amp) ** 2)


def lta_exact(spec: Spectrum) -> np.ndarray:
    """Long-time average chi as a full matrix.

    Size-1 clusters are batched through one rank-style product; only
    genuinely degenerate clusters need explicit projectors.
    """
    n = spec.n
    chi = np.zeros((n, n))
    singles = [idx[0] for idx in spec.clusters if len(idx) == 1]
    if singles:
        v2 = spec.eigenvectors[:, singles] ** 2
        chi += v2 @ v2.T
    for idx in spec.clusters:
        if len(idx) > 1:
            block = spec.eigenvectors[:, idx]
            p = block @ block.T
            chi += p * p
    return chi


def lta_diagonal(spec: Spectrum) -> np.ndarray:
    """chi_jj for every node without forming the full matrix."""
    n = spec.n
    chi = np.zeros(n)
    singles = [idx[0] for idx in spec.clusters if len(idx) == 1]
    if singles:
        v2 = spec.eigenvectors[:, singles] ** 2
        chi += np.einsum("nk,nk->n", v2, v2)
    for idx in spec.clusters:
        if len(idx) > 1:
            block = spec.eigenvectors[:, idx]
            pjj = np.einsum("nk,nk->n", block, block)
            chi += pjj**2
    return chi


def lta_numeric(spec: Spectrum, j: int, horizon: float, samples: int) -> float:
    """Trapezoidal average of pi_jj over [0, horizon]."""
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if samples < 100:
        raise ValueError(f"samples must be at least 100, got {samples}")
    times, probs = return_series(spec, j, horizon, samples)
    return float(np.trapezoid(probs, times) / horizon)


def return_bound_quartic(spec: Spectrum, j: int) -> float:
    """Sum of |<psi_0k|j>|^4 over the zero-cluster basis.

    Lower-bounds chi_jj for any orthonormal basis choice; the value itself
    depends on the basis the solver returned, unlike the projector form.
    """
    j = _check_node(spec, j)
    block = spec.zero_subspace()
    if block.shape[1] == 0:
        return 0.0
    return float(np.sum(block[j] ** 4))


def return_bound_projector(spec: Spectrum, j: int) -> float:
    """((P0)_jj)^2: basis-free lower bound on chi_jj via the zero cluster."""
    j = _check_node(spec, j)
    block = spec.zero_subspace()
    if block.shape[1] == 0:
        return 0.0
    return float(np.sum(block[j] ** 2) ** 2)


def verify_zero_state(h: Hamiltonian, candidate: dict[int, float]) -> dict:
    """Residual check of a sparse zero-energy eigenstate candidate.

    candidate maps node id to real amplitude and must be normalized
    within 1e-6.  Accepted when ||H psi|| <= 1e-8 * ||H||_2 (the spectral
    norm is bounded here by the max absolute row sum).
    """
    if not candidate:
        raise ValueError("candidate state is empty")
    n = h.n
    psi = np.zeros(n)
    for node, amp in candidate.items():
        node = int(node)
        if node < 0 or node >= n:
            raise IndexError(f"node id {node} out of range [0, {n})")
        psi[node] = float(amp)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"candidate state norm {norm!r} is not 1 within 1e-6")
    residual = float(np.linalg.norm(h.matrix @ psi))
    h_norm = h.norm2_upper()
    threshold = 1e-8 * max(1.0, h_norm)
    return {
        "residual": residual,
        "threshold": threshold,
        "accepted": bool(residual <= threshold),
        "support": int(np.count_nonzero(psi)),
    }
