"""Eigendecomposition and degenerate-cluster bookkeeping.

Eigenvalues are grouped into clusters by a greedy gap rule: a new cluster
starts whenever the ascending gap exceeds tau.  The zero cluster is the
one whose mean eigenvalue lies within tau of 0; strictly localized states
of the edge-only model sit there exactly, so tau only needs to dominate
solver noise (~1e-12 * norm).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import Hamiltonian

DEFAULT_TOL_SCALE = 1e-8


class SolverError(RuntimeError):
    pass


def default_tol(norm2: float) -> float:
    return DEFAULT_TOL_SCALE * max(1.0, norm2)


def cluster_eigenvalues(eigenvalues: np.ndarray, tol: float) -> list[np.ndarray]:
    """Partition ascending eigenvalues into degenerate groups."""
    if tol <= 0:
        raise ValueError(f"cluster tolerance must be positive, got {tol}")
    n = len(eigenvalues)
    if n == 0:
        return []
    breaks = np.flatnonzero(np.diff(eigenvalues) > tol) + 1
    return [np.arange(s, e) for s, e in zip(np.r_[0, breaks], np.r_[breaks, n])]


@dataclass(frozen=True)
class Spectrum:
    """Full spectral data of one Hamiltonian.

    eigenvectors[:, n] pairs with eigenvalues[n]; clusters index into the
    ascending eigenvalue order.  zero_cluster is the position within
    ``clusters`` of the E=0 group, or None when no cluster mean lies
    within tol of zero.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clusters: list[np.ndarray]
    zero_cluster: int | None
    tol: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def d0(self) -> int:
        if self.zero_cluster is None:
            return 0
        return len(self.clusters[self.zero_cluster])

    @property
    def norm2(self) -> float:
        if self.n == 0:
            return 0.0
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))

    def cluster_ids(self) -> np.ndarray:
        ids = np.empty(self.n, dtype=np.int64)
        for ci, idx in enumerate(self.clusters):
            ids[idx] = ci
        return ids

    def cluster_sizes(self) -> np.ndarray:
        return np.array([len(idx) for idx in self.clusters], dtype=np.int64)

    def zero_subspace(self) -> np.ndarray:
        """Orthonormal basis (columns) of the E=0 cluster; shape (n, d0)."""
        if self.zero_cluster is None:
            return np.empty((self.n, 0))
        return self.eigenvectors[:, self.clusters[self.zero_cluster]]

    def projector(self, cluster_index: int) -> np.ndarray:
        block = self.eigenvectors[:, self.clusters[cluster_index]]
        return block @ block.T

    def zero_projector_diagonal(self) -> np.ndarray:
        block = self.zero_subspace()
        return np.einsum("nk,nk->n", block, block)


def decompose(h: Hamiltonian, tol: float | None = None) -> Spectrum:
    """Full symmetric eigendecomposition plus cluster grouping.

    tol overrides the degeneracy tolerance; default is
    1e-8 * max(1, spectral norm).
    """
    matrix = np.asarray(h.matrix, dtype=float)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigendecomposition failed: {exc}") from exc
    if tol is None:
        norm2 = float(max(abs(eigenvalues[0]), abs(eigenvalues[-1]))) if len(eigenvalues) else 0.0
        tol = default_tol(norm2)
    elif tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    clusters = cluster_eigenvalues(eigenvalues, tol)
    zero_cluster = None
    best = None
    for ci, idx in enumerate(clusters):
        mean = abs(float(eigenvalues[idx].mean()))
        if mean <= tol and (best is None or mean < best):
            zero_cluster = ci
            best = mean
    return Spectrum(
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        clusters=clusters,
        zero_cluster=zero_cluster,
        tol=tol,
    )
