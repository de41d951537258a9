"""Network-level transport metrics and the (b, c) parameter sweep."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import ctqw
from .hamiltonian import HoppingModel, build
from .lattice import PenroseLattice
from .spectral import Spectrum, decompose

THREADS_ENV = "PENROSE_CTQW_THREADS"


def resolve_threads(explicit: int | None = None) -> int:
    """Worker count: explicit argument, else the environment, else all cores."""
    if explicit is None:
        raw = os.environ.get(THREADS_ENV, "").strip()
        if raw:
            try:
                explicit = int(raw)
            except ValueError:
                raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if explicit is None:
        return os.cpu_count() or 1
    if explicit < 1:
        raise ValueError(f"thread count must be >= 1, got {explicit}")
    return explicit


def average_return_probability(spec: Spectrum, t: float) -> float:
    """Mean over nodes of pi_jj(t)."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    w = spec.eigenvectors**2
    amps = w @ np.exp(-1j * spec.eigenvalues * t)
    return float(np.mean(np.clip(np.abs(amps) ** 2, 0.0, 1.0)))


def alpha_bar(spec: Spectrum, t: float) -> complex:
    """(1/N) sum_n exp(-i E_n t); |alpha_bar|^2 lower-bounds the mean return."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    return complex(np.mean(np.exp(-1j * spec.eigenvalues * t)))


def alpha_bar_squared_lta(spec: Spectrum) -> float:
    """Exact long-time average of |alpha_bar|^2: sum over clusters of (D_E/N)^2."""
    sizes = spec.cluster_sizes()
    return float(np.sum((sizes / spec.n) ** 2))


@dataclass(frozen=True)
class EfficiencyReport:
    """Scalar transport-efficiency summary of one spectrum.

    chi_bar is the mean diagonal long-time average; small values mean the
    walker escapes its start node, i.e. efficient transport.
    d0_upper_bound = sqrt(chi_bar) caps the zero-cluster fraction.
    """

    n: int
    chi_bar: float
    d0: int
    d0_over_n: float
    d0_upper_bound: float
    alpha_sq_lta: float
    alpha_bar_series: list[tuple[float, float]] | None = None

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "chi_bar": self.chi_bar,
            "d0": self.d0,
            "d0_over_n": self.d0_over_n,
            "d0_upper_bound": self.d0_upper_bound,
            "alpha_sq_lta": self.alpha_sq_lta,
        }
        if self.alpha_bar_series is not None:
            out["alpha_bar_series"] = [[t, v] for t, v in self.alpha_bar_series]
        return out


def efficiency_report(spec: Spectrum, series_times: np.ndarray | None = None) -> EfficiencyReport:
    chi_bar = float(np.mean(ctqw.lta_diagonal(spec)))
    series = None
    if series_times is not None:
        series = [(float(t), float(abs(alpha_bar(spec, t)) ** 2)) for t in series_times]
    return EfficiencyReport(
        n=spec.n,
        chi_bar=chi_bar,
        d0=spec.d0,
        d0_over_n=spec.d0 / spec.n,
        d0_upper_bound=float(np.sqrt(chi_bar)),
        alpha_sq_lta=alpha_bar_squared_lta(spec),
        alpha_bar_series=series,
    )


def threshold_table(chi, thresholds) -> list[float]:
    """Fraction of nodes with chi_jj >= theta for each threshold theta.

    Accepts the full LTA matrix or just its diagonal.
    """
    chi = np.asarray(chi, dtype=float)
    diag = np.diagonal(chi) if chi.ndim == 2 else chi
    thresholds = [float(t) for t in thresholds]
    if any(t2 <= t1 for t1, t2 in zip(thresholds, thresholds[1:])):
        raise ValueError("thresholds must be strictly ascending")
    return [float(np.mean(diag >= t)) for t in thresholds]


@dataclass(frozen=True)
class SweepGrid:
    """chi_bar over a (b, c) grid at fixed a.

    chi_bar[i, j] corresponds to (b_values[i], c_values[j]).  Failed cells
    hold NaN and carry a message in errors.
    """

    b_values: np.ndarray
    c_values: np.ndarray
    chi_bar: np.ndarray
    n: int
    a: float
    errors: list[dict] = field(default_factory=list)


def default_axis() -> np.ndarray:
    return np.round(np.arange(0, 21) * 0.1, 10)


def sweep(
    lattice: PenroseLattice,
    a: float = 1.0,
    b_axis=None,
    c_axis=None,
    threads: int | None = None,
    tol: float | None = None,
) -> SweepGrid:
    """chi_bar for every (b, c) cell; cells run concurrently.

    Cells are independent eigenproblems, so failures are collected per
    cell rather than aborting the grid.
    """
    b_values = default_axis() if b_axis is None else np.asarray(list(b_axis), dtype=float)
    c_values = default_axis() if c_axis is None else np.asarray(list(c_axis), dtype=float)
    if len(b_values) == 0 or len(c_values) == 0:
        raise ValueError("sweep axes must be non-empty")
    if np.any(b_values < 0) or np.any(c_values < 0):
        raise ValueError("sweep axes must be non-negative")

    grid = np.full((len(b_values), len(c_values)), np.nan)
    errors: list[dict] = []

    def cell(ib: int, ic: int):
        model = HoppingModel(a=a, b=float(b_values[ib]), c=float(c_values[ic]))
        spec = decompose(build(lattice, model), tol=tol)
        return float(np.mean(ctqw.lta_diagonal(spec)))

    workers = resolve_threads(threads)
    jobs = [(ib, ic) for ib in range(len(b_values)) for ic in range(len(c_values))]
    if workers == 1:
        results = map(lambda p: _run_cell(cell, p), jobs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _run_cell(cell, p), jobs))
    for (ib, ic), value, message in results:
        if message is None:
            grid[ib, ic] = value
        else:
            errors.append({"b": float(b_values[ib]), "c": float(c_values[ic]), "error": message})
    return SweepGrid(b_values=b_values, c_values=c_values, chi_bar=grid,
                     n=lattice.n, a=float(a), errors=errors)


def _run_cell(cell, pos):
    ib, ic = pos
    try:
        return pos, cell(ib, ic), None
    except Exception as exc:  # noqa: BLE001 - cell failures must not kill the grid
        return pos, float("nan"), f"{type(exc).__name__}: {exc}"


def zero_state_support_profile(spec: Spectrum, lattice: PenroseLattice) -> dict[int, float]:
    """Zero-projector weight gathered by edge degree.

    Returns {degree: sum over nodes of that degree of (P0)_jj}; empty when
    the spectrum has no zero cluster.  The weights total d0.
    """
    if spec.d0 == 0:
        return {}
    p0 = spec.zero_projector_diagonal()
    profile: dict[int, float] = {}
    for deg in np.unique(lattice.degrees):
        profile[int(deg)] = float(p0[lattice.degrees == deg].sum())
    return profile
