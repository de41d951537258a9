"""Independent references the walk code is checked against.

The propagator oracle is a scaled-and-squared Taylor series, sharing no
code with the eigenbasis evolution it validates.
"""

from __future__ import annotations

import numpy as np


def taylor_propagator(h: np.ndarray, t: float, terms: int = 40) -> np.ndarray:
    """exp(-i h t) by Taylor series with scaling and squaring."""
    h = np.asarray(h, dtype=complex)
    n = len(h)
    scale = max(1.0, float(np.abs(h).sum(axis=1).max()) * abs(t))
    squarings = max(0, int(np.ceil(np.log2(scale))))
    a = (-1j * t / (2**squarings)) * h
    u = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, terms + 1):
        term = term @ a / k
        u = u + term
    for _ in range(squarings):
        u = u @ u
    return u


def path_graph(n: int) -> np.ndarray:
    h = np.zeros((n, n))
    for i in range(n - 1):
        h[i, i + 1] = h[i + 1, i] = 1.0
    return h


def cycle_graph(n: int) -> np.ndarray:
    h = path_graph(n)
    h[0, n - 1] = h[n - 1, 0] = 1.0
    return h


def star_graph(n: int) -> np.ndarray:
    h = np.zeros((n, n))
    h[0, 1:] = 1.0
    h[1:, 0] = 1.0
    return h


def complete_graph(n: int) -> np.ndarray:
    return np.ones((n, n)) - np.eye(n)


def random_connected_graph(n: int, seed: int = 20240817, p: float = 0.35) -> np.ndarray:
    """Erdos-Renyi sample, re-drawn deterministically until connected."""
    rng = np.random.default_rng(seed)
    while True:
        upper = rng.random((n, n)) < p
        h = np.triu(upper, 1).astype(float)
        h = h + h.T
        if _connected(h):
            return h


def _connected(h: np.ndarray) -> bool:
    n = len(h)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(h[u]):
            if v not in seen:
                seen.add(int(v))
                stack.append(int(v))
    return len(seen) == n


def small_graph_corpus() -> list[tuple[str, np.ndarray]]:
    return [
        ("path-9", path_graph(9)),
        ("cycle-10", cycle_graph(10)),
        ("star-12", star_graph(12)),
        ("complete-8", complete_graph(8)),
        ("random-12", random_connected_graph(12)),
    ]
