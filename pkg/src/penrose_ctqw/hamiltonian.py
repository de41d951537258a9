"""Tight-binding Hamiltonians on classified Penrose bonds.

H[i][j] takes value a on edges, b on thin-rhombus short diagonals, c on
fat-rhombus short diagonals, and 0 elsewhere; on-site energies are 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import FAT_DIAGONAL, THIN_DIAGONAL, PenroseLattice


@dataclass(frozen=True)
class HoppingModel:
    """Hopping strengths (a, b, c) for the three bond families."""

    a: float = 1.0
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"hopping {name} must be finite, got {v}")
        if self.a <= 0:
            raise ValueError(f"hopping a must be positive, got {self.a}")
        if self.b < 0 or self.c < 0:
            raise ValueError("hoppings b and c must be non-negative")

    def label(self) -> str:
        return f"a={self.a:g},b={self.b:g},c={self.c:g}"


# Edge hopping only: the 0/1 adjacency matrix of the rhombus-side graph.
EDGE_MODEL = HoppingModel(1.0, 0.0, 0.0)
# Thin diagonals switched on at strength 1.618.
THIN_MODEL = HoppingModel(1.0, 1.618, 0.0)
# Both diagonal families on, at 1.618 and 0.85.
FULL_MODEL = HoppingModel(1.0, 1.618, 0.85)
# Hoppings set to the reciprocal of each bond length.
INVERSE_DISTANCE_MODEL = HoppingModel(1.0, 1.0 / THIN_DIAGONAL, 1.0 / FAT_DIAGONAL)

PRESETS = {
    "edge": EDGE_MODEL,
    "thin": THIN_MODEL,
    "full": FULL_MODEL,
    "inverse-distance": INVERSE_DISTANCE_MODEL,
}


@dataclass(frozen=True)
class Hamiltonian:
    matrix: np.ndarray
    model: HoppingModel

    @property
    def n(self) -> int:
        return len(self.matrix)

    def norm2_upper(self) -> float:
        """Cheap upper bound on the spectral norm (max absolute row sum)."""
        return float(np.abs(self.matrix).sum(axis=1).max())


def build(lattice: PenroseLattice, model: HoppingModel) -> Hamiltonian:
    n = lattice.n
    h = np.zeros((n, n))
    families = (
        (model.a, lattice.bonds.edges),
        (model.b, lattice.bonds.thin_diagonals),
        (model.c, lattice.bonds.fat_diagonals),
    )
    for strength, pairs in families:
        if strength != 0.0 and len(pairs):
            h[pairs[:, 0], pairs[:, 1]] = strength
            h[pairs[:, 1], pairs[:, 0]] = strength
    return Hamiltonian(matrix=h, model=model)


def to_coordinate_text(h: Hamiltonian) -> str:
    """Matrix dump as sorted "i j value" lines, nonzero entries only."""
    rows, cols = np.nonzero(h.matrix)
    lines = [f"{i} {j} {float(h.matrix[i, j])!r}" for i, j in zip(rows, cols)]
    return "\n".join(lines) + ("\n" if lines else "")
