"""Hamiltonian assembly from classified bonds."""

from __future__ import annotations

import numpy as np
import pytest

from penrose_ctqw import (
    EDGE_MODEL,
    FULL_MODEL,
    INVERSE_DISTANCE_MODEL,
    PRESETS,
    THIN_DIAGONAL,
    THIN_MODEL,
    FAT_DIAGONAL,
    HoppingModel,
    build,
)
from penrose_ctqw.hamiltonian import to_coordinate_text
from penrose_ctqw.lattice import BondSet, PenroseLattice


def toy_lattice():
    positions = np.array([[0.0, 0.0], [1.0, 0.0]])
    bonds = BondSet(
        edges=np.array([[0, 1]]),
        thin_diagonals=np.empty((0, 2), dtype=np.int64),
        fat_diagonals=np.empty((0, 2), dtype=np.int64),
    )
    return PenroseLattice(
        positions=positions,
        bonds=bonds,
        degrees=np.array([1, 1]),
        interior=np.zeros(2, dtype=bool),
        depth=0,
        triangles=None,
    )


def test_two_vertex_toy():
    h = build(toy_lattice(), HoppingModel(a=2.0))
    assert h.matrix.tolist() == [[0.0, 2.0], [2.0, 0.0]]


def test_model_validation():
    with pytest.raises(ValueError):
        HoppingModel(a=0.0)
    with pytest.raises(ValueError):
        HoppingModel(a=-1.0)
    with pytest.raises(ValueError):
        HoppingModel(a=1.0, b=-0.1)
    with pytest.raises(ValueError):
        HoppingModel(a=1.0, c=-0.1)
    with pytest.raises(ValueError):
        HoppingModel(a=float("nan"))
    with pytest.raises(ValueError):
        HoppingModel(a=1.0, b=float("inf"))


def test_presets():
    assert PRESETS["edge"] == EDGE_MODEL == HoppingModel(1.0, 0.0, 0.0)
    assert PRESETS["thin"] == THIN_MODEL == HoppingModel(1.0, 1.618, 0.0)
    assert PRESETS["full"] == FULL_MODEL == HoppingModel(1.0, 1.618, 0.85)
    inv = PRESETS["inverse-distance"]
    assert inv == INVERSE_DISTANCE_MODEL
    assert inv.b == pytest.approx(1.0 / THIN_DIAGONAL)
    assert inv.c == pytest.approx(1.0 / FAT_DIAGONAL)
    assert inv.b == pytest.approx(1.618034, abs=1e-6)
    assert inv.c == pytest.approx(0.850651, abs=1e-6)


def test_edge_model_is_adjacency_matrix(lattice4):
    h = build(lattice4, EDGE_MODEL).matrix
    assert np.array_equal(h, h.T)
    assert np.all(np.diag(h) == 0)
    values = np.unique(h)
    assert set(values.tolist()) <= {0.0, 1.0}
    assert h.sum() == 2 * len(lattice4.bonds.edges)
    i, j = lattice4.bonds.edges[0]
    assert h[i, j] == 1.0


def test_diagonal_hoppings_take_exact_values(lattice4):
    h = build(lattice4, FULL_MODEL).matrix
    for (i, j) in lattice4.bonds.thin_diagonals[:5]:
        assert h[i, j] == 1.618
    for (i, j) in lattice4.bonds.fat_diagonals[:5]:
        assert h[i, j] == 0.85
    nnz = np.count_nonzero(h)
    expected = 2 * (
        len(lattice4.bonds.edges)
        + len(lattice4.bonds.thin_diagonals)
        + len(lattice4.bonds.fat_diagonals)
    )
    assert nnz == expected


def test_sparsity_tracks_zero_strengths(lattice4):
    h = build(lattice4, THIN_MODEL).matrix
    nnz = np.count_nonzero(h)
    assert nnz == 2 * (len(lattice4.bonds.edges) + len(lattice4.bonds.thin_diagonals))
    for (i, j) in lattice4.bonds.fat_diagonals[:5]:
        assert h[i, j] == 0.0


def test_symmetry_is_exact(lattice4):
    h = build(lattice4, FULL_MODEL).matrix
    assert np.array_equal(h, h.T)


def test_coordinate_text_dump():
    h = build(toy_lattice(), HoppingModel(a=2.0))
    text = to_coordinate_text(h)
    assert text == "0 1 2.0\n1 0 2.0\n"
    empty = build(toy_lattice(), HoppingModel(a=1.0, b=0.0, c=0.0))
    assert "0 1 1.0" in to_coordinate_text(empty)
