"""Finite Penrose rhombus tilings viewed as tight-binding lattices.

A patch is grown by repeated Robinson-triangle subdivision of a decagonal
"sun" seed (five fat rhombi around the origin, each split into its two
mirror half-triangles).  After ``depth`` rounds every half-rhombus is
rescaled so the rhombus edge length is exactly 1, corners closer than
``DEDUP_TOL`` are merged into single vertices, and vertex pairs are
classified by Euclidean distance into the three bond families used by the
hopping model:

* edges              -- rhombus sides, length 1
* thin diagonals     -- short diagonal of the thin rhombus, 2*sin(pi/10)
* fat diagonals      -- short diagonal of the fat rhombus,  2*sin(pi/5)

The three lengths differ pairwise by more than 0.17, so the default
tolerance of 1e-6 classifies unambiguously.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

PHI = (1.0 + math.sqrt(5.0)) / 2.0
EDGE_LENGTH = 1.0
THIN_DIAGONAL = 2.0 * math.sin(math.pi / 10.0)
FAT_DIAGONAL = 2.0 * math.sin(math.pi / 5.0)
DEDUP_TOL = 1e-6
MAX_DEPTH = 8

# Half-rhombus kinds.  HALF_THIN is the acute golden triangle (apex 36deg),
# HALF_FAT the obtuse gnomon (apex 108deg).
HALF_THIN = 0
HALF_FAT = 1

# Corner angles in units of 36 degrees, per kind, in (apex, base, base) order.
# A vertex is interior exactly when its incident corner units sum to 10.
_ANGLE_UNITS = {HALF_THIN: (1, 2, 2), HALF_FAT: (3, 1, 1)}


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class BondSet:
    """Vertex index pairs for each bond family.

    Each array has shape (m, 2) with pair[0] < pair[1], rows sorted
    lexicographically.
    """

    edges: np.ndarray
    thin_diagonals: np.ndarray
    fat_diagonals: np.ndarray

    def counts(self) -> dict[str, int]:
        return {
            "edges": len(self.edges),
            "thin_diagonals": len(self.thin_diagonals),
            "fat_diagonals": len(self.fat_diagonals),
        }


@dataclass(frozen=True)
class TriangleSet:
    """Half-rhombus bookkeeping kept alongside the vertex graph.

    kinds[t] is HALF_THIN or HALF_FAT; corners[t] holds vertex ids in
    (apex, base1, base2) order.  Two half-triangles of the same kind that
    share their base edge form one complete rhombus.
    """

    kinds: np.ndarray
    corners: np.ndarray

    def count(self, kind: int) -> int:
        return int(np.count_nonzero(self.kinds == kind))


@dataclass(frozen=True)
class PenroseLattice:
    """A finite patch: vertex coordinates plus classified bonds.

    Vertex ids are row indices into ``positions``; rows are sorted by
    (x, y) rounded to 1e-6 so repeated runs number vertices identically.
    """

    positions: np.ndarray
    bonds: BondSet
    degrees: np.ndarray
    interior: np.ndarray
    depth: int
    triangles: TriangleSet | None = None

    @property
    def n(self) -> int:
        return len(self.positions)

    def degree_histogram(self) -> dict[int, int]:
        values, counts = np.unique(self.degrees, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def center_node(self) -> int:
        radii = np.hypot(self.positions[:, 0], self.positions[:, 1])
        return int(np.argmin(radii))


def _sun_seed() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Five fat rhombi around the origin, as ten half-fat triangles.

    Rhombus k has corners O, A_k, F_k = A_k + A_{k+1}, A_{k+1}; its two
    gnomons share the long diagonal O-F_k as their base.
    """
    spokes = np.exp(2j * np.pi * np.arange(5) / 5.0)
    far = spokes + np.roll(spokes, -1)
    apex = np.concatenate([spokes, np.roll(spokes, -1)])
    b = np.zeros(10, dtype=complex)
    c = np.concatenate([far, far])
    kinds = np.full(10, HALF_FAT, dtype=np.uint8)
    return kinds, apex, b, c


def _subdivide(kinds, a, b, c):
    """One Robinson subdivision round; legs shrink by 1/PHI."""
    thin = kinds == HALF_THIN
    fat = ~thin
    at, bt, ct = a[thin], b[thin], c[thin]
    af, bf, cf = a[fat], b[fat], c[fat]

    p = at + (bt - at) / PHI
    q = bf + (af - bf) / PHI
    r = bf + (cf - bf) / PHI

    new_kinds = np.concatenate([
        np.full(len(at), HALF_THIN, dtype=np.uint8),
        np.full(len(at), HALF_FAT, dtype=np.uint8),
        np.full(len(af), HALF_FAT, dtype=np.uint8),
        np.full(len(af), HALF_FAT, dtype=np.uint8),
        np.full(len(af), HALF_THIN, dtype=np.uint8),
    ])
    new_a = np.concatenate([ct, p, r, q, r])
    new_b = np.concatenate([p, ct, cf, r, q])
    new_c = np.concatenate([bt, at, af, bf, af])
    return new_kinds, new_a, new_b, new_c


def _merge_corners(points: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Collapse points closer than tol; returns (unique_xy, index_of_point).

    Cell hashing with a 3x3 neighbourhood probe, so coincident corners are
    merged even when they straddle a cell boundary.  Distinct tiling
    vertices sit at least 2*sin(pi/10) apart, far above any sane tol.
    """
    cell = max(tol, 1e-4)
    inv = 1.0 / cell
    seen: dict[tuple[int, int], list[int]] = {}
    unique: list[complex] = []
    index = np.empty(len(points), dtype=np.int64)
    for i, z in enumerate(points):
        cx = math.floor(z.real * inv)
        cy = math.floor(z.imag * inv)
        hit = -1
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for u in seen.get((cx + dx, cy + dy), ()):
                    if abs(unique[u] - z) <= tol:
                        hit = u
                        break
                if hit >= 0:
                    break
            if hit >= 0:
                break
        if hit < 0:
            hit = len(unique)
            unique.append(z)
            seen.setdefault((cx, cy), []).append(hit)
        index[i] = hit
    xy = np.empty((len(unique), 2), dtype=float)
    xy[:, 0] = [z.real for z in unique]
    xy[:, 1] = [z.imag for z in unique]
    return xy, index


def _sorted_pairs(pairs: np.ndarray) -> np.ndarray:
    """Normalise to i < j, drop duplicates, sort rows lexicographically."""
    if len(pairs) == 0:
        return np.empty((0, 2), dtype=np.int64)
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    return np.unique(np.column_stack([lo, hi]), axis=0)


def classify_pairs(positions: np.ndarray, tol: float = DEDUP_TOL) -> BondSet:
    """Scan all vertex pairs and bin them by the three bond lengths.

    Pairs not matching any family within tol are ignored.
    """
    tree = cKDTree(positions)
    raw = tree.query_pairs(r=FAT_DIAGONAL + 2.0 * tol, output_type="ndarray")
    if len(raw) == 0:
        return BondSet(*(np.empty((0, 2), dtype=np.int64) for _ in range(3)))
    dist = np.linalg.norm(positions[raw[:, 0]] - positions[raw[:, 1]], axis=1)
    out = []
    for length in (EDGE_LENGTH, THIN_DIAGONAL, FAT_DIAGONAL):
        out.append(_sorted_pairs(raw[np.abs(dist - length) <= tol]))
    return BondSet(edges=out[0], thin_diagonals=out[1], fat_diagonals=out[2])


def structural_bonds(triangles: TriangleSet) -> BondSet:
    """Bond families read off the half-rhombus structure, not distances.

    Edges are triangle legs.  Thin diagonals are bases of half-thin
    triangles (the rim keeps lone halves whose base is still a genuine
    short diagonal).  Fat diagonals join the apexes of two half-fat
    triangles sharing a base; lone half-fat rim triangles contribute none
    because the partner apex falls outside the patch.
    """
    corners = triangles.corners
    legs = np.concatenate([corners[:, [0, 1]], corners[:, [0, 2]]])
    edges = _sorted_pairs(legs)

    thin = triangles.kinds == HALF_THIN
    thin_diag = _sorted_pairs(corners[thin][:, [1, 2]])

    fat = corners[~thin]
    base_lo = np.minimum(fat[:, 1], fat[:, 2])
    base_hi = np.maximum(fat[:, 1], fat[:, 2])
    order = np.lexsort((base_hi, base_lo))
    fat = fat[order]
    base = np.column_stack([base_lo[order], base_hi[order]])
    apex_pairs = []
    i = 0
    while i < len(fat):
        j = i + 1
        while j < len(fat) and base[j, 0] == base[i, 0] and base[j, 1] == base[i, 1]:
            j += 1
        if j - i == 2:
            apex_pairs.append((fat[i, 0], fat[i + 1, 0]))
        i = j
    fat_diag = _sorted_pairs(np.array(apex_pairs, dtype=np.int64).reshape(-1, 2))
    return BondSet(edges=edges, thin_diagonals=thin_diag, fat_diagonals=fat_diag)


def generate(depth: int) -> PenroseLattice:
    """Grow the patch obtained from the sun seed by ``depth`` subdivisions."""
    if not isinstance(depth, (int, np.integer)) or isinstance(depth, bool):
        raise LatticeError("depth must be an integer")
    if depth < 0 or depth > MAX_DEPTH:
        raise LatticeError(f"depth must be in [0, {MAX_DEPTH}], got {depth}")

    kinds, a, b, c = _sun_seed()
    for _ in range(depth):
        kinds, a, b, c = _subdivide(kinds, a, b, c)
    scale = PHI**depth
    a, b, c = a * scale, b * scale, c * scale

    corners_z = np.concatenate([a, b, c])
    xy, index = _merge_corners(corners_z, DEDUP_TOL)

    # Renumber vertices by rounded (x, y) so ids are reproducible.
    keys = np.round(xy * 1e6).astype(np.int64)
    order = np.lexsort((keys[:, 1], keys[:, 0]))
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    xy = xy[order]
    index = rank[index]

    t = len(kinds)
    corners = np.column_stack([index[:t], index[t : 2 * t], index[2 * t :]])
    triangles = TriangleSet(kinds=kinds, corners=corners)

    bonds = classify_pairs(xy, DEDUP_TOL)

    degrees = np.zeros(len(xy), dtype=np.int64)
    np.add.at(degrees, bonds.edges.ravel(), 1)

    units = np.zeros(len(xy), dtype=np.int64)
    for kind, per_corner in _ANGLE_UNITS.items():
        sel = corners[kinds == kind]
        for col, u in enumerate(per_corner):
            np.add.at(units, sel[:, col], u)
    interior = units == 10

    return PenroseLattice(
        positions=xy,
        bonds=bonds,
        degrees=degrees,
        interior=interior,
        depth=depth,
        triangles=triangles,
    )


def resolve_node(lattice: PenroseLattice, selector: int | str) -> int:
    """Turn a node selector into a vertex id.

    Accepts a plain id, ``max-degree`` (ties broken toward the origin,
    then by id), or ``degree:D:nearest-center`` (same tie-breaks among
    vertices of edge degree D).
    """
    if isinstance(selector, (int, np.integer)) and not isinstance(selector, bool):
        node = int(selector)
        if node < 0 or node >= lattice.n:
            raise LatticeError(f"node id {node} out of range [0, {lattice.n})")
        return node
    if not isinstance(selector, str):
        raise LatticeError(f"bad node selector: {selector!r}")
    text = selector.strip()
    if text.lstrip("+-").isdigit():
        return resolve_node(lattice, int(text))

    radii = np.hypot(lattice.positions[:, 0], lattice.positions[:, 1])
    if text == "max-degree":
        candidates = np.flatnonzero(lattice.degrees == lattice.degrees.max())
    else:
        parts = text.split(":")
        if len(parts) == 3 and parts[0] == "degree" and parts[2] == "nearest-center":
            try:
                want = int(parts[1])
            except ValueError:
                raise LatticeError(f"bad degree in selector: {selector!r}") from None
            candidates = np.flatnonzero(lattice.degrees == want)
            if len(candidates) == 0:
                raise LatticeError(f"no vertex has degree {want}")
        else:
            raise LatticeError(f"bad node selector: {selector!r}")
    best = candidates[np.lexsort((candidates, radii[candidates]))]
    return int(best[0])


def to_json_dict(lattice: PenroseLattice) -> dict:
    """Plain-dict form matching the on-disk lattice schema."""
    return {
        "edge_length": EDGE_LENGTH,
        "vertices": [[float(x), float(y)] for x, y in lattice.positions],
        "edges": [[int(i), int(j)] for i, j in lattice.bonds.edges],
        "thin_diagonals": [[int(i), int(j)] for i, j in lattice.bonds.thin_diagonals],
        "fat_diagonals": [[int(i), int(j)] for i, j in lattice.bonds.fat_diagonals],
    }


def save_json(lattice: PenroseLattice, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(lattice), fh)
        fh.write("\n")


def from_json_dict(data: dict) -> PenroseLattice:
    """Rebuild a lattice from its JSON form.

    Bond families are trusted as stored and degrees recomputed from them.
    Half-rhombus bookkeeping is not serialised, so the rebuilt lattice has
    no triangle data and marks no vertex interior.
    """
    positions = np.asarray(data["vertices"], dtype=float)

    def arr(key):
        rows = data.get(key, [])
        if not rows:
            return np.empty((0, 2), dtype=np.int64)
        return _sorted_pairs(np.asarray(rows, dtype=np.int64))

    bonds = BondSet(edges=arr("edges"), thin_diagonals=arr("thin_diagonals"),
                    fat_diagonals=arr("fat_diagonals"))
    degrees = np.zeros(len(positions), dtype=np.int64)
    np.add.at(degrees, bonds.edges.ravel(), 1)
    interior = np.zeros(len(positions), dtype=bool)
    return PenroseLattice(positions=positions, bonds=bonds, degrees=degrees,
                          interior=interior, depth=-1, triangles=None)


def load_json(path) -> PenroseLattice:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
