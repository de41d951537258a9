"""File emitters: CSV tables, JSON reports, and the sweep SVG heatmap.

All numbers are written with repr so repeated runs produce byte-identical
files; CSV uses '.' decimals regardless of locale.
"""

from __future__ import annotations

import json
import math

import jsonschema
import numpy as np

LATTICE_SCHEMA = {
    "type": "object",
    "required": ["edge_length", "vertices", "edges", "thin_diagonals", "fat_diagonals"],
    "additionalProperties": False,
    "properties": {
        "edge_length": {"type": "number", "exclusiveMinimum": 0},
        "vertices": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "edges": {"$ref": "#/$defs/pairs"},
        "thin_diagonals": {"$ref": "#/$defs/pairs"},
        "fat_diagonals": {"$ref": "#/$defs/pairs"},
    },
    "$defs": {
        "pairs": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        }
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["depth", "n", "model", "tol", "chi_bar", "d0", "d0_over_n",
                 "d0_upper_bound", "alpha_sq_lta"],
    "properties": {
        "depth": {"type": "integer", "minimum": -1},
        "n": {"type": "integer", "minimum": 1},
        "model": {
            "type": "object",
            "required": ["a", "b", "c"],
            "properties": {
                "a": {"type": "number"},
                "b": {"type": "number"},
                "c": {"type": "number"},
            },
        },
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "chi_bar": {"type": "number", "minimum": 0, "maximum": 1},
        "d0": {"type": "integer", "minimum": 0},
        "d0_over_n": {"type": "number", "minimum": 0, "maximum": 1},
        "d0_upper_bound": {"type": "number", "minimum": 0},
        "alpha_sq_lta": {"type": "number", "minimum": 0, "maximum": 1},
        "alpha_bar_series": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}


def validate_lattice_dict(data: dict) -> None:
    jsonschema.validate(data, LATTICE_SCHEMA)


def validate_report_dict(data: dict) -> None:
    jsonschema.validate(data, REPORT_SCHEMA)


def write_json(path, data: dict, schema: dict | None = None) -> None:
    if schema is not None:
        jsonschema.validate(data, schema)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _rows_to_csv(path, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def spectrum_csv(path, eigenvalues, cluster_ids) -> None:
    rows = ((i, float(e), int(c)) for i, (e, c) in enumerate(zip(eigenvalues, cluster_ids)))
    _rows_to_csv(path, "index,eigenvalue,cluster_id", rows)


def distribution_csv(path, positions, probabilities) -> None:
    rows = (
        (i, float(x), float(y), float(p))
        for i, ((x, y), p) in enumerate(zip(positions, probabilities))
    )
    _rows_to_csv(path, "node_id,x,y,probability", rows)


def series_csv(path, times, values) -> None:
    _rows_to_csv(path, "t,return_probability",
                 ((float(t), float(v)) for t, v in zip(times, values)))


def lta_csv(path, positions, degrees, chi_diag, bound_quartic, bound_projector) -> None:
    rows = (
        (i, float(x), float(y), int(d), float(chi), float(bq), float(bp))
        for i, ((x, y), d, chi, bq, bp) in enumerate(
            zip(positions, degrees, chi_diag, bound_quartic, bound_projector)
        )
    )
    _rows_to_csv(path, "node_id,x,y,degree,chi_jj,bound_quartic,bound_projector", rows)


def table_csv(path, thresholds, models, proportions) -> None:
    """Long-format threshold table: one row per (threshold, model).

    models is a sequence of (a, b, c) triples; proportions[m][t] pairs
    model m with threshold t.
    """
    rows = []
    for ti, theta in enumerate(thresholds):
        for mi, (a, b, c) in enumerate(models):
            rows.append((float(theta), float(a), float(b), float(c),
                         float(proportions[mi][ti])))
    _rows_to_csv(path, "threshold,a,b,c,proportion", rows)


def sweep_csv(path, grid) -> None:
    """b-major rows of the sweep grid; failed cells emit nan."""
    rows = []
    for ib, b in enumerate(grid.b_values):
        for ic, c in enumerate(grid.c_values):
            rows.append((float(b), float(c), float(grid.chi_bar[ib, ic])))
    _rows_to_csv(path, "b,c,chi_bar", rows)


# Three-stop linear color ramp for the heatmap (dark violet -> teal -> yellow).
_RAMP = ((68, 1, 84), (33, 145, 140), (253, 231, 37))


def _ramp_color(x: float) -> str:
    x = min(max(x, 0.0), 1.0)
    if x < 0.5:
        lo, hi, f = _RAMP[0], _RAMP[1], x * 2.0
    else:
        lo, hi, f = _RAMP[1], _RAMP[2], (x - 0.5) * 2.0
    rgb = tuple(round(a + (b - a) * f) for a, b in zip(lo, hi))
    return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"


def sweep_svg(path, grid, cell_px: int = 22) -> None:
    """Heatmap of chi_bar over the (b, c) grid, one rect per cell.

    b runs along x, c along y (origin bottom-left); a linear color ramp
    spans the finite min..max of the grid.  Failed cells are hatched gray.
    """
    nb, nc = len(grid.b_values), len(grid.c_values)
    left, bottom, top, right = 64, 46, 34, 120
    width = left + nb * cell_px + right
    height = top + nc * cell_px + bottom
    finite = grid.chi_bar[np.isfinite(grid.chi_bar)]
    lo = float(finite.min()) if len(finite) else 0.0
    hi = float(finite.max()) if len(finite) else 1.0
    span = hi - lo if hi > lo else 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + nb * cell_px / 2:.1f}" y="18" text-anchor="middle" '
        f'font-size="13">mean return probability over (b, c)</text>',
    ]
    for ib, b in enumerate(grid.b_values):
        for ic, c in enumerate(grid.c_values):
            v = grid.chi_bar[ib, ic]
            x = left + ib * cell_px
            y = top + (nc - 1 - ic) * cell_px
            if math.isfinite(v):
                fill = _ramp_color((v - lo) / span)
                title = f"b={b:g} c={c:g} chi_bar={v:.6g}"
            else:
                fill = "rgb(180,180,180)"
                title = f"b={b:g} c={c:g} failed"
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell_px}" height="{cell_px}" '
                f'fill="{fill}"><title>{title}</title></rect>'
            )
    # axis ticks at the first, middle and last grid values
    for frac, idx in ((0.0, 0), (0.5, (nb - 1) // 2), (1.0, nb - 1)):
        x = left + idx * cell_px + cell_px / 2
        parts.append(f'<text x="{x:.1f}" y="{top + nc * cell_px + 16}" '
                     f'text-anchor="middle">{grid.b_values[idx]:g}</text>')
    for frac, idx in ((0.0, 0), (0.5, (nc - 1) // 2), (1.0, nc - 1)):
        y = top + (nc - 1 - idx) * cell_px + cell_px / 2 + 4
        parts.append(f'<text x="{left - 8}" y="{y:.1f}" '
                     f'text-anchor="end">{grid.c_values[idx]:g}</text>')
    parts.append(
        f'<text x="{left + nb * cell_px / 2:.1f}" y="{height - 12}" '
        f'text-anchor="middle">thin-diagonal hopping b</text>'
    )
    ylab_x, ylab_y = 16, top + nc * cell_px / 2
    parts.append(
        f'<text x="{ylab_x}" y="{ylab_y:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 {ylab_x} {ylab_y:.1f})">fat-diagonal hopping c</text>'
    )
    # color legend: vertical ramp with min/max labels
    lx = left + nb * cell_px + 26
    lh = nc * cell_px
    steps = 32
    for s in range(steps):
        frac = 1.0 - s / (steps - 1)
        y = top + s * lh / steps
        parts.append(
            f'<rect x="{lx}" y="{y:.1f}" width="14" height="{lh / steps + 0.5:.1f}" '
            f'fill="{_ramp_color(frac)}"/>'
        )
    parts.append(f'<text x="{lx + 20}" y="{top + 10}">{hi:.4g}</text>')
    parts.append(f'<text x="{lx + 20}" y="{top + lh}">{lo:.4g}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")
