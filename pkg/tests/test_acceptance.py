"""Acceptance criteria for the transport study, one test per criterion.

Each test records a single CRITERION line with the measured numbers
(replayed as a terminal section at the end of the run, see conftest) and
then asserts.  Criteria 3, 6 and 9 contain sub-checks that sun-seeded
patches do not satisfy at any depth tried (3 through 6); they are
asserted anyway rather than weakened, and the recorded line carries the
measured values.
"""

from __future__ import annotations

import numpy as np
import pytest

from penrose_ctqw import (
    EDGE_MODEL,
    FULL_MODEL,
    THIN_MODEL,
    build,
    decompose,
    generate,
    lta_diagonal,
    lta_exact,
    lta_numeric,
    resolve_node,
    sweep,
    threshold_table,
    zero_state_support_profile,
)
from penrose_ctqw.hamiltonian import Hamiltonian, HoppingModel
from penrose_ctqw.transport import alpha_bar_squared_lta

from conftest import REFERENCE_DEPTH
from oracles import small_graph_corpus, taylor_propagator

MODELS = (("(1,0,0)", EDGE_MODEL), ("(1,1.618,0)", THIN_MODEL),
          ("(1,1.618,0.85)", FULL_MODEL))

# (criterion number, line) pairs replayed by the terminal-summary hook
CRITERION_LINES: list[tuple[int, str]] = []


def report(k: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    CRITERION_LINES.append((k, line))
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def spectra4(lattice4):
    return {name: decompose(build(lattice4, model)) for name, model in MODELS}


@pytest.fixture(scope="module")
def spectra3():
    lat = generate(3)
    return {name: decompose(build(lat, model)) for name, model in MODELS}


def test_criterion_01(reference_lattice, reference_spectra):
    spec = reference_spectra["edge"]
    fraction = spec.d0 / spec.n
    ok = 0.08 <= fraction <= 0.12
    report(1, ok, f"zero-energy fraction D0/N = {spec.d0}/{spec.n} = "
                  f"{fraction:.4f}, window [0.08, 0.12], depth {REFERENCE_DEPTH}")


def test_criterion_02(reference_spectra):
    rows = []
    ok = True
    for name, spec in zip(("edge", "thin", "full"), reference_spectra.values()):
        frac = spec.d0 / spec.n
        mid = alpha_bar_squared_lta(spec)
        chi_bar = float(np.mean(lta_diagonal(spec)))
        ok = ok and frac**2 <= mid + 1e-12
        ok = ok and mid <= chi_bar + 1e-12
        ok = ok and frac <= np.sqrt(chi_bar) + 1e-12
        rows.append(f"{name}: (D0/N)^2={frac**2:.2e} <= {mid:.2e} <= "
                    f"chi_bar={chi_bar:.2e}, sqrt(chi_bar)={np.sqrt(chi_bar):.3f}")
    report(2, ok, "; ".join(rows))


def test_criterion_03(reference_spectra, spectra4, spectra3):
    chi = {name: float(np.mean(lta_diagonal(spec)))
           for name, spec in reference_spectra.items()}
    ordered = chi["edge"] > chi["thin"] > chi["full"]
    bands = {
        "edge": (0.013, 0.039),
        "thin": (0.008, 0.024),
        "full": (0.002, 0.006),
    }
    in_band = {name: bands[name][0] <= chi[name] <= bands[name][1] for name in chi}
    drift = {}
    for (_, s3), (name, s4) in zip(spectra3.items(), spectra4.items()):
        c3 = float(np.mean(lta_diagonal(s3)))
        c4 = float(np.mean(lta_diagonal(s4)))
        drift[name] = abs(c3 - c4) / c4
    agree = all(d <= 0.30 for d in drift.values())
    ok = ordered and all(in_band.values()) and agree
    detail = (f"chi_bar edge/thin/full = {chi['edge']:.5f}/{chi['thin']:.5f}/"
              f"{chi['full']:.5f}, ordering {'ok' if ordered else 'violated'}, "
              f"bands {in_band}, depth-3 vs depth-4 drift "
              + ", ".join(f"{k} {v:.0%}" for k, v in drift.items()))
    report(3, ok, detail)


def test_criterion_04(reference_spectra):
    ok = True
    worst = 0.0
    for spec in reference_spectra.values():
        chi = lta_diagonal(spec)
        block = spec.zero_subspace()
        if block.shape[1]:
            quartic = np.sum(block**4, axis=1)
            projector = np.sum(block**2, axis=1) ** 2
        else:
            quartic = np.zeros(spec.n)
            projector = np.zeros(spec.n)
        ok = ok and np.all(quartic <= projector + 1e-10)
        ok = ok and np.all(projector <= chi + 1e-10)
        worst = max(worst, float((quartic - projector).max()),
                    float((projector - chi).max()))
    report(4, ok, f"per-node bound chain quartic <= projector^2 <= chi_jj "
                  f"for all three models, worst violation {worst:.2e} (<= 1e-10)")


def test_criterion_05(reference_lattice, reference_spectra):
    chi = lta_diagonal(reference_spectra["edge"])
    deg3 = reference_lattice.degrees == 3
    best3 = float(chi[deg3].max())
    center = resolve_node(reference_lattice, "max-degree")
    center_chi = float(chi[center])
    ok = best3 >= 0.01 and center_chi < 0.01
    report(5, ok, f"best degree-3 chi_jj = {best3:.4f} (>= 0.01), max-degree "
                  f"node {center} (degree {reference_lattice.degrees[center]}) "
                  f"chi_jj = {center_chi:.5f} (< 0.01)")


def test_criterion_06(reference_spectra):
    fractions = [threshold_table(lta_diagonal(spec), [0.015])[0]
                 for spec in reference_spectra.values()]
    m1, m2, m3 = fractions
    ordered = m1 > m2 >= m3
    ok = ordered and 0.25 <= m1 <= 0.50 and 0.05 <= m2 <= 0.25 and 0.05 <= m3 <= 0.25
    report(6, ok, f"proportion chi_jj >= 0.015: {m1:.2%} / {m2:.2%} / {m3:.2%}; "
                  f"need >-ordering, [25,50]% and twice [5,25]%")


def test_criterion_07():
    worst_prop = 0.0
    worst_lta = 0.0
    for name, adjacency in small_graph_corpus():
        h = Hamiltonian(matrix=adjacency, model=HoppingModel(a=1.0))
        spec = decompose(h)
        for t in (0.1, 1.0, 10.0):
            u_spec = (spec.eigenvectors * np.exp(-1j * spec.eigenvalues * t)) \
                @ spec.eigenvectors.T.astype(complex)
            u_taylor = taylor_propagator(adjacency, t)
            worst_prop = max(worst_prop, float(np.abs(u_spec - u_taylor).max()))
        exact = lta_diagonal(spec)
        assert np.allclose(np.diag(lta_exact(spec)), exact, atol=1e-12)
        for j in (0, spec.n // 2):
            approx = lta_numeric(spec, j, horizon=1e4, samples=100001)
            worst_lta = max(worst_lta, abs(approx - exact[j]))
    ok = worst_prop <= 1e-9 and worst_lta <= 1e-2
    report(7, ok, f"5-graph corpus: propagator vs Taylor oracle worst "
                  f"{worst_prop:.2e} (<= 1e-9), lta_exact vs numeric T=1e4 "
                  f"worst {worst_lta:.2e} (<= 1e-2)")


def test_criterion_08(reference_spectra):
    spec = reference_spectra["edge"]
    rng = np.random.default_rng(20240817)
    worst_sum = 0.0
    worst_sym = 0.0
    for t in rng.uniform(0.0, 1000.0, size=20):
        u = (spec.eigenvectors * np.exp(-1j * spec.eigenvalues * float(t))) \
            @ spec.eigenvectors.T.astype(complex)
        pi = np.abs(u) ** 2
        worst_sum = max(worst_sum, float(np.abs(pi.sum(axis=0) - 1.0).max()))
        worst_sym = max(worst_sym, float(np.abs(pi - pi.T).max()))
    vals = spec.eigenvalues
    mirror = float(np.abs(vals + vals[::-1]).max())
    ok = worst_sum <= 1e-9 and worst_sym <= 1e-10 and mirror <= 1e-8
    report(8, ok, f"20 random times: column-sum error {worst_sum:.2e} (<= 1e-9), "
                  f"symmetry error {worst_sym:.2e} (<= 1e-10), bipartite "
                  f"mirror error {mirror:.2e} (<= 1e-8)")


def test_criterion_09(lattice4):
    grid = sweep(lattice4, threads=8)
    complete = len(grid.errors) == 0 and bool(np.isfinite(grid.chi_bar).all())
    ib = int(np.argmin(np.abs(grid.b_values - 0.5)))
    ic = int(np.argmin(np.abs(grid.c_values - 2.0)))
    target = float(grid.chi_bar[ib, ic])
    origin = float(grid.chi_bar[0, 0])
    exceeds = target > origin
    line = grid.chi_bar[:, 0]
    imin = int(np.argmin(line))
    interior_minimum = 0 < imin < len(line) - 1 and \
        line[imin] < line[0] and line[imin] < line[-1]
    ok = complete and exceeds and interior_minimum
    report(9, ok, f"21x21 sweep at depth 4 {'completed' if complete else 'had failures'}; "
                  f"chi_bar(0.5,2.0)={target:.5f} vs chi_bar(0,0)={origin:.5f} "
                  f"(need >); c=0 line minimum at b={grid.b_values[imin]:g} "
                  f"({'interior' if interior_minimum else 'boundary'})")


def test_criterion_10(reference_lattice, reference_spectra):
    profile = zero_state_support_profile(reference_spectra["edge"], reference_lattice)
    w3 = profile.get(3, 0.0)
    w5 = profile.get(5, 0.0)
    ok = w3 > w5
    report(10, ok, f"zero-projector weight by degree: deg-3 {w3:.2f} vs "
                   f"deg-5 {w5:.2f} (need strictly greater)")
