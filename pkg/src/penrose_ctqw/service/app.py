"""HTTP service exposing lattice generation, spectra, and walk analysis.

Lattices and spectra are cached in memory: one spectrum serves many
evolution, average, and bound queries, and the eigendecomposition
dominates request cost.
"""

from __future__ import annotations

import functools
import math
import threading
from collections import OrderedDict

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import ctqw, lattice, transport
from ..hamiltonian import EDGE_MODEL, FULL_MODEL, THIN_MODEL, Hamiltonian, HoppingModel, build
from ..spectral import SolverError, Spectrum, decompose
from . import schemas

SPECTRUM_CACHE_SIZE = 6


class _Store:
    """Session caches guarded by one lock; spectra evicted LRU."""

    def __init__(self):
        self.lock = threading.Lock()
        self.lattices: dict[int, lattice.PenroseLattice] = {}
        self.spectra: OrderedDict[tuple, tuple[Hamiltonian, Spectrum]] = OrderedDict()

    def lattice(self, depth: int) -> lattice.PenroseLattice:
        with self.lock:
            if depth in self.lattices:
                return self.lattices[depth]
        lat = lattice.generate(depth)
        with self.lock:
            self.lattices.setdefault(depth, lat)
            return self.lattices[depth]

    def spectrum(self, depth: int, model: HoppingModel,
                 tol: float | None) -> tuple[lattice.PenroseLattice, Hamiltonian, Spectrum]:
        lat = self.lattice(depth)
        key = (depth, model.a, model.b, model.c, tol)
        with self.lock:
            if key in self.spectra:
                self.spectra.move_to_end(key)
                h, spec = self.spectra[key]
                return lat, h, spec
        h = build(lat, model)
        spec = decompose(h, tol=tol)
        with self.lock:
            self.spectra[key] = (h, spec)
            self.spectra.move_to_end(key)
            while len(self.spectra) > SPECTRUM_CACHE_SIZE:
                self.spectra.popitem(last=False)
        return lat, h, spec


def _model(body) -> HoppingModel:
    try:
        return HoppingModel(a=body.a, b=body.b, c=body.c)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapped(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (lattice.LatticeError, ValueError, IndexError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        except SolverError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc

    return wrapped


def create_app() -> FastAPI:
    app = FastAPI(title="penrose-ctqw", version="0.1.0")
    store = _Store()

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/lattices", response_model=schemas.LatticeSummary)
    @_domain_errors
    def make_lattice(body: schemas.GenerateRequest):
        lat = store.lattice(body.depth)
        return schemas.LatticeSummary(
            depth=body.depth,
            n=lat.n,
            edges=len(lat.bonds.edges),
            thin_diagonals=len(lat.bonds.thin_diagonals),
            fat_diagonals=len(lat.bonds.fat_diagonals),
            degree_histogram=lat.degree_histogram(),
            interior=int(lat.interior.sum()),
        )

    @app.get("/lattices/{depth}/file")
    @_domain_errors
    def lattice_file(depth: int):
        lat = store.lattice(depth)
        return JSONResponse(lattice.to_json_dict(lat))

    @app.post("/spectra", response_model=schemas.SpectrumResponse)
    @_domain_errors
    def spectrum(body: schemas.SpectrumRequest):
        model = _model(body)
        lat, h, spec = store.spectrum(body.depth, model, body.tol_eig)
        report = transport.efficiency_report(spec)
        return schemas.SpectrumResponse(
            depth=body.depth,
            n=spec.n,
            model=schemas.ModelParams(a=model.a, b=model.b, c=model.c),
            tol=spec.tol,
            eigenvalues=[float(e) for e in spec.eigenvalues],
            cluster_ids=[int(c) for c in spec.cluster_ids()],
            report=schemas.EfficiencyBody(**report.as_dict()),
        )

    @app.post("/evolve", response_model=schemas.EvolveResponse)
    @_domain_errors
    def evolve(body: schemas.EvolveRequest):
        model = _model(body)
        lat, h, spec = store.spectrum(body.depth, model, body.tol_eig)
        node = lattice.resolve_node(lat, body.node)
        probs = ctqw.evolve_distribution(spec, node, body.t)
        return schemas.EvolveResponse(
            depth=body.depth,
            node_id=node,
            t=body.t,
            xs=[float(x) for x in lat.positions[:, 0]],
            ys=[float(y) for y in lat.positions[:, 1]],
            probabilities=[float(p) for p in probs],
        )

    @app.post("/return-series", response_model=schemas.SeriesResponse)
    @_domain_errors
    def return_series(body: schemas.SeriesRequest):
        model = _model(body)
        lat, h, spec = store.spectrum(body.depth, model, body.tol_eig)
        node = lattice.resolve_node(lat, body.node)
        times, values = ctqw.return_series(spec, node, body.t_max, body.samples)
        chi_jj = float(ctqw.lta_diagonal(spec)[node])
        return schemas.SeriesResponse(
            depth=body.depth,
            node_id=node,
            times=[float(t) for t in times],
            values=[float(v) for v in values],
            chi_jj=chi_jj,
            bound_quartic=ctqw.return_bound_quartic(spec, node),
            bound_projector=ctqw.return_bound_projector(spec, node),
        )

    @app.post("/lta", response_model=schemas.LtaResponse)
    @_domain_errors
    def lta(body: schemas.LtaRequest):
        model = _model(body)
        lat, h, spec = store.spectrum(body.depth, model, body.tol_eig)
        chi_diag = ctqw.lta_diagonal(spec)
        p0 = spec.zero_projector_diagonal()
        block = spec.zero_subspace()
        quartic = np.sum(block**4, axis=1) if block.shape[1] else np.zeros(spec.n)
        return schemas.LtaResponse(
            depth=body.depth,
            n=spec.n,
            model=schemas.ModelParams(a=model.a, b=model.b, c=model.c),
            xs=[float(x) for x in lat.positions[:, 0]],
            ys=[float(y) for y in lat.positions[:, 1]],
            degrees=[int(d) for d in lat.degrees],
            chi_jj=[float(v) for v in chi_diag],
            bound_quartic=[float(v) for v in quartic],
            bound_projector=[float(v) for v in p0**2],
            chi_bar=float(chi_diag.mean()),
        )

    @app.post("/table", response_model=schemas.TableResponse)
    @_domain_errors
    def table(body: schemas.TableRequest):
        models = [
            HoppingModel(a=m.a, b=m.b, c=m.c) for m in body.models
        ] if body.models else [EDGE_MODEL, THIN_MODEL, FULL_MODEL]
        lat = store.lattice(body.depth)
        proportions = []
        for model in models:
            _, _, spec = store.spectrum(body.depth, model, body.tol_eig)
            chi_diag = ctqw.lta_diagonal(spec)
            proportions.append(transport.threshold_table(chi_diag, body.thresholds))
        return schemas.TableResponse(
            depth=body.depth,
            n=lat.n,
            thresholds=[float(t) for t in body.thresholds],
            models=[schemas.ModelParams(a=m.a, b=m.b, c=m.c) for m in models],
            proportions=proportions,
        )

    @app.post("/sweep", response_model=schemas.SweepResponse)
    @_domain_errors
    def sweep(body: schemas.SweepRequest):
        lat = store.lattice(body.depth)
        grid = transport.sweep(
            lat,
            a=body.a,
            b_axis=body.b_axis,
            c_axis=body.c_axis,
            threads=body.threads,
            tol=body.tol_eig,
        )
        cells = [
            [None if math.isnan(v) else float(v) for v in row]
            for row in grid.chi_bar
        ]
        return schemas.SweepResponse(
            depth=body.depth,
            n=grid.n,
            a=grid.a,
            b_values=[float(b) for b in grid.b_values],
            c_values=[float(c) for c in grid.c_values],
            chi_bar=cells,
            errors=[schemas.SweepError(**e) for e in grid.errors],
        )

    @app.post("/verify-state", response_model=schemas.VerifyStateResponse)
    @_domain_errors
    def verify_state(body: schemas.VerifyStateRequest):
        model = _model(body)
        lat = store.lattice(body.depth)
        h = build(lat, model)
        result = ctqw.verify_zero_state(h, body.amplitudes)
        return schemas.VerifyStateResponse(depth=body.depth, **result)

    return app


app = create_app()
