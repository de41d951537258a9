"""Command-line front end.

Every subcommand is a thin client over the HTTP service: by default the
app is mounted in-process (no socket), while --server points the same
requests at a running instance.  File outputs are emitted client-side so
both modes produce identical bytes.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys

import numpy as np

from . import emitters, transport
from .transport import SweepGrid

DEFAULT_THRESHOLDS = "0.015,0.030,0.045,0.060,0.075,0.090"


class ServiceClient:
    """Minimal JSON-over-HTTP wrapper hiding in-process vs remote mode.

    With --server requests go over the network; otherwise the app is
    mounted directly on an in-process ASGI transport, so no port is
    needed and caches persist across the subcommand's requests.
    """

    def __init__(self, server: str | None):
        import httpx

        self._remote = bool(server)
        if server:
            self._client = httpx.Client(base_url=server.rstrip("/"), timeout=3600.0)
        else:
            from .service.app import create_app

            self._transport = httpx.ASGITransport(app=create_app())
            self._client = None

    def request(self, method: str, path: str, payload: dict | None = None) -> dict:
        if self._remote:
            response = self._client.request(method, path, json=payload)
        else:
            response = asyncio.run(self._request_inprocess(method, path, payload))
        if response.status_code >= 300:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise CommandError(f"{path} -> {response.status_code}: {detail}")
        return response.json()

    async def _request_inprocess(self, method, path, payload):
        import httpx

        async with httpx.AsyncClient(transport=self._transport,
                                     base_url="http://service", timeout=3600.0) as client:
            return await client.request(method, path, json=payload)

    def close(self):
        if self._remote and self._client is not None:
            self._client.close()


class CommandError(RuntimeError):
    pass


def _model_payload(args) -> dict:
    return {"a": args.a, "b": args.b, "c": args.c}


def _tol_payload(args) -> dict:
    return {"tol_eig": args.tol_eig} if args.tol_eig is not None else {}


def cmd_generate(client: ServiceClient, args) -> int:
    summary = client.request("POST", "/lattices", {"depth": args.depth})
    data = client.request("GET", f"/lattices/{args.depth}/file")
    emitters.validate_lattice_dict(data)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
        fh.write("\n")
    hist = {int(k): v for k, v in summary["degree_histogram"].items()}
    print(f"depth {args.depth}: N={summary['n']} "
          f"edges={summary['edges']} thin={summary['thin_diagonals']} "
          f"fat={summary['fat_diagonals']}")
    print(f"degree histogram: {dict(sorted(hist.items()))}")
    print(f"wrote {args.out}")
    return 0


def cmd_spectrum(client: ServiceClient, args) -> int:
    payload = {"depth": args.depth, **_model_payload(args), **_tol_payload(args)}
    data = client.request("POST", "/spectra", payload)
    emitters.spectrum_csv(args.out, data["eigenvalues"], data["cluster_ids"])
    report = dict(data["report"])
    report.pop("n", None)
    report_doc = {
        "depth": data["depth"],
        "n": data["n"],
        "model": data["model"],
        "tol": data["tol"],
        **report,
    }
    if report_doc.get("alpha_bar_series") is None:
        report_doc.pop("alpha_bar_series", None)
    emitters.write_json(args.report, report_doc, schema=emitters.REPORT_SCHEMA)
    r = data["report"]
    print(f"N={data['n']} d0={r['d0']} d0/N={r['d0_over_n']:.4f} "
          f"chi_bar={r['chi_bar']:.6f} sqrt(chi_bar)={r['d0_upper_bound']:.4f}")
    print(f"wrote {args.out} and {args.report}")
    return 0


def cmd_evolve(client: ServiceClient, args) -> int:
    payload = {
        "depth": args.depth,
        **_model_payload(args),
        "node": args.node,
        "t": args.t,
        **_tol_payload(args),
    }
    data = client.request("POST", "/evolve", payload)
    positions = list(zip(data["xs"], data["ys"]))
    emitters.distribution_csv(args.out, positions, data["probabilities"])
    peak = max(data["probabilities"])
    print(f"node {data['node_id']} t={args.t:g}: max probability {peak:.6f}, "
          f"return {data['probabilities'][data['node_id']]:.6f}")
    print(f"wrote {args.out}")
    if args.series_out:
        payload = {
            "depth": args.depth,
            **_model_payload(args),
            "node": args.node,
            "t_max": args.t if args.t > 0 else 1000.0,
            "samples": args.samples,
            **_tol_payload(args),
        }
        series = client.request("POST", "/return-series", payload)
        emitters.series_csv(args.series_out, series["times"], series["values"])
        print(f"series node {series['node_id']}: chi_jj={series['chi_jj']:.6f} "
              f"bounds quartic={series['bound_quartic']:.6f} "
              f"projector={series['bound_projector']:.6f}")
        print(f"wrote {args.series_out}")
    return 0


def cmd_lta(client: ServiceClient, args) -> int:
    payload = {"depth": args.depth, **_model_payload(args), **_tol_payload(args)}
    data = client.request("POST", "/lta", payload)
    positions = list(zip(data["xs"], data["ys"]))
    emitters.lta_csv(args.out, positions, data["degrees"], data["chi_jj"],
                     data["bound_quartic"], data["bound_projector"])
    print(f"N={data['n']} chi_bar={data['chi_bar']:.6f}")
    print(f"wrote {args.out}")
    return 0


def cmd_table1(client: ServiceClient, args) -> int:
    thresholds = [float(x) for x in args.thresholds.split(",") if x.strip()]
    payload = {"depth": args.depth, "thresholds": thresholds, **_tol_payload(args)}
    data = client.request("POST", "/table", payload)
    models = [(m["a"], m["b"], m["c"]) for m in data["models"]]
    emitters.table_csv(args.out, data["thresholds"], models, data["proportions"])
    header = "  ".join(f"(a={a:g},b={b:g},c={c:g})" for a, b, c in models)
    print(f"threshold  {header}")
    for ti, theta in enumerate(data["thresholds"]):
        row = "  ".join(f"{data['proportions'][mi][ti]:10.3%}" for mi in range(len(models)))
        print(f"{theta:9.3f}  {row}")
    print(f"wrote {args.out}")
    return 0


def cmd_sweep(client: ServiceClient, args) -> int:
    if args.steps < 1:
        raise CommandError("--steps must be at least 1")
    b_axis = np.linspace(args.bmin, args.bmax, args.steps)
    c_axis = np.linspace(args.cmin, args.cmax, args.steps)
    threads = args.threads
    if threads is None:
        env = os.environ.get(transport.THREADS_ENV, "").strip()
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise CommandError(
                    f"{transport.THREADS_ENV} must be an integer, got {env!r}") from None
    payload = {
        "depth": args.depth,
        "a": args.a,
        "b_axis": [float(b) for b in b_axis],
        "c_axis": [float(c) for c in c_axis],
        "threads": threads,
        **_tol_payload(args),
    }
    data = client.request("POST", "/sweep", payload)
    grid = SweepGrid(
        b_values=np.asarray(data["b_values"], dtype=float),
        c_values=np.asarray(data["c_values"], dtype=float),
        chi_bar=np.asarray(
            [[np.nan if v is None else v for v in row] for row in data["chi_bar"]],
            dtype=float,
        ),
        n=data["n"],
        a=data["a"],
        errors=data["errors"],
    )
    emitters.sweep_csv(args.out, grid)
    emitters.sweep_svg(args.svg, grid)
    finite = grid.chi_bar[np.isfinite(grid.chi_bar)]
    print(f"{len(grid.b_values)}x{len(grid.c_values)} grid on N={grid.n}: "
          f"chi_bar range [{finite.min():.6f}, {finite.max():.6f}]")
    if data["errors"]:
        print(f"{len(data['errors'])} cells failed", file=sys.stderr)
    print(f"wrote {args.out} and {args.svg}")
    return 0 if not data["errors"] else 1


def cmd_verify_state(client: ServiceClient, args) -> int:
    with open(args.state, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or not raw:
        raise CommandError("state file must be a non-empty JSON object of node: amplitude")
    amplitudes = raw.get("amplitudes", raw)
    payload = {"depth": args.depth, **_model_payload(args), "amplitudes": amplitudes}
    data = client.request("POST", "/verify-state", payload)
    verdict = "accepted" if data["accepted"] else "rejected"
    print(f"{verdict}: residual={data['residual']:.3e} "
          f"threshold={data['threshold']:.3e} support={data['support']}")
    return 0 if data["accepted"] else 2


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _add_common(p, with_model=True):
    p.add_argument("--depth", type=int, default=4, help="subdivision depth (0..8)")
    if with_model:
        p.add_argument("--a", type=float, default=1.0, help="edge hopping")
        p.add_argument("--b", type=float, default=0.0, help="thin-diagonal hopping")
        p.add_argument("--c", type=float, default=0.0, help="fat-diagonal hopping")
    p.add_argument("--tol-eig", type=float, default=None, dest="tol_eig",
                   help="degeneracy tolerance override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="penrose-ctqw",
        description="Quantum-walk transport on finite Penrose lattices",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a lattice and write its JSON file")
    _add_common(p, with_model=False)
    p.add_argument("--out", default="lattice.json")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("spectrum", help="eigenvalues, clusters, efficiency report")
    _add_common(p)
    p.add_argument("--out", default="spectrum.csv")
    p.add_argument("--report", default="report.json")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("evolve", help="walker distribution at time t from a start node")
    _add_common(p)
    p.add_argument("--node", default="max-degree",
                   help='start node: id, "max-degree", or "degree:D:nearest-center"')
    p.add_argument("--t", type=float, default=1000.0)
    p.add_argument("--samples", type=int, default=10_000,
                   help="sample count for the return-probability series")
    p.add_argument("--out", default="distribution.csv")
    p.add_argument("--series-out", default="series.csv", dest="series_out",
                   help="return-probability series CSV ('' disables)")
    p.set_defaults(fn=cmd_evolve)

    p = sub.add_parser("lta", help="per-node long-time averages and bounds")
    _add_common(p)
    p.add_argument("--out", default="lta.csv")
    p.set_defaults(fn=cmd_lta)

    p = sub.add_parser("table1", help="threshold proportions for the three standard models")
    _add_common(p, with_model=False)
    p.add_argument("--thresholds", default=DEFAULT_THRESHOLDS,
                   help="comma-separated ascending thresholds")
    p.add_argument("--out", default="table1.csv")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("sweep", help="chi_bar over a (b, c) grid; CSV + SVG heatmap")
    _add_common(p, with_model=False)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--bmin", type=float, default=0.0)
    p.add_argument("--bmax", type=float, default=2.0)
    p.add_argument("--cmin", type=float, default=0.0)
    p.add_argument("--cmax", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=21, help="grid points per axis")
    p.add_argument("--threads", type=int, default=None,
                   help=f"sweep workers (default: ${transport.THREADS_ENV} or all cores)")
    p.add_argument("--out", default="sweep.csv")
    p.add_argument("--svg", default="sweep.svg")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify-state", help="check a sparse zero-energy eigenstate candidate")
    _add_common(p)
    p.add_argument("--state", required=True,
                   help="JSON file mapping node id to amplitude")
    p.set_defaults(fn=cmd_verify_state)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return cmd_serve(args)
    client = ServiceClient(args.server)
    try:
        return args.fn(client, args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
