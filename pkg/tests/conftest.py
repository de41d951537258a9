"""Shared fixtures: the reference patch costs one eigendecomposition per
model, so spectra are computed once per session."""

from __future__ import annotations

import asyncio

import httpx
import numpy as np
import pytest

from penrose_ctqw import EDGE_MODEL, FULL_MODEL, THIN_MODEL, build, decompose, generate

# Patch used for quantitative statements: the smallest depth whose vertex
# count lands in the expected several-hundred-to-few-thousand window.
REFERENCE_DEPTH = 5


@pytest.fixture(scope="session")
def lattice4():
    return generate(4)


@pytest.fixture(scope="session")
def reference_lattice():
    return generate(REFERENCE_DEPTH)


@pytest.fixture(scope="session")
def reference_spectra(reference_lattice):
    """Spectra of the three standard models on the reference patch."""
    out = {}
    for name, model in (("edge", EDGE_MODEL), ("thin", THIN_MODEL), ("full", FULL_MODEL)):
        out[name] = decompose(build(reference_lattice, model))
    return out


@pytest.fixture(scope="session")
def edge_spectrum4(lattice4):
    return decompose(build(lattice4, EDGE_MODEL))


def call_service(app, method: str, path: str, payload: dict | None = None) -> httpx.Response:
    """Synchronous request against an ASGI app, no socket involved."""

    async def run():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(run())


def assert_sorted_pairs(pairs: np.ndarray):
    assert pairs.ndim == 2 and pairs.shape[1] == 2
    assert np.all(pairs[:, 0] < pairs[:, 1])
    keys = pairs[:, 0] * (pairs.max() + 1 if len(pairs) else 1) + pairs[:, 1]
    assert np.all(np.diff(keys) > 0)


def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance-criteria lines after the test report."""
    try:
        from test_acceptance import CRITERION_LINES
    except ImportError:
        return
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)
