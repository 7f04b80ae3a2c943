"""Shared fixtures: the expensive A25-2 objects are built once per session.

The acceptance matrix recorder collects every matrix consumed while the
acceptance criteria run; the engine cross-validation criterion replays it.
"""

from __future__ import annotations

import pytest

from symbpow import catalog, fatpoints, linalg, projgeom


@pytest.fixture(scope="session")
def acceptance_recorder():
    return linalg.MatrixRecorder()


@pytest.fixture(scope="session")
def a25(acceptance_recorder):
    entry = catalog.builtin("A25-2")
    cens = projgeom.census(entry.arrangement())
    points = projgeom.points_of_multiplicity_at_least(cens, 3)
    scheme = fatpoints.FatScheme(points, 1)
    return {"entry": entry, "census": cens, "scheme": scheme}


@pytest.fixture(scope="session")
def a25_extraction(a25, acceptance_recorder):
    """Minimal generators of the 49-point ideal, verified through degree 26."""
    return fatpoints.minimal_generators(
        a25["scheme"], 26, recorder=acceptance_recorder)


@pytest.fixture(scope="session")
def a25_gens(a25_extraction):
    return a25_extraction.generators


@pytest.fixture(scope="session")
def three_points():
    entry = catalog.builtin("three-coordinate-points")
    cens = projgeom.census(entry.arrangement())
    points = projgeom.points_of_multiplicity_at_least(cens, 2)
    scheme = fatpoints.FatScheme(points, 1)
    extraction = fatpoints.minimal_generators(scheme, 6)
    return {"entry": entry, "scheme": scheme, "gens": extraction.generators,
            "extraction": extraction}
