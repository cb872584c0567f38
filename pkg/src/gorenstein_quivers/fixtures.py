"""Bundled example algebras and angulations."""
from __future__ import annotations

import json
from importlib import resources

from .angulation import Angulation, annulus_fixture, polygon_angulations, polygon_fixture
from .quiver import BoundQuiver, parse_quiver

QUIVER_FIXTURES = (
    "cycle_with_loop",
    "triangles_with_tails",
    "triangles_with_loop",
    "linear_a4",
    "cycle_with_tail",
)


def fixture_path(name: str):
    return resources.files(__package__) / "data" / f"{name}.json"


def fixture_document(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def load_fixture(name: str) -> BoundQuiver:
    return parse_quiver(fixture_document(name))


def triangulation_family(max_vertices: int = 8) -> list[Angulation]:
    """Every triangulation of every polygon with at most ``max_vertices`` marked points."""
    out = []
    for n in range(3, max_vertices + 1):
        out.extend(polygon_angulations(n, 1))
    return out


def quadrangulation_catalog(max_vertices: int = 10) -> list[Angulation]:
    """Every 4-angulation of every polygon with at most ``max_vertices`` marked points."""
    out = []
    for n in range(4, max_vertices + 1, 2):
        out.extend(polygon_angulations(n, 2))
    return out


def hexagon_fan() -> Angulation:
    return polygon_fixture(6, 1, [(1, 3), (1, 4), (1, 5)])


def square() -> Angulation:
    return polygon_fixture(4, 2, [])


def annulus_quadrangulation() -> Angulation:
    return annulus_fixture(2, 4, 2, [(0, 0), (0, 2), (2, 2)])
