import math

import pytest

from gorenstein_quivers.angulation import (
    Side,
    annulus_fixture,
    bound_quiver_from_angulation,
    parse_angulation,
    polygon_angulations,
    polygon_fixture,
    validate_angulation,
    verify_angulation_properties,
)
from gorenstein_quivers.errors import PropertyViolation, SchemaError, ValidationError
from gorenstein_quivers.fixtures import (
    annulus_quadrangulation,
    fixture_document,
    hexagon_fan,
    quadrangulation_catalog,
    square,
    triangulation_family,
)
from gorenstein_quivers.gentle import gentle_profile
from gorenstein_quivers.quiver import bound_quiver


def fuss_catalan(n_vertices, m):
    k = (n_vertices - 2) // m
    return math.comb((m + 1) * k, k) // (m * k + 1)


@pytest.mark.parametrize("m,sizes", [(1, range(3, 9)), (2, range(4, 11, 2)), (3, (5, 8, 11))])
def test_angulation_counts(m, sizes):
    for n in sizes:
        found = polygon_angulations(n, m)
        assert len(found) == fuss_catalan(n, m)
        assert all(len(t.internal_arcs()) == (n - 2) // m - 1 for t in found)


def test_no_angulation_for_bad_sizes():
    assert polygon_angulations(5, 2) == []
    assert polygon_angulations(3, 2) == []


def test_fan_quiver():
    q = bound_quiver_from_angulation(hexagon_fan())
    assert list(q.vertices) == ["d1_3", "d1_4", "d1_5"]
    assert sorted((a.source, a.target) for a in q.arrows.values()) == [
        ("d1_3", "d1_4"), ("d1_4", "d1_5"),
    ]
    assert not q.relations


def test_internal_triangle_gives_saturated_cycle():
    t = polygon_fixture(6, 1, [(1, 3), (3, 5), (1, 5)])
    q = bound_quiver_from_angulation(t)
    prof = gentle_profile(q)
    assert prof.is_gentle
    assert len(q.arrows) == 3 and len(q.relations) == 3
    assert [len(c) for c in prof.saturated_cycles] == [3]


def test_square_is_empty_quiver():
    q = bound_quiver_from_angulation(square())
    assert not q.vertices and q.dimension == 0
    assert verify_angulation_properties(q, 2)["gorenstein_dimension"] == 0


def test_annulus():
    t = annulus_quadrangulation()
    assert t.internal_arcs() == ["x0", "x1", "x2"]
    q = bound_quiver_from_angulation(t)
    assert len(q.arrows) == 3 and not q.relations
    assert verify_angulation_properties(q, 2)["gentle"]
    with pytest.raises(ValidationError, match="cross"):
        annulus_fixture(2, 4, 2, [(0, 2), (0, 0)])


def test_document_round_trip():
    for t in (hexagon_fan(), square(), annulus_quadrangulation()):
        assert parse_angulation(t.to_document()) == t
    for name in ("hexagon_fan_angulation", "square_angulation", "annulus_angulation"):
        t = parse_angulation(fixture_document(name))
        verify_angulation_properties(bound_quiver_from_angulation(t), t.m)


def test_corrupted_fixture():
    with pytest.raises(ValidationError) as info:
        parse_angulation(fixture_document("corrupted_angulation"))
    assert any("5 sides" in v for v in info.value.violations)


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_angulation("{")
    with pytest.raises(SchemaError):
        parse_angulation({"m": 1})
    with pytest.raises(SchemaError):
        parse_angulation({"m": 1, "faces": [{"sides": [{"id": "x"}]}]})


def test_validation_errors():
    b = [Side(f"b{i}", False) for i in range(4)]
    with pytest.raises(ValidationError, match="self-folded"):
        validate_angulation(1, [[b[0], Side("x", True), Side("x", True)]])
    with pytest.raises(ValidationError, match="expected 2"):
        validate_angulation(1, [[b[0], b[1], Side("x", True)]])
    with pytest.raises(ValidationError, match="both internal and boundary"):
        validate_angulation(1, [[b[0], b[1], Side("x", True)], [b[2], b[3], Side("x", False)]])
    with pytest.raises(ValidationError):
        validate_angulation(0, [])
    with pytest.raises(ValidationError, match="crosses"):
        polygon_fixture(6, 1, [(1, 4), (2, 5)])
    with pytest.raises(ValidationError, match="neighbouring"):
        polygon_fixture(6, 1, [(1, 2)])


def test_family_properties():
    for t in triangulation_family(8) + quadrangulation_catalog(10):
        q = bound_quiver_from_angulation(t)
        report = verify_angulation_properties(q, t.m)
        assert report["gorenstein_dimension"] <= t.m
        assert all(len(c.split(".")) == t.m + 2 for c in report["saturated_cycles"])


def test_injected_violation():
    q = bound_quiver("1234", [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")], [["a", "b"], ["b", "c"]])
    with pytest.raises(PropertyViolation) as info:
        verify_angulation_properties(q, 2)
    assert any("consecutive relations" in v for v in info.value.violations)
    assert any("exceeds" in v for v in info.value.violations)


def test_small_polygons():
    t = polygon_fixture(4, 1, [(1, 3)])
    assert len(t.faces) == 2 and t.internal_arcs() == ["d1_3"]
    # one arc leaves a quadrilateral in a pentagon
    with pytest.raises(ValidationError, match="4 sides, expected 3"):
        polygon_fixture(5, 1, [(1, 3)])
    assert len(polygon_fixture(5, 1, [(1, 3), (1, 4)]).faces) == 3
    q = bound_quiver_from_angulation(polygon_fixture(6, 2, [(1, 4)]))
    assert len(q.vertices) == 1 and not q.arrows


def test_same_face_chain_gives_relation():
    # two arcs meeting in one square: one arrow
    q = bound_quiver_from_angulation(polygon_fixture(8, 2, [(1, 4), (1, 6)]))
    assert len(q.vertices) == 2 and len(q.arrows) == 1 and not q.relations
    # three consecutive arcs of the square 1-4-7-10: two arrows, one relation
    q = bound_quiver_from_angulation(polygon_fixture(10, 2, [(1, 4), (4, 7), (7, 10)]))
    assert len(q.arrows) == 2
    assert [r.arrows for r in q.relations] == [("a_d7_10_d4_7", "a_d4_7_d1_4")]
    verify_angulation_properties(q, 2)
