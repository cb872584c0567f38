from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorenstein_quivers.analysis import (
    JACOBIAN_2CY_TILTED,
    NOT_2CY_TILTED,
    CycleComponent,
    RelationCycleDecomposition,
    build_potential,
    classify,
    gorenstein_dimension,
    relation_cycle_decomposition,
    singularity_invariants,
    stably_3cy_test,
)
from gorenstein_quivers.errors import NonMonomialDerivative, StructureFailure
from gorenstein_quivers.gentle import gentle_2cy_relation_shape, gentle_profile
from gorenstein_quivers.homology import injective_dimension_of_regular
from gorenstein_quivers.potential import Potential, cyclic_derivative, jacobian_check
from gorenstein_quivers.quiver import bound_quiver

from oracles import za_fundamental_domain_count


def test_decomposition_cycle_with_loop(loop4):
    dec = relation_cycle_decomposition(loop4)
    got = [(c.cycle, c.n, c.r, len(c.relations)) for c in dec.components]
    assert got == [(("alpha", "beta", "gamma", "delta"), 4, 3, 4), (("lambda",), 1, 4, 1)]
    assert dec.relation_words() == {r.arrows for r in loop4.relations}


def test_decomposition_failures(linear, tailed):
    with pytest.raises(StructureFailure) as info:
        relation_cycle_decomposition(linear)
    assert info.value.witness == "beta.alpha"
    with pytest.raises(StructureFailure, match="not constant"):
        relation_cycle_decomposition(tailed)


def test_decomposition_shared_arrow():
    arrows = [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")]
    alg = bound_quiver("123", arrows, [["a", "b"], ["a", "c"], ["b", "a"]])
    with pytest.raises(StructureFailure, match="followed by both"):
        relation_cycle_decomposition(alg)


def test_decomposition_missing_window():
    arrows = [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]
    alg = bound_quiver("123", arrows, [["a", "b"], ["b", "c"], ["c", "a"]])
    assert len(relation_cycle_decomposition(alg).components) == 1
    alg = bound_quiver("123", arrows, [["a", "b", "c"], ["b", "c", "a"]])
    with pytest.raises(StructureFailure, match="window"):
        relation_cycle_decomposition(alg)


def _dec(*pairs):
    return RelationCycleDecomposition(tuple(
        CycleComponent(tuple(f"x{i}_{k}" for k in range(n)), n, r, ()) for i, (n, r) in enumerate(pairs)
    ))


def test_stably_3cy(loop4):
    assert stably_3cy_test(relation_cycle_decomposition(loop4)) == [1, 5]
    assert stably_3cy_test(_dec((3, 2))) == [1]
    with pytest.raises(StructureFailure) as info:
        stably_3cy_test(_dec((4, 4)))
    assert info.value.witness == {"index": 0, "n": 4, "r": 4}


def test_potentials(loop4, tails):
    w = build_potential(relation_cycle_decomposition(loop4), [1, 5])
    assert w.text() == "alpha.beta.gamma.delta + lambda^5"
    assert w == Potential([(("alpha", "beta", "gamma", "delta"), 1, 1), (("lambda",), 1, 5)])
    assert build_potential(RelationCycleDecomposition(()), []).is_zero()
    dec = relation_cycle_decomposition(tails)
    w37 = build_potential(dec, stably_3cy_test(dec))
    expected = Potential([(("delta1",), 1, 3)] + [
        ((f"alpha{i}", f"beta{i}", f"gamma{i}"), 1, 1) for i in (1, 2, 3)
    ])
    assert w37 == expected


def test_cyclic_derivatives():
    w = Potential([(("alpha", "beta", "gamma", "delta"), 1, 1), (("lambda",), 1, 5)])
    assert cyclic_derivative(w, "alpha") == [(1, ("beta", "gamma", "delta"))]
    assert cyclic_derivative(w, "gamma") == [(1, ("delta", "alpha", "beta"))]
    assert cyclic_derivative(w, "lambda") == [(5, ("lambda",) * 4)]
    assert cyclic_derivative(w, "mu") == []
    sq = Potential([(("a", "b"), Fraction(1, 2), 2)])
    assert cyclic_derivative(sq, "a") == [(1, ("b", "a", "b"))]


def test_rotation_invariance():
    assert Potential([(("b", "c", "a"), 1, 1)]) == Potential([(("a", "b", "c"), 1, 1)])
    assert Potential([(("a",), 2, 3), (("a",), -2, 3)]).is_zero()


def test_jacobian_check(loop4, tails):
    w = Potential([(("alpha", "beta", "gamma", "delta"), 1, 1), (("lambda",), 1, 5)])
    rep = jacobian_check(loop4, w)
    assert rep.holds and rep.scalars["lambda"] == 5
    rep = jacobian_check(loop4, Potential([(("alpha", "beta", "gamma", "delta"), 1, 1)]))
    assert not rep.holds and rep.missing == ["lambda.lambda.lambda.lambda"]
    dec = relation_cycle_decomposition(tails)
    assert jacobian_check(tails, build_potential(dec, stably_3cy_test(dec))).holds


def test_jacobian_non_monomial():
    alg = bound_quiver("1", [("x", "1", "1"), ("y", "1", "1")], [["x", "x"], ["y", "y"], ["x", "y"], ["y", "x"]])
    w = Potential([(("x", "y", "y"), 1, 1), (("x", "x", "y"), 1, 1)])
    with pytest.raises(NonMonomialDerivative):
        jacobian_check(alg, w)


def test_gentle_profiles(triangles, tails, linear, tailed):
    p = gentle_profile(triangles)
    assert p.is_gentle and p.n_lambda == 0 and p.gentle_arrows == []
    assert sorted(len(c) for c in p.saturated_cycles) == [1, 3, 3, 3]
    p = gentle_profile(linear)
    assert p.is_gentle and p.saturated_cycles == []
    assert "beta" in p.gentle_arrows
    assert [c.arrows for c in p.critical_paths][0] == ("beta", "alpha")
    assert p.n_lambda == 2
    p = gentle_profile(tailed)
    assert not p.is_gentle and p.is_string
    assert any(v.startswith("(g2)") and "alpha.beta.gamma" in v for v in p.violations)
    p = gentle_profile(tails)
    assert not p.is_gentle
    assert any("lambda1" in v for v in p.violations)


def test_gorenstein_dimension(linear, tailed, triangles, tails):
    assert gorenstein_dimension(tailed) == 2
    assert gorenstein_dimension(linear) == 2
    assert gorenstein_dimension(triangles) == 1
    assert gorenstein_dimension(tails) == 1


def test_relation_shape(triangles, linear, a2):
    assert gentle_2cy_relation_shape(triangles) == (True, [])
    assert gentle_2cy_relation_shape(linear) == (False, ["beta.alpha"])
    assert gentle_2cy_relation_shape(a2) == (True, [])


def test_classify(loop4, linear, tailed):
    c = classify(loop4)
    assert c.verdict == JACOBIAN_2CY_TILTED
    assert c.potential.text() == "alpha.beta.gamma.delta + lambda^5"
    c = classify(tailed)
    assert c.verdict == NOT_2CY_TILTED and c.failing_stage == "decomposition"
    assert c.gorenstein_dimension == 2
    c = classify(linear)
    assert c.verdict == NOT_2CY_TILTED and "beta.alpha" in c.reason
    assert c.discrepancy is None


def test_singularity_invariants(loop4, triangles):
    params, total = singularity_invariants(relation_cycle_decomposition(loop4))
    assert params == [(2, 4), (3, 1)]
    assert total == sum(za_fundamental_domain_count(k, n) for k, n in params) == 11
    params, total = singularity_invariants(relation_cycle_decomposition(triangles))
    assert all(k == 1 for k, _ in params)
    assert total == sum(n for _, n in params) == 10
    assert singularity_invariants(RelationCycleDecomposition(())) == ([], 0)


def test_gentle_formula_matches_homology(linear):
    prof = gentle_profile(linear)
    assert prof.n_lambda == injective_dimension_of_regular(linear) == 2


@st.composite
def cycle_systems(draw):
    vertices, arrows, relations = [], [], []
    for i in range(draw(st.integers(1, 3))):
        n = draw(st.integers(1, 4))
        b = draw(st.integers(1, 2 if n > 1 else 4))
        r = b * n - 1
        while r < 2:
            b += 1
            r = b * n - 1
        names = [f"c{i}_{k}" for k in range(n)]
        vs = [f"v{i}_{k}" for k in range(n)]
        vertices += vs
        arrows += [(names[k], vs[k], vs[(k + 1) % n]) for k in range(n)]
        relations += [[names[(k + j) % n] for j in range(r)] for k in range(n)]
    return bound_quiver(vertices, arrows, relations)


@settings(max_examples=30, deadline=None)
@given(cycle_systems())
def test_potential_round_trip(alg):
    dec = relation_cycle_decomposition(alg)
    assert dec.relation_words() == {r.arrows for r in alg.relations}
    cycles = [set(c.cycle) for c in dec.components]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            assert not cycles[i] & cycles[j]
    b = stably_3cy_test(dec)
    assert jacobian_check(alg, build_potential(dec, b)).holds
