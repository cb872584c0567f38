"""Structural analysis of monomial bound quivers: relation-cycle decomposition,
the stably 3-Calabi-Yau arithmetic test, potentials, Gorenstein dimension and
the 2-Calabi-Yau tilted classification.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotGorenstein, QuiverError, StructureFailure
from .gentle import GentleProfile, gentle_2cy_relation_shape, gentle_profile, min_rotation
from .homology import DEFAULT_DEPTH_CAP, injective_dimension_of_regular
from .potential import JacobianReport, Potential, jacobian_check
from .quiver import BoundQuiver

JACOBIAN_2CY_TILTED = "JACOBIAN_2CY_TILTED"
NOT_2CY_TILTED = "NOT_2CY_TILTED"


@dataclass(frozen=True)
class CycleComponent:
    cycle: tuple
    n: int
    r: int
    relations: tuple  # arrow words, ordered by starting position on the cycle

    def to_dict(self) -> dict:
        return {
            "cycle": ".".join(self.cycle),
            "n": self.n,
            "r": self.r,
            "relations": [".".join(w) for w in self.relations],
        }


@dataclass(frozen=True)
class RelationCycleDecomposition:
    components: tuple

    def relation_words(self) -> set:
        return {w for c in self.components for w in c.relations}

    def to_list(self) -> list:
        return [c.to_dict() for c in self.components]


def relation_cycle_decomposition(algebra: BoundQuiver) -> RelationCycleDecomposition:
    """Split the relations into families of all length-r windows of arrow-disjoint cycles.

    Raises StructureFailure with a witness when this is impossible.
    """
    succ: dict[str, tuple[str, str]] = {}
    pred: dict[str, tuple[str, str]] = {}
    for rel in algebra.relations:
        word = rel.arrows
        text = ".".join(word)
        for a, b in zip(word, word[1:]):
            if a in succ and succ[a][0] != b:
                raise StructureFailure(
                    f"arrow {a} is followed by both {succ[a][0]} and {b}",
                    [succ[a][1], text],
                )
            if b in pred and pred[b][0] != a:
                raise StructureFailure(
                    f"arrow {b} is preceded by both {pred[b][0]} and {a}",
                    [pred[b][1], text],
                )
            succ[a] = (b, text)
            pred[b] = (a, text)

    cycle_of: dict[str, tuple] = {}
    for rel in algebra.relations:
        start = rel.arrows[0]
        if start in cycle_of:
            continue
        chain, a = [start], start
        while True:
            if a not in succ:
                raise StructureFailure("relation does not lie on a cycle", ".".join(rel.arrows))
            a = succ[a][0]
            if a == start:
                break
            if a in chain:
                raise StructureFailure("relation does not lie on a cycle", ".".join(rel.arrows))
            chain.append(a)
        cyc = min_rotation(tuple(chain))
        for x in chain:
            cycle_of[x] = cyc

    by_cycle: dict[tuple, list] = {}
    for rel in algebra.relations:
        by_cycle.setdefault(cycle_of[rel.arrows[0]], []).append(rel.arrows)
    components = []
    for cyc in sorted(by_cycle):
        words = by_cycle[cyc]
        lengths = sorted({len(w) for w in words})
        if len(lengths) > 1:
            raise StructureFailure(
                f"relation lengths {lengths} over the cycle {'.'.join(cyc)} are not constant",
                [".".join(w) for w in sorted(words)],
            )
        r = lengths[0]
        starts = {w[0] for w in words}
        missing = [a for a in cyc if a not in starts]
        if missing:
            k = cyc.index(missing[0])
            window = tuple((cyc * (r // len(cyc) + 2))[k:k + r])
            raise StructureFailure(
                f"cycle {'.'.join(cyc)} lacks a length-{r} window", ".".join(window)
            )
        ordered = tuple(sorted(words, key=lambda w: cyc.index(w[0])))
        components.append(CycleComponent(cyc, len(cyc), r, ordered))
    return RelationCycleDecomposition(tuple(components))


def stably_3cy_test(dec: RelationCycleDecomposition) -> list[int]:
    """Exponents ``b_i`` with ``r_i = b_i n_i - 1``."""
    out = []
    for i, c in enumerate(dec.components):
        if c.r <= 0 or (c.r + 1) % c.n != 0:
            raise StructureFailure(
                f"component {i} has no integer b with r = b*n - 1", {"index": i, "n": c.n, "r": c.r}
            )
        out.append((c.r + 1) // c.n)
    return out


def build_potential(dec: RelationCycleDecomposition, b) -> Potential:
    return Potential((c.cycle, 1, bi) for c, bi in zip(dec.components, b))


def singularity_invariants(dec: RelationCycleDecomposition) -> tuple[list[tuple[int, int]], int]:
    """Orbit-category parameters ``(r_i - 1, n_i)`` and the predicted number of
    non-projective indecomposable Gorenstein-projective modules."""
    params = [(c.r - 1, c.n) for c in dec.components]
    return params, sum(k * n for k, n in params)


def gorenstein_dimension(algebra: BoundQuiver, profile: GentleProfile | None = None, *,
                         cap: int = DEFAULT_DEPTH_CAP) -> int:
    """Gorenstein dimension: the critical-path bound for gentle algebras with
    n > 0, otherwise the largest projective dimension of an injective."""
    profile = profile or gentle_profile(algebra)
    if profile.is_gentle and profile.n_lambda > 0:
        return profile.n_lambda
    d = injective_dimension_of_regular(algebra, cap=cap)
    if d == math.inf:
        raise NotGorenstein("an indecomposable injective has infinite projective dimension")
    return int(d)


@dataclass
class Classification:
    verdict: str
    failing_stage: str | None = None
    reason: str | None = None
    decomposition: RelationCycleDecomposition | None = None
    b: list | None = None
    potential: Potential | None = None
    jacobian: JacobianReport | None = None
    gorenstein_dimension: object = None
    discrepancy: str | None = None
    stages: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "failing_stage": self.failing_stage,
            "reason": self.reason,
            "b": self.b,
            "potential": self.potential.text() if self.potential is not None else None,
            "jacobian": self.jacobian.to_dict() if self.jacobian else None,
            "gorenstein_dimension": self.gorenstein_dimension,
            "discrepancy": self.discrepancy,
            "stages": self.stages,
        }


def classify(algebra: BoundQuiver, profile: GentleProfile | None = None, *,
             cap: int = DEFAULT_DEPTH_CAP) -> Classification:
    """All stages are computed; the verdict names the first failing one."""
    profile = profile or gentle_profile(algebra)
    out = Classification(NOT_2CY_TILTED)
    failures: list[tuple[str, str]] = []

    try:
        out.decomposition = relation_cycle_decomposition(algebra)
        out.stages["decomposition"] = "ok"
    except StructureFailure as exc:
        out.stages["decomposition"] = str(exc)
        failures.append(("decomposition", str(exc)))

    try:
        out.gorenstein_dimension = gorenstein_dimension(algebra, profile, cap=cap)
        if out.gorenstein_dimension <= 1:
            out.stages["one_gorenstein"] = "ok"
        else:
            msg = f"Gorenstein dimension {out.gorenstein_dimension} > 1"
            out.stages["one_gorenstein"] = msg
            failures.append(("one_gorenstein", msg))
    except NotGorenstein as exc:
        out.gorenstein_dimension = "infinite"
        out.stages["one_gorenstein"] = str(exc)
        failures.append(("one_gorenstein", str(exc)))

    if out.decomposition is not None:
        try:
            out.b = stably_3cy_test(out.decomposition)
            out.stages["stably_3cy"] = "ok"
        except StructureFailure as exc:
            out.stages["stably_3cy"] = str(exc)
            failures.append(("stably_3cy", str(exc)))
    else:
        out.stages["stably_3cy"] = "skipped"

    if out.b is not None:
        out.potential = build_potential(out.decomposition, out.b)
        try:
            out.jacobian = jacobian_check(algebra, out.potential)
            out.stages["jacobian"] = "ok" if out.jacobian.holds else "derivatives differ from relations"
        except QuiverError as exc:
            out.stages["jacobian"] = str(exc)
    else:
        out.stages["jacobian"] = "skipped"

    # the decomposition is necessary for 1-Gorensteinness, so this must never happen
    if out.decomposition is None and out.stages["one_gorenstein"] == "ok":
        out.discrepancy = "the algebra is 1-Gorenstein but its relations do not decompose"

    if failures:
        out.failing_stage, out.reason = failures[0]
        return out
    if out.jacobian is None or not out.jacobian.holds:
        out.failing_stage = "jacobian"
        out.reason = out.stages["jacobian"]
        return out
    out.verdict = JACOBIAN_2CY_TILTED
    if profile.is_gentle:
        shape_ok, witnesses = gentle_2cy_relation_shape(algebra)
        out.stages["gentle_relation_shape"] = "ok" if shape_ok else f"violated by {witnesses}"
    return out
