"""(m+2)-angulations of marked surfaces, given combinatorially as clockwise
face lists, and the gentle bound quivers they define.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotGorenstein, PropertyViolation, SchemaError, ValidationError
from .gentle import gentle_profile, relation_successors
from .quiver import BoundQuiver, bound_quiver


@dataclass(frozen=True)
class Side:
    label: str
    internal: bool


@dataclass(frozen=True)
class Angulation:
    m: int
    faces: tuple  # tuple of tuples of Side, each listed clockwise

    def internal_arcs(self) -> list[str]:
        return sorted({s.label for f in self.faces for s in f if s.internal})

    def to_document(self) -> dict:
        return {
            "m": self.m,
            "faces": [
                {"sides": [{"id": s.label, "internal": s.internal} for s in f]} for f in self.faces
            ],
        }


def validate_angulation(m: int, faces) -> Angulation:
    errors = []
    if not isinstance(m, int) or m < 1:
        raise ValidationError([f"m must be a positive integer, got {m!r}"])
    kinds: dict[str, bool] = {}
    count: dict[str, int] = {}
    for idx, face in enumerate(faces):
        if len(face) != m + 2:
            errors.append(f"face {idx} has {len(face)} sides, expected {m + 2}")
        labels = [s.label for s in face]
        for lab in sorted({x for x in labels if labels.count(x) > 1}):
            errors.append(f"face {idx} is self-folded along {lab}")
        for s in face:
            if s.label in kinds and kinds[s.label] != s.internal:
                errors.append(f"side {s.label} is both internal and boundary")
            kinds[s.label] = s.internal
        for lab in set(labels):
            count[lab] = count.get(lab, 0) + 1
    for lab in sorted(count):
        want = 2 if kinds[lab] else 1
        if count[lab] != want:
            kind = "internal arc" if kinds[lab] else "boundary segment"
            errors.append(f"{kind} {lab} occurs in {count[lab]} faces, expected {want}")
    if errors:
        raise ValidationError(errors)
    return Angulation(m, tuple(tuple(f) for f in faces))


def parse_angulation(document) -> Angulation:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or "m" not in document or "faces" not in document:
        raise SchemaError("angulation document needs keys 'm' and 'faces'")
    if not isinstance(document["faces"], list):
        raise SchemaError("'faces' must be a list")
    faces = []
    for f in document["faces"]:
        sides = f.get("sides") if isinstance(f, dict) else None
        if not isinstance(sides, list):
            raise SchemaError(f"malformed face {f!r}")
        face = []
        for s in sides:
            if not isinstance(s, dict) or "id" not in s or "internal" not in s:
                raise SchemaError(f"malformed side {s!r}")
            face.append(Side(str(s["id"]), bool(s["internal"])))
        faces.append(face)
    return validate_angulation(document["m"], faces)


def bound_quiver_from_angulation(t: Angulation) -> BoundQuiver:
    """Arrow ``i -> j`` whenever internal side ``i`` follows internal side ``j``
    clockwise in a face; ``(i -> j)(j -> k)`` is a relation for clockwise
    consecutive internal sides ``k, j, i`` of one face."""
    arrows, names = [], set()
    relations = []
    for fi, face in enumerate(t.faces):
        size = len(face)
        local = {}
        for k in range(size):
            j, i = face[k], face[(k + 1) % size]
            if not (i.internal and j.internal):
                continue
            name = f"a_{i.label}_{j.label}"
            if name in names:
                name = f"{name}_f{fi}"
            names.add(name)
            arrows.append((name, i.label, j.label))
            local[k] = name
        for k in range(size):
            # sides k, k+1, k+2 give arrows local[k+1]: s_{k+2} -> s_{k+1} and local[k]: s_{k+1} -> s_k
            first, second = local.get((k + 1) % size), local.get(k)
            if first and second and size > 2:
                relations.append([first, second])
    return bound_quiver(t.internal_arcs(), arrows, relations)


# -- builders --------------------------------------------------------------------


def _split_faces(faces: list[list], chords) -> list[list]:
    for u, v in chords:
        for idx, face in enumerate(faces):
            if u in face and v in face:
                a, b = face.index(u), face.index(v)
                if abs(a - b) in (1, len(face) - 1):
                    raise ValidationError([f"arc {u}-{v} duplicates a side"])
                lo, hi = min(a, b), max(a, b)
                faces[idx:idx + 1] = [face[lo:hi + 1], face[hi:] + face[:lo + 1]]
                break
        else:
            raise ValidationError([f"arc {u}-{v} crosses another arc"])
    return faces


def polygon_fixture(n_vertices: int, m: int, arcs) -> Angulation:
    """Disk with marked points ``1..n`` in clockwise order, cut by noncrossing arcs."""
    n = n_vertices
    if n < 3:
        raise ValidationError(["a polygon needs at least 3 vertices"])
    chords = []
    for u, v in arcs:
        u, v = int(u), int(v)
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ValidationError([f"arc {u}-{v} has invalid endpoints"])
        if (u - v) % n in (1, n - 1):
            raise ValidationError([f"arc {u}-{v} joins neighbouring marked points"])
        chords.append((min(u, v), max(u, v)))
    if len(set(chords)) != len(chords):
        raise ValidationError(["repeated arc"])
    faces = _split_faces([list(range(1, n + 1))], chords)
    arcset = set(chords)
    out = []
    for face in faces:
        sides = []
        for k in range(len(face)):
            x, y = face[k], face[(k + 1) % len(face)]
            key = (min(x, y), max(x, y))
            if key in arcset:
                sides.append(Side(f"d{key[0]}_{key[1]}", True))
            else:
                lo = x if (y - x) % n == 1 else y
                sides.append(Side(f"b{lo}", False))
        out.append(sides)
    return validate_angulation(m, out)


def annulus_fixture(outer: int, inner: int, m: int, arcs) -> Angulation:
    """Annulus with ``outer`` and ``inner`` marked points, cut by bridging arcs.

    Arcs are ``(k, l)`` pairs in the universal cover joining outer point ``k``
    to inner point ``l``; they must be weakly increasing in both coordinates,
    and the next period starts at ``(arcs[0][0] + outer, arcs[0][1] + inner)``.
    """
    if outer < 1 or inner < 1:
        raise ValidationError(["both boundary components need a marked point"])
    arcs = [(int(k), int(l)) for k, l in arcs]
    if not arcs:
        raise ValidationError(["an annulus angulation needs a bridging arc"])
    closed = arcs + [(arcs[0][0] + outer, arcs[0][1] + inner)]
    for (k, l), (k2, l2) in zip(closed, closed[1:]):
        if k2 < k or l2 < l or (k2, l2) == (k, l):
            raise ValidationError([f"arcs ({k},{l}) and ({k2},{l2}) cross or coincide"])
    labels = [f"x{s}" for s in range(len(arcs))] + ["x0"]
    faces = []
    for s in range(len(arcs)):
        (k, l), (k2, l2) = closed[s], closed[s + 1]
        sides = [Side(f"o{j % outer}", False) for j in range(k, k2)]
        sides.append(Side(labels[s + 1], True))
        sides += [Side(f"i{j % inner}", False) for j in range(l2 - 1, l - 1, -1)]
        sides.append(Side(labels[s], True))
        faces.append(sides)
    return validate_angulation(m, faces)


@lru_cache(maxsize=None)
def _angulations_of(vertices: tuple, m: int) -> tuple:
    """All sets of diagonals cutting the convex polygon on ``vertices`` into (m+2)-gons."""
    n = len(vertices)
    if n == 2:
        return (frozenset(),)
    if n == m + 2:
        return (frozenset(),)
    if n < m + 2 or (n - 2) % m:
        return ()
    out = []
    # the face on the side (v0, v_last) picks m intermediate corners
    first, last = 0, n - 1

    def choose(prev, picked):
        if len(picked) == m:
            corners = [first] + picked + [last]
            pieces = [vertices[corners[t]:corners[t + 1] + 1] for t in range(m + 1)]
            options = [_angulations_of(p, m) for p in pieces]
            if any(not o for o in options):
                return
            own = {
                (vertices[corners[t]], vertices[corners[t + 1]])
                for t in range(m + 1) if corners[t + 1] - corners[t] > 1
            }
            combos = [frozenset(own)]
            for o in options:
                combos = [c | x for c in combos for x in o]
            out.extend(combos)
            return
        for nxt in range(prev + 1, last):
            gap = nxt - prev - 1
            if gap % m == 0:
                choose(nxt, picked + [nxt])

    choose(first, [])
    return tuple(sorted(set(out), key=lambda s: sorted(s)))


def polygon_angulations(n_vertices: int, m: int) -> list[Angulation]:
    """Every (m+2)-angulation of the polygon with ``n_vertices`` marked points."""
    if n_vertices < m + 2 or (n_vertices - 2) % m:
        return []
    return [
        polygon_fixture(n_vertices, m, sorted(arcs))
        for arcs in _angulations_of(tuple(range(1, n_vertices + 1)), m)
    ]


# -- structural verification ----------------------------------------------------


def _longest_relation_chain_outside_cycles(algebra: BoundQuiver, cycle_arrows: set) -> tuple:
    succ = relation_successors(algebra)
    best: tuple = ()

    def walk(chain):
        nonlocal best
        if len(chain) > len(best):
            best = tuple(chain)
        for b in succ[chain[-1]]:
            if b not in cycle_arrows and b not in chain:
                walk(chain + [b])

    for a in sorted(algebra.arrows):
        if a not in cycle_arrows:
            walk([a])
    return best


def verify_angulation_properties(algebra: BoundQuiver, m: int) -> dict:
    """Check gentleness, saturated cycle lengths, relation chains and the
    Gorenstein bound; raises PropertyViolation listing every failure."""
    from .analysis import gorenstein_dimension

    profile = gentle_profile(algebra)
    violations = []
    if not profile.is_gentle:
        violations.extend(f"not gentle: {v}" for v in profile.violations)
    for c in profile.saturated_cycles:
        if len(c) != m + 2:
            violations.append(f"saturated cycle {'.'.join(c)} has length {len(c)}, expected {m + 2}")
    cycle_arrows = {a for c in profile.saturated_cycles for a in c}
    chain = _longest_relation_chain_outside_cycles(algebra, cycle_arrows)
    n_rel = max(len(chain) - 1, 0)
    if n_rel > m - 1:
        violations.append(
            f"{n_rel} consecutive relations {'.'.join(chain)} outside saturated cycles, at most {m - 1} allowed"
        )
    try:
        d = gorenstein_dimension(algebra, profile)
    except NotGorenstein as exc:
        d = "infinite"
        violations.append(str(exc))
    if d != "infinite" and d > m:
        violations.append(f"Gorenstein dimension {d} exceeds m = {m}")
    report = {
        "m": m,
        "gentle": profile.is_gentle,
        "saturated_cycles": [".".join(c) for c in profile.saturated_cycles],
        "longest_relation_chain_outside_cycles": ".".join(chain),
        "consecutive_relations_outside_cycles": n_rel,
        "gorenstein_dimension": d,
        "violations": violations,
    }
    if violations:
        raise PropertyViolation(violations)
    return report
